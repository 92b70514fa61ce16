//! Finitely presented groups at desk scale: coset enumeration, low-index
//! normal subgroups, Reidemeister–Schreier rewriting, Tietze simplification
//! and abelianization, and samples of `(d(H) - 1)/[G:H]` along explicit
//! chains of normal subgroups.
//!
//! Letters are encoded as `2g` for generator `g` and `2g + 1` for its
//! inverse, so `l ^ 1` inverts a letter. Words are `Vec<Letter>`.
//!
//! `d(H)` is not computable in general. Samples report an interval: the
//! lower end is the minimal number of generators of the abelianization, the
//! upper end is the generator count after Tietze simplification.

mod chain;
mod coset;
mod lowindex;
mod rgseq;
mod schreier;
mod snf;
mod tietze;

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::lgraph::LabelledGraph;

pub use chain::{
    abelian_images, evaluate_word, kernel_chain_cayley, kernel_table_cayley, kernel_table_cayley_limited, psl2_images,
    sl2_images, ChainError, Perm,
};
pub use coset::{todd_coxeter, CosetTable, EnumerationError, DEFAULT_COSET_LIMIT};
pub use lowindex::{low_index_normal, low_index_subgroups, LowIndexError, MAX_LOW_INDEX};
pub use rgseq::{rg_sample, rg_sequence, RgSample, Trend};
pub use schreier::{reidemeister_schreier, SchreierPolicy};
pub use snf::{abelian_invariants, relation_matrix, smith_normal_form, AbelianInvariants, SmithForm};
pub use tietze::{d_bounds, simplify};

pub type Letter = u32;
pub type Word = Vec<Letter>;

pub const fn gen_letter(g: usize) -> Letter {
    (2 * g) as Letter
}

pub const fn inverse_letter(l: Letter) -> Letter {
    l ^ 1
}

pub const fn letter_gen(l: Letter) -> usize {
    (l >> 1) as usize
}

pub const fn is_inverse(l: Letter) -> bool {
    l & 1 == 1
}

pub fn invert(w: &[Letter]) -> Word {
    w.iter().rev().map(|&l| inverse_letter(l)).collect()
}

pub fn free_reduce(w: &[Letter]) -> Word {
    let mut out: Word = Vec::with_capacity(w.len());
    for &l in w {
        if out.last() == Some(&inverse_letter(l)) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

/// Free and cyclic reduction.
pub fn cyclic_reduce(w: &[Letter]) -> Word {
    let r = free_reduce(w);
    let mut lo = 0;
    let mut hi = r.len();
    while hi - lo >= 2 && r[lo] == inverse_letter(r[hi - 1]) {
        lo += 1;
        hi -= 1;
    }
    r[lo..hi].to_vec()
}

/// Exponent sum of each generator.
pub fn exponent_sums(w: &[Letter], ngens: usize) -> Vec<i64> {
    let mut s = alloc::vec![0i64; ngens];
    for &l in w {
        s[letter_gen(l)] += if is_inverse(l) { -1 } else { 1 };
    }
    s
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PresentationError {
    #[error("invalid generator name {0:?}")]
    InvalidName(String),
    #[error("duplicate generator {0:?}")]
    DuplicateGenerator(String),
    #[error("generator {0:?} clashes with the inverse of another generator")]
    InverseClash(String),
    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),
    #[error("bad exponent in {0:?}")]
    BadExponent(String),
    #[error("letter {0} references a missing generator")]
    BadLetter(Letter),
}

/// Group presentation. Relators are freely reduced on construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    generators: Vec<String>,
    relators: Vec<Word>,
}

fn valid_gen_name(s: &str) -> bool {
    !s.is_empty()
        && s.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'_')
        && s.bytes().any(|b| b.is_ascii_lowercase())
}

impl Presentation {
    /// Generator names must match `[A-Za-z0-9_]+`, contain a lowercase
    /// letter, and their upper-case forms (used for inverses) must not
    /// name another generator.
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Result<Self, PresentationError> {
        for (i, g) in generators.iter().enumerate() {
            if !valid_gen_name(g) {
                return Err(PresentationError::InvalidName(g.clone()));
            }
            if generators[..i].contains(g) {
                return Err(PresentationError::DuplicateGenerator(g.clone()));
            }
        }
        for g in &generators {
            let up = g.to_ascii_uppercase();
            if generators
                .iter()
                .any(|h| h != g && (h == &up || h.to_ascii_uppercase() == up))
            {
                return Err(PresentationError::InverseClash(g.clone()));
            }
        }
        let n = generators.len();
        for r in &relators {
            if let Some(&l) = r.iter().find(|&&l| letter_gen(l) >= n) {
                return Err(PresentationError::BadLetter(l));
            }
        }
        Ok(Presentation {
            generators,
            relators: relators.iter().map(|r| free_reduce(r)).collect(),
        })
    }

    /// Builds from generator names and relators in the text word syntax of
    /// [`Presentation::parse_word`].
    pub fn from_strs(generators: &[&str], relators: &[&str]) -> Result<Self, PresentationError> {
        let p = Presentation::new(generators.iter().map(|s| s.to_string()).collect(), Vec::new())?;
        let rels = relators
            .iter()
            .map(|r| p.parse_word(r))
            .collect::<Result<Vec<_>, _>>()?;
        Presentation::new(p.generators, rels)
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    /// Parses whitespace-separated tokens. A token is a generator name, its
    /// upper-case form for the inverse, optionally followed by `^k` with a
    /// (possibly negative) integer `k`.
    pub fn parse_word(&self, s: &str) -> Result<Word, PresentationError> {
        let mut w = Word::new();
        for tok in s.split_whitespace() {
            let (name, exp) = match tok.split_once('^') {
                Some((n, e)) => (
                    n,
                    e.parse::<i64>()
                        .map_err(|_| PresentationError::BadExponent(tok.into()))?,
                ),
                None => (tok, 1),
            };
            let letter = self.letter_of(name)?;
            let (l, k) = if exp < 0 {
                (inverse_letter(letter), exp.unsigned_abs())
            } else {
                (letter, exp as u64)
            };
            for _ in 0..k {
                w.push(l);
            }
        }
        Ok(free_reduce(&w))
    }

    fn letter_of(&self, name: &str) -> Result<Letter, PresentationError> {
        if let Some(g) = self.generators.iter().position(|g| g == name) {
            return Ok(gen_letter(g));
        }
        if let Some(g) = self.generators.iter().position(|g| g.to_ascii_uppercase() == name) {
            return Ok(inverse_letter(gen_letter(g)));
        }
        Err(PresentationError::UnknownGenerator(name.into()))
    }

    pub fn format_word(&self, w: &[Letter]) -> String {
        if w.is_empty() {
            return "1".into();
        }
        let toks: Vec<String> = w
            .iter()
            .map(|&l| {
                let g = &self.generators[letter_gen(l)];
                if is_inverse(l) {
                    g.to_ascii_uppercase()
                } else {
                    g.clone()
                }
            })
            .collect();
        toks.join(" ")
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "gens: {}", self.generators.join(" "))?;
        for r in &self.relators {
            writeln!(f, "rel: {}", self.format_word(r))?;
        }
        Ok(())
    }
}

fn graph_generator_names(g: &LabelledGraph) -> Vec<String> {
    let names: Vec<String> = g.names().to_vec();
    if Presentation::new(names.clone(), Vec::new()).is_ok() {
        names
    } else {
        (0..g.vertex_count()).map(|i| format!("a{i}")).collect()
    }
}

fn alternating(x: Letter, y: Letter, n: u64) -> Word {
    (0..n).map(|i| if i % 2 == 0 { x } else { y }).collect()
}

/// One generator per vertex (named after it when the names allow it) and
/// one relator `alt(a_v, a_w, n) alt(a_w, a_v, n)^-1` per edge.
pub fn artin_presentation(g: &LabelledGraph) -> Presentation {
    let rels = g
        .edges()
        .map(|(u, v, n)| {
            let (a, b) = (gen_letter(u), gen_letter(v));
            let mut r = alternating(a, b, n);
            r.extend(invert(&alternating(b, a, n)));
            r
        })
        .collect();
    Presentation::new(graph_generator_names(g), rels).expect("generated names are valid")
}

/// Involutions `a_v^2` and `(a_v a_w)^l` per edge.
pub fn coxeter_presentation(g: &LabelledGraph) -> Presentation {
    let mut rels: Vec<Word> = (0..g.vertex_count())
        .map(|v| alloc::vec![gen_letter(v), gen_letter(v)])
        .collect();
    for (u, v, l) in g.edges() {
        rels.push(alternating(gen_letter(u), gen_letter(v), 2 * l));
    }
    Presentation::new(graph_generator_names(g), rels).expect("generated names are valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lgraph::families;

    #[test]
    fn word_parsing_round_trip() {
        let p = Presentation::from_strs(&["a", "b"], &["a^4", "a^2 B^3"]).unwrap();
        assert_eq!(p.relators()[0], [0, 0, 0, 0]);
        assert_eq!(p.relators()[1], [0, 0, 3, 3, 3]);
        assert_eq!(p.format_word(&p.relators()[1]), "a a B B B");
        assert_eq!(p.parse_word("a A b").unwrap(), [2]);
        assert_eq!(p.parse_word("b^-2").unwrap(), [3, 3]);
        assert!(p.parse_word("c").is_err());
    }

    #[test]
    fn name_validation() {
        assert!(Presentation::from_strs(&["A"], &[]).is_err());
        assert!(Presentation::from_strs(&["a", "a"], &[]).is_err());
        assert!(Presentation::from_strs(&["ab", "aB"], &[]).is_err());
        assert!(Presentation::from_strs(&["a_3", "b_3"], &[]).is_ok());
    }

    #[test]
    fn reductions() {
        assert_eq!(free_reduce(&[0, 2, 3, 1, 4]), [4]);
        assert_eq!(cyclic_reduce(&[1, 2, 4, 0]), [2, 4]);
        assert_eq!(cyclic_reduce(&[1, 0]), Word::new());
    }

    #[test]
    fn artin_relators() {
        let p = artin_presentation(&families::path(&[2]));
        assert_eq!(p.format_word(&p.relators()[0]), "v0 v1 V0 V1");
        let p = artin_presentation(&families::path(&[3]));
        assert_eq!(p.format_word(&p.relators()[0]), "v0 v1 v0 V1 V0 V1");
        let free = artin_presentation(&LabelledGraph::from_indexed(2, &[]).unwrap());
        assert!(free.relators().is_empty());
    }

    #[test]
    fn coxeter_relators() {
        let p = coxeter_presentation(&families::path(&[3]));
        assert_eq!(p.relators().len(), 3);
        assert_eq!(p.format_word(&p.relators()[2]), "v0 v1 v0 v1 v0 v1");
        let hex = coxeter_presentation(&families::cycle(&[2; 6]));
        assert_eq!(hex.relators().len(), 12);
    }

    #[test]
    fn uppercase_vertex_names_fall_back() {
        let g = LabelledGraph::from_parts(&["S1", "S2"], &[("S1", "S2", 3)]).unwrap();
        assert_eq!(artin_presentation(&g).generators(), ["a0", "a1"]);
    }
}
