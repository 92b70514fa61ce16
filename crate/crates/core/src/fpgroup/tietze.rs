//! Tietze simplification: eliminate generators that occur exactly once in
//! some relator.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::{
    abelian_invariants, cyclic_reduce, free_reduce, gen_letter, inverse_letter, invert, is_inverse, letter_gen,
};
use super::{Letter, Presentation, Word};

const CANON_MAX: usize = 400;

/// Least rotation of `w` or its inverse; long words are returned as is.
fn canonical(w: &[Letter]) -> Word {
    if w.len() > CANON_MAX {
        return w.to_vec();
    }
    let inv = invert(w);
    let mut best = w.to_vec();
    for src in [w, inv.as_slice()] {
        for k in 0..src.len() {
            let rot: Word = src[k..].iter().chain(&src[..k]).copied().collect();
            if rot < best {
                best = rot;
            }
        }
    }
    best
}

fn tidy(rels: &[Word]) -> Vec<Word> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for r in rels {
        let c = cyclic_reduce(r);
        if c.is_empty() {
            continue;
        }
        let key = canonical(&c);
        if seen.insert(key) {
            out.push(c);
        }
    }
    out.sort_by_key(Vec::len);
    out
}

/// Finds (relator, position) of a generator occurring once in the
/// shortest possible relator, preferring generators with few occurrences
/// overall.
fn pick(rels: &[Word], ngens: usize) -> Option<(usize, usize)> {
    let mut total = vec![0usize; ngens];
    for r in rels {
        for &l in r {
            total[letter_gen(l)] += 1;
        }
    }
    let mut best: Option<(usize, usize, usize, usize)> = None;
    for (ri, r) in rels.iter().enumerate() {
        if best.is_some_and(|(len, ..)| r.len() > len) {
            break;
        }
        let mut count = vec![0usize; ngens];
        for &l in r {
            count[letter_gen(l)] += 1;
        }
        for (pos, &l) in r.iter().enumerate() {
            let g = letter_gen(l);
            if count[g] == 1 {
                let key = (r.len(), total[g], ri, pos);
                if best.is_none_or(|b| (key.0, key.1) < (b.0, b.1)) {
                    best = Some(key);
                }
            }
        }
    }
    best.map(|(_, _, ri, pos)| (ri, pos))
}

/// Simplified presentation of the same group. Generator names of the
/// survivors are kept.
pub fn simplify(p: &Presentation) -> Presentation {
    let mut names: Vec<String> = p.generators().to_vec();
    let mut rels = tidy(p.relators());
    let budget = 4 * rels.iter().map(Vec::len).sum::<usize>() + 10_000;
    let mut skip: BTreeSet<usize> = BTreeSet::new();
    loop {
        let candidates: Vec<Word> = rels
            .iter()
            .enumerate()
            .filter(|(i, _)| !skip.contains(i))
            .map(|(_, r)| r.clone())
            .collect();
        let Some((ci, pos)) = pick(&candidates, names.len()) else {
            break;
        };
        let ri = rels
            .iter()
            .position(|r| *r == candidates[ci])
            .expect("candidate comes from rels");
        let r = &rels[ri];
        let l = r[pos];
        let g = letter_gen(l);
        // r rotated to l u = 1, so l = u^-1.
        let u: Word = r[pos + 1..].iter().chain(&r[..pos]).copied().collect();
        let image = if is_inverse(l) { u } else { invert(&u) };
        let image_inv = invert(&image);
        let mut next: Vec<Word> = Vec::with_capacity(rels.len());
        for (i, s) in rels.iter().enumerate() {
            if i == ri {
                continue;
            }
            let mut w = Word::with_capacity(s.len());
            for &x in s {
                if letter_gen(x) == g {
                    w.extend(if is_inverse(x) { &image_inv } else { &image });
                } else {
                    w.push(x);
                }
            }
            next.push(free_reduce(&w));
        }
        if next.iter().map(Vec::len).sum::<usize>() > budget {
            skip.insert(ri);
            continue;
        }
        // Renumber generators above g.
        for w in next.iter_mut() {
            for x in w.iter_mut() {
                let h = letter_gen(*x);
                if h > g {
                    let nl = gen_letter(h - 1);
                    *x = if is_inverse(*x) { inverse_letter(nl) } else { nl };
                }
            }
        }
        names.remove(g);
        rels = tidy(&next);
        skip.clear();
    }
    Presentation::new(names, rels).expect("names were valid")
}

/// `(d_lower, d_upper)` for the minimal number of generators: the rank of
/// the abelianization and the generator count after simplification.
pub fn d_bounds(p: &Presentation) -> (usize, usize) {
    let s = simplify(p);
    (abelian_invariants(&s).min_generators(), s.generator_count())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eliminates_redundant_generators() {
        let p = Presentation::from_strs(&["a", "b", "c"], &["c A B", "a^3", "b^2"]).unwrap();
        let s = simplify(&p);
        assert_eq!(s.generator_count(), 2);
        assert_eq!(d_bounds(&p), (1, 2));
    }

    #[test]
    fn free_group_untouched() {
        let p = Presentation::from_strs(&["x", "y"], &[]).unwrap();
        assert_eq!(d_bounds(&p), (2, 2));
    }

    #[test]
    fn duplicates_up_to_rotation_and_inverse() {
        let p = Presentation::from_strs(&["a", "b"], &["a b a B A B", "b a B A B a", "b a b A B A"]).unwrap();
        assert_eq!(simplify(&p).relators().len(), 1);
    }

    #[test]
    fn trivial_generators_vanish() {
        let p = Presentation::from_strs(&["a", "b"], &["a", "b A"]).unwrap();
        let s = simplify(&p);
        assert_eq!(s.generator_count(), 0);
        assert!(s.relators().is_empty());
    }
}
