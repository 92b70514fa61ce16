//! Built-in verification targets. Their presentations ship as text files
//! embedded in the binary.

use artinrg_core::fpgroup::{artin_presentation, Presentation};
use artinrg_core::groupexpr::evaluate;
use artinrg_core::lgraph::families;
use artinrg_core::{GroupExpr, Rational};

use crate::formats::presentation::{format_presentation, parse_presentation};

pub const SL2Z: &str = include_str!("../data/sl2z.pres");
pub const PSL2Z: &str = include_str!("../data/psl2z.pres");
pub const BRAID3: &str = include_str!("../data/braid3.pres");
pub const DINF: &str = include_str!("../data/dinf.pres");

/// Which matrix images `--mod` uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixImages {
    Sl2,
    Psl2,
}

#[derive(Debug, Clone)]
pub struct Target {
    pub name: String,
    /// Presentation file text, as shipped or generated.
    pub source: String,
    pub presentation: Presentation,
    /// Group expression whose evaluation gives the symbolic value.
    pub expr: Option<GroupExpr>,
    pub matrix: Option<MatrixImages>,
}

impl Target {
    pub fn symbolic_rank_gradient(&self) -> Option<Rational> {
        self.expr
            .as_ref()
            .and_then(|e| evaluate(e).rank_gradient.known().cloned())
    }

    pub fn from_file_text(name: &str, text: &str) -> Result<Target, crate::formats::ParseError> {
        Ok(Target {
            name: name.into(),
            source: text.into(),
            presentation: parse_presentation(text)?,
            expr: None,
            matrix: None,
        })
    }
}

fn shipped(name: &str, text: &str, expr: GroupExpr, matrix: Option<MatrixImages>) -> Target {
    Target {
        name: name.into(),
        source: text.into(),
        presentation: parse_presentation(text).expect("shipped presentations parse"),
        expr: Some(expr),
        matrix,
    }
}

pub const NAMES: &str = "SL2Z, PSL2Z, braid3, braid<N>, dinf";

/// Resolves a built-in name, case-insensitively; `None` if unknown.
pub fn builtin_target(name: &str) -> Option<Target> {
    let lower = name.to_ascii_lowercase();
    let t = match lower.as_str() {
        "sl2z" => shipped(
            "SL2Z",
            SL2Z,
            GroupExpr::amalgam_finite(GroupExpr::Cyclic(4), GroupExpr::Cyclic(6), 2),
            Some(MatrixImages::Sl2),
        ),
        "psl2z" => shipped(
            "PSL2Z",
            PSL2Z,
            GroupExpr::amalgam_finite(GroupExpr::Cyclic(2), GroupExpr::Cyclic(3), 1),
            Some(MatrixImages::Psl2),
        ),
        "dinf" | "dihedral-inf" => shipped(
            "dinf",
            DINF,
            GroupExpr::amalgam_finite(GroupExpr::Cyclic(2), GroupExpr::Cyclic(2), 1),
            None,
        ),
        "braid3" => shipped("braid3", BRAID3, GroupExpr::Artin(families::braid(3)), None),
        _ => {
            let n: usize = lower.strip_prefix("braid")?.parse().ok()?;
            if !(2..=64).contains(&n) {
                return None;
            }
            let g = families::braid(n);
            let p = artin_presentation(&g);
            let source = format!("# braid group on {n} strands\n{}", format_presentation(&p));
            Target {
                name: format!("braid{n}"),
                source,
                presentation: p,
                expr: Some(GroupExpr::Artin(g)),
                matrix: None,
            }
        }
    };
    Some(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use artinrg_core::fpgroup::abelian_invariants;

    #[test]
    fn shipped_values() {
        let rg = |n: &str| builtin_target(n).unwrap().symbolic_rank_gradient().unwrap();
        assert_eq!(rg("SL2Z"), Rational::new(1, 12));
        assert_eq!(rg("psl2z"), Rational::new(1, 6));
        assert_eq!(rg("dinf"), Rational::zero());
        assert_eq!(rg("braid3"), Rational::zero());
        assert_eq!(rg("braid5"), Rational::zero());
        assert!(builtin_target("braid1").is_none());
        assert!(builtin_target("braidx").is_none());
        assert!(builtin_target("nope").is_none());
    }

    #[test]
    fn braid3_file_matches_generated_presentation() {
        let shipped = builtin_target("braid3").unwrap().presentation;
        assert_eq!(shipped, artin_presentation(&families::braid(3)));
        let generated = builtin_target("braid4").unwrap();
        assert_eq!(parse_presentation(&generated.source).unwrap(), generated.presentation);
    }

    #[test]
    fn abelianizations() {
        let ab = |n: &str| {
            let a = abelian_invariants(&builtin_target(n).unwrap().presentation);
            let f: Vec<String> = a.invariant_factors.iter().map(|x| x.to_string()).collect();
            (a.free_rank, f.join(","))
        };
        assert_eq!(ab("SL2Z"), (0, "12".into()));
        assert_eq!(ab("PSL2Z"), (0, "6".into()));
        assert_eq!(ab("braid3"), (1, String::new()));
        assert_eq!(ab("dinf"), (0, "2,2".into()));
    }
}
