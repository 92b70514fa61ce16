//! Hand-encoded certificates for mapping class groups, automorphism groups
//! of free groups and related groups. Facts about twists, Garside elements
//! and explicit automorphisms enter as cited facts and are counted by the
//! checker; only the cost skeleton is checked.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use super::{
    decompose_artin, AmalgamOver, CenterWitness, CertNode, Certificate, IntersectionWitness, NodeKind, RULE_AMALGAM,
    RULE_CENTER,
};
use crate::lgraph::{families, LabelledGraph};
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Builtin {
    Sl2z,
    Mcg(u32),
    BnModCenter(u32),
    AutF2,
    AutFn(u32),
    OutFn(u32),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BuiltinError {
    #[error("unknown target {0:?}")]
    Unknown(String),
    #[error("{0} needs a parameter")]
    MissingParameter(&'static str),
    #[error("{name} parameter {value} out of range (needs >= {min})")]
    OutOfRange { name: &'static str, value: u32, min: u32 },
}

impl Builtin {
    pub const NAMES: [&'static str; 6] = ["SL2Z", "MCG", "BnModCenter", "AutF2", "AutFn", "OutFn"];

    /// Parses a target name (case-insensitive) and optional parameter.
    pub fn parse(name: &str, param: Option<u32>) -> Result<Self, BuiltinError> {
        let need = |n: &'static str, min: u32| -> Result<u32, BuiltinError> {
            let v = param.ok_or(BuiltinError::MissingParameter(n))?;
            if v < min {
                Err(BuiltinError::OutOfRange { name: n, value: v, min })
            } else {
                Ok(v)
            }
        };
        match name.to_ascii_lowercase().as_str() {
            "sl2z" => Ok(Builtin::Sl2z),
            "mcg" => Ok(Builtin::Mcg(need("MCG", 2)?)),
            "bnmodcenter" => Ok(Builtin::BnModCenter(need("BnModCenter", 4)?)),
            "autf2" => Ok(Builtin::AutF2),
            "autfn" => match need("AutFn", 2)? {
                2 => Ok(Builtin::AutF2),
                n => Ok(Builtin::AutFn(n)),
            },
            "outfn" => Ok(Builtin::OutFn(need("OutFn", 3)?)),
            _ => Err(BuiltinError::Unknown(name.into())),
        }
    }

    pub fn validate(self) -> Result<(), BuiltinError> {
        let check = |name, value, min| {
            if value < min {
                Err(BuiltinError::OutOfRange { name, value, min })
            } else {
                Ok(())
            }
        };
        match self {
            Builtin::Sl2z | Builtin::AutF2 => Ok(()),
            Builtin::Mcg(g) => check("MCG", g, 2),
            Builtin::BnModCenter(n) => check("BnModCenter", n, 4),
            Builtin::AutFn(n) => check("AutFn", n, 3),
            Builtin::OutFn(n) => check("OutFn", n, 3),
        }
    }
}

impl fmt::Display for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Builtin::Sl2z => f.write_str("SL(2,Z)"),
            Builtin::Mcg(g) => write!(f, "Mod(S_{g})"),
            Builtin::BnModCenter(n) => write!(f, "B_{n}/Z(B_{n})"),
            Builtin::AutF2 => f.write_str("Aut(F_2)"),
            Builtin::AutFn(n) => write!(f, "Aut(F_{n})"),
            Builtin::OutFn(n) => write!(f, "Out(F_{n})"),
        }
    }
}

pub fn builtin_certificate(b: Builtin) -> Result<Certificate, BuiltinError> {
    b.validate()?;
    Ok(match b {
        Builtin::Sl2z => Certificate {
            subject: "SL(2,Z), identified with Z/6 *_{Z/2} Z/4 (standard)".into(),
            ambient: None,
            caveats: Vec::new(),
            root: sl2z(),
        },
        Builtin::Mcg(g) => mcg(g),
        Builtin::BnModCenter(n) => Certificate {
            subject: format!("B_{n}/Z_{n}, Z_{n} the centre of the braid group"),
            ambient: None,
            caveats: Vec::new(),
            root: bn_mod_center(n),
        },
        Builtin::AutF2 => Certificate {
            subject: "Aut(F_2), generated by B_4/Z_4 and t".into(),
            ambient: None,
            caveats: Vec::new(),
            root: aut_f2(""),
        },
        Builtin::AutFn(n) => Certificate {
            subject: format!("Aut(F_{n}), generated by the copies A_1..A_{} of Aut(F_2) and D", n - 1),
            ambient: None,
            caveats: Vec::new(),
            root: aut_fn(n),
        },
        Builtin::OutFn(3) => Certificate {
            subject: "Out(F_3), generated by the images of X and Y".into(),
            ambient: None,
            caveats: Vec::new(),
            root: out_f3(),
        },
        Builtin::OutFn(n) => Certificate {
            subject: format!(
                "Out(F_{n}), generated by the images of the copies of Aut(F_{}) fixing x_1 and fixing x_{n}",
                n - 1
            ),
            ambient: None,
            caveats: Vec::new(),
            root: out_fn(n),
        },
    })
}

fn sl2z() -> CertNode {
    let mut root = CertNode::new(
        NodeKind::Amalgam {
            over: AmalgamOver::Finite { order: 2 },
        },
        Some(Rational::new(13, 12)),
        RULE_AMALGAM,
    );
    root.children = alloc::vec![CertNode::finite(6), CertNode::finite(4)];
    root
}

/// Lickorish twists in the order `m1, a1, c1, a2, m2, a2, c2, ..., c_{g-1}, a_g, m_g`.
pub(crate) fn lickorish_sequence(g: u32) -> Vec<String> {
    let mut s: Vec<String> = alloc::vec!["m1".into(), "a1".into()];
    for i in 1..g {
        s.push(format!("c{i}"));
        s.push(format!("a{}", i + 1));
        s.push(format!("m{}", i + 1));
        if i + 1 < g {
            s.push(format!("a{}", i + 1));
        }
    }
    s
}

/// Consecutive pairs of the sequence, each unordered pair once.
pub(crate) fn twist_pairs(g: u32) -> Vec<(String, String)> {
    let seq = lickorish_sequence(g);
    let mut pairs: Vec<(String, String)> = Vec::new();
    for w in seq.windows(2) {
        let dup = pairs
            .iter()
            .any(|(x, y)| (x == &w[0] && y == &w[1]) || (x == &w[1] && y == &w[0]));
        if !dup {
            pairs.push((w[0].clone(), w[1].clone()));
        }
    }
    pairs
}

fn mcg(g: u32) -> Certificate {
    let pairs = twist_pairs(g);
    let mut names: Vec<String> = Vec::new();
    for (x, y) in &pairs {
        for n in [x, y] {
            if !names.contains(n) {
                names.push(n.clone());
            }
        }
    }
    let edges: Vec<(String, String, u64)> = pairs.iter().map(|(x, y)| (x.clone(), y.clone(), 3)).collect();
    let ambient = LabelledGraph::from_parts(&names, &edges).expect("twist graph is simple");

    let braid_copy = |x: &str, y: &str| {
        CertNode::new(
            NodeKind::InfiniteCenterLeaf {
                witness: CenterWitness {
                    v: x.into(),
                    w: y.into(),
                    label: 3,
                    exponent: 3,
                },
            },
            Some(Rational::one()),
            RULE_CENTER,
        )
        .with_support(alloc::vec![x.into(), y.into()])
    };
    let bh = |x: &str, y: &str| {
        CertNode::cited(
            &format!("<{x}, {y}> is isomorphic to B_3: the curves are non-separating and meet once"),
            "BH",
        )
    };

    let (x0, y0) = &pairs[0];
    let mut acc = braid_copy(x0, y0);
    let mut support: Vec<String> = alloc::vec![x0.clone(), y0.clone()];
    let mut first_fact = Some(bh(x0, y0));
    for (x, y) in &pairs[1..] {
        let shared = if support.contains(x) { x } else { y };
        for n in [x, y] {
            if !support.contains(n) {
                support.push(n.clone());
            }
        }
        let mut facts: Vec<CertNode> = first_fact.take().into_iter().collect();
        facts.push(bh(x, y));
        acc = CertNode::generation(
            IntersectionWitness::Vertex { vertex: shared.clone() },
            acc,
            braid_copy(x, y),
            facts,
        )
        .with_support(support.clone());
    }
    Certificate {
        subject: format!("Mod(S_{g}), generated by the Lickorish twists {} [Lic]", lickorish_sequence(g).join(", ")),
        ambient: Some(ambient),
        caveats: alloc::vec![
            "the ambient graph only records which twists pair into braid subgroups; Mod(S_g) is not claimed to be its Artin group".into(),
            "a shared twist has infinite order, so consecutive braid subgroups meet in an infinite cyclic group".into(),
        ],
        root: acc,
    }
}

fn bn_mod_center(n: u32) -> CertNode {
    let braid = families::braid(n as usize);
    let k = braid.vertex_count();
    let a: Vec<usize> = (0..k - 1).collect();
    let b: Vec<usize> = (1..k).collect();
    let ca = decompose_artin(&braid, &a).expect("connected").root;
    let cb = decompose_artin(&braid, &b).expect("connected").root;
    let support: Vec<String> = braid.names().to_vec();
    CertNode::generation(
        IntersectionWitness::Vertex { vertex: "s2".into() },
        ca,
        cb,
        alloc::vec![
            CertNode::cited(
                &format!(
                    "the centre of B_{n} is generated by the Garside element and meets <s1..s{}> trivially",
                    n - 2
                ),
                "Garside",
            ),
            CertNode::cited(
                &format!("the centre of B_{n} meets <s2..s{}> trivially", n - 1),
                "Garside",
            ),
        ],
    )
    .with_support(support)
    .with_scope(braid)
}

/// `Aut(F_2)` on the pair of generators named by `tag` (empty for the
/// standard copy).
fn aut_f2(tag: &str) -> CertNode {
    let t = CertNode::amenable(&format!("<t{tag}>"), "infinite cyclic");
    CertNode::generation(
        IntersectionWitness::Subgroup {
            descriptor: format!("<t{tag}^2>"),
            words: alloc::vec![format!("t{tag}^2")],
        },
        bn_mod_center(4),
        t,
        alloc::vec![
            CertNode::cited("Aut(F_2) contains B_4/Z_4 as a subgroup of index two", "DF"),
            CertNode::cited(
                "t: x1 -> x1 x2, x2 -> x1 has infinite order and determinant -1, so it lies outside B_4/Z_4 and t^2 lies inside",
                "standard",
            ),
        ],
    )
}

fn aut_fn(n: u32) -> CertNode {
    let braid = families::braid(n as usize);
    let all: Vec<usize> = (0..braid.vertex_count()).collect();
    let d = decompose_artin(&braid, &all).expect("connected").root.with_scope(braid);
    let mut acc = d;
    let mut d_fact = Some(CertNode::cited(
        &format!(
            "D = <f_1..f_{}> is isomorphic to B_{n}, f_i(x_i) = x_i x_(i+1) x_i^-1, f_i(x_(i+1)) = x_i",
            n - 1
        ),
        "standard",
    ));
    for i in 1..n {
        let mut facts: Vec<CertNode> = d_fact.take().into_iter().collect();
        facts.push(CertNode::cited(
            &format!("f_{i} lies in A_{i} and in D and has infinite order"),
            "standard",
        ));
        acc = CertNode::generation(
            IntersectionWitness::Subgroup {
                descriptor: format!("<f_{i}>"),
                words: alloc::vec![format!("f_{i}")],
            },
            acc,
            aut_f2(&format!("_{i}")),
            facts,
        );
    }
    acc
}

fn out_f3() -> CertNode {
    let image = |name: &str| {
        let mut node = aut_f2(&format!("_{name}"));
        node.children.push(CertNode::cited(
            &format!("the image of {name} in Out(F_3) is isomorphic to Aut(F_2)"),
            "standard",
        ));
        node
    };
    let xz = CertNode::generation(
        IntersectionWitness::Subgroup {
            descriptor: "<alpha>".into(),
            words: alloc::vec!["alpha".into()],
        },
        image("X"),
        image("Z"),
        alloc::vec![CertNode::cited(
            "X̄ ∩ Z̄ ⊇ <ᾱ> infinite, alpha: x1 -> x1, x2 -> x1 x2, x3 -> x3",
            "standard",
        )],
    );
    CertNode::generation(
        IntersectionWitness::Subgroup {
            descriptor: "<gamma beta>".into(),
            words: alloc::vec!["gamma beta".into()],
        },
        xz,
        image("Y"),
        alloc::vec![CertNode::cited(
            "<X̄, Z̄> ∩ Ȳ contains the image of gamma∘beta (x1 -> x1, x2 -> x2, x3 -> x2^-1 x3), of infinite order",
            "standard",
        )],
    )
}

fn out_fn(n: u32) -> CertNode {
    let copy = |which: &str| {
        let mut node = aut_fn(n - 1);
        node.children.push(CertNode::cited(
            &format!(
                "the copy of Aut(F_{}) fixing {which} maps injectively to Out(F_{n})",
                n - 1
            ),
            "standard",
        ));
        node
    };
    CertNode::generation(
        IntersectionWitness::Subgroup {
            descriptor: "Aut(F_2)".into(),
            words: alloc::vec!["Aut(F_2)".into()],
        },
        copy("x_1"),
        copy(&format!("x_{n}")),
        alloc::vec![CertNode::cited(
            "both copies contain Aut(F_2) acting on <x_2, x_3>, an infinite group",
            "standard",
        )],
    )
}
