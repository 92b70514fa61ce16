//! Independent certificate checker. Every claimed cost is recomputed from
//! the children; claimed values are never trusted.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::{
    edge_center_word, AmalgamOver, CertNode, Certificate, IntersectionWitness, NodeKind, RULE_AMALGAM, RULE_AMENABLE,
    RULE_CENTER, RULE_CITED, RULE_FINITE, RULE_GENERATION, RULE_NORMAL,
};
use crate::lgraph::LabelledGraph;
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub at: String,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assumption {
    pub at: String,
    pub statement: String,
    pub citation: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub violations: Vec<Violation>,
    pub assumptions: Vec<Assumption>,
    /// Recomputed cost of the root, if it has one.
    pub root_cost: Option<Rational>,
}

impl CheckReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn check_certificate(c: &Certificate) -> CheckReport {
    let mut ck = Checker {
        violations: Vec::new(),
        assumptions: Vec::new(),
    };
    let root_cost = ck.node(&c.root, c.ambient.as_ref(), "root");
    CheckReport {
        violations: ck.violations,
        assumptions: ck.assumptions,
        root_cost,
    }
}

struct Checker {
    violations: Vec<Violation>,
    assumptions: Vec<Assumption>,
}

type Support = BTreeSet<String>;

impl Checker {
    fn fail(&mut self, at: &str, message: impl Into<String>) {
        self.violations.push(Violation {
            at: at.into(),
            message: message.into(),
        });
    }

    /// Returns the recomputed cost of `n`, or `None` if it has none.
    fn node(&mut self, n: &CertNode, ambient: Option<&LabelledGraph>, at: &str) -> Option<Rational> {
        let ambient = n.scope.as_ref().or(ambient);
        if let Some(s) = &n.support {
            match ambient {
                None => self.fail(at, "support given without an ambient graph"),
                Some(g) => {
                    for name in s {
                        if g.index_of(name).is_none() {
                            self.fail(at, format!("support vertex {name:?} is not in the ambient graph"));
                        }
                    }
                    if s.is_empty() {
                        self.fail(at, "empty support");
                    }
                }
            }
        }
        let expected_rule = match &n.kind {
            NodeKind::FiniteLeaf { .. } => RULE_FINITE,
            NodeKind::AmenableLeaf { .. } => RULE_AMENABLE,
            NodeKind::InfiniteCenterLeaf { .. } => RULE_CENTER,
            NodeKind::Amalgam { .. } => RULE_AMALGAM,
            NodeKind::Generation { .. } => RULE_GENERATION,
            NodeKind::NormalSubgroup { .. } => RULE_NORMAL,
            NodeKind::CitedFact { .. } => RULE_CITED,
        };
        if n.rule != expected_rule {
            self.fail(
                at,
                format!(
                    "rule {:?} does not justify this node (expected {expected_rule:?})",
                    n.rule
                ),
            );
        }

        let child_costs: Vec<Option<Rational>> = n
            .children
            .iter()
            .enumerate()
            .map(|(i, ch)| self.node(ch, ambient, &format!("{at}.{i}")))
            .collect();

        let cost = match &n.kind {
            NodeKind::FiniteLeaf { order } => {
                self.leaf(n, at);
                if *order == 0 {
                    self.fail(at, "finite order 0");
                    None
                } else {
                    Some(Rational::one() - Rational::recip_of(*order))
                }
            }
            NodeKind::AmenableLeaf { .. } => {
                self.leaf(n, at);
                if let (Some(g), Some(s)) = (ambient, &n.support) {
                    self.amenable_support(g, s, at);
                }
                Some(Rational::one())
            }
            NodeKind::InfiniteCenterLeaf { witness } => {
                self.leaf(n, at);
                match edge_center_word(witness.label) {
                    Ok(k) if k == witness.exponent => {}
                    Ok(k) => self.fail(
                        at,
                        format!(
                            "centre witness exponent {} should be {k} for label {}",
                            witness.exponent, witness.label
                        ),
                    ),
                    Err(e) => self.fail(at, format!("{e}")),
                }
                if let Some(g) = ambient {
                    let pair: Support = [witness.v.clone(), witness.w.clone()].into_iter().collect();
                    if n.support.as_ref().map(|s| to_set(s)) != Some(pair) {
                        self.fail(at, "support must be exactly the witness edge");
                    }
                    match (g.index_of(&witness.v), g.index_of(&witness.w)) {
                        (Some(a), Some(b)) => match g.label(a, b) {
                            Some(l) if l == witness.label => {}
                            Some(l) => self.fail(
                                at,
                                format!("ambient edge has label {l}, witness says {}", witness.label),
                            ),
                            None => self.fail(at, format!("{} and {} are not adjacent", witness.v, witness.w)),
                        },
                        _ => self.fail(at, "witness vertices are not in the ambient graph"),
                    }
                }
                Some(Rational::one())
            }
            NodeKind::Amalgam { over } => self.amalgam(n, over, &child_costs, ambient, at),
            NodeKind::Generation { witness } => self.generation(n, witness, &child_costs, at),
            NodeKind::NormalSubgroup { reason, .. } => {
                if reason.trim().is_empty() {
                    self.fail(at, "normal subgroup node needs a reason");
                }
                if n.children.len() != 1 {
                    self.fail(at, "normal subgroup node needs exactly one child");
                } else if child_costs[0].as_ref() != Some(&Rational::one()) {
                    self.fail(at, "normal subgroup must have fixed price 1");
                }
                if n.claimed_cost.is_some() {
                    self.fail(
                        at,
                        "normal subgroup node certifies rank gradient only; no cost may be claimed",
                    );
                }
                return None;
            }
            NodeKind::CitedFact { statement, citation } => {
                self.leaf(n, at);
                if n.claimed_cost.is_some() {
                    self.fail(at, "cited fact cannot claim a cost");
                }
                self.assumptions.push(Assumption {
                    at: at.into(),
                    statement: statement.clone(),
                    citation: citation.clone(),
                });
                return None;
            }
        };

        match (&cost, &n.claimed_cost) {
            (Some(c), Some(claim)) if c != claim => {
                self.fail(at, format!("claimed cost {claim} but rule gives {c}"));
            }
            (Some(_), None) => self.fail(at, "missing claimed cost"),
            _ => {}
        }
        cost
    }

    fn leaf(&mut self, n: &CertNode, at: &str) {
        if !n.children.is_empty() {
            self.fail(at, "leaf node has children");
        }
    }

    fn amenable_support(&mut self, g: &LabelledGraph, s: &[String], at: &str) {
        let idx: Vec<usize> = s.iter().filter_map(|x| g.index_of(x)).collect();
        let ok = match idx.as_slice() {
            [_] => true,
            [a, b] => g.label(*a, *b) == Some(2),
            _ => false,
        };
        if !ok {
            self.fail(at, "amenable Artin subgroup must be a vertex or an edge labelled 2");
        }
    }

    /// Splits children into the two group children and trailing cited facts.
    fn split_children<'a>(
        &mut self,
        n: &'a CertNode,
        costs: &[Option<Rational>],
        at: &str,
    ) -> Option<[(&'a CertNode, Rational); 2]> {
        let groups: Vec<usize> = (0..n.children.len())
            .filter(|&i| !matches!(n.children[i].kind, NodeKind::CitedFact { .. }))
            .collect();
        if groups.len() != 2 {
            self.fail(at, format!("expected two group children, found {}", groups.len()));
            return None;
        }
        let mut out = Vec::with_capacity(2);
        for &i in &groups {
            match &costs[i] {
                Some(c) => out.push((&n.children[i], c.clone())),
                None => {
                    self.fail(at, format!("child {i} has no cost"));
                    return None;
                }
            }
        }
        let b = out.pop().unwrap();
        let a = out.pop().unwrap();
        Some([a, b])
    }

    fn amalgam(
        &mut self,
        n: &CertNode,
        over: &AmalgamOver,
        costs: &[Option<Rational>],
        ambient: Option<&LabelledGraph>,
        at: &str,
    ) -> Option<Rational> {
        let [(a, ca), (b, cb)] = self.split_children(n, costs, at)?;
        let cc = match over {
            AmalgamOver::Finite { order: 0 } => {
                self.fail(at, "amalgamated subgroup of order 0");
                return None;
            }
            AmalgamOver::Finite { order } => Rational::one() - Rational::recip_of(*order),
            AmalgamOver::Amenable { .. } | AmalgamOver::Vertex { .. } => Rational::one(),
        };
        let supports = (&n.support, &a.support, &b.support);
        match over {
            AmalgamOver::Vertex { vertex } => match (ambient, supports) {
                (Some(g), (Some(p), Some(sa), Some(sb))) => {
                    let (sa, sb) = (to_set(sa), to_set(sb));
                    if sa.union(&sb).cloned().collect::<Support>() != to_set(p) {
                        self.fail(at, "children supports do not cover the parent");
                    }
                    let inter: Support = sa.intersection(&sb).cloned().collect();
                    if inter.len() != 1 || !inter.contains(vertex) {
                        self.fail(at, format!("children must meet exactly in {vertex:?}"));
                    }
                    self.no_crossing_edges(g, &sa, &sb, at);
                }
                _ => self.fail(at, "amalgam over a vertex group needs an ambient graph and supports"),
            },
            AmalgamOver::Finite { order: 1 } => {
                if let (Some(g), (Some(p), Some(sa), Some(sb))) = (ambient, supports) {
                    let (sa, sb) = (to_set(sa), to_set(sb));
                    if sa.union(&sb).cloned().collect::<Support>() != to_set(p) {
                        self.fail(at, "children supports do not cover the parent");
                    }
                    if sa.intersection(&sb).next().is_some() {
                        self.fail(at, "free factors must have disjoint supports");
                    }
                    self.no_crossing_edges(g, &sa, &sb, at);
                }
            }
            _ => {}
        }
        Some(ca + cb - cc)
    }

    fn no_crossing_edges(&mut self, g: &LabelledGraph, sa: &Support, sb: &Support, at: &str) {
        for x in sa.difference(sb) {
            for y in sb.difference(sa) {
                if let (Some(u), Some(v)) = (g.index_of(x), g.index_of(y)) {
                    if g.label(u, v).is_some() {
                        self.fail(at, format!("ambient edge {x}-{y} crosses the splitting"));
                    }
                }
            }
        }
    }

    fn generation(
        &mut self,
        n: &CertNode,
        witness: &IntersectionWitness,
        costs: &[Option<Rational>],
        at: &str,
    ) -> Option<Rational> {
        let [(a, ca), (b, cb)] = self.split_children(n, costs, at)?;
        let one = Rational::one();
        if ca != one || cb != one {
            self.fail(
                at,
                format!("generation rule needs children of cost 1, got {ca} and {cb}"),
            );
        }
        match witness {
            IntersectionWitness::Vertex { vertex } => match (&a.support, &b.support) {
                (Some(sa), Some(sb)) => {
                    let (sa, sb) = (to_set(sa), to_set(sb));
                    let inter: Support = sa.intersection(&sb).cloned().collect();
                    if inter.is_empty() {
                        self.fail(at, "empty intersection");
                    } else if !inter.contains(vertex) {
                        self.fail(at, format!("witness {vertex:?} is not in both children"));
                    }
                    if let Some(p) = &n.support {
                        if sa.union(&sb).cloned().collect::<Support>() != to_set(p) {
                            self.fail(at, "children supports do not cover the parent");
                        }
                    }
                }
                _ => self.fail(at, "vertex witness needs supports on both children"),
            },
            IntersectionWitness::Subgroup { descriptor, words } => {
                if descriptor.trim().is_empty() || words.is_empty() {
                    self.fail(at, "subgroup witness needs a descriptor and generating words");
                }
                if !n.children.iter().any(|c| matches!(c.kind, NodeKind::CitedFact { .. })) {
                    self.fail(at, "subgroup witness needs a cited fact among the children");
                }
            }
        }
        Some(one)
    }
}

fn to_set(s: &[String]) -> Support {
    s.iter().cloned().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cert::{decompose_artin, CenterWitness};
    use crate::lgraph::families;
    use alloc::vec;

    fn center(v: &str, w: &str, label: u64) -> CertNode {
        CertNode::new(
            NodeKind::InfiniteCenterLeaf {
                witness: CenterWitness {
                    v: v.into(),
                    w: w.into(),
                    label,
                    exponent: edge_center_word(label).unwrap(),
                },
            },
            Some(Rational::one()),
            RULE_CENTER,
        )
        .with_support(vec![v.into(), w.into()])
    }

    #[test]
    fn disjoint_generation_is_rejected() {
        let g = families::path(&[3, 2, 3]);
        let root = CertNode::generation(
            IntersectionWitness::Vertex { vertex: "v1".into() },
            center("v0", "v1", 3),
            center("v2", "v3", 3),
            Vec::new(),
        );
        let c = Certificate {
            subject: "test".into(),
            ambient: Some(g),
            caveats: Vec::new(),
            root,
        };
        let r = check_certificate(&c);
        assert!(r.violations.iter().any(|v| v.message == "empty intersection"));
    }

    #[test]
    fn finite_amalgam_arithmetic() {
        let mut root = CertNode::new(
            NodeKind::Amalgam {
                over: AmalgamOver::Finite { order: 2 },
            },
            Some(Rational::new(3, 2)),
            RULE_AMALGAM,
        );
        root.children = vec![
            CertNode::amenable("Z", "infinite cyclic"),
            CertNode::amenable("Z", "infinite cyclic"),
        ];
        let c = Certificate {
            subject: "arith".into(),
            ambient: None,
            caveats: Vec::new(),
            root,
        };
        let r = check_certificate(&c);
        assert!(r.is_valid(), "{:?}", r.violations);
        assert_eq!(r.root_cost, Some(Rational::new(3, 2)));
    }

    #[test]
    fn tampered_claims_are_caught() {
        let g = families::path(&[3, 3]);
        let mut c = decompose_artin(&g, &[0, 1, 2]).unwrap();
        c.root.claimed_cost = Some(Rational::integer(2));
        assert!(!check_certificate(&c).is_valid());

        let mut c = decompose_artin(&g, &[0, 1, 2]).unwrap();
        if let NodeKind::InfiniteCenterLeaf { witness } = &mut c.root.children[0].kind {
            witness.exponent = 1;
        }
        assert!(!check_certificate(&c).is_valid());

        let mut c = decompose_artin(&g, &[0, 1, 2]).unwrap();
        c.root.rule = "wishful-thinking".into();
        assert!(!check_certificate(&c).is_valid());
    }

    #[test]
    fn crossing_edge_is_caught() {
        let g = families::cycle(&[2, 2, 2, 2]);
        let mut root = CertNode::new(
            NodeKind::Amalgam {
                over: AmalgamOver::Vertex { vertex: "v1".into() },
            },
            Some(Rational::one()),
            RULE_AMALGAM,
        )
        .with_support(vec!["v0".into(), "v1".into(), "v2".into(), "v3".into()]);
        let left = decompose_artin(&g, &[0, 1]).unwrap().root;
        let right = decompose_artin(&g, &[1, 2, 3]).unwrap().root;
        root.children = vec![left, right];
        let c = Certificate {
            subject: "bad split".into(),
            ambient: Some(g),
            caveats: Vec::new(),
            root,
        };
        let r = check_certificate(&c);
        assert!(r.violations.iter().any(|v| v.message.contains("crosses")));
    }

    #[test]
    fn subgroup_witness_needs_a_fact() {
        let root = CertNode::generation(
            IntersectionWitness::Subgroup {
                descriptor: "<t>".into(),
                words: vec!["t".into()],
            },
            CertNode::amenable("Z", "cyclic"),
            CertNode::amenable("Z", "cyclic"),
            Vec::new(),
        );
        let c = Certificate {
            subject: "x".into(),
            ambient: None,
            caveats: Vec::new(),
            root,
        };
        assert!(!check_certificate(&c).is_valid());
    }
}
