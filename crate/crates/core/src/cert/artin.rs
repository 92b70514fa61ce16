//! Certificates for Artin groups by induction on the number of vertices.
//!
//! A connected vertex set `W` is handled as follows. One vertex gives `Z`;
//! one edge gives a group with infinite cyclic centre. Otherwise, if `W`
//! has a cut vertex `v` (smallest index first), `A_W` is the amalgam of the
//! groups `A_{W_j ∪ {v}}` over `A_v`, folded left into binary amalgams.
//! Without a cut vertex, `v` is the smallest vertex and `w` its smallest
//! neighbor: `A_{v,w}` and `A_{W - v}` generate `A_W` and share `A_w`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::{
    edge_center_word, AmalgamOver, CenterWitness, CertNode, Certificate, IntersectionWitness, NodeKind, RULE_AMALGAM,
    RULE_CENTER,
};
use crate::groupexpr::{GroupOrder, PriceResult, RuleApplication, Value};
use crate::lgraph::{components, components_within, cut_vertices_within, GraphError, LabelledGraph};
use crate::rational::Rational;

pub const A0_CAVEAT: &str = "chains are normal chains whose intersection is the finite residual A_0 \
(the intersection of all finite-index subgroups); residual finiteness of the Artin group is not assumed";

/// Certificate of fixed price 1 for the Artin group on the connected
/// vertex set `component` of `g`.
pub fn decompose_artin(g: &LabelledGraph, component: &[usize]) -> Result<Certificate, GraphError> {
    let mut w: Vec<usize> = component.to_vec();
    w.sort_unstable();
    w.dedup();
    if w.is_empty() || components_within(g, &w).len() != 1 {
        return Err(GraphError::Disconnected);
    }
    let root = decompose(g, &w);
    Ok(Certificate {
        subject: format!("Artin group on {{{}}}", names(g, &w).join(", ")),
        ambient: Some(g.clone()),
        caveats: alloc::vec![A0_CAVEAT.into()],
        root,
    })
}

fn names(g: &LabelledGraph, w: &[usize]) -> Vec<String> {
    w.iter().map(|&v| String::from(g.name(v))).collect()
}

fn decompose(g: &LabelledGraph, w: &[usize]) -> CertNode {
    let support = names(g, w);
    match *w {
        [v] => CertNode::amenable(&format!("A_{}", g.name(v)), "infinite cyclic vertex group").with_support(support),
        [v, u] => {
            let label = g.label(v, u).expect("connected two-vertex set has an edge");
            let witness = CenterWitness {
                v: g.name(v).into(),
                w: g.name(u).into(),
                label,
                exponent: edge_center_word(label).expect("labels are >= 2"),
            };
            CertNode::new(
                NodeKind::InfiniteCenterLeaf { witness },
                Some(Rational::one()),
                RULE_CENTER,
            )
            .with_support(support)
        }
        _ => {
            let cuts = cut_vertices_within(g, w).expect("connected");
            if let Some(&v) = cuts.first() {
                let rest: Vec<usize> = w.iter().copied().filter(|&x| x != v).collect();
                let mut parts = components_within(g, &rest).into_iter().map(|mut c| {
                    c.push(v);
                    c.sort_unstable();
                    c
                });
                let first = parts.next().unwrap();
                let mut acc_set = first.clone();
                let mut acc = decompose(g, &first);
                for part in parts {
                    let child = decompose(g, &part);
                    acc_set.extend(part.iter().copied().filter(|&x| x != v));
                    acc_set.sort_unstable();
                    let mut node = CertNode::new(
                        NodeKind::Amalgam {
                            over: AmalgamOver::Vertex {
                                vertex: g.name(v).into(),
                            },
                        },
                        Some(Rational::one()),
                        RULE_AMALGAM,
                    )
                    .with_support(names(g, &acc_set));
                    node.children = alloc::vec![acc, child];
                    acc = node;
                }
                acc
            } else {
                let v = w[0];
                let u = g
                    .neighbors(v)
                    .map(|(x, _)| x)
                    .find(|x| w.contains(x))
                    .expect("connected set of size >= 3");
                let mut pair = alloc::vec![v, u];
                pair.sort_unstable();
                let rest: Vec<usize> = w[1..].to_vec();
                CertNode::generation(
                    IntersectionWitness::Vertex {
                        vertex: g.name(u).into(),
                    },
                    decompose(g, &pair),
                    decompose(g, &rest),
                    Vec::new(),
                )
                .with_support(support)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArtinOutcome {
    pub components: usize,
    pub result: PriceResult,
    pub certificate: Certificate,
}

/// Fixed price `b` and rank gradient `b - 1` for the Artin group on `g`
/// with `b` components, with a certificate joining the per-component
/// certificates by free products.
pub fn rg_artin(g: &LabelledGraph) -> ArtinOutcome {
    let comps = components(g);
    let b = comps.len();
    let mut iter = comps.iter();
    let first = iter.next().expect("graphs are non-empty");
    let mut acc_set = first.clone();
    let mut acc = decompose(g, first);
    let mut cost = Rational::one();
    for comp in iter {
        let child = decompose(g, comp);
        acc_set.extend(comp.iter().copied());
        acc_set.sort_unstable();
        cost += Rational::one();
        let mut node = CertNode::new(
            NodeKind::Amalgam {
                over: AmalgamOver::Finite { order: 1 },
            },
            Some(cost.clone()),
            RULE_AMALGAM,
        )
        .with_support(names(g, &acc_set));
        node.children = alloc::vec![acc, child];
        acc = node;
    }
    let rg = Rational::integer(b as i64 - 1);
    let result = PriceResult {
        cost: Value::Known(Rational::integer(b as i64)),
        rank_gradient: Value::Known(rg.clone()),
        betti1: Value::Known(rg),
        fixed_price: true,
        order: Some(GroupOrder::Infinite),
        rule_trace: alloc::vec![RuleApplication {
            rule: "artin-components".into(),
            at: "root".into(),
            detail: format!("{b} component(s)"),
        }],
    };
    ArtinOutcome {
        components: b,
        result,
        certificate: Certificate {
            subject: format!("Artin group on {} vertices", g.vertex_count()),
            ambient: Some(g.clone()),
            caveats: alloc::vec![A0_CAVEAT.into()],
            root: acc,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cert::check_certificate;
    use crate::lgraph::families;

    #[test]
    fn base_cases() {
        let one = LabelledGraph::from_indexed(1, &[]).unwrap();
        let c = decompose_artin(&one, &[0]).unwrap();
        assert!(matches!(c.root.kind, NodeKind::AmenableLeaf { .. }));
        let edge = families::path(&[4]);
        let c = decompose_artin(&edge, &[0, 1]).unwrap();
        match &c.root.kind {
            NodeKind::InfiniteCenterLeaf { witness } => assert_eq!(witness.exponent, 2),
            k => panic!("unexpected {k:?}"),
        }
    }

    #[test]
    fn path_splits_at_middle() {
        let g = families::path(&[3, 3]);
        let c = decompose_artin(&g, &[0, 1, 2]).unwrap();
        assert!(matches!(&c.root.kind, NodeKind::Amalgam { over: AmalgamOver::Vertex { vertex } } if vertex == "v1"));
        assert_eq!(c.root.children.len(), 2);
        assert!(c
            .root
            .children
            .iter()
            .all(|ch| matches!(ch.kind, NodeKind::InfiniteCenterLeaf { .. })));
        assert!(check_certificate(&c).is_valid());
    }

    #[test]
    fn star_folds_left() {
        let g = LabelledGraph::from_indexed(4, &[(0, 1, 2), (0, 2, 3), (0, 3, 5)]).unwrap();
        let c = decompose_artin(&g, &[0, 1, 2, 3]).unwrap();
        assert!(matches!(c.root.children[0].kind, NodeKind::Amalgam { .. }));
        let report = check_certificate(&c);
        assert!(report.is_valid(), "{:?}", report.violations);
    }

    #[test]
    fn cycle_uses_generation() {
        let g = families::cycle(&[2, 3, 4, 5]);
        let c = decompose_artin(&g, &[0, 1, 2, 3]).unwrap();
        assert!(
            matches!(&c.root.kind, NodeKind::Generation { witness: IntersectionWitness::Vertex { vertex } } if vertex == "v1")
        );
        assert!(check_certificate(&c).is_valid());
    }

    #[test]
    fn disconnected_set_is_rejected() {
        let g = LabelledGraph::from_indexed(2, &[]).unwrap();
        assert_eq!(decompose_artin(&g, &[0, 1]), Err(GraphError::Disconnected));
    }

    #[test]
    fn components_join_by_free_product() {
        let g = LabelledGraph::from_indexed(5, &[(0, 1, 3), (3, 4, 2)]).unwrap();
        let out = rg_artin(&g);
        assert_eq!(out.components, 3);
        assert_eq!(out.result.rank_gradient, Value::Known(Rational::integer(2)));
        let report = check_certificate(&out.certificate);
        assert!(report.is_valid(), "{:?}", report.violations);
        assert_eq!(report.root_cost, Some(Rational::integer(3)));
    }
}
