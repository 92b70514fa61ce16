//! Planar girth-6 families: closed form against an independent replay of
//! the elimination trace, under both tie-breaks.

use std::collections::BTreeSet;

use artinrg_core::coxeter::{closed_form, coxeter_order, rg_coxeter_planar, rg_coxeter_planar_with, CoxeterError};
use artinrg_core::groupexpr::evaluate;
use artinrg_core::lgraph::{families, TieBreak};
use artinrg_core::{GroupExpr, GroupOrder, LabelledGraph, Rational, Value};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn family(rng: &mut ChaCha8Rng, count: usize) -> Vec<LabelledGraph> {
    let mut out = vec![families::cycle(&[2; 6])];
    while out.len() < count {
        let g = match out.len() % 6 {
            0 => {
                let len = rng.gen_range(1..10);
                families::path(&(0..len).map(|_| rng.gen_range(2..=7u64)).collect::<Vec<_>>())
            }
            1 => {
                let n = rng.gen_range(3..12);
                let seq: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
                families::prufer_tree(&seq, |_| rng.gen_range(2..=7))
            }
            2 => {
                let n = rng.gen_range(6..10);
                families::cycle(&(0..n).map(|_| rng.gen_range(2..=7u64)).collect::<Vec<_>>())
            }
            3 => {
                let (r, c) = (rng.gen_range(2..5), rng.gen_range(2..6));
                families::honeycomb(r, c, |_| rng.gen_range(2..=7))
            }
            4 => {
                let k = rng.gen_range(1..3);
                families::subdivide(&families::complete(4, 2), k, |_| rng.gen_range(2..=7))
            }
            _ => {
                let a = families::honeycomb(2, 3, |_| rng.gen_range(2..=7));
                let len = rng.gen_range(0..4);
                let b = families::path(&(0..len).map(|_| rng.gen_range(2..=7)).collect::<Vec<_>>());
                families::disjoint_union(&a, &b)
            }
        };
        out.push(g);
    }
    out
}

/// Replays the trace on the graph: every step removes a vertex whose
/// remaining neighbors carry exactly the recorded labels.
fn replay_sum(g: &LabelledGraph, steps: &[(String, Vec<u64>)]) -> Rational {
    let mut removed = BTreeSet::new();
    let mut sum = Rational::zero();
    for (name, labels) in steps {
        let v = g.index_of(name).unwrap();
        let mut live: Vec<u64> = g
            .neighbors(v)
            .filter(|(w, _)| !removed.contains(w))
            .map(|(_, l)| l)
            .collect();
        let mut rec = labels.clone();
        live.sort_unstable();
        rec.sort_unstable();
        assert_eq!(live, rec, "step at {name}");
        assert!(live.len() <= 2);
        sum += Rational::new(1, 2);
        for l in live {
            sum -= Rational::new(1, 2 * l as i64);
        }
        removed.insert(v);
    }
    assert_eq!(removed.len(), g.vertex_count());
    sum - Rational::one()
}

#[test]
fn closed_form_equals_trace_on_generated_family() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let graphs = family(&mut rng, 100);
    assert_eq!(graphs.len(), 100);
    for g in &graphs {
        let cf = closed_form(g);
        for tie in [TieBreak::SmallestIndex, TieBreak::LargestIndex] {
            let out = rg_coxeter_planar_with(g, tie).unwrap();
            let steps: Vec<(String, Vec<u64>)> = out
                .trace
                .steps
                .iter()
                .map(|s| (s.vertex.clone(), s.labels.clone()))
                .collect();
            assert_eq!(replay_sum(g, &steps), cf);
            assert_eq!(out.trace.total(), cf);
            assert_eq!(out.result.rank_gradient, Value::Known(cf.clone()));
            out.result.check_relations().unwrap();
        }
        let a = rg_coxeter_planar_with(g, TieBreak::SmallestIndex).unwrap();
        let b = rg_coxeter_planar_with(g, TieBreak::LargestIndex).unwrap();
        assert_eq!(a.trace.steps.len(), g.vertex_count());
        assert_eq!(a.result, b.result);
    }
}

#[test]
fn hexagon_with_labels_two() {
    let out = rg_coxeter_planar(&families::cycle(&[2; 6])).unwrap();
    assert_eq!(out.closed_form, Rational::new(1, 2));
    assert_eq!(out.result.betti1, Value::Known(Rational::new(1, 2)));
}

#[test]
fn single_edge_matches_finite_group_rule() {
    for m in 2..=12u64 {
        let g = families::path(&[m]);
        let out = rg_coxeter_planar(&g).unwrap();
        let expected = Rational::new(-1, 2 * m as i64);
        assert_eq!(out.closed_form, expected);
        assert_eq!(coxeter_order(&g).unwrap(), GroupOrder::Finite(2 * m));
        // Finite group rule: cost 1 - 1/|G|, rank gradient cost - 1.
        let finite = evaluate(&GroupExpr::Amenable {
            tag: "dihedral".into(),
            order: GroupOrder::Finite(2 * m),
        });
        assert_eq!(finite.rank_gradient, Value::Known(expected.clone()));
        assert_eq!(
            out.result.cost,
            Value::Known(Rational::one() - Rational::new(1, 2 * m as i64))
        );
        assert_eq!(out.result.betti1, Value::Known(Rational::zero()));
    }
}

#[test]
fn hypothesis_failures_are_named() {
    let k4 = families::complete(4, 2);
    let err = rg_coxeter_planar(&k4).unwrap_err();
    assert_eq!(err.to_string(), "girth(3) < 6; nonplanar=false");
    let square = families::cycle(&[2; 4]);
    assert!(matches!(
        rg_coxeter_planar(&square),
        Err(CoxeterError::Hypothesis { planar: true, .. })
    ));
    // Subdivided K_{3,3} has large girth but is not planar.
    let k33 = families::subdivide(&families::complete_bipartite(3, 3, 2), 2, |_| 2);
    let err = rg_coxeter_planar(&k33).unwrap_err();
    assert!(err.to_string().ends_with("nonplanar=true"), "{err}");
}

#[test]
fn rank_gradient_meets_betti_number_on_infinite_members() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for g in family(&mut rng, 60) {
        let out = rg_coxeter_planar(&g).unwrap();
        if out.result.order == Some(GroupOrder::Infinite) {
            assert_eq!(out.result.rank_gradient, out.result.betti1);
        }
    }
}
