//! Random expression trees: algebraic relations between cost, rank
//! gradient and first L²-Betti number, and agreement of independent routes.

use artinrg_core::coxeter::eval_class_C;
use artinrg_core::groupexpr::{evaluate, generation_upper_bound, rank_gradient_direct};
use artinrg_core::lgraph::families;
use artinrg_core::{GroupExpr, GroupOrder, LabelledGraph, Rational, Value};
use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_connected(rng: &mut ChaCha8Rng, n: usize) -> LabelledGraph {
    let mut edges = Vec::new();
    for v in 1..n {
        edges.push((rng.gen_range(0..v), v, rng.gen_range(2..=6)));
    }
    for _ in 0..rng.gen_range(0..n) {
        let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if a != b && !edges.iter().any(|&(x, y, _)| (x, y) == (a, b) || (x, y) == (b, a)) {
            edges.push((a, b, rng.gen_range(2..=6)));
        }
    }
    LabelledGraph::from_indexed(n, &edges).unwrap()
}

fn finite_order(e: &GroupExpr) -> Option<u64> {
    match evaluate(e).order {
        Some(GroupOrder::Finite(n)) => Some(n),
        _ => None,
    }
}

/// Expressions built only from finite cyclic groups and finite amalgams.
fn virtually_free(rng: &mut ChaCha8Rng, depth: u32) -> GroupExpr {
    if depth == 0 || rng.gen_bool(0.3) {
        return match rng.gen_range(0..4) {
            0 => GroupExpr::Trivial,
            _ => GroupExpr::Cyclic(rng.gen_range(2..=12)),
        };
    }
    let a = virtually_free(rng, depth - 1);
    let b = virtually_free(rng, depth - 1);
    let c = match (finite_order(&a), finite_order(&b)) {
        (Some(x), Some(y)) => {
            let g = x.gcd(&y);
            let divisors: Vec<u64> = (1..=g).filter(|d| g % d == 0 && *d < x.min(y)).collect();
            if divisors.is_empty() {
                1
            } else {
                divisors[rng.gen_range(0..divisors.len())]
            }
        }
        _ => 1,
    };
    GroupExpr::amalgam_finite(a, b, c)
}

fn leaf(rng: &mut ChaCha8Rng) -> GroupExpr {
    match rng.gen_range(0..9) {
        0 => GroupExpr::Trivial,
        1 => GroupExpr::Cyclic(rng.gen_range(2..=10)),
        2 => GroupExpr::Integers,
        3 => GroupExpr::Free(rng.gen_range(1..=4)),
        4 => GroupExpr::Surface(rng.gen_range(2..=4)),
        5 => GroupExpr::FreeAbelian(rng.gen_range(1..=3)),
        6 => {
            let n = rng.gen_range(1..8);
            GroupExpr::Artin(random_connected(rng, n))
        }
        7 => {
            let len = rng.gen_range(1..6);
            GroupExpr::Coxeter(families::path(
                &(0..len).map(|_| rng.gen_range(2..=6)).collect::<Vec<_>>(),
            ))
        }
        _ => GroupExpr::Coxeter(families::honeycomb(2, rng.gen_range(2..5), |_| 3)),
    }
}

fn any_expr(rng: &mut ChaCha8Rng, depth: u32) -> GroupExpr {
    if depth == 0 || rng.gen_bool(0.35) {
        return leaf(rng);
    }
    match rng.gen_range(0..3) {
        0 => {
            let a = any_expr(rng, depth - 1);
            let b = any_expr(rng, depth - 1);
            GroupExpr::amalgam_finite(a, b, 1)
        }
        1 => {
            let a = any_expr(rng, depth - 1);
            let b = any_expr(rng, depth - 1);
            GroupExpr::generation(a, b, "common infinite cyclic subgroup")
        }
        _ => {
            let right = any_expr(rng, depth - 1);
            let right_order = evaluate(&right).order.unwrap_or(GroupOrder::Infinite);
            GroupExpr::AmalgamAmenable {
                left: Box::new(GroupExpr::FreeAbelian(2)),
                right: Box::new(right),
                amalgam: Box::new(GroupExpr::Integers),
                left_order: GroupOrder::Infinite,
                right_order,
                amalgam_order: GroupOrder::Infinite,
            }
        }
    }
}

#[test]
fn relations_hold_on_random_expressions() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let mut known = 0;
    for _ in 0..400 {
        let e = any_expr(&mut rng, 3);
        let r = evaluate(&e);
        r.check_relations().unwrap_or_else(|m| panic!("{m} for {e:?}"));
        if let (Value::Known(c), Value::Known(rg)) = (&r.cost, &r.rank_gradient) {
            assert_eq!(rg, &(c - &Rational::one()));
            known += 1;
        }
        if let (Value::Known(rg), Value::Known(b), Some(GroupOrder::Infinite)) = (&r.rank_gradient, &r.betti1, r.order)
        {
            assert!(rg >= b);
        }
    }
    assert!(known > 100, "too few expressions with known cost: {known}");
}

#[test]
fn virtually_free_trees_agree_across_routes() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..300 {
        let e = virtually_free(&mut rng, 4);
        let r = evaluate(&e);
        r.check_relations().unwrap();
        let rg = r
            .rank_gradient
            .known()
            .expect("finite amalgam trees are fully known")
            .clone();
        assert_eq!(rank_gradient_direct(&e), Value::Known(rg.clone()));
        let c = eval_class_C(&e);
        assert_eq!(c.rank_gradient, r.rank_gradient);
        assert_eq!(c.betti1, r.betti1);
        if r.order == Some(GroupOrder::Infinite) {
            assert_eq!(r.betti1, Value::Known(rg));
        }
    }
}

#[test]
fn equality_on_named_families() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut family: Vec<GroupExpr> = (1..5)
        .map(GroupExpr::Free)
        .chain((2..5).map(GroupExpr::Surface))
        .collect();
    for _ in 0..30 {
        let n = rng.gen_range(1..10);
        family.push(GroupExpr::Artin(random_connected(&mut rng, n)));
    }
    family.push(GroupExpr::Coxeter(families::cycle(&[2; 6])));
    family.push(GroupExpr::Coxeter(families::honeycomb(3, 4, |i| 2 + (i as u64 % 5))));
    for e in family {
        let r = evaluate(&e);
        assert_eq!(r.order, Some(GroupOrder::Infinite));
        assert_eq!(r.rank_gradient, r.betti1, "{e:?}");
        assert!(r.fixed_price);
    }
}

#[test]
fn contradictory_declared_orders_are_refused() {
    let e = GroupExpr::AmalgamAmenable {
        left: Box::new(GroupExpr::FreeAbelian(2)),
        right: Box::new(GroupExpr::Trivial),
        amalgam: Box::new(GroupExpr::Integers),
        left_order: GroupOrder::Infinite,
        right_order: GroupOrder::Infinite,
        amalgam_order: GroupOrder::Infinite,
    };
    let r = evaluate(&e);
    assert!(matches!(&r.rank_gradient, Value::Unknown(m) if m.contains("contradicts")));
}

#[test]
fn flagship_amalgams() {
    let sl2 = evaluate(&GroupExpr::amalgam_finite(
        GroupExpr::Cyclic(6),
        GroupExpr::Cyclic(4),
        2,
    ));
    assert_eq!(sl2.rank_gradient, Value::Known(Rational::new(1, 12)));
    assert_eq!(sl2.cost, Value::Known(Rational::new(13, 12)));
    let psl2 = evaluate(&GroupExpr::amalgam_finite(
        GroupExpr::Cyclic(2),
        GroupExpr::Cyclic(3),
        1,
    ));
    assert_eq!(psl2.rank_gradient, Value::Known(Rational::new(1, 6)));
}

#[test]
fn generation_requires_price_one_children() {
    let r = evaluate(&GroupExpr::generation(
        GroupExpr::Free(2),
        GroupExpr::Free(3),
        "declared",
    ));
    assert!(matches!(r.cost, Value::Unknown(_)));
    let a = evaluate(&GroupExpr::Free(2));
    let b = evaluate(&GroupExpr::Free(3));
    assert_eq!(generation_upper_bound(&a, &b), Value::Known(Rational::integer(3)));
    let ok = evaluate(&GroupExpr::generation(
        GroupExpr::Integers,
        GroupExpr::FreeAbelian(2),
        "shared Z",
    ));
    assert_eq!(ok.rank_gradient, Value::Known(Rational::zero()));
}
