//! Coxeter groups on planar graphs of girth at least 6, and the class of
//! groups built from virtually abelian, free or surface pieces by amalgams
//! over subgroups with vanishing first L²-Betti number.
//!
//! For a planar labelled graph `Γ` of girth at least 6 the rank gradient
//! and the first L²-Betti number of `C_Γ` are
//!
//! ```text
//! |V|/2 - 1 - sum over edges of 1/(2 l_e)
//! ```
//!
//! (for the finite cases, one vertex or one edge, the Betti number is 0 and
//! the formula gives the rank gradient `-1/|C_Γ|`).
//!
//! [`rg_coxeter_planar`] also rebuilds the value step by step. Planarity
//! plus girth 6 forces a vertex of valence at most 2, so vertices can be
//! peeled off one at a time. Removing `v` with remaining neighbors `N`
//! writes `C_Γ` as an amalgam of `A = C_{v ∪ N}` and `C_{Γ - v}` over
//! `C_N`:
//!
//! * `N` empty: free product, `C = 1`, adds `RG(Z/2) + 1 = 1/2`;
//! * `N = {w}`, label `l`: `A` dihedral of order `2l`, `C = Z/2`, adds
//!   `-1/(2l) + 1/2`;
//! * `N = {w1, w2}`, labels `l1, l2`: `w1, w2` are non-adjacent, so `C` is
//!   infinite dihedral (amenable) and `A` is a triangle group with rank
//!   gradient `1/2 - 1/(2 l1) - 1/(2 l2)`.
//!
//! The last vertex is a `Z/2` with rank gradient `-1/2`, i.e. its `1/2`
//! contribution minus a terminal correction of 1.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use serde::Serialize;

use crate::groupexpr::{self, evaluate, recip_order, GroupExpr, GroupOrder, PriceResult, RuleApplication, Value};
use crate::lgraph::{girth, is_planar, reduction_order_with, Girth, LabelledGraph, TieBreak};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CoxeterError {
    /// Planarity or girth hypothesis fails.
    #[error("{}", hypothesis_message(*planar, *girth))]
    Hypothesis { planar: bool, girth: Girth },
    #[error("graph contains a triangle; order classification not supported")]
    Triangle,
    #[error("internal error: {0}")]
    Internal(String),
}

fn hypothesis_message(planar: bool, g: Girth) -> String {
    let gpart = if g.at_least(6) {
        format!("girth({g}) >= 6")
    } else {
        format!("girth({g}) < 6")
    };
    format!("{gpart}; nonplanar={}", !planar)
}

/// Order of `C_Γ` for a triangle-free graph.
pub fn coxeter_order(g: &LabelledGraph) -> Result<GroupOrder, CoxeterError> {
    if !girth(g).at_least(4) {
        return Err(CoxeterError::Triangle);
    }
    Ok(match (g.vertex_count(), g.edges().next()) {
        (1, _) => GroupOrder::Finite(2),
        (2, Some((_, _, l))) => GroupOrder::Finite(2 * l),
        _ => GroupOrder::Infinite,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum AmalgamKind {
    Trivial,
    /// `Z/2`, generated by the single remaining neighbor.
    Z2,
    /// Infinite dihedral, generated by the two remaining neighbors.
    DInfinity,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    pub vertex: String,
    pub valence: usize,
    pub labels: Vec<u64>,
    /// Vertex set of the subgroup `A` split off at this step.
    pub subgroup: Vec<String>,
    pub amalgam: AmalgamKind,
    pub contribution: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoxeterTrace {
    pub steps: Vec<TraceStep>,
    pub terminal_correction: Rational,
}

impl CoxeterTrace {
    pub fn total(&self) -> Rational {
        let sum: Rational = self.steps.iter().map(|s| s.contribution.clone()).sum();
        sum - self.terminal_correction.clone()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoxeterOutcome {
    pub closed_form: Rational,
    pub result: PriceResult,
    pub trace: CoxeterTrace,
}

/// `|V|/2 - 1 - Σ 1/(2 l_e)`, without any hypothesis check.
pub fn closed_form(g: &LabelledGraph) -> Rational {
    let mut v = Rational::new(g.vertex_count() as i64, 2) - Rational::one();
    for (_, _, l) in g.edges() {
        v -= Rational::recip_of(2 * l);
    }
    v
}

pub fn check_hypotheses(g: &LabelledGraph) -> Result<(), CoxeterError> {
    let planar = is_planar(g);
    let gi = girth(g);
    if planar && gi.at_least(6) {
        Ok(())
    } else {
        Err(CoxeterError::Hypothesis { planar, girth: gi })
    }
}

pub fn rg_coxeter_planar(g: &LabelledGraph) -> Result<CoxeterOutcome, CoxeterError> {
    rg_coxeter_planar_with(g, TieBreak::SmallestIndex)
}

/// As [`rg_coxeter_planar`], with the elimination tie-break chosen.
pub fn rg_coxeter_planar_with(g: &LabelledGraph, tie: TieBreak) -> Result<CoxeterOutcome, CoxeterError> {
    check_hypotheses(g)?;
    let value = closed_form(g);
    let trace = build_trace(g, tie)?;
    let total = trace.total();
    if total != value {
        return Err(CoxeterError::Internal(format!(
            "trace total {total} differs from closed form {value}"
        )));
    }
    let order = coxeter_order(g)?;
    let betti = &value + &recip_order(order);
    let result = PriceResult {
        cost: Value::Known(&value + &Rational::one()),
        rank_gradient: Value::Known(value.clone()),
        betti1: Value::Known(betti),
        fixed_price: true,
        order: Some(order),
        rule_trace: alloc::vec![RuleApplication {
            rule: "coxeter-planar".into(),
            at: "root".into(),
            detail: format!(
                "planar, girth {}: |V|/2 - 1 - sum 1/(2 l_e) = {value}, for any normal chain with trivial intersection",
                girth(g)
            ),
        }],
    };
    Ok(CoxeterOutcome {
        closed_form: value,
        result,
        trace,
    })
}

fn build_trace(g: &LabelledGraph, tie: TieBreak) -> Result<CoxeterTrace, CoxeterError> {
    let order = reduction_order_with(g, tie).map_err(|w| {
        CoxeterError::Internal(format!(
            "no vertex of valence <= 2 among {:?}",
            w.remaining.iter().map(|&v| g.name(v)).collect::<Vec<_>>()
        ))
    })?;
    let half = Rational::new(1, 2);
    let mut steps = Vec::with_capacity(g.vertex_count());
    for (v, nbrs) in order.steps(g) {
        let labels: Vec<u64> = nbrs.iter().map(|&(_, l)| l).collect();
        let mut contribution = half.clone();
        for &l in &labels {
            contribution -= Rational::recip_of(2 * l);
        }
        let amalgam = match nbrs.as_slice() {
            [] => AmalgamKind::Trivial,
            [_] => AmalgamKind::Z2,
            [(w1, _), (w2, _)] => {
                if g.label(*w1, *w2).is_some() {
                    return Err(CoxeterError::Internal(format!(
                        "neighbors {} and {} of {} are adjacent",
                        g.name(*w1),
                        g.name(*w2),
                        g.name(v)
                    )));
                }
                AmalgamKind::DInfinity
            }
            _ => return Err(CoxeterError::Internal("valence above 2".into())),
        };
        let mut subgroup: Vec<String> = alloc::vec![g.name(v).into()];
        subgroup.extend(nbrs.iter().map(|&(w, _)| String::from(g.name(w))));
        steps.push(TraceStep {
            vertex: g.name(v).into(),
            valence: nbrs.len(),
            labels,
            subgroup,
            amalgam,
            contribution,
        });
    }
    Ok(CoxeterTrace {
        steps,
        terminal_correction: Rational::one(),
    })
}

impl fmt::Display for CoxeterTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            writeln!(
                f,
                "{} valence={} labels={:?} amalgam={:?} contribution={}",
                s.vertex, s.valence, s.labels, s.amalgam, s.contribution
            )?;
        }
        write!(
            f,
            "terminal correction -{}; total {}",
            self.terminal_correction,
            self.total()
        )
    }
}

struct ClassVals {
    /// `b1(G) - 1/|G|`, which is the rank gradient throughout the class.
    rg: Rational,
    order: GroupOrder,
}

/// Rank gradient and first L²-Betti number for groups of the class built
/// from virtually abelian, virtually free and virtually surface leaves.
///
/// Computed by its own recursion and compared against [`evaluate`]; the
/// returned trace is the class recursion followed by the general one.
#[allow(non_snake_case)]
pub fn eval_class_C(e: &GroupExpr) -> PriceResult {
    let mut trace = Vec::new();
    let general = evaluate(e);
    match class_rg(e, "root", &mut trace) {
        Ok(v) => {
            let betti = &v.rg + &recip_order(v.order);
            if let Some(b) = general.betti1.known() {
                debug_assert_eq!(b, &betti, "class recursion disagrees with the general evaluator");
            }
            if let Some(r) = general.rank_gradient.known() {
                debug_assert_eq!(r, &v.rg, "class recursion disagrees with the general evaluator");
            }
            trace.extend(general.rule_trace);
            PriceResult {
                cost: general.cost,
                rank_gradient: Value::Known(v.rg),
                betti1: Value::Known(betti),
                fixed_price: general.fixed_price,
                order: Some(v.order),
                rule_trace: trace,
            }
        }
        Err(reason) => PriceResult {
            cost: general.cost,
            rank_gradient: Value::unknown(reason.clone()),
            betti1: Value::unknown(reason),
            fixed_price: general.fixed_price,
            order: general.order,
            rule_trace: trace,
        },
    }
}

fn leaf(rg: Rational, order: GroupOrder) -> Result<ClassVals, String> {
    Ok(ClassVals { rg, order })
}

fn class_rg(e: &GroupExpr, at: &str, trace: &mut Vec<RuleApplication>) -> Result<ClassVals, String> {
    let mut note = |rule: &str, detail: String| {
        trace.push(RuleApplication {
            rule: rule.into(),
            at: at.into(),
            detail,
        })
    };
    match e {
        GroupExpr::Trivial => leaf(-Rational::one(), GroupOrder::Finite(1)),
        GroupExpr::Cyclic(n) => leaf(-Rational::recip_of(*n), GroupOrder::Finite(*n)),
        GroupExpr::Integers | GroupExpr::FreeAbelian(_) => leaf(Rational::zero(), GroupOrder::Infinite),
        GroupExpr::Free(r) => leaf(Rational::integer(*r as i64 - 1), GroupOrder::Infinite),
        GroupExpr::Surface(g) => leaf(Rational::integer(2 * *g as i64 - 2), GroupOrder::Infinite),
        GroupExpr::Amenable { tag, order } if tag.starts_with("virtually-") => leaf(-recip_order(*order), *order),
        GroupExpr::AmalgamFinite {
            left,
            right,
            amalgam_order,
        } => {
            let a = class_rg(left, &format!("{at}.0"), trace)?;
            let b = class_rg(right, &format!("{at}.1"), trace)?;
            let k = GroupOrder::Finite(*amalgam_order);
            Ok(class_amalgam(a, b, k, at, trace))
        }
        GroupExpr::AmalgamAmenable {
            left,
            right,
            amalgam,
            left_order,
            right_order,
            amalgam_order,
        } => {
            let kb = evaluate(amalgam).betti1;
            match kb.known() {
                Some(z) if z.is_zero() => {}
                _ => return Err(format!("amalgamated subgroup at {at} has no b1 = 0 witness ({kb})")),
            }
            let a = class_rg(left, &format!("{at}.0"), trace)?;
            let b = class_rg(right, &format!("{at}.1"), trace)?;
            if a.order != *left_order || b.order != *right_order {
                return Err(format!("declared factor orders at {at} do not match the factors"));
            }
            Ok(class_amalgam(a, b, *amalgam_order, at, trace))
        }
        other => {
            note("class-leaf", String::from("not a recognised leaf"));
            Err(format!("{} at {at} is not a leaf of the class", node_name(other)))
        }
    }
}

fn class_amalgam(a: ClassVals, b: ClassVals, k: GroupOrder, at: &str, trace: &mut Vec<RuleApplication>) -> ClassVals {
    let order = groupexpr::amalgam_order_of(Some(a.order), Some(b.order), k).unwrap();
    let rg = &a.rg + &b.rg + recip_order(k);
    let detail = match k {
        GroupOrder::Finite(n) => format!("RG(A) + RG(B) + 1/{n} = {rg}; matches the Betti sum"),
        GroupOrder::Infinite => format!("b1(G) <= RG(G) <= RG(A) + RG(B) = b1(A) + b1(B) = {rg}"),
    };
    let rule = if k.is_finite() {
        "class-finite-amalgam"
    } else {
        "class-sandwich"
    };
    trace.push(RuleApplication {
        rule: rule.into(),
        at: at.into(),
        detail,
    });
    ClassVals { rg, order }
}

fn node_name(e: &GroupExpr) -> &'static str {
    match e {
        GroupExpr::Trivial => "trivial",
        GroupExpr::Cyclic(_) => "cyclic",
        GroupExpr::Integers => "integers",
        GroupExpr::Free(_) => "free",
        GroupExpr::Surface(_) => "surface",
        GroupExpr::FreeAbelian(_) => "free-abelian",
        GroupExpr::Amenable { .. } => "amenable leaf without a virtually- tag",
        GroupExpr::Artin(_) => "artin",
        GroupExpr::Coxeter(_) => "coxeter",
        GroupExpr::AmalgamFinite { .. } => "amalgam-finite",
        GroupExpr::AmalgamAmenable { .. } => "amalgam-amenable",
        GroupExpr::Generation { .. } => "generation",
    }
}
