//! Expression trees of group constructions and their exact evaluation.
//!
//! [`evaluate`] walks a [`GroupExpr`] and fills in three exact invariants:
//! the cost (all rules used here give groups of fixed price), the rank
//! gradient along normal chains with trivial intersection, and the first
//! L²-Betti number. A rule either fires, leaving an entry in the rule trace,
//! or the value stays [`Value::Unknown`] with the reason it did not.
//!
//! Rules:
//!
//! * finite `G`: cost `1 - 1/|G|`, rank gradient `-1/|G|`, Betti number 0;
//! * infinite amenable `G`: cost 1, rank gradient 0, Betti number 0;
//! * free group of rank `r`: cost `r`; closed surface of genus `g`: cost `2g - 1`;
//! * Artin group on a graph with `b` components: cost `b`, rank gradient and
//!   Betti number `b - 1`;
//! * Coxeter group on a planar graph of girth at least 6: see [`crate::coxeter`];
//! * amalgam over an amenable subgroup `C`: cost `c(A) + c(B) - c(C)`;
//!   over a finite `C` the rank gradient also evaluates directly as
//!   `RG(A) + RG(B) + 1/|C|` and the two routes must agree;
//! * amalgam over `K` with vanishing first L²-Betti number:
//!   `b1(G) - 1/|G| = b1(A) - 1/|A| + b1(B) - 1/|B| + 1/|K|`, where `1/|H|`
//!   reads as 0 for infinite `H` (the `1/|G|` term only matters when a
//!   factor coincides with `K`);
//! * group generated by two subgroups with infinite intersection: fixed
//!   price 1 when both subgroups have fixed price 1; the rank gradient is
//!   bounded by `RG(A) + RG(B)`, which pins it (and the Betti number) to 0
//!   when both vanish.
//!
//! The rank gradient is `cost - 1` whenever the cost is known. The Betti
//! number never exceeds the rank gradient for infinite groups; for a finite
//! group the two differ by exactly `1/|G|`.

use alloc::borrow::ToOwned;
use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Serialize};

use crate::coxeter;
use crate::lgraph::{components, LabelledGraph};
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GroupOrder {
    Finite(u64),
    Infinite,
}

impl GroupOrder {
    pub fn is_finite(self) -> bool {
        matches!(self, GroupOrder::Finite(_))
    }
}

impl fmt::Display for GroupOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupOrder::Finite(n) => write!(f, "{n}"),
            GroupOrder::Infinite => f.write_str("inf"),
        }
    }
}

/// `1/|G|`, read as 0 for infinite `G`.
pub fn recip_order(o: GroupOrder) -> Rational {
    match o {
        GroupOrder::Finite(n) => Rational::recip_of(n),
        GroupOrder::Infinite => Rational::zero(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupExpr {
    Trivial,
    Cyclic(u64),
    Integers,
    Free(u64),
    Surface(u64),
    FreeAbelian(u64),
    /// A group declared amenable, of the stated order.
    Amenable {
        tag: String,
        order: GroupOrder,
    },
    Artin(LabelledGraph),
    Coxeter(LabelledGraph),
    AmalgamFinite {
        left: Box<GroupExpr>,
        right: Box<GroupExpr>,
        amalgam_order: u64,
    },
    /// Amalgam over a subgroup that must evaluate as amenable (for the cost
    /// rule) or with vanishing first Betti number (for the Betti rule).
    /// Orders are trusted declarations.
    AmalgamAmenable {
        left: Box<GroupExpr>,
        right: Box<GroupExpr>,
        amalgam: Box<GroupExpr>,
        left_order: GroupOrder,
        right_order: GroupOrder,
        amalgam_order: GroupOrder,
    },
    /// Generated by two subgroups whose intersection is infinite; the
    /// justification is recorded, not verified.
    Generation {
        left: Box<GroupExpr>,
        right: Box<GroupExpr>,
        justification: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExprError {
    #[error("cyclic group order must be >= 2, got {0}")]
    CyclicOrder(u64),
    #[error("free group rank must be >= 1, got {0}")]
    FreeRank(u64),
    #[error("surface genus must be >= 2, got {0}")]
    SurfaceGenus(u64),
    #[error("free abelian rank must be >= 1, got {0}")]
    FreeAbelianRank(u64),
    #[error("group orders must be >= 1")]
    ZeroOrder,
    #[error("generation node needs a non-empty justification")]
    MissingJustification,
}

impl GroupExpr {
    pub fn amalgam_finite(left: GroupExpr, right: GroupExpr, amalgam_order: u64) -> Self {
        GroupExpr::AmalgamFinite {
            left: Box::new(left),
            right: Box::new(right),
            amalgam_order,
        }
    }

    pub fn generation(left: GroupExpr, right: GroupExpr, justification: &str) -> Self {
        GroupExpr::Generation {
            left: Box::new(left),
            right: Box::new(right),
            justification: justification.to_owned(),
        }
    }

    /// Checks the per-node parameter ranges, recursively.
    pub fn validate(&self) -> Result<(), ExprError> {
        match self {
            GroupExpr::Cyclic(n) if *n < 2 => Err(ExprError::CyclicOrder(*n)),
            GroupExpr::Free(r) if *r < 1 => Err(ExprError::FreeRank(*r)),
            GroupExpr::Surface(g) if *g < 2 => Err(ExprError::SurfaceGenus(*g)),
            GroupExpr::FreeAbelian(n) if *n < 1 => Err(ExprError::FreeAbelianRank(*n)),
            GroupExpr::Amenable {
                order: GroupOrder::Finite(0),
                ..
            } => Err(ExprError::ZeroOrder),
            GroupExpr::AmalgamFinite {
                left,
                right,
                amalgam_order,
            } => {
                if *amalgam_order == 0 {
                    return Err(ExprError::ZeroOrder);
                }
                left.validate()?;
                right.validate()
            }
            GroupExpr::AmalgamAmenable {
                left,
                right,
                amalgam,
                left_order,
                right_order,
                amalgam_order,
            } => {
                if [left_order, right_order, amalgam_order]
                    .iter()
                    .any(|o| **o == GroupOrder::Finite(0))
                {
                    return Err(ExprError::ZeroOrder);
                }
                left.validate()?;
                right.validate()?;
                amalgam.validate()
            }
            GroupExpr::Generation {
                left,
                right,
                justification,
            } => {
                if justification.trim().is_empty() {
                    return Err(ExprError::MissingJustification);
                }
                left.validate()?;
                right.validate()
            }
            _ => Ok(()),
        }
    }
}

/// An exact value, or the reason no rule produced one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Known(Rational),
    Unknown(String),
}

impl Value {
    pub fn known(&self) -> Option<&Rational> {
        match self {
            Value::Known(r) => Some(r),
            Value::Unknown(_) => None,
        }
    }

    pub(crate) fn unknown(reason: impl Into<String>) -> Self {
        Value::Unknown(reason.into())
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Known(r) => write!(f, "{r}"),
            Value::Unknown(reason) => write!(f, "unknown({reason})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleApplication {
    pub rule: String,
    /// Path of the subterm, e.g. `root.1.0`.
    pub at: String,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PriceResult {
    pub cost: Value,
    pub rank_gradient: Value,
    pub betti1: Value,
    pub fixed_price: bool,
    pub order: Option<GroupOrder>,
    pub rule_trace: Vec<RuleApplication>,
}

impl PriceResult {
    /// Checks the algebraic relations every result must satisfy:
    /// `RG = cost - 1`, `RG >= b1` for infinite groups and `RG = b1 - 1/|G|`
    /// for finite ones.
    pub fn check_relations(&self) -> Result<(), String> {
        if let (Some(c), Some(rg)) = (self.cost.known(), self.rank_gradient.known()) {
            if *rg != c - &Rational::one() {
                return Err(format!("rank gradient {rg} != cost {c} - 1"));
            }
        }
        if let (Some(rg), Some(b)) = (self.rank_gradient.known(), self.betti1.known()) {
            match self.order {
                Some(GroupOrder::Finite(n)) => {
                    if *rg != b - &Rational::recip_of(n) {
                        return Err(format!("finite group: rank gradient {rg} != {b} - 1/{n}"));
                    }
                }
                _ => {
                    if rg < b {
                        return Err(format!("rank gradient {rg} < first Betti number {b}"));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Evaluates cost, rank gradient and first L²-Betti number of `e`.
pub fn evaluate(e: &GroupExpr) -> PriceResult {
    let mut ev = Evaluator { trace: Vec::new() };
    let node = ev.eval(e, "root");
    PriceResult {
        cost: node.cost,
        rank_gradient: node.rg,
        betti1: node.betti,
        fixed_price: node.fixed_price,
        order: node.order,
        rule_trace: ev.trace,
    }
}

/// Rank gradient through the finite-amalgam formula alone: finite leaves
/// give `-1/|G|`, finite amalgams add `1/|C|`, everything else defers to
/// [`evaluate`]. Used to cross-check the `cost - 1` route.
pub fn rank_gradient_direct(e: &GroupExpr) -> Value {
    match e {
        GroupExpr::Trivial => Value::Known(-Rational::one()),
        GroupExpr::Cyclic(n) => Value::Known(-Rational::recip_of(*n)),
        GroupExpr::AmalgamFinite {
            left,
            right,
            amalgam_order,
        } => match (rank_gradient_direct(left), rank_gradient_direct(right)) {
            (Value::Known(a), Value::Known(b)) => Value::Known(a + b + Rational::recip_of(*amalgam_order)),
            (Value::Unknown(r), _) | (_, Value::Unknown(r)) => Value::Unknown(r),
        },
        other => evaluate(other).rank_gradient,
    }
}

/// Upper bound `RG(A) + RG(B)` for a group generated by `A` and `B` with
/// infinite intersection.
pub fn generation_upper_bound(a: &PriceResult, b: &PriceResult) -> Value {
    match (&a.rank_gradient, &b.rank_gradient) {
        (Value::Known(x), Value::Known(y)) => Value::Known(x + y),
        _ => Value::unknown("rank gradient of a generating subgroup is unknown"),
    }
}

struct NodeVals {
    cost: Value,
    rg: Value,
    betti: Value,
    fixed_price: bool,
    order: Option<GroupOrder>,
    amenable: bool,
}

impl NodeVals {
    fn finite(n: u64) -> Self {
        let inv = Rational::recip_of(n);
        NodeVals {
            cost: Value::Known(Rational::one() - &inv),
            rg: Value::Known(-inv),
            betti: Value::Known(Rational::zero()),
            fixed_price: true,
            order: Some(GroupOrder::Finite(n)),
            amenable: true,
        }
    }

    fn infinite_amenable() -> Self {
        NodeVals {
            cost: Value::Known(Rational::one()),
            rg: Value::Known(Rational::zero()),
            betti: Value::Known(Rational::zero()),
            fixed_price: true,
            order: Some(GroupOrder::Infinite),
            amenable: true,
        }
    }

    /// Infinite group of fixed price `cost` whose Betti number equals `cost - 1`.
    fn infinite_with_cost(cost: Rational) -> Self {
        let rg = &cost - &Rational::one();
        NodeVals {
            cost: Value::Known(cost),
            rg: Value::Known(rg.clone()),
            betti: Value::Known(rg),
            fixed_price: true,
            order: Some(GroupOrder::Infinite),
            amenable: false,
        }
    }
}

struct Evaluator {
    trace: Vec<RuleApplication>,
}

impl Evaluator {
    fn record(&mut self, rule: &str, at: &str, detail: String) {
        self.trace.push(RuleApplication {
            rule: rule.into(),
            at: at.into(),
            detail,
        });
    }

    fn eval(&mut self, e: &GroupExpr, at: &str) -> NodeVals {
        match e {
            GroupExpr::Trivial => {
                self.record("finite-group", at, "trivial group: cost 0".into());
                NodeVals::finite(1)
            }
            GroupExpr::Cyclic(n) => {
                self.record("finite-group", at, format!("Z/{n}: cost 1 - 1/{n}"));
                NodeVals::finite(*n)
            }
            GroupExpr::Integers => {
                self.record("infinite-amenable", at, "Z: fixed price 1".into());
                NodeVals::infinite_amenable()
            }
            GroupExpr::FreeAbelian(n) => {
                self.record("infinite-amenable", at, format!("Z^{n}: fixed price 1"));
                NodeVals::infinite_amenable()
            }
            GroupExpr::Amenable { tag, order } => match order {
                GroupOrder::Finite(n) => {
                    self.record("finite-group", at, format!("{tag} (declared amenable, order {n})"));
                    NodeVals::finite(*n)
                }
                GroupOrder::Infinite => {
                    self.record("infinite-amenable", at, format!("{tag} (declared amenable, infinite)"));
                    NodeVals::infinite_amenable()
                }
            },
            GroupExpr::Free(r) => {
                self.record("free-group", at, format!("F_{r}: cost {r}"));
                let mut v = NodeVals::infinite_with_cost(Rational::integer(*r as i64));
                v.amenable = *r == 1;
                v
            }
            GroupExpr::Surface(g) => {
                let cost = 2 * *g as i64 - 1;
                self.record("surface-group", at, format!("genus {g}: cost {cost}"));
                NodeVals::infinite_with_cost(Rational::integer(cost))
            }
            GroupExpr::Artin(graph) => {
                let b = components(graph).len();
                self.record(
                    "artin-components",
                    at,
                    format!("{b} component(s): fixed price {b}, rank gradient {}", b as i64 - 1),
                );
                let mut v = NodeVals::infinite_with_cost(Rational::integer(b as i64));
                v.amenable = match graph.vertex_count() {
                    1 => true,
                    2 => graph.label(0, 1) == Some(2),
                    _ => false,
                };
                v
            }
            GroupExpr::Coxeter(graph) => self.eval_coxeter(graph, at),
            GroupExpr::AmalgamFinite {
                left,
                right,
                amalgam_order,
            } => self.eval_amalgam_finite(left, right, *amalgam_order, at),
            GroupExpr::AmalgamAmenable {
                left,
                right,
                amalgam,
                left_order,
                right_order,
                amalgam_order,
            } => self.eval_amalgam_amenable(left, right, amalgam, [*left_order, *right_order, *amalgam_order], at),
            GroupExpr::Generation {
                left,
                right,
                justification,
            } => self.eval_generation(left, right, justification, at),
        }
    }

    fn eval_coxeter(&mut self, graph: &LabelledGraph, at: &str) -> NodeVals {
        match coxeter::rg_coxeter_planar(graph) {
            Ok(out) => {
                let order = coxeter::coxeter_order(graph).ok();
                self.record(
                    "coxeter-planar",
                    at,
                    format!("planar girth >= 6: |V|/2 - 1 - sum 1/(2 l_e) = {}", out.closed_form),
                );
                let amenable = match order {
                    Some(GroupOrder::Finite(_)) => true,
                    _ => graph.vertex_count() == 2,
                };
                NodeVals {
                    cost: out.result.cost,
                    rg: out.result.rank_gradient,
                    betti: out.result.betti1,
                    fixed_price: true,
                    order,
                    amenable,
                }
            }
            Err(err) => {
                let reason = format!("coxeter rule not applicable: {err}");
                NodeVals {
                    cost: Value::unknown(reason.clone()),
                    rg: Value::unknown(reason.clone()),
                    betti: Value::unknown(reason),
                    fixed_price: false,
                    order: coxeter::coxeter_order(graph).ok(),
                    amenable: false,
                }
            }
        }
    }

    fn eval_amalgam_finite(&mut self, left: &GroupExpr, right: &GroupExpr, c: u64, at: &str) -> NodeVals {
        let a = self.eval(left, &format!("{at}.0"));
        let b = self.eval(right, &format!("{at}.1"));
        let inv_c = Rational::recip_of(c);
        let cost_c = Rational::one() - &inv_c;

        let cost = match (&a.cost, &b.cost) {
            (Value::Known(x), Value::Known(y)) if a.fixed_price && b.fixed_price => {
                let v = x + y - cost_c.clone();
                self.record(
                    "amalgam-cost",
                    at,
                    format!("c(A) + c(B) - c(C) = {x} + {y} - {cost_c} = {v}"),
                );
                Value::Known(v)
            }
            _ => Value::unknown("amalgam cost needs both factors of known fixed price"),
        };

        let direct = match (&a.rg, &b.rg) {
            (Value::Known(x), Value::Known(y)) => Some(x + y + inv_c.clone()),
            _ => None,
        };
        let rg = match (&cost, direct) {
            (Value::Known(c), Some(d)) => {
                let via_cost = c - &Rational::one();
                debug_assert_eq!(via_cost, d, "finite amalgam: the two rank gradient routes disagree");
                self.record(
                    "finite-amalgam-rg",
                    at,
                    format!("RG(A) + RG(B) + 1/|C| = {d}; cost - 1 = {via_cost}"),
                );
                Value::Known(via_cost)
            }
            (Value::Known(c), None) => Value::Known(c - &Rational::one()),
            (Value::Unknown(_), Some(d)) => {
                self.record("finite-amalgam-rg", at, format!("RG(A) + RG(B) + 1/|C| = {d}"));
                Value::Known(d)
            }
            (Value::Unknown(_), None) => Value::unknown("rank gradient of an amalgam factor is unknown"),
        };

        let order = amalgam_order_of(a.order, b.order, GroupOrder::Finite(c));
        let betti = match (&a.betti, &b.betti, a.order, b.order, order) {
            (Value::Known(x), Value::Known(y), Some(oa), Some(ob), Some(og)) => {
                let v = x - &recip_order(oa) + y.clone() - recip_order(ob) + inv_c.clone() + recip_order(og);
                self.record(
                    "amalgam-betti",
                    at,
                    format!("b1(A) - 1/|A| + b1(B) - 1/|B| + 1/|K| + 1/|G| with |A| = {oa}, |B| = {ob}, |K| = {c}, |G| = {og}: {v}"),
                );
                Value::Known(v)
            }
            _ => Value::unknown("Betti number or order of an amalgam factor is unknown"),
        };

        let amenable = matches!(order, Some(GroupOrder::Finite(_)))
            || (a.order == Some(GroupOrder::Finite(2 * c)) && b.order == Some(GroupOrder::Finite(2 * c)));
        NodeVals {
            cost,
            rg,
            betti,
            fixed_price: a.fixed_price && b.fixed_price,
            order,
            amenable,
        }
    }

    fn eval_amalgam_amenable(
        &mut self,
        left: &GroupExpr,
        right: &GroupExpr,
        amalgam: &GroupExpr,
        [ol, or, ok]: [GroupOrder; 3],
        at: &str,
    ) -> NodeVals {
        let a = self.eval(left, &format!("{at}.0"));
        let b = self.eval(right, &format!("{at}.1"));
        let k = self.eval(amalgam, &format!("{at}.amalgam"));
        let clash = [(&a, ol, "A"), (&b, or, "B"), (&k, ok, "K")]
            .into_iter()
            .find(|(v, declared, _)| v.order.is_some_and(|o| o != *declared));
        if let Some((v, declared, name)) = clash {
            let reason = format!(
                "declared |{name}| = {declared} contradicts computed order {}",
                v.order.expect("clash has a computed order")
            );
            return NodeVals {
                cost: Value::unknown(reason.clone()),
                rg: Value::unknown(reason.clone()),
                betti: Value::unknown(reason),
                fixed_price: false,
                order: None,
                amenable: false,
            };
        }
        self.record(
            "declared-orders",
            at,
            format!("|A| = {ol}, |B| = {or}, |K| = {ok} (trusted where not computed)"),
        );

        let cost = if !k.amenable {
            Value::unknown("cost rule needs an amenable amalgamated subgroup")
        } else {
            match (&a.cost, &b.cost, &k.cost) {
                (Value::Known(x), Value::Known(y), Value::Known(z)) if a.fixed_price && b.fixed_price => {
                    let v = x + y - z.clone();
                    self.record(
                        "amalgam-cost",
                        at,
                        format!("c(A) + c(B) - c(C) = {x} + {y} - {z} = {v}"),
                    );
                    Value::Known(v)
                }
                _ => Value::unknown("amalgam cost needs both factors of known fixed price"),
            }
        };

        let order = amalgam_order_of(Some(ol), Some(or), ok);
        let og = order.unwrap_or(GroupOrder::Infinite);
        let betti = match (&k.betti, &a.betti, &b.betti) {
            (Value::Known(z), Value::Known(x), Value::Known(y)) if z.is_zero() => {
                let v = x - &recip_order(ol) + y.clone() - recip_order(or) + recip_order(ok) + recip_order(og);
                self.record(
                    "amalgam-betti",
                    at,
                    format!("b1(A) - 1/|A| + b1(B) - 1/|B| + 1/|K| + 1/|G| = {v}"),
                );
                Value::Known(v)
            }
            (Value::Known(z), _, _) if !z.is_zero() => {
                Value::unknown(format!("rule not applicable: amalgamated subgroup has b1 = {z} != 0"))
            }
            (Value::Unknown(_), _, _) => {
                Value::unknown("rule not applicable: amalgamated subgroup lacks a b1 = 0 witness")
            }
            _ => Value::unknown("Betti number of an amalgam factor is unknown"),
        };

        let rg = match (&cost, ok) {
            (Value::Known(c), _) => Value::Known(c - &Rational::one()),
            (Value::Unknown(_), GroupOrder::Finite(n)) => match (&a.rg, &b.rg) {
                (Value::Known(x), Value::Known(y)) => {
                    let v = x + y + Rational::recip_of(n);
                    self.record("finite-amalgam-rg", at, format!("RG(A) + RG(B) + 1/|C| = {v}"));
                    Value::Known(v)
                }
                _ => Value::unknown("rank gradient of an amalgam factor is unknown"),
            },
            (Value::Unknown(_), GroupOrder::Infinite) => self.sandwich(&a, &b, &betti, at),
        };

        NodeVals {
            cost,
            rg,
            betti,
            fixed_price: a.fixed_price && b.fixed_price && k.amenable,
            order,
            amenable: matches!(order, Some(GroupOrder::Finite(_))),
        }
    }

    /// Upper bound `RG(A) + RG(B)` against the lower bound `b1(G)`.
    fn sandwich(&mut self, a: &NodeVals, b: &NodeVals, betti: &Value, at: &str) -> Value {
        match (&a.rg, &b.rg, betti) {
            (Value::Known(x), Value::Known(y), Value::Known(lower)) if &(x + y) == lower => {
                self.record(
                    "generation-sandwich",
                    at,
                    format!("b1(G) <= RG(G) <= RG(A) + RG(B) = {lower}"),
                );
                Value::Known(lower.clone())
            }
            _ => Value::unknown("upper and lower rank gradient bounds do not meet"),
        }
    }

    fn eval_generation(&mut self, left: &GroupExpr, right: &GroupExpr, justification: &str, at: &str) -> NodeVals {
        let a = self.eval(left, &format!("{at}.0"));
        let b = self.eval(right, &format!("{at}.1"));
        self.record("infinite-intersection", at, format!("declared: {justification}"));
        let one = Rational::one();
        let both_price_one =
            a.fixed_price && b.fixed_price && a.cost.known() == Some(&one) && b.cost.known() == Some(&one);
        let zero_bound = matches!((&a.rg, &b.rg), (Value::Known(x), Value::Known(y)) if x.is_zero() && y.is_zero());

        let cost = if both_price_one {
            self.record("generation-price-one", at, "both subgroups have fixed price 1".into());
            Value::Known(one.clone())
        } else {
            Value::unknown("generation rule needs both subgroups of fixed price 1")
        };
        let rg = match &cost {
            Value::Known(c) => Value::Known(c - &one),
            Value::Unknown(_) if zero_bound => {
                self.record("generation-sandwich", at, "0 <= RG(G) <= RG(A) + RG(B) = 0".into());
                Value::Known(Rational::zero())
            }
            Value::Unknown(_) => Value::unknown("generation bound does not determine the rank gradient"),
        };
        let betti = if zero_bound {
            self.record("generation-sandwich", at, "0 <= b1(G) <= RG(G) <= 0".into());
            Value::Known(Rational::zero())
        } else {
            Value::unknown("generation bound only closes when both subgroups have rank gradient 0")
        };
        NodeVals {
            cost,
            rg,
            betti,
            fixed_price: both_price_one,
            order: Some(GroupOrder::Infinite),
            amenable: false,
        }
    }
}

/// Order of `A *_C B`: degenerate when a factor equals the amalgamated
/// subgroup, infinite otherwise.
pub(crate) fn amalgam_order_of(a: Option<GroupOrder>, b: Option<GroupOrder>, c: GroupOrder) -> Option<GroupOrder> {
    match (a?, b?) {
        (x, y) if x == c => Some(y),
        (x, y) if y == c => Some(x),
        _ => Some(GroupOrder::Infinite),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lgraph::families;
    use alloc::string::ToString;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn known(v: &Value) -> Rational {
        v.known()
            .cloned()
            .unwrap_or_else(|| panic!("expected a value, got {v}"))
    }

    #[test]
    fn recip_order_examples() {
        assert_eq!(recip_order(GroupOrder::Infinite), Rational::zero());
        assert_eq!(recip_order(GroupOrder::Finite(2)), r(1, 2));
        assert_eq!(recip_order(GroupOrder::Finite(12)), r(1, 12));
    }

    #[test]
    fn sl2z_amalgam() {
        let e = GroupExpr::amalgam_finite(GroupExpr::Cyclic(6), GroupExpr::Cyclic(4), 2);
        let p = evaluate(&e);
        assert_eq!(known(&p.cost), r(13, 12));
        assert_eq!(known(&p.rank_gradient), r(1, 12));
        assert_eq!(known(&p.betti1), r(1, 12));
        assert!(p.fixed_price);
        assert_eq!(p.order, Some(GroupOrder::Infinite));
        assert_eq!(rank_gradient_direct(&e), Value::Known(r(1, 12)));
        p.check_relations().unwrap();
    }

    #[test]
    fn small_amalgams() {
        let dinf = evaluate(&GroupExpr::amalgam_finite(
            GroupExpr::Cyclic(2),
            GroupExpr::Cyclic(2),
            1,
        ));
        assert_eq!(known(&dinf.rank_gradient), Rational::zero());
        assert_eq!(known(&dinf.cost), Rational::one());
        let psl = evaluate(&GroupExpr::amalgam_finite(
            GroupExpr::Cyclic(2),
            GroupExpr::Cyclic(3),
            1,
        ));
        assert_eq!(known(&psl.rank_gradient), r(1, 6));
    }

    #[test]
    fn leaves() {
        assert_eq!(known(&evaluate(&GroupExpr::Free(2)).cost), Rational::integer(2));
        assert_eq!(known(&evaluate(&GroupExpr::Surface(2)).betti1), Rational::integer(2));
        let c = evaluate(&GroupExpr::Cyclic(5));
        assert_eq!(known(&c.rank_gradient), r(-1, 5));
        assert_eq!(known(&c.cost), r(4, 5));
        assert_eq!(known(&c.betti1), Rational::zero());
        c.check_relations().unwrap();
        let t = evaluate(&GroupExpr::Trivial);
        assert_eq!(known(&t.rank_gradient), Rational::integer(-1));
    }

    #[test]
    fn artin_graphs() {
        let connected = evaluate(&GroupExpr::Artin(families::path(&[3, 4])));
        assert_eq!(known(&connected.cost), Rational::one());
        let three = LabelledGraph::from_indexed(4, &[(0, 1, 3)]).unwrap();
        let p = evaluate(&GroupExpr::Artin(three));
        assert_eq!(known(&p.rank_gradient), Rational::integer(2));
        assert_eq!(known(&p.betti1), Rational::integer(2));
    }

    #[test]
    fn generation_upper_bound_examples() {
        let mk = |v: Value| PriceResult {
            cost: Value::unknown("-"),
            rank_gradient: v,
            betti1: Value::unknown("-"),
            fixed_price: false,
            order: None,
            rule_trace: Vec::new(),
        };
        let zero = mk(Value::Known(Rational::zero()));
        assert_eq!(generation_upper_bound(&zero, &zero), Value::Known(Rational::zero()));
        assert_eq!(
            generation_upper_bound(&mk(Value::Known(r(1, 2))), &mk(Value::Known(r(1, 3)))),
            Value::Known(r(5, 6))
        );
        assert!(matches!(
            generation_upper_bound(&mk(Value::unknown("x")), &zero),
            Value::Unknown(_)
        ));
    }

    #[test]
    fn generation_needs_price_one_children() {
        let e = GroupExpr::generation(GroupExpr::Free(2), GroupExpr::Free(3), "declared");
        let p = evaluate(&e);
        assert!(matches!(p.cost, Value::Unknown(_)));
        assert!(matches!(p.betti1, Value::Unknown(_)));
        let ok = GroupExpr::generation(
            GroupExpr::Artin(families::braid(3)),
            GroupExpr::Integers,
            "shared generator",
        );
        let p = evaluate(&ok);
        assert_eq!(known(&p.cost), Rational::one());
        assert_eq!(known(&p.betti1), Rational::zero());
        assert!(p.rule_trace.iter().any(|t| t.rule == "infinite-intersection"));
    }

    #[test]
    fn amenable_amalgam_over_integers() {
        let e = GroupExpr::AmalgamAmenable {
            left: Box::new(GroupExpr::Free(2)),
            right: Box::new(GroupExpr::Free(2)),
            amalgam: Box::new(GroupExpr::FreeAbelian(1)),
            left_order: GroupOrder::Infinite,
            right_order: GroupOrder::Infinite,
            amalgam_order: GroupOrder::Infinite,
        };
        let p = evaluate(&e);
        assert_eq!(known(&p.rank_gradient), Rational::integer(2));
        assert_eq!(known(&p.betti1), Rational::integer(2));
        assert_eq!(known(&p.cost), Rational::integer(3));
    }

    #[test]
    fn amalgam_over_non_amenable_subgroup_is_unknown() {
        let e = GroupExpr::AmalgamAmenable {
            left: Box::new(GroupExpr::Free(3)),
            right: Box::new(GroupExpr::Free(3)),
            amalgam: Box::new(GroupExpr::Free(2)),
            left_order: GroupOrder::Infinite,
            right_order: GroupOrder::Infinite,
            amalgam_order: GroupOrder::Infinite,
        };
        let p = evaluate(&e);
        assert!(matches!(p.cost, Value::Unknown(_)));
        assert!(matches!(p.betti1, Value::Unknown(ref s) if s.contains("rule not applicable")));
        assert!(matches!(p.rank_gradient, Value::Unknown(_)));
    }

    #[test]
    fn validate_ranges() {
        assert_eq!(GroupExpr::Cyclic(1).validate(), Err(ExprError::CyclicOrder(1)));
        assert_eq!(GroupExpr::Surface(1).validate(), Err(ExprError::SurfaceGenus(1)));
        assert_eq!(
            GroupExpr::generation(GroupExpr::Integers, GroupExpr::Integers, " ").validate(),
            Err(ExprError::MissingJustification)
        );
        assert_eq!(
            GroupExpr::amalgam_finite(GroupExpr::Cyclic(2), GroupExpr::Cyclic(2), 0).validate(),
            Err(ExprError::ZeroOrder)
        );
    }

    #[test]
    fn unknown_display() {
        assert_eq!(Value::unknown("why").to_string(), "unknown(why)");
    }
}
