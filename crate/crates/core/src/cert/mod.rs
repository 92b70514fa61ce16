//! Cost certificates: trees whose nodes each carry one cost rule, checked
//! independently of whatever produced them.
//!
//! Vertex sets ("supports") name vertices of an ambient labelled graph and
//! stand for the Artin subgroup they generate. A node may open a new
//! ambient graph for its subtree through `scope`, which is how certificates
//! for different groups are nested.

mod artin;
mod builtin;
mod check;

use alloc::string::String;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::lgraph::LabelledGraph;
use crate::rational::Rational;

pub use artin::{decompose_artin, rg_artin, ArtinOutcome, A0_CAVEAT};
pub use builtin::{builtin_certificate, Builtin, BuiltinError};
pub use check::{check_certificate, Assumption, CheckReport, Violation};

pub const RULE_FINITE: &str = "finite-price";
pub const RULE_AMENABLE: &str = "amenable-price-one";
pub const RULE_CENTER: &str = "infinite-center-price-one";
pub const RULE_AMALGAM: &str = "amalgam-cost";
pub const RULE_GENERATION: &str = "generation-price-one";
pub const RULE_NORMAL: &str = "normal-subgroup-rg-zero";
pub const RULE_CITED: &str = "cited-fact";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub subject: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ambient: Option<LabelledGraph>,
    #[serde(default)]
    pub caveats: Vec<String>,
    pub root: CertNode,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertNode {
    #[serde(flatten)]
    pub kind: NodeKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub claimed_cost: Option<Rational>,
    pub rule: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub support: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scope: Option<LabelledGraph>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub children: Vec<CertNode>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum NodeKind {
    FiniteLeaf {
        order: u64,
    },
    AmenableLeaf {
        name: String,
        reason: String,
    },
    InfiniteCenterLeaf {
        witness: CenterWitness,
    },
    Amalgam {
        over: AmalgamOver,
    },
    Generation {
        witness: IntersectionWitness,
    },
    /// Rank gradient 0 from a finitely generated normal subgroup whose rank
    /// gradient vanishes for every chain; the single child certifies that
    /// subgroup. No cost is claimed.
    NormalSubgroup {
        subgroup: String,
        reason: String,
    },
    /// An assumption taken from the literature.
    CitedFact {
        statement: String,
        citation: String,
    },
}

/// Generator of the centre of the edge group `A_e = <a_v, a_w>`:
/// `(a_v a_w)^exponent`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CenterWitness {
    pub v: String,
    pub w: String,
    pub label: u64,
    pub exponent: u64,
}

impl CenterWitness {
    pub fn word(&self) -> String {
        alloc::format!("({} {})^{}", self.v, self.w, self.exponent)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum AmalgamOver {
    Finite {
        order: u64,
    },
    /// Infinite amenable subgroup, cost 1.
    Amenable {
        name: String,
    },
    /// Vertex subgroup `A_v`, infinite cyclic.
    Vertex {
        vertex: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum IntersectionWitness {
    /// `A_v` lies in both children.
    Vertex { vertex: String },
    /// Described subgroup with generating words; needs a cited fact among
    /// the node's children.
    Subgroup { descriptor: String, words: Vec<String> },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("edge label must be >= 2, got {0}")]
pub struct LabelError(pub u64);

/// Exponent `k` with `(a_v a_w)^k` generating the centre of `A_e` for an
/// edge labelled `n`.
pub fn edge_center_word(n: u64) -> Result<u64, LabelError> {
    match n {
        0 | 1 => Err(LabelError(n)),
        n if n % 2 == 0 => Ok(n / 2),
        n => Ok(n),
    }
}

impl CertNode {
    pub fn new(kind: NodeKind, claimed_cost: Option<Rational>, rule: &str) -> Self {
        CertNode {
            kind,
            claimed_cost,
            rule: rule.into(),
            support: None,
            scope: None,
            children: Vec::new(),
        }
    }

    pub fn finite(order: u64) -> Self {
        Self::new(
            NodeKind::FiniteLeaf { order },
            Some(Rational::one() - Rational::recip_of(order)),
            RULE_FINITE,
        )
    }

    pub fn amenable(name: &str, reason: &str) -> Self {
        Self::new(
            NodeKind::AmenableLeaf {
                name: name.into(),
                reason: reason.into(),
            },
            Some(Rational::one()),
            RULE_AMENABLE,
        )
    }

    pub fn cited(statement: &str, citation: &str) -> Self {
        Self::new(
            NodeKind::CitedFact {
                statement: statement.into(),
                citation: citation.into(),
            },
            None,
            RULE_CITED,
        )
    }

    /// Generation node of two cost-1 children plus side conditions.
    pub fn generation(witness: IntersectionWitness, a: CertNode, b: CertNode, facts: Vec<CertNode>) -> Self {
        let mut n = Self::new(NodeKind::Generation { witness }, Some(Rational::one()), RULE_GENERATION);
        n.children.push(a);
        n.children.push(b);
        n.children.extend(facts);
        n
    }

    pub fn with_support(mut self, support: Vec<String>) -> Self {
        self.support = Some(support);
        self
    }

    pub fn with_scope(mut self, scope: LabelledGraph) -> Self {
        self.scope = Some(scope);
        self
    }

    /// Number of nodes in the subtree.
    pub fn size(&self) -> usize {
        1 + self.children.iter().map(CertNode::size).sum::<usize>()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn center_word_exponents() {
        assert_eq!(edge_center_word(2), Ok(1));
        assert_eq!(edge_center_word(3), Ok(3));
        assert_eq!(edge_center_word(4), Ok(2));
        assert_eq!(edge_center_word(7), Ok(7));
        assert_eq!(edge_center_word(1), Err(LabelError(1)));
    }
}
