//! Labelled defining graphs of Artin and Coxeter groups.
//!
//! A [`LabelledGraph`] is a finite simple graph whose edges carry integer
//! labels `>= 2`. A missing edge means "no relation" between the two
//! generators: a free pair in the Artin group, an infinite dihedral pair in
//! the Coxeter group. Vertex order is declaration order and is used for every
//! tie-break in this crate.

mod analysis;
pub mod families;
mod planarity;

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

pub use analysis::{
    components, components_within, cut_vertices, cut_vertices_within, girth, reduction_order, reduction_order_with,
    DegeneracyWitness, Girth, ReductionOrder, TieBreak,
};
pub use planarity::is_planar;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("invalid vertex name {0:?}")]
    InvalidName(String),
    #[error("duplicate vertex {0:?}")]
    DuplicateVertex(String),
    #[error("undeclared vertex {0:?}")]
    UndeclaredVertex(String),
    #[error("edge {0}-{1} has label {2} < 2")]
    LabelTooSmall(String, String, u64),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(String, String),
    #[error("self-loop at {0:?}")]
    SelfLoop(String),
    #[error("graph has no vertices")]
    Empty,
    #[error("graph is not connected")]
    Disconnected,
}

/// Names match `[A-Za-z0-9_]+`.
pub fn is_valid_name(name: &str) -> bool {
    !name.is_empty() && name.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'_')
}

/// Finite simple graph with edge labels `>= 2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GraphRepr", into = "GraphRepr")]
pub struct LabelledGraph {
    names: Vec<String>,
    adj: Vec<BTreeMap<usize, u64>>,
}

/// Incremental construction with per-step validation, so parsers can attach
/// positions to errors.
#[derive(Debug, Clone, Default)]
pub struct GraphBuilder {
    names: Vec<String>,
    index: BTreeMap<String, usize>,
    adj: Vec<BTreeMap<usize, u64>>,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn vertex(&mut self, name: &str) -> Result<usize, GraphError> {
        if !is_valid_name(name) {
            return Err(GraphError::InvalidName(name.into()));
        }
        if self.index.contains_key(name) {
            return Err(GraphError::DuplicateVertex(name.into()));
        }
        let i = self.names.len();
        self.names.push(name.into());
        self.index.insert(name.into(), i);
        self.adj.push(BTreeMap::new());
        Ok(i)
    }

    pub fn edge(&mut self, a: &str, b: &str, label: u64) -> Result<(), GraphError> {
        let u = *self
            .index
            .get(a)
            .ok_or_else(|| GraphError::UndeclaredVertex(a.into()))?;
        let v = *self
            .index
            .get(b)
            .ok_or_else(|| GraphError::UndeclaredVertex(b.into()))?;
        if u == v {
            return Err(GraphError::SelfLoop(a.into()));
        }
        if label < 2 {
            return Err(GraphError::LabelTooSmall(a.into(), b.into(), label));
        }
        if self.adj[u].contains_key(&v) {
            return Err(GraphError::DuplicateEdge(a.into(), b.into()));
        }
        self.adj[u].insert(v, label);
        self.adj[v].insert(u, label);
        Ok(())
    }

    pub fn build(self) -> Result<LabelledGraph, GraphError> {
        if self.names.is_empty() {
            return Err(GraphError::Empty);
        }
        Ok(LabelledGraph {
            names: self.names,
            adj: self.adj,
        })
    }
}

impl LabelledGraph {
    pub fn from_parts<S: AsRef<str>>(vertices: &[S], edges: &[(S, S, u64)]) -> Result<Self, GraphError> {
        let mut b = GraphBuilder::new();
        for v in vertices {
            b.vertex(v.as_ref())?;
        }
        for (x, y, l) in edges {
            b.edge(x.as_ref(), y.as_ref(), *l)?;
        }
        b.build()
    }

    /// Graph on vertices `0..n` named `v0, v1, ...` from index pairs.
    pub fn from_indexed(n: usize, edges: &[(usize, usize, u64)]) -> Result<Self, GraphError> {
        let names: Vec<String> = (0..n).map(|i| alloc::format!("v{i}")).collect();
        let e: Vec<(String, String, u64)> = edges
            .iter()
            .map(|&(a, b, l)| (names[a].clone(), names[b].clone(), l))
            .collect();
        Self::from_parts(&names, &e)
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|m| m.len()).sum::<usize>() / 2
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn label(&self, u: usize, v: usize) -> Option<u64> {
        self.adj[u].get(&v).copied()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Neighbors in increasing index order, with edge labels.
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = (usize, u64)> + '_ {
        self.adj[v].iter().map(|(&w, &l)| (w, l))
    }

    /// Edges `(u, v, label)` with `u < v`, sorted.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, u64)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, m)| m.range(u + 1..).map(move |(&v, &l)| (u, v, l)))
    }

    /// Subgraph induced by `vertices` (any order); vertex order of the result
    /// follows the ambient declaration order.
    pub fn induced(&self, vertices: &[usize]) -> LabelledGraph {
        let mut keep: Vec<usize> = vertices.to_vec();
        keep.sort_unstable();
        keep.dedup();
        let pos: BTreeMap<usize, usize> = keep.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let adj = keep
            .iter()
            .map(|&v| {
                self.adj[v]
                    .iter()
                    .filter_map(|(w, &l)| pos.get(w).map(|&j| (j, l)))
                    .collect()
            })
            .collect();
        LabelledGraph {
            names: keep.iter().map(|&v| self.names[v].clone()).collect(),
            adj,
        }
    }
}

#[derive(Serialize, Deserialize)]
struct GraphRepr {
    vertices: Vec<String>,
    edges: Vec<(String, String, u64)>,
}

impl TryFrom<GraphRepr> for LabelledGraph {
    type Error = GraphError;
    fn try_from(r: GraphRepr) -> Result<Self, GraphError> {
        LabelledGraph::from_parts(&r.vertices, &r.edges)
    }
}

impl From<LabelledGraph> for GraphRepr {
    fn from(g: LabelledGraph) -> Self {
        let edges = g
            .edges()
            .map(|(u, v, l)| (g.names[u].clone(), g.names[v].clone(), l))
            .collect();
        GraphRepr {
            vertices: g.names,
            edges,
        }
    }
}
