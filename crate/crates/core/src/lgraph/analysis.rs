use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use super::{GraphError, LabelledGraph};

/// Connected components of the whole graph. Blocks are sorted and ordered by
/// their smallest vertex index.
pub fn components(g: &LabelledGraph) -> Vec<Vec<usize>> {
    let all: Vec<usize> = (0..g.vertex_count()).collect();
    components_within(g, &all)
}

/// Connected components of the subgraph induced by `subset`.
pub fn components_within(g: &LabelledGraph, subset: &[usize]) -> Vec<Vec<usize>> {
    let mut inside = vec![false; g.vertex_count()];
    for &v in subset {
        inside[v] = true;
    }
    let mut seen = vec![false; g.vertex_count()];
    let mut order: Vec<usize> = subset.to_vec();
    order.sort_unstable();
    order.dedup();
    let mut blocks = Vec::new();
    for &s in &order {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut block = vec![s];
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for (w, _) in g.neighbors(u) {
                if inside[w] && !seen[w] {
                    seen[w] = true;
                    block.push(w);
                    queue.push_back(w);
                }
            }
        }
        block.sort_unstable();
        blocks.push(block);
    }
    blocks
}

/// Articulation points of a connected graph, sorted by index.
pub fn cut_vertices(g: &LabelledGraph) -> Result<Vec<usize>, GraphError> {
    let all: Vec<usize> = (0..g.vertex_count()).collect();
    cut_vertices_within(g, &all)
}

/// Articulation points of the connected subgraph induced by `subset`.
pub fn cut_vertices_within(g: &LabelledGraph, subset: &[usize]) -> Result<Vec<usize>, GraphError> {
    if components_within(g, subset).len() != 1 {
        return Err(GraphError::Disconnected);
    }
    let n = g.vertex_count();
    let mut inside = vec![false; n];
    for &v in subset {
        inside[v] = true;
    }
    let root = *subset.iter().min().unwrap();
    let mut state = Lowlink {
        g,
        inside: &inside,
        disc: vec![usize::MAX; n],
        low: vec![0; n],
        time: 0,
        is_cut: vec![false; n],
    };
    state.visit(root, usize::MAX);
    Ok((0..n).filter(|&v| state.is_cut[v]).collect())
}

struct Lowlink<'a> {
    g: &'a LabelledGraph,
    inside: &'a [bool],
    disc: Vec<usize>,
    low: Vec<usize>,
    time: usize,
    is_cut: Vec<bool>,
}

impl Lowlink<'_> {
    fn visit(&mut self, u: usize, parent: usize) {
        self.disc[u] = self.time;
        self.low[u] = self.time;
        self.time += 1;
        let mut children = 0;
        let g = self.g;
        for (w, _) in g.neighbors(u) {
            if !self.inside[w] {
                continue;
            }
            if self.disc[w] == usize::MAX {
                children += 1;
                self.visit(w, u);
                self.low[u] = self.low[u].min(self.low[w]);
                if parent != usize::MAX && self.low[w] >= self.disc[u] {
                    self.is_cut[u] = true;
                }
            } else if w != parent {
                self.low[u] = self.low[u].min(self.disc[w]);
            }
        }
        if parent == usize::MAX && children > 1 {
            self.is_cut[u] = true;
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Girth {
    Finite(usize),
    /// The graph is a forest.
    Infinite,
}

impl Girth {
    pub fn at_least(self, k: usize) -> bool {
        match self {
            Girth::Finite(n) => n >= k,
            Girth::Infinite => true,
        }
    }
}

impl core::fmt::Display for Girth {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Girth::Finite(n) => write!(f, "{n}"),
            Girth::Infinite => f.write_str("inf"),
        }
    }
}

/// Length of a shortest cycle, by breadth-first search from every vertex.
pub fn girth(g: &LabelledGraph) -> Girth {
    let n = g.vertex_count();
    let mut best = usize::MAX;
    for s in 0..n {
        let mut dist = vec![usize::MAX; n];
        let mut parent = vec![usize::MAX; n];
        dist[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for (w, _) in g.neighbors(u) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    queue.push_back(w);
                } else if parent[u] != w {
                    best = best.min(dist[u] + dist[w] + 1);
                }
            }
        }
    }
    if best == usize::MAX {
        Girth::Infinite
    } else {
        Girth::Finite(best)
    }
}

/// Vertex elimination order in which every vertex has degree at most two
/// among itself and the vertices after it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionOrder(Vec<usize>);

impl ReductionOrder {
    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    /// Re-checks the defining property against `g`.
    pub fn replay(&self, g: &LabelledGraph) -> bool {
        let n = g.vertex_count();
        let mut sorted = self.0.clone();
        sorted.sort_unstable();
        if sorted != (0..n).collect::<Vec<_>>() {
            return false;
        }
        let mut alive = vec![true; n];
        for &v in &self.0 {
            if g.neighbors(v).filter(|&(w, _)| alive[w]).count() > 2 {
                return false;
            }
            alive[v] = false;
        }
        true
    }

    /// For each step, the eliminated vertex and its neighbors among the
    /// vertices still present (with labels).
    pub fn steps(&self, g: &LabelledGraph) -> Vec<(usize, Vec<(usize, u64)>)> {
        let mut alive = vec![true; g.vertex_count()];
        self.0
            .iter()
            .map(|&v| {
                alive[v] = false;
                (v, g.neighbors(v).filter(|&(w, _)| alive[w]).collect())
            })
            .collect()
    }
}

/// Failure witness: the remaining induced subgraph in which every vertex has
/// degree at least three.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegeneracyWitness {
    pub eliminated: Vec<usize>,
    pub remaining: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TieBreak {
    #[default]
    SmallestIndex,
    LargestIndex,
}

/// Greedy elimination of the smallest-index vertex of current degree `<= 2`.
pub fn reduction_order(g: &LabelledGraph) -> Result<ReductionOrder, DegeneracyWitness> {
    reduction_order_with(g, TieBreak::SmallestIndex)
}

pub fn reduction_order_with(g: &LabelledGraph, tie: TieBreak) -> Result<ReductionOrder, DegeneracyWitness> {
    let n = g.vertex_count();
    let mut alive = vec![true; n];
    let mut degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut order = Vec::with_capacity(n);
    while order.len() < n {
        let pick = |v: &usize| alive[*v] && degree[*v] <= 2;
        let next = match tie {
            TieBreak::SmallestIndex => (0..n).find(pick),
            TieBreak::LargestIndex => (0..n).rev().find(pick),
        };
        let Some(v) = next else {
            return Err(DegeneracyWitness {
                eliminated: order,
                remaining: (0..n).filter(|&v| alive[v]).collect(),
            });
        };
        alive[v] = false;
        for (w, _) in g.neighbors(v) {
            if alive[w] {
                degree[w] -= 1;
            }
        }
        order.push(v);
    }
    Ok(ReductionOrder(order))
}
