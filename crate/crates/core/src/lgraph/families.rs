//! Constructors for standard graph families used by tests, built-in targets
//! and examples. Vertices are named `v0, v1, ...` unless stated otherwise.

use alloc::vec::Vec;

use super::LabelledGraph;

fn build(n: usize, edges: &[(usize, usize, u64)]) -> LabelledGraph {
    LabelledGraph::from_indexed(n, edges).expect("family constructor produced an invalid graph")
}

/// Path `v0 - v1 - ... - vk` with `labels[i]` on edge `vi - v(i+1)`.
pub fn path(labels: &[u64]) -> LabelledGraph {
    let edges: Vec<_> = labels.iter().enumerate().map(|(i, &l)| (i, i + 1, l)).collect();
    build(labels.len() + 1, &edges)
}

/// Cycle on `labels.len() >= 3` vertices.
pub fn cycle(labels: &[u64]) -> LabelledGraph {
    let n = labels.len();
    assert!(n >= 3, "cycle needs at least three vertices");
    let edges: Vec<_> = labels.iter().enumerate().map(|(i, &l)| (i, (i + 1) % n, l)).collect();
    build(n, &edges)
}

pub fn complete(n: usize, label: u64) -> LabelledGraph {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            edges.push((i, j, label));
        }
    }
    build(n, &edges)
}

pub fn complete_bipartite(a: usize, b: usize, label: u64) -> LabelledGraph {
    let mut edges = Vec::new();
    for i in 0..a {
        for j in 0..b {
            edges.push((i, a + j, label));
        }
    }
    build(a + b, &edges)
}

/// Tree decoded from a Prüfer sequence over `seq.len() + 2` vertices; edge
/// labels are drawn from `label` in edge order.
pub fn prufer_tree(seq: &[usize], mut label: impl FnMut(usize) -> u64) -> LabelledGraph {
    let n = seq.len() + 2;
    let mut degree = alloc::vec![1usize; n];
    for &s in seq {
        degree[s] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &s in seq {
        let leaf = (0..n).find(|&v| degree[v] == 1).unwrap();
        edges.push((leaf, s, label(edges.len())));
        degree[leaf] -= 1;
        degree[s] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1], label(edges.len())));
    build(n, &edges)
}

/// Honeycomb patch in brick-wall form: a `rows x cols` grid keeping every
/// horizontal edge and the vertical edges at positions with `r + c` even.
/// Planar with girth 6 whenever it contains a cycle.
pub fn honeycomb(rows: usize, cols: usize, mut label: impl FnMut(usize) -> u64) -> LabelledGraph {
    let id = |r: usize, c: usize| r * cols + c;
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            if c + 1 < cols {
                edges.push((id(r, c), id(r, c + 1), label(edges.len())));
            }
            if r + 1 < rows && (r + c) % 2 == 0 {
                edges.push((id(r, c), id(r + 1, c), label(edges.len())));
            }
        }
    }
    build(rows * cols, &edges)
}

/// Replaces every edge by a path with `k` interior vertices. The labels of
/// the new edges come from `label`.
pub fn subdivide(g: &LabelledGraph, k: usize, mut label: impl FnMut(usize) -> u64) -> LabelledGraph {
    let mut n = g.vertex_count();
    let mut edges = Vec::new();
    for (u, v, _) in g.edges() {
        let mut prev = u;
        for _ in 0..k {
            edges.push((prev, n, label(edges.len())));
            prev = n;
            n += 1;
        }
        edges.push((prev, v, label(edges.len())));
    }
    build(n, &edges)
}

/// Disjoint union, vertices of `b` renumbered after those of `a`.
pub fn disjoint_union(a: &LabelledGraph, b: &LabelledGraph) -> LabelledGraph {
    let shift = a.vertex_count();
    let edges: Vec<_> = a
        .edges()
        .chain(b.edges().map(|(u, v, l)| (u + shift, v + shift, l)))
        .collect();
    build(a.vertex_count() + b.vertex_count(), &edges)
}

/// Defining graph of the braid group `B_n`: a path of `n - 1` vertices
/// `s1 .. s(n-1)` with every label 3.
pub fn braid(n: usize) -> LabelledGraph {
    assert!(n >= 2, "braid group needs at least two strands");
    let names: Vec<alloc::string::String> = (1..n).map(|i| alloc::format!("s{i}")).collect();
    let edges: Vec<_> = names.windows(2).map(|w| (w[0].clone(), w[1].clone(), 3)).collect();
    LabelledGraph::from_parts(&names, &edges).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lgraph::{girth, is_planar, Girth};

    #[test]
    fn honeycomb_is_planar_with_girth_six() {
        let g = honeycomb(4, 5, |_| 2);
        assert_eq!(girth(&g), Girth::Finite(6));
        assert!(is_planar(&g));
    }

    #[test]
    fn prufer_gives_trees() {
        let t = prufer_tree(&[3, 3, 3, 4], |i| 2 + i as u64);
        assert_eq!(t.vertex_count(), 6);
        assert_eq!(t.edge_count(), 5);
        assert_eq!(girth(&t), Girth::Infinite);
    }

    #[test]
    fn subdivision_triples_girth() {
        let g = subdivide(&complete(4, 2), 2, |_| 3);
        assert_eq!(girth(&g), Girth::Finite(9));
    }

    #[test]
    fn braid_graph() {
        let g = braid(4);
        assert_eq!(g.names(), &["s1", "s2", "s3"]);
        assert_eq!(g.label(0, 1), Some(3));
        assert_eq!(g.label(0, 2), None);
    }
}
