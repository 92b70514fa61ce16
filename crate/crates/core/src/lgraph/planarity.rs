//! Left-right planarity criterion (de Fraysseix–Rosenstiehl, in Brandes'
//! formulation). Only the yes/no answer is computed; no embedding is built.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use super::LabelledGraph;

pub fn is_planar(g: &LabelledGraph) -> bool {
    let n = g.vertex_count();
    let m = g.edge_count();
    if n > 2 && m > 3 * n - 6 {
        return false;
    }
    let mut lr = LeftRight::new(g);
    for v in 0..n {
        if lr.height[v].is_none() {
            lr.height[v] = Some(0);
            lr.roots.push(v);
            lr.orient(v);
        }
    }
    for v in 0..n {
        let mut out = core::mem::take(&mut lr.out[v]);
        out.sort_by_key(|&e| lr.nesting_depth[e]);
        lr.out[v] = out;
    }
    let roots = core::mem::take(&mut lr.roots);
    roots.into_iter().all(|r| lr.test(r))
}

#[derive(Clone, Copy, Default, PartialEq, Eq)]
struct Interval {
    low: Option<usize>,
    high: Option<usize>,
}

impl Interval {
    fn single(e: usize) -> Self {
        Interval {
            low: Some(e),
            high: Some(e),
        }
    }

    fn is_empty(&self) -> bool {
        self.low.is_none() && self.high.is_none()
    }
}

#[derive(Clone, Copy, Default)]
struct ConflictPair {
    left: Interval,
    right: Interval,
}

impl ConflictPair {
    fn swap(&mut self) {
        core::mem::swap(&mut self.left, &mut self.right);
    }
}

struct LeftRight<'a> {
    g: &'a LabelledGraph,
    roots: Vec<usize>,
    height: Vec<Option<usize>>,
    parent_edge: Vec<Option<usize>>,
    // Oriented edges.
    src: Vec<usize>,
    dst: Vec<usize>,
    oriented: BTreeSet<(usize, usize)>,
    out: Vec<Vec<usize>>,
    lowpt: Vec<usize>,
    lowpt2: Vec<usize>,
    nesting_depth: Vec<usize>,
    lowpt_edge: Vec<Option<usize>>,
    reference: Vec<Option<usize>>,
    stack_bottom: Vec<usize>,
    stack: Vec<ConflictPair>,
}

impl<'a> LeftRight<'a> {
    fn new(g: &'a LabelledGraph) -> Self {
        let n = g.vertex_count();
        let m = g.edge_count();
        LeftRight {
            g,
            roots: Vec::new(),
            height: vec![None; n],
            parent_edge: vec![None; n],
            src: Vec::with_capacity(m),
            dst: Vec::with_capacity(m),
            oriented: BTreeSet::new(),
            out: vec![Vec::new(); n],
            lowpt: Vec::with_capacity(m),
            lowpt2: Vec::with_capacity(m),
            nesting_depth: Vec::with_capacity(m),
            lowpt_edge: Vec::with_capacity(m),
            reference: Vec::with_capacity(m),
            stack_bottom: Vec::with_capacity(m),
            stack: Vec::new(),
        }
    }

    fn orient(&mut self, v: usize) {
        let parent = self.parent_edge[v];
        let hv = self.height[v].unwrap();
        let g = self.g;
        for (w, _) in g.neighbors(v) {
            let key = (v.min(w), v.max(w));
            if !self.oriented.insert(key) {
                continue;
            }
            let e = self.src.len();
            self.src.push(v);
            self.dst.push(w);
            self.out[v].push(e);
            self.lowpt.push(hv);
            self.lowpt2.push(hv);
            self.nesting_depth.push(0);
            self.lowpt_edge.push(None);
            self.reference.push(None);
            self.stack_bottom.push(0);
            match self.height[w] {
                None => {
                    self.parent_edge[w] = Some(e);
                    self.height[w] = Some(hv + 1);
                    self.orient(w);
                }
                Some(hw) => self.lowpt[e] = hw,
            }
            self.nesting_depth[e] = 2 * self.lowpt[e] + usize::from(self.lowpt2[e] < hv);
            if let Some(p) = parent {
                if self.lowpt[e] < self.lowpt[p] {
                    self.lowpt2[p] = self.lowpt[p].min(self.lowpt2[e]);
                    self.lowpt[p] = self.lowpt[e];
                } else if self.lowpt[e] > self.lowpt[p] {
                    self.lowpt2[p] = self.lowpt2[p].min(self.lowpt[e]);
                } else {
                    self.lowpt2[p] = self.lowpt2[p].min(self.lowpt2[e]);
                }
            }
        }
    }

    fn test(&mut self, v: usize) -> bool {
        let parent = self.parent_edge[v];
        let hv = self.height[v].unwrap();
        let out = self.out[v].clone();
        for (i, &e) in out.iter().enumerate() {
            let w = self.dst[e];
            self.stack_bottom[e] = self.stack.len();
            if self.parent_edge[w] == Some(e) {
                if !self.test(w) {
                    return false;
                }
            } else {
                self.lowpt_edge[e] = Some(e);
                self.stack.push(ConflictPair {
                    left: Interval::default(),
                    right: Interval::single(e),
                });
            }
            if self.lowpt[e] < hv {
                let p = parent.expect("non-root vertex has a parent edge");
                if i == 0 {
                    self.lowpt_edge[p] = self.lowpt_edge[e];
                } else if !self.add_constraints(e, p) {
                    return false;
                }
            }
        }
        if let Some(p) = parent {
            self.remove_back_edges(p);
        }
        true
    }

    fn conflicting(&self, iv: &Interval, e: usize) -> bool {
        match iv.high {
            Some(h) if !iv.is_empty() => self.lowpt[h] > self.lowpt[e],
            _ => false,
        }
    }

    fn lowest(&self, p: &ConflictPair) -> Option<usize> {
        let l = p.left.low.map(|x| self.lowpt[x]);
        let r = p.right.low.map(|x| self.lowpt[x]);
        match (l, r) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        }
    }

    fn set_ref(&mut self, at: Option<usize>, to: Option<usize>) {
        if let Some(a) = at {
            self.reference[a] = to;
        }
    }

    fn add_constraints(&mut self, ei: usize, e: usize) -> bool {
        let mut p = ConflictPair::default();
        while let Some(mut q) = self.stack.pop() {
            if !q.left.is_empty() {
                q.swap();
            }
            if !q.left.is_empty() {
                return false;
            }
            let qlow = q.right.low.expect("non-empty interval");
            if self.lowpt[qlow] > self.lowpt[e] {
                if p.right.is_empty() {
                    p.right = q.right;
                } else {
                    self.set_ref(p.right.low, q.right.high);
                }
                p.right.low = q.right.low;
            } else {
                self.reference[qlow] = self.lowpt_edge[e];
            }
            if self.stack.len() == self.stack_bottom[ei] {
                break;
            }
        }
        while let Some(top) = self.stack.last() {
            if !(self.conflicting(&top.left, ei) || self.conflicting(&top.right, ei)) {
                break;
            }
            let mut q = self.stack.pop().unwrap();
            if self.conflicting(&q.right, ei) {
                q.swap();
            }
            if self.conflicting(&q.right, ei) {
                return false;
            }
            self.set_ref(p.right.low, q.right.high);
            if q.right.low.is_some() {
                p.right.low = q.right.low;
            }
            if p.left.is_empty() {
                p.left = q.left;
            } else {
                self.set_ref(p.left.low, q.left.high);
            }
            p.left.low = q.left.low;
        }
        if !(p.left.is_empty() && p.right.is_empty()) {
            self.stack.push(p);
        }
        true
    }

    fn remove_back_edges(&mut self, e: usize) {
        let u = self.src[e];
        let hu = self.height[u].unwrap();
        while let Some(top) = self.stack.last() {
            if self.lowest(top) != Some(hu) {
                break;
            }
            self.stack.pop();
        }
        if let Some(mut p) = self.stack.pop() {
            while let Some(h) = p.left.high {
                if self.dst[h] != u {
                    break;
                }
                p.left.high = self.reference[h];
            }
            if p.left.high.is_none() && p.left.low.is_some() {
                self.set_ref(p.left.low, p.right.low);
                p.left.low = None;
            }
            while let Some(h) = p.right.high {
                if self.dst[h] != u {
                    break;
                }
                p.right.high = self.reference[h];
            }
            if p.right.high.is_none() && p.right.low.is_some() {
                self.set_ref(p.right.low, p.left.low);
                p.right.low = None;
            }
            self.stack.push(p);
        }
        if self.lowpt[e] < hu {
            if let Some(top) = self.stack.last() {
                let hl = top.left.high;
                let hr = top.right.high;
                self.reference[e] = match (hl, hr) {
                    (Some(l), None) => Some(l),
                    (Some(l), Some(r)) if self.lowpt[l] > self.lowpt[r] => Some(l),
                    _ => hr,
                };
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lgraph::families;

    #[test]
    fn kuratowski_graphs() {
        assert!(is_planar(&families::complete(4, 2)));
        assert!(!is_planar(&families::complete(5, 2)));
        assert!(!is_planar(&families::complete_bipartite(3, 3, 2)));
        assert!(is_planar(&families::complete_bipartite(2, 5, 2)));
    }

    #[test]
    fn subdivided_kuratowski_graphs_stay_nonplanar() {
        assert!(!is_planar(&families::subdivide(&families::complete(5, 2), 1, |_| 2)));
        assert!(!is_planar(&families::subdivide(
            &families::complete_bipartite(3, 3, 2),
            2,
            |_| 2
        )));
    }

    #[test]
    fn petersen_is_nonplanar() {
        let mut edges = alloc::vec::Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5, 2));
            edges.push((i, i + 5, 2));
            edges.push((i + 5, (i + 2) % 5 + 5, 2));
        }
        let g = LabelledGraph::from_indexed(10, &edges).unwrap();
        assert!(!is_planar(&g));
    }

    #[test]
    fn grids_and_forests_are_planar() {
        assert!(is_planar(&families::honeycomb(6, 7, |_| 2)));
        assert!(is_planar(&families::path(&[2; 9])));
        assert!(is_planar(&LabelledGraph::from_indexed(3, &[]).unwrap()));
    }
}
