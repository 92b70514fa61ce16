//! Reidemeister–Schreier presentations of the subgroup fixing coset 0.

use alloc::collections::VecDeque;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::{free_reduce, gen_letter, inverse_letter, is_inverse, letter_gen, CosetTable, Letter, Presentation, Word};

/// How the Schreier transversal is grown.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SchreierPolicy {
    /// Breadth first, letters in column order.
    #[default]
    BreadthFirst,
    /// Depth first, letters in reverse column order.
    DepthFirstReversed,
}

const NOT_TREE: u32 = u32::MAX;

/// Spanning tree as `parent_letter[d]`: the letter by which `d` was first
/// reached (`NOT_TREE` for coset 0).
fn spanning_tree(t: &CosetTable, policy: SchreierPolicy) -> Vec<u32> {
    let k = t.index();
    let ncols = t.ncols() as Letter;
    let mut via = vec![NOT_TREE; k];
    let mut seen = vec![false; k];
    seen[0] = true;
    match policy {
        SchreierPolicy::BreadthFirst => {
            let mut q = VecDeque::from([0usize]);
            while let Some(c) = q.pop_front() {
                for l in 0..ncols {
                    let d = t.act(c, l);
                    if !seen[d] {
                        seen[d] = true;
                        via[d] = l;
                        q.push_back(d);
                    }
                }
            }
        }
        SchreierPolicy::DepthFirstReversed => {
            let mut stack = vec![0usize];
            while let Some(&c) = stack.last() {
                let next = (0..ncols).rev().map(|l| (l, t.act(c, l))).find(|&(_, d)| !seen[d]);
                match next {
                    Some((l, d)) => {
                        seen[d] = true;
                        via[d] = l;
                        stack.push(d);
                    }
                    None => {
                        stack.pop();
                    }
                }
            }
        }
    }
    via
}

/// Presentation of the stabilizer of coset 0 on one generator `{g}_{c}`
/// per coset `c` and generator `g` whose edge is not in the transversal
/// tree, and one relator per coset and relator of `p`.
pub fn reidemeister_schreier(p: &Presentation, t: &CosetTable, policy: SchreierPolicy) -> Result<Presentation, String> {
    t.validate(p)?;
    let k = t.index();
    let ngens = p.generator_count();
    let via = spanning_tree(t, policy);
    let mut sym = vec![u32::MAX; k * ngens];
    let mut names = Vec::new();
    for c in 0..k {
        for g in 0..ngens {
            let l = gen_letter(g);
            let d = t.act(c, l);
            // Tree edge: d reached from c by g, or c reached from d by g^-1.
            if via[d] != l && via[c] != inverse_letter(l) {
                sym[c * ngens + g] = names.len() as u32;
                names.push(format!("{}_{}", p.generators()[g], c));
            }
        }
    }
    let rewrite = |start: usize, w: &[Letter]| -> Word {
        let mut c = start;
        let mut out = Word::new();
        for &l in w {
            let g = letter_gen(l);
            if is_inverse(l) {
                let d = t.act(c, l);
                let s = sym[d * ngens + g];
                if s != u32::MAX {
                    out.push(inverse_letter(gen_letter(s as usize)));
                }
                c = d;
            } else {
                let s = sym[c * ngens + g];
                if s != u32::MAX {
                    out.push(gen_letter(s as usize));
                }
                c = t.act(c, l);
            }
        }
        free_reduce(&out)
    };
    let mut rels = Vec::new();
    for c in 0..k {
        for r in p.relators() {
            let w = rewrite(c, r);
            if !w.is_empty() {
                rels.push(w);
            }
        }
    }
    Presentation::new(names, rels).map_err(|e| format!("{e}"))
}
