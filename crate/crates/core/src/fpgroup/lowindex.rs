//! Low-index subgroups by backtracking over standard coset tables.

use alloc::vec;
use alloc::vec::Vec;

use super::{inverse_letter, CosetTable, Letter, Presentation};

pub const MAX_LOW_INDEX: usize = 64;

const NONE: u32 = u32::MAX;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LowIndexError {
    #[error("index bound {requested} outside 1..={max}")]
    BadBound { requested: usize, max: usize },
}

#[derive(Clone)]
struct Partial {
    ncols: usize,
    cosets: usize,
    table: Vec<u32>,
}

impl Partial {
    fn get(&self, c: usize, l: Letter) -> u32 {
        self.table[c * self.ncols + l as usize]
    }

    fn join(&mut self, c: usize, l: Letter, d: usize) {
        self.table[c * self.ncols + l as usize] = d as u32;
        self.table[d * self.ncols + inverse_letter(l) as usize] = c as u32;
    }

    /// Scans every relator from every coset, filling forced entries.
    /// Returns false on a contradiction.
    fn deduce(&mut self, rels: &[Vec<Letter>]) -> bool {
        loop {
            let mut changed = false;
            for c in 0..self.cosets {
                for r in rels {
                    match self.scan(c, r) {
                        Scan::Conflict => return false,
                        Scan::Deduced => changed = true,
                        Scan::Quiet => {}
                    }
                }
            }
            if !changed {
                return true;
            }
        }
    }

    fn scan(&mut self, c: usize, w: &[Letter]) -> Scan {
        let mut f = c;
        let mut i = 0usize;
        while i < w.len() && self.get(f, w[i]) != NONE {
            f = self.get(f, w[i]) as usize;
            i += 1;
        }
        if i == w.len() {
            return if f == c { Scan::Quiet } else { Scan::Conflict };
        }
        let mut b = c;
        let mut j = w.len();
        while j > i && self.get(b, inverse_letter(w[j - 1])) != NONE {
            b = self.get(b, inverse_letter(w[j - 1])) as usize;
            j -= 1;
        }
        if j == i {
            return if f == b { Scan::Quiet } else { Scan::Conflict };
        }
        if j == i + 1 {
            self.join(f, w[i], b);
            return Scan::Deduced;
        }
        Scan::Quiet
    }

    fn first_gap(&self) -> Option<(usize, Letter)> {
        let pos = self.table[..self.cosets * self.ncols].iter().position(|&x| x == NONE)?;
        Some((pos / self.ncols, (pos % self.ncols) as Letter))
    }
}

enum Scan {
    Quiet,
    Deduced,
    Conflict,
}

/// Every subgroup of index at most `n`, each once, as a standard coset
/// table. The whole group (index 1) is included.
pub fn low_index_subgroups(p: &Presentation, n: usize) -> Result<Vec<CosetTable>, LowIndexError> {
    if n == 0 || n > MAX_LOW_INDEX {
        return Err(LowIndexError::BadBound {
            requested: n,
            max: MAX_LOW_INDEX,
        });
    }
    let ncols = 2 * p.generator_count();
    let rels: Vec<Vec<Letter>> = p.relators().iter().filter(|r| !r.is_empty()).cloned().collect();
    let start = Partial {
        ncols,
        cosets: 1,
        table: vec![NONE; n * ncols],
    };
    let mut out = Vec::new();
    let mut stack = Vec::new();
    let mut first = start;
    if first.deduce(&rels) {
        stack.push(first);
    }
    while let Some(t) = stack.pop() {
        let Some((c, x)) = t.first_gap() else {
            let rows = (0..t.cosets)
                .map(|i| t.table[i * ncols..(i + 1) * ncols].to_vec())
                .collect();
            out.push(CosetTable::from_rows(ncols, rows).expect("complete table"));
            continue;
        };
        let xi = inverse_letter(x);
        let mut children = Vec::new();
        for y in 0..t.cosets {
            if t.get(y, xi) == NONE {
                let mut s = t.clone();
                s.join(c, x, y);
                if s.deduce(&rels) {
                    children.push(s);
                }
            }
        }
        if t.cosets < n {
            let mut s = t.clone();
            s.cosets += 1;
            s.join(c, x, t.cosets);
            if s.deduce(&rels) {
                children.push(s);
            }
        }
        stack.extend(children.into_iter().rev());
    }
    Ok(out)
}

/// Normal subgroups of index at most `n`.
pub fn low_index_normal(p: &Presentation, n: usize) -> Result<Vec<CosetTable>, LowIndexError> {
    Ok(low_index_subgroups(p, n)?
        .into_iter()
        .filter(CosetTable::is_normal)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fpgroup::todd_coxeter;

    fn count_by_index(ts: &[CosetTable], n: usize) -> Vec<usize> {
        (1..=n).map(|k| ts.iter().filter(|t| t.index() == k).count()).collect()
    }

    #[test]
    fn free_group_counts() {
        let f2 = Presentation::from_strs(&["a", "b"], &[]).unwrap();
        let subs = low_index_subgroups(&f2, 4).unwrap();
        assert_eq!(count_by_index(&subs, 4), [1, 3, 13, 71]);
        let normal = low_index_normal(&f2, 2).unwrap();
        assert_eq!(count_by_index(&normal, 2), [1, 3]);
    }

    #[test]
    fn s3_subgroup_lattice() {
        let s3 = Presentation::from_strs(&["a", "b"], &["a^2", "b^2", "a b a b a b"]).unwrap();
        let subs = low_index_subgroups(&s3, 6).unwrap();
        assert_eq!(count_by_index(&subs, 6), [1, 1, 3, 0, 0, 1]);
        assert_eq!(
            count_by_index(&low_index_normal(&s3, 6).unwrap(), 6),
            [1, 1, 0, 0, 0, 1]
        );
        for t in &subs {
            t.validate(&s3).unwrap();
            assert_eq!(t.standardize(), *t);
        }
        let regular = todd_coxeter(&s3, &[], 100).unwrap();
        assert!(subs.contains(&regular));
    }

    #[test]
    fn bounds() {
        let p = Presentation::from_strs(&["a"], &[]).unwrap();
        assert!(low_index_subgroups(&p, 0).is_err());
        assert!(low_index_subgroups(&p, MAX_LOW_INDEX + 1).is_err());
        assert_eq!(low_index_subgroups(&p, 5).unwrap().len(), 5);
    }
}
