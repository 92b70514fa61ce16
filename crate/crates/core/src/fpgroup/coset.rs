//! Coset tables and HLT coset enumeration with lookahead.

use alloc::collections::VecDeque;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::{inverse_letter, Letter, Presentation, Word};

pub const DEFAULT_COSET_LIMIT: usize = 100_000;

const NONE: u32 = u32::MAX;

/// Complete coset table. Coset 0 is the subgroup; columns are letters
/// (`2g` for generator `g`, `2g + 1` for its inverse).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CosetTable {
    ncols: usize,
    rows: Vec<u32>,
}

impl CosetTable {
    /// Builds from rows of images, one entry per letter.
    pub fn from_rows(ncols: usize, rows: Vec<Vec<u32>>) -> Result<Self, String> {
        let k = rows.len();
        let mut flat = Vec::with_capacity(k * ncols);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != ncols {
                return Err(format!("row {i} has {} entries, expected {ncols}", r.len()));
            }
            if let Some(&bad) = r.iter().find(|&&x| x as usize >= k) {
                return Err(format!("row {i} refers to coset {bad} of {k}"));
            }
            flat.extend_from_slice(r);
        }
        Ok(CosetTable { ncols, rows: flat })
    }

    pub fn index(&self) -> usize {
        if self.ncols == 0 {
            1
        } else {
            self.rows.len() / self.ncols
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn act(&self, coset: usize, l: Letter) -> usize {
        self.rows[coset * self.ncols + l as usize] as usize
    }

    pub fn trace(&self, coset: usize, w: &[Letter]) -> usize {
        w.iter().fold(coset, |c, &l| self.act(c, l))
    }

    pub fn row(&self, coset: usize) -> &[u32] {
        &self.rows[coset * self.ncols..(coset + 1) * self.ncols]
    }

    /// Checks inverse columns, relators from every coset and transitivity.
    pub fn validate(&self, p: &Presentation) -> Result<(), String> {
        if self.ncols != 2 * p.generator_count() {
            return Err("column count does not match the presentation".into());
        }
        let k = self.index();
        for c in 0..k {
            for l in 0..self.ncols as Letter {
                let d = self.act(c, l);
                if self.act(d, inverse_letter(l)) != c {
                    return Err(format!("inverse columns disagree at coset {c}, letter {l}"));
                }
            }
            for (i, r) in p.relators().iter().enumerate() {
                if self.trace(c, r) != c {
                    return Err(format!("relator {i} does not close at coset {c}"));
                }
            }
        }
        let mut seen = vec![false; k];
        seen[0] = true;
        let mut queue = VecDeque::from([0usize]);
        let mut count = 1;
        while let Some(c) = queue.pop_front() {
            for l in 0..self.ncols as Letter {
                let d = self.act(c, l);
                if !seen[d] {
                    seen[d] = true;
                    count += 1;
                    queue.push_back(d);
                }
            }
        }
        if count != k {
            return Err("action is not transitive".into());
        }
        Ok(())
    }

    /// Renumbers cosets in order of first appearance when rows are read
    /// from `base` (which becomes coset 0). The result is the standard
    /// table of the stabilizer of `base`.
    pub fn standardize_from(&self, base: usize) -> CosetTable {
        let k = self.index();
        let mut new_of = vec![NONE; k];
        let mut order = Vec::with_capacity(k);
        new_of[base] = 0;
        order.push(base);
        let mut i = 0;
        while i < order.len() {
            let c = order[i];
            for l in 0..self.ncols as Letter {
                let d = self.act(c, l);
                if new_of[d] == NONE {
                    new_of[d] = order.len() as u32;
                    order.push(d);
                }
            }
            i += 1;
        }
        let mut rows = Vec::with_capacity(self.rows.len());
        for &c in &order {
            rows.extend(self.row(c).iter().map(|&d| new_of[d as usize]));
        }
        CosetTable {
            ncols: self.ncols,
            rows,
        }
    }

    pub fn standardize(&self) -> CosetTable {
        self.standardize_from(0)
    }

    /// The subgroup of coset 0 is normal iff conjugating by any generator
    /// gives the same standard table.
    pub fn is_normal(&self) -> bool {
        let std = self.standardize();
        (0..self.ncols as Letter)
            .step_by(2)
            .all(|l| std.standardize_from(std.act(0, l)) == std)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EnumerationError {
    /// Not a proof that the index is infinite.
    #[error("coset limit exceeded with {live} live cosets (inconclusive)")]
    LimitExceeded { live: usize },
    #[error("coset limit must be at least 1")]
    BadLimit,
}

/// HLT enumeration of the cosets of the subgroup generated by `subgroup`.
/// When more than `coset_limit` cosets are live, a lookahead pass scans
/// every relator from every coset without defining new ones; if that does
/// not bring the count back under the limit, enumeration stops.
pub fn todd_coxeter(p: &Presentation, subgroup: &[Word], coset_limit: usize) -> Result<CosetTable, EnumerationError> {
    if coset_limit == 0 {
        return Err(EnumerationError::BadLimit);
    }
    let mut e = Enumerator::new(2 * p.generator_count());
    let rels: Vec<&[Letter]> = p
        .relators()
        .iter()
        .map(|r| r.as_slice())
        .filter(|r| !r.is_empty())
        .collect();
    for w in subgroup {
        e.scan_and_fill(0, w);
    }
    let mut alpha = 0;
    while alpha < e.p.len() {
        if e.live_count > coset_limit {
            e.lookahead(&rels);
            if e.live_count > coset_limit {
                return Err(EnumerationError::LimitExceeded { live: e.live_count });
            }
            if e.p.len() > 4 * coset_limit + 64 {
                alpha = e.compact(alpha);
            }
        }
        if e.is_live(alpha) {
            for r in &rels {
                e.scan_and_fill(alpha, r);
                if !e.is_live(alpha) {
                    break;
                }
            }
            if e.is_live(alpha) {
                for x in 0..e.ncols {
                    if e.get(alpha, x as Letter) == NONE {
                        e.define(alpha, x as Letter);
                    }
                }
            }
        }
        alpha += 1;
    }
    Ok(e.finish())
}

struct Enumerator {
    ncols: usize,
    table: Vec<u32>,
    /// Union-find parent; `p[c] == c` for live cosets.
    p: Vec<u32>,
    live_count: usize,
    queue: Vec<u32>,
}

impl Enumerator {
    fn new(ncols: usize) -> Self {
        Enumerator {
            ncols,
            table: vec![NONE; ncols],
            p: vec![0],
            live_count: 1,
            queue: Vec::new(),
        }
    }

    fn get(&self, c: usize, l: Letter) -> u32 {
        self.table[c * self.ncols + l as usize]
    }

    fn set(&mut self, c: usize, l: Letter, v: u32) {
        self.table[c * self.ncols + l as usize] = v;
    }

    fn is_live(&self, c: usize) -> bool {
        self.p[c] as usize == c
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut r = c;
        while self.p[r as usize] != r {
            r = self.p[r as usize];
        }
        let mut x = c;
        while self.p[x as usize] != r {
            let next = self.p[x as usize];
            self.p[x as usize] = r;
            x = next;
        }
        r
    }

    fn define(&mut self, c: usize, l: Letter) -> u32 {
        let n = self.p.len() as u32;
        self.p.push(n);
        self.table.extend(core::iter::repeat_n(NONE, self.ncols));
        self.live_count += 1;
        self.set(c, l, n);
        self.set(n as usize, inverse_letter(l), c as u32);
        n
    }

    fn scan_and_fill(&mut self, alpha: usize, w: &[Letter]) {
        self.scan_inner(alpha, w, true);
    }

    /// Scan without defining; deductions and coincidences are processed.
    fn scan(&mut self, alpha: usize, w: &[Letter]) {
        self.scan_inner(alpha, w, false);
    }

    fn scan_inner(&mut self, alpha: usize, w: &[Letter], fill: bool) {
        if w.is_empty() {
            return;
        }
        let mut f = alpha as u32;
        let mut b = alpha as u32;
        let mut i: isize = 0;
        let mut j: isize = w.len() as isize - 1;
        loop {
            while i <= j && self.get(f as usize, w[i as usize]) != NONE {
                f = self.get(f as usize, w[i as usize]);
                i += 1;
            }
            if i > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return;
            }
            while j >= i && self.get(b as usize, inverse_letter(w[j as usize])) != NONE {
                b = self.get(b as usize, inverse_letter(w[j as usize]));
                j -= 1;
            }
            if j < i {
                self.coincidence(f, b);
                return;
            }
            if i == j {
                let l = w[i as usize];
                self.set(f as usize, l, b);
                self.set(b as usize, inverse_letter(l), f);
                return;
            }
            if !fill {
                return;
            }
            self.define(f as usize, w[i as usize]);
        }
    }

    fn lookahead(&mut self, rels: &[&[Letter]]) {
        let mut c = 0;
        while c < self.p.len() {
            for r in rels {
                if !self.is_live(c) {
                    break;
                }
                self.scan(c, r);
            }
            c += 1;
        }
    }

    fn merge(&mut self, k: u32, l: u32) {
        let a = self.rep(k);
        let b = self.rep(l);
        if a == b {
            return;
        }
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        self.p[hi as usize] = lo;
        self.live_count -= 1;
        self.queue.push(hi);
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.queue.clear();
        self.merge(a, b);
        let mut qi = 0;
        while qi < self.queue.len() {
            let gamma = self.queue[qi] as usize;
            qi += 1;
            for x in 0..self.ncols as Letter {
                let delta = self.get(gamma, x);
                if delta == NONE {
                    continue;
                }
                let xi = inverse_letter(x);
                if self.get(delta as usize, xi) == gamma as u32 {
                    self.set(delta as usize, xi, NONE);
                }
                let mu = self.rep(gamma as u32);
                let nu = self.rep(delta);
                let mx = self.get(mu as usize, x);
                if mx != NONE {
                    self.merge(nu, mx);
                } else {
                    let nxi = self.get(nu as usize, xi);
                    if nxi != NONE {
                        self.merge(mu, nxi);
                    } else {
                        self.set(mu as usize, x, nu);
                        self.set(nu as usize, xi, mu);
                    }
                }
            }
        }
        self.queue.clear();
    }

    /// Drops dead cosets, keeping the order of live ones. Returns the new
    /// position of `alpha`.
    fn compact(&mut self, alpha: usize) -> usize {
        let n = self.p.len();
        let mut new_of = vec![NONE; n];
        let mut k = 0u32;
        let mut new_alpha = None;
        for c in 0..n {
            if c == alpha {
                new_alpha = Some(k as usize);
            }
            if self.is_live(c) {
                new_of[c] = k;
                k += 1;
            }
        }
        let mut table = Vec::with_capacity(k as usize * self.ncols);
        for c in 0..n {
            if self.is_live(c) {
                for x in 0..self.ncols {
                    let d = self.table[c * self.ncols + x];
                    table.push(if d == NONE { NONE } else { new_of[d as usize] });
                }
            }
        }
        self.table = table;
        self.p = (0..k).collect();
        new_alpha.unwrap_or(k as usize)
    }

    fn finish(mut self) -> CosetTable {
        let pos = self.compact(0);
        debug_assert_eq!(pos, 0);
        debug_assert!(self.table.iter().all(|&x| x != NONE));
        CosetTable {
            ncols: self.ncols,
            rows: self.table,
        }
        .standardize()
    }
}
