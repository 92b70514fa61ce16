//! Smith normal form over the integers and abelian invariants.

use alloc::vec::Vec;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{exponent_sums, Presentation};

/// Nonzero diagonal of the Smith form, each dividing the next (units
/// included), and the rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub invariant_factors: Vec<BigInt>,
    pub rank: usize,
}

/// Abelianization `Z^free_rank + sum Z/d_i` with every `d_i > 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianInvariants {
    pub free_rank: usize,
    pub invariant_factors: Vec<BigInt>,
}

impl AbelianInvariants {
    /// Minimal number of generators of the abelian group.
    pub fn min_generators(&self) -> usize {
        self.free_rank + self.invariant_factors.len()
    }
}

/// Rows are relators, columns generators.
pub fn relation_matrix(p: &Presentation) -> Vec<Vec<BigInt>> {
    p.relators()
        .iter()
        .map(|r| {
            exponent_sums(r, p.generator_count())
                .into_iter()
                .map(BigInt::from)
                .collect()
        })
        .collect()
}

pub fn smith_normal_form(m: &[Vec<BigInt>]) -> SmithForm {
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows && t < cols {
        // Pivot: smallest nonzero absolute value in the remaining block.
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero() && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut done = true;
            for i in t + 1..rows {
                if !a[i][t].is_zero() {
                    let q = a[i][t].div_floor(&a[t][t]);
                    for j in t..cols {
                        let d = &q * &a[t][j];
                        a[i][j] -= d;
                    }
                    if !a[i][t].is_zero() {
                        done = false;
                    }
                }
            }
            for j in t + 1..cols {
                if !a[t][j].is_zero() {
                    let q = a[t][j].div_floor(&a[t][t]);
                    for i in t..rows {
                        let d = &q * &a[i][t];
                        a[i][j] -= d;
                    }
                    if !a[t][j].is_zero() {
                        done = false;
                    }
                }
            }
            if done {
                // Divisibility: add a row with an entry not divisible by the pivot.
                let bad =
                    (t + 1..rows).find_map(|i| (t + 1..cols).find(|&j| !a[i][j].is_multiple_of(&a[t][t])).map(|_| i));
                match bad {
                    None => break,
                    Some(i) => {
                        for j in t..cols {
                            let v = a[i][j].clone();
                            a[t][j] += v;
                        }
                    }
                }
            }
            // Move the smallest entry of row/column t to the pivot.
            let mut best = (t, t);
            for i in t..rows {
                if !a[i][t].is_zero() && a[i][t].abs() < a[best.0][best.1].abs() {
                    best = (i, t);
                }
            }
            for j in t..cols {
                if !a[t][j].is_zero() && a[t][j].abs() < a[best.0][best.1].abs() {
                    best = (t, j);
                }
            }
            if best.0 != t {
                a.swap(t, best.0);
            }
            if best.1 != t {
                for row in a.iter_mut() {
                    row.swap(t, best.1);
                }
            }
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    SmithForm {
        rank: diag.len(),
        invariant_factors: diag,
    }
}

pub fn abelian_invariants(p: &Presentation) -> AbelianInvariants {
    let snf = smith_normal_form(&relation_matrix(p));
    AbelianInvariants {
        free_rank: p.generator_count() - snf.rank,
        invariant_factors: snf.invariant_factors.into_iter().filter(|d| !d.is_one()).collect(),
    }
}
