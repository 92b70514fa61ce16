//! Kernels of homomorphisms onto permutation groups, as coset tables of
//! the regular action of the image.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use super::{is_inverse, letter_gen, CosetTable, Letter, Presentation, DEFAULT_COSET_LIMIT};

/// Permutation of `0..len` as the image list.
pub type Perm = Vec<u32>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ChainError {
    #[error("expected {expected} generator images, got {got}")]
    ImageCount { expected: usize, got: usize },
    #[error("image of generator {generator} is not a permutation of the common degree")]
    BadPermutation { generator: usize },
    #[error("relator {relator} does not map to the identity: not a homomorphism")]
    NotAHomomorphism { relator: usize },
    #[error("image group exceeds {limit} elements")]
    TooLarge { limit: usize },
    #[error("modulus must be at least {min}, got {n}")]
    Modulus { n: u64, min: u64 },
}

fn compose(a: &[u32], b: &[u32]) -> Perm {
    a.iter().map(|&x| b[x as usize]).collect()
}

fn inverse(a: &[u32]) -> Perm {
    let mut out = vec![0; a.len()];
    for (i, &x) in a.iter().enumerate() {
        out[x as usize] = i as u32;
    }
    out
}

fn check_images(p: &Presentation, images: &[Perm]) -> Result<Vec<Perm>, ChainError> {
    if images.len() != p.generator_count() {
        return Err(ChainError::ImageCount {
            expected: p.generator_count(),
            got: images.len(),
        });
    }
    let degree = images.first().map_or(1, Vec::len);
    for (g, im) in images.iter().enumerate() {
        let mut seen = vec![false; degree];
        let ok = im.len() == degree
            && im
                .iter()
                .all(|&x| (x as usize) < degree && !core::mem::replace(&mut seen[x as usize], true));
        if !ok {
            return Err(ChainError::BadPermutation { generator: g });
        }
    }
    let mut letters = Vec::with_capacity(2 * images.len());
    for im in images {
        letters.push(im.clone());
        letters.push(inverse(im));
    }
    let id: Perm = (0..degree as u32).collect();
    for (i, r) in p.relators().iter().enumerate() {
        let img = r.iter().fold(id.clone(), |acc, &l| compose(&acc, &letters[l as usize]));
        if img != id {
            return Err(ChainError::NotAHomomorphism { relator: i });
        }
    }
    Ok(letters)
}

/// Coset table of the kernel of the homomorphism given by `images`: its
/// cosets are the elements of the image group under right multiplication.
pub fn kernel_table_cayley(p: &Presentation, images: &[Perm]) -> Result<CosetTable, ChainError> {
    kernel_table_cayley_limited(p, images, DEFAULT_COSET_LIMIT)
}

/// As [`kernel_table_cayley`], giving up once the image has more than
/// `limit` elements.
pub fn kernel_table_cayley_limited(p: &Presentation, images: &[Perm], limit: usize) -> Result<CosetTable, ChainError> {
    let letters = check_images(p, images)?;
    let ncols = letters.len();
    let degree = images.first().map_or(1, Vec::len);
    let id: Perm = (0..degree as u32).collect();
    let mut index: BTreeMap<Perm, u32> = BTreeMap::new();
    let mut elems = vec![id.clone()];
    index.insert(id, 0);
    let mut rows: Vec<Vec<u32>> = Vec::new();
    let mut i = 0;
    while i < elems.len() {
        let mut row = Vec::with_capacity(ncols);
        for l in &letters {
            let e = compose(&elems[i], l);
            let next = elems.len() as u32;
            let k = *index.entry(e.clone()).or_insert_with(|| {
                elems.push(e);
                next
            });
            row.push(k);
        }
        if elems.len() > limit {
            return Err(ChainError::TooLarge { limit });
        }
        rows.push(row);
        i += 1;
    }
    Ok(CosetTable::from_rows(ncols, rows).expect("closed under multiplication"))
}

/// One kernel table per level of images.
pub fn kernel_chain_cayley(p: &Presentation, levels: &[Vec<Perm>]) -> Result<Vec<CosetTable>, ChainError> {
    levels.iter().map(|imgs| kernel_table_cayley(p, imgs)).collect()
}

type Mat = [[u64; 2]; 2];

/// Right action `v -> v M` on row vectors mod `n`, points `x * n + y`.
fn matrix_perm(m: &Mat, n: u64) -> Vec<u64> {
    let mut out = Vec::with_capacity((n * n) as usize);
    for x in 0..n {
        for y in 0..n {
            let nx = (x * m[0][0] + y * m[1][0]) % n;
            let ny = (x * m[0][1] + y * m[1][1]) % n;
            out.push(nx * n + ny);
        }
    }
    out
}

fn sl2_mats(n: u64) -> [Mat; 2] {
    let neg = n - 1;
    // a = [[0,-1],[1,0]], b = [[0,-1],[1,1]] reduced mod n.
    [[[0, neg], [1, 0]], [[0, neg], [1, 1 % n]]]
}

/// Images of `a, b` for `SL2Z = <a, b | a^4, a^2 B^3>` in `SL(2, Z/n)`
/// acting on `(Z/n)^2`.
pub fn sl2_images(n: u64) -> Result<Vec<Perm>, ChainError> {
    if n < 2 {
        return Err(ChainError::Modulus { n, min: 2 });
    }
    Ok(sl2_mats(n)
        .iter()
        .map(|m| matrix_perm(m, n).into_iter().map(|x| x as u32).collect())
        .collect())
}

/// Images of `a, b` for `PSL2Z = <a, b | a^2, b^3>`, acting on vectors of
/// `(Z/n)^2` up to sign.
pub fn psl2_images(n: u64) -> Result<Vec<Perm>, ChainError> {
    if n < 2 {
        return Err(ChainError::Modulus { n, min: 2 });
    }
    let class = |v: u64| {
        let (x, y) = (v / n, v % n);
        let w = ((n - x) % n) * n + (n - y) % n;
        v.min(w)
    };
    let mut reps: Vec<u64> = (0..n * n).map(class).collect();
    reps.sort_unstable();
    reps.dedup();
    let pos = |v: u64| reps.binary_search(&class(v)).expect("class representative") as u32;
    Ok(sl2_mats(n)
        .iter()
        .map(|m| {
            let full = matrix_perm(m, n);
            reps.iter().map(|&r| pos(full[r as usize])).collect()
        })
        .collect())
}

/// Every generator maps to the `m`-cycle, the composite of exponent sum
/// with `Z -> Z/m`.
pub fn abelian_images(p: &Presentation, m: u64) -> Result<Vec<Perm>, ChainError> {
    if m < 1 {
        return Err(ChainError::Modulus { n: m, min: 1 });
    }
    let cycle: Perm = (0..m).map(|i| ((i + 1) % m) as u32).collect();
    Ok(vec![cycle; p.generator_count()])
}

/// Image of a word under generator images.
pub fn evaluate_word(images: &[Perm], w: &[Letter]) -> Perm {
    let degree = images.first().map_or(0, Vec::len);
    let mut acc: Perm = (0..degree as u32).collect();
    for &l in w {
        let g = &images[letter_gen(l)];
        acc = if is_inverse(l) {
            compose(&acc, &inverse(g))
        } else {
            compose(&acc, g)
        };
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sl2z() -> Presentation {
        Presentation::from_strs(&["a", "b"], &["a^4", "a^2 B^3"]).unwrap()
    }

    fn psl2z() -> Presentation {
        Presentation::from_strs(&["a", "b"], &["a^2", "b^3"]).unwrap()
    }

    /// |SL(2, Z/n)| by counting matrices with determinant 1.
    fn sl2_order(n: u64) -> usize {
        let mut c = 0;
        for a in 0..n {
            for b in 0..n {
                for d in 0..n {
                    for e in 0..n {
                        if (a * e + n * n - b * d % n) % n == 1 {
                            c += 1;
                        }
                    }
                }
            }
        }
        c
    }

    #[test]
    fn congruence_quotient_orders() {
        for n in [2, 3, 4, 5] {
            let t = kernel_table_cayley(&sl2z(), &sl2_images(n).unwrap()).unwrap();
            assert_eq!(t.index(), sl2_order(n));
            t.validate(&sl2z()).unwrap();
        }
        for (n, order) in [(3, 12), (5, 60), (7, 168)] {
            let t = kernel_table_cayley(&psl2z(), &psl2_images(n).unwrap()).unwrap();
            assert_eq!(t.index(), order);
            assert!(t.is_normal());
        }
    }

    #[test]
    fn abelian_kernel() {
        let b3 = Presentation::from_strs(&["x", "y"], &["x y x Y X Y"]).unwrap();
        let t = kernel_table_cayley(&b3, &abelian_images(&b3, 6).unwrap()).unwrap();
        assert_eq!(t.index(), 6);
        assert_eq!(
            kernel_table_cayley(&b3, &abelian_images(&b3, 1).unwrap())
                .unwrap()
                .index(),
            1
        );
    }

    #[test]
    fn rejects_non_homomorphisms() {
        let mut imgs = sl2_images(3).unwrap();
        imgs[0].swap(1, 2);
        assert!(matches!(
            kernel_table_cayley(&sl2z(), &imgs),
            Err(ChainError::NotAHomomorphism { .. } | ChainError::BadPermutation { .. })
        ));
        let psl = psl2z();
        assert_eq!(
            kernel_table_cayley(&psl, &sl2_images(3).unwrap()),
            Err(ChainError::NotAHomomorphism { relator: 0 })
        );
        assert!(matches!(
            kernel_table_cayley(&psl, &sl2_images(3).unwrap()[..1]),
            Err(ChainError::ImageCount { .. })
        ));
    }
}
