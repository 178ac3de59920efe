//! Construction of the n-dimensional cat map by repeated matrix union.
//!
//! An `i`-frame of size `n+1` is the identity on coordinate `i` with an open
//! `n×n` slot elsewhere. Inserting `A_n` into each of the `n+1` frames gives
//! the union basis, and multiplying the basis maps in ascending `i` order
//! gives `A_{n+1}`.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{CatMapError, Result};
use crate::linalg::{mat_mul, ExactMatrix};

/// Descriptor of the frame `F_dim^index`. `index` is one-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FrameSpec {
    dim: usize,
    index: usize,
}

impl FrameSpec {
    pub fn new(dim: usize, index: usize) -> Result<Self> {
        if dim < 2 {
            return Err(CatMapError::DimensionTooSmall { n: dim, min: 2 });
        }
        if index == 0 || index > dim {
            return Err(CatMapError::FrameIndexOutOfRange { index, dim });
        }
        Ok(Self { dim, index })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn index(&self) -> usize {
        self.index
    }
}

/// A matrix that fixes one coordinate, the output of a matrix union.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisMap {
    matrix: ExactMatrix,
    fixed_index: usize,
}

impl BasisMap {
    pub fn matrix(&self) -> &ExactMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ExactMatrix {
        self.matrix
    }

    /// One-based index of the coordinate this map leaves untouched.
    pub fn fixed_index(&self) -> usize {
        self.fixed_index
    }
}

/// Inserts `a` into the open slot of `frame`.
///
/// Row and column `i` of the result are zero except for a 1 on the
/// diagonal; the remaining positions take `a`'s entries in order.
pub fn matrix_union(a: &ExactMatrix, frame: FrameSpec) -> Result<BasisMap> {
    if frame.dim != a.dim() + 1 {
        return Err(CatMapError::DimensionMismatch { expected: a.dim() + 1, found: frame.dim });
    }
    let size = frame.dim;
    let fixed = frame.index - 1;
    let slot = |k: usize| if k < fixed { k } else { k - 1 };
    let mut entries = Vec::with_capacity(size * size);
    for r in 0..size {
        for c in 0..size {
            let e = if r == fixed || c == fixed {
                if r == c {
                    BigInt::one()
                } else {
                    BigInt::zero()
                }
            } else {
                a[(slot(r), slot(c))].clone()
            };
            entries.push(e);
        }
    }
    Ok(BasisMap { matrix: ExactMatrix::new(size, entries)?, fixed_index: frame.index })
}

/// The `n+1` basis maps `[℧(a, F_{n+1}^1), …, ℧(a, F_{n+1}^{n+1})]`.
pub fn union_basis(a: &ExactMatrix) -> Result<Vec<BasisMap>> {
    if a.dim() < 2 {
        return Err(CatMapError::DimensionTooSmall { n: a.dim(), min: 2 });
    }
    let size = a.dim() + 1;
    (1..=size).map(|i| matrix_union(a, FrameSpec::new(size, i)?)).collect()
}

/// The two-dimensional cat map `[[1,1],[1,2]]`.
pub fn cat_map_2d() -> ExactMatrix {
    ExactMatrix::from_rows(&[[1, 1], [1, 2]]).expect("constant matrix is square")
}

/// The matrix `[[0,1],[1,1]]` whose powers carry the Fibonacci numbers.
pub fn fibonacci_matrix() -> ExactMatrix {
    ExactMatrix::from_rows(&[[0, 1], [1, 1]]).expect("constant matrix is square")
}

fn cache() -> &'static Mutex<HashMap<usize, ExactMatrix>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, ExactMatrix>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Product of the union basis, multiplied left to right in ascending index.
pub fn next_dimension(a: &ExactMatrix) -> Result<ExactMatrix> {
    let basis = union_basis(a)?;
    let mut product = ExactMatrix::identity(a.dim() + 1);
    for b in &basis {
        product = mat_mul(&product, b.matrix())?;
    }
    Ok(product)
}

/// The n-dimensional cat map `A_n`, `n >= 2`.
///
/// Results are memoized process-wide; the cache only ever holds values the
/// recursion would recompute identically.
pub fn build_dcm(n: usize) -> Result<ExactMatrix> {
    if n < 2 {
        return Err(CatMapError::DimensionTooSmall { n, min: 2 });
    }
    if let Some(m) = cache().lock().expect("dcm cache poisoned").get(&n) {
        return Ok(m.clone());
    }
    // Walk down to the highest cached dimension, then climb back up.
    let (mut k, mut current) = {
        let guard = cache().lock().expect("dcm cache poisoned");
        (2..n).rev().find_map(|k| guard.get(&k).map(|m| (k, m.clone()))).unwrap_or_else(|| (2, cat_map_2d()))
    };
    while k < n {
        current = next_dimension(&current)?;
        k += 1;
        cache().lock().expect("dcm cache poisoned").insert(k, current.clone());
    }
    Ok(current)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::det;

    fn m(rows: &[&[i64]]) -> ExactMatrix {
        ExactMatrix::from_rows(rows).unwrap()
    }

    #[test]
    fn frame_bounds() {
        assert!(FrameSpec::new(3, 1).is_ok());
        assert!(FrameSpec::new(3, 3).is_ok());
        assert_eq!(FrameSpec::new(3, 0).unwrap_err(), CatMapError::FrameIndexOutOfRange { index: 0, dim: 3 });
        assert_eq!(FrameSpec::new(3, 4).unwrap_err(), CatMapError::FrameIndexOutOfRange { index: 4, dim: 3 });
        assert!(FrameSpec::new(1, 1).is_err());
    }

    #[test]
    fn union_into_first_frame() {
        let b = matrix_union(&cat_map_2d(), FrameSpec::new(3, 1).unwrap()).unwrap();
        assert_eq!(b.matrix(), &m(&[&[1, 0, 0], &[0, 1, 1], &[0, 1, 2]]));
        assert_eq!(b.fixed_index(), 1);
    }

    #[test]
    fn union_of_three_dimensional_map() {
        let a3 = m(&[&[1, 1, 1], &[2, 3, 2], &[3, 4, 4]]);
        let b = matrix_union(&a3, FrameSpec::new(4, 3).unwrap()).unwrap();
        assert_eq!(b.matrix(), &m(&[&[1, 1, 0, 1], &[2, 3, 0, 2], &[0, 0, 1, 0], &[3, 4, 0, 4]]));
    }

    #[test]
    fn union_of_scalar() {
        let b = matrix_union(&m(&[&[7]]), FrameSpec::new(2, 1).unwrap()).unwrap();
        assert_eq!(b.matrix(), &m(&[&[1, 0], &[0, 7]]));
    }

    #[test]
    fn union_dimension_mismatch() {
        let err = matrix_union(&cat_map_2d(), FrameSpec::new(4, 1).unwrap()).unwrap_err();
        assert_eq!(err, CatMapError::DimensionMismatch { expected: 3, found: 4 });
    }

    #[test]
    fn basis_of_a2() {
        let basis = union_basis(&cat_map_2d()).unwrap();
        assert_eq!(basis.len(), 3);
        assert_eq!(basis[1].matrix(), &m(&[&[1, 0, 1], &[0, 1, 0], &[1, 0, 2]]));
        assert_eq!(basis[2].matrix(), &m(&[&[1, 1, 0], &[1, 2, 0], &[0, 0, 1]]));
        assert!(union_basis(&m(&[&[1]])).is_err());
    }

    #[test]
    fn small_dimensions() {
        assert_eq!(build_dcm(2).unwrap(), cat_map_2d());
        assert_eq!(build_dcm(3).unwrap(), m(&[&[1, 1, 1], &[2, 3, 2], &[3, 4, 4]]));
        assert_eq!(
            build_dcm(4).unwrap(),
            m(&[&[17, 23, 18, 5], &[110, 149, 117, 31], &[257, 348, 274, 72], &[432, 585, 460, 122]])
        );
        assert_eq!(build_dcm(1).unwrap_err(), CatMapError::DimensionTooSmall { n: 1, min: 2 });
    }

    #[test]
    fn unimodular_through_eight() {
        for n in 2..=8 {
            assert_eq!(det(&build_dcm(n).unwrap()), BigInt::one(), "n = {n}");
        }
    }

    #[test]
    fn basis_maps_fix_their_coordinate() {
        let a4 = build_dcm(4).unwrap();
        for b in union_basis(&a4).unwrap() {
            let i = b.fixed_index() - 1;
            for k in 0..5 {
                let expect = if k == i { BigInt::one() } else { BigInt::zero() };
                assert_eq!(b.matrix()[(i, k)], expect);
                assert_eq!(b.matrix()[(k, i)], expect);
            }
        }
    }

    #[test]
    fn concurrent_builds_agree() {
        let handles: Vec<_> = (0..8).map(|i| std::thread::spawn(move || build_dcm(2 + i % 5).unwrap())).collect();
        let results: Vec<_> = handles.into_iter().map(|h| h.join().unwrap()).collect();
        for (i, r) in results.iter().enumerate() {
            assert_eq!(r, &build_dcm(2 + i % 5).unwrap());
        }
    }
}
