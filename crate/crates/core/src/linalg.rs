//! Exact integer matrices and their residues modulo N.
//!
//! [`ExactMatrix`] holds arbitrary-precision entries; cat-map matrices
//! outgrow 64 bits by dimension five. [`ResidueMatrix`] holds least
//! non-negative residues and is what the period search iterates on.

use std::fmt;
use std::ops::Index;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{CatMapError, Result};

/// Square matrix of arbitrary-precision integers, stored row-major.
///
/// Indexing through [`Index`] is zero-based; error messages and docs use
/// the one-based row/column numbering of the underlying mathematics.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExactMatrix {
    dim: usize,
    entries: Vec<BigInt>,
}

impl ExactMatrix {
    pub fn new(dim: usize, entries: Vec<BigInt>) -> Result<Self> {
        if dim == 0 {
            return Err(CatMapError::DimensionTooSmall { n: 0, min: 1 });
        }
        if entries.len() != dim * dim {
            return Err(CatMapError::NotSquare { len: entries.len() });
        }
        Ok(Self { dim, entries })
    }

    /// Builds a matrix from rows of anything convertible to `BigInt`.
    pub fn from_rows<T, R>(rows: &[R]) -> Result<Self>
    where
        T: Clone + Into<BigInt>,
        R: AsRef<[T]>,
    {
        let dim = rows.len();
        let mut entries = Vec::with_capacity(dim * dim);
        for row in rows {
            let row = row.as_ref();
            if row.len() != dim {
                return Err(CatMapError::DimensionMismatch { expected: dim, found: row.len() });
            }
            entries.extend(row.iter().cloned().map(Into::into));
        }
        Self::new(dim, entries)
    }

    pub fn identity(dim: usize) -> Self {
        let mut entries = vec![BigInt::zero(); dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = BigInt::one();
        }
        Self { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn rows(&self) -> impl Iterator<Item = &[BigInt]> {
        self.entries.chunks(self.dim)
    }

    pub fn trace(&self) -> BigInt {
        (0..self.dim).map(|i| &self[(i, i)]).sum()
    }

    /// Largest bit length over all entries.
    pub fn max_bits(&self) -> u64 {
        self.entries.iter().map(BigInt::bits).max().unwrap_or(0)
    }

    /// Reduces every entry to its least non-negative residue mod `modulus`.
    pub fn reduce(&self, modulus: u64) -> Result<ResidueMatrix> {
        if modulus == 0 {
            return Err(CatMapError::InvalidModulus(modulus));
        }
        let m = BigInt::from(modulus);
        let entries =
            self.entries.iter().map(|e| e.mod_floor(&m).to_u64().expect("residue fits in the modulus type")).collect();
        Ok(ResidueMatrix { dim: self.dim, modulus, entries })
    }
}

impl Index<(usize, usize)> for ExactMatrix {
    type Output = BigInt;

    fn index(&self, (row, col): (usize, usize)) -> &BigInt {
        &self.entries[row * self.dim + col]
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.rows().map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>())).finish()
    }
}

impl fmt::Display for ExactMatrix {
    /// One row per line, entries right-aligned in a shared column width.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.entries.iter().map(ToString::to_string).collect();
        let width = cells.iter().map(String::len).max().unwrap_or(1);
        for (r, row) in cells.chunks(self.dim).enumerate() {
            if r > 0 {
                writeln!(f)?;
            }
            for (c, cell) in row.iter().enumerate() {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{cell:>width$}")?;
            }
        }
        Ok(())
    }
}

/// Square matrix of residues in `[0, modulus)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ResidueMatrix {
    dim: usize,
    modulus: u64,
    entries: Vec<u64>,
}

impl ResidueMatrix {
    pub fn identity(dim: usize, modulus: u64) -> Result<Self> {
        if modulus == 0 {
            return Err(CatMapError::InvalidModulus(modulus));
        }
        let one = 1 % modulus;
        let mut entries = vec![0; dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = one;
        }
        Ok(Self { dim, modulus, entries })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u64]> {
        self.entries.chunks(self.dim)
    }

    /// Product reduced mod the shared modulus.
    pub fn mul(&self, other: &ResidueMatrix) -> Result<ResidueMatrix> {
        if self.dim != other.dim {
            return Err(CatMapError::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        if self.modulus != other.modulus {
            return Err(CatMapError::InvalidArgument(format!(
                "residue matrices have different moduli {} and {}",
                self.modulus, other.modulus
            )));
        }
        let n = self.dim;
        let m = self.modulus as u128;
        let mut entries = vec![0u64; n * n];
        for i in 0..n {
            for j in 0..n {
                let mut acc: u128 = 0;
                for k in 0..n {
                    acc = (acc + self.entries[i * n + k] as u128 * other.entries[k * n + j] as u128) % m;
                }
                entries[i * n + j] = acc as u64;
            }
        }
        Ok(ResidueMatrix { dim: n, modulus: self.modulus, entries })
    }

    /// Applies the matrix to a residue vector.
    pub fn apply(&self, v: &[u64]) -> Vec<u64> {
        debug_assert_eq!(v.len(), self.dim);
        let m = self.modulus as u128;
        self.entries
            .chunks(self.dim)
            .map(|row| row.iter().zip(v).fold(0u128, |acc, (&a, &x)| (acc + a as u128 * x as u128) % m) as u64)
            .collect()
    }

    pub fn is_identity(&self) -> bool {
        is_identity(self)
    }
}

impl Index<(usize, usize)> for ResidueMatrix {
    type Output = u64;

    fn index(&self, (row, col): (usize, usize)) -> &u64 {
        &self.entries[row * self.dim + col]
    }
}

/// Exact product `a · b`.
pub fn mat_mul(a: &ExactMatrix, b: &ExactMatrix) -> Result<ExactMatrix> {
    if a.dim != b.dim {
        return Err(CatMapError::DimensionMismatch { expected: a.dim, found: b.dim });
    }
    let n = a.dim;
    let mut entries = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let mut acc = BigInt::zero();
            for k in 0..n {
                let (x, y) = (&a.entries[i * n + k], &b.entries[k * n + j]);
                if !x.is_zero() && !y.is_zero() {
                    acc += x * y;
                }
            }
            entries.push(acc);
        }
    }
    Ok(ExactMatrix { dim: n, entries })
}

/// `a^t mod modulus` by square-and-multiply, reducing after every product.
pub fn mat_pow_mod(a: &ExactMatrix, t: u64, modulus: u64) -> Result<ResidueMatrix> {
    let base = a.reduce(modulus)?;
    residue_pow(&base, t)
}

/// Square-and-multiply on an already reduced matrix.
pub fn residue_pow(base: &ResidueMatrix, mut t: u64) -> Result<ResidueMatrix> {
    let mut result = ResidueMatrix::identity(base.dim, base.modulus)?;
    let mut square = base.clone();
    while t > 0 {
        if t & 1 == 1 {
            result = result.mul(&square)?;
        }
        t >>= 1;
        if t > 0 {
            square = square.mul(&square)?;
        }
    }
    Ok(result)
}

/// Exact determinant by fraction-free (Bareiss) elimination.
pub fn det(a: &ExactMatrix) -> BigInt {
    let n = a.dim;
    let mut m = a.entries.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n.saturating_sub(1) {
        if m[k * n + k].is_zero() {
            match (k + 1..n).find(|&r| !m[r * n + k].is_zero()) {
                Some(r) => {
                    for c in 0..n {
                        m.swap(k * n + c, r * n + c);
                    }
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i * n + j] * &m[k * n + k] - &m[i * n + k] * &m[k * n + j];
                // Sylvester's identity guarantees exact division.
                m[i * n + j] = v / &prev;
            }
        }
        prev = m[k * n + k].clone();
    }
    sign * m[n * n - 1].clone()
}

/// True iff `r` is the identity mod its modulus. Mod 1 every matrix qualifies.
pub fn is_identity(r: &ResidueMatrix) -> bool {
    let one = 1 % r.modulus;
    r.entries.iter().enumerate().all(|(idx, &e)| if idx / r.dim == idx % r.dim { e == one } else { e == 0 })
}
