//! Cat-map action on lattice points, square images and hypercubes.
//!
//! Images use map coordinates `x = column`, `y = (N - 1) - row`, so `(0,0)`
//! is the bottom-left pixel. A scramble moves the pixel at `p` to `A·p`.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::builder::cat_map_2d;
use crate::error::{CatMapError, Result};
use crate::linalg::{mat_pow_mod, ExactMatrix, ResidueMatrix};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LatticePoint {
    coords: Vec<u64>,
    modulus: u64,
}

impl LatticePoint {
    pub fn new(coords: Vec<u64>, modulus: u64) -> Result<Self> {
        if modulus == 0 {
            return Err(CatMapError::InvalidModulus(modulus));
        }
        if let Some((position, &value)) = coords.iter().enumerate().find(|(_, &c)| c >= modulus) {
            return Err(CatMapError::CoordinateOutOfRange { position: position + 1, value, modulus });
        }
        Ok(Self { coords, modulus })
    }

    pub fn coords(&self) -> &[u64] {
        &self.coords
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn arity(&self) -> usize {
        self.coords.len()
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A full cycle through `start`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitRecord {
    pub start: LatticePoint,
    /// Distinct points in visiting order, beginning with `start`.
    pub points: Vec<LatticePoint>,
    pub length: u64,
}

fn reduced_for(p: &LatticePoint, a: &ExactMatrix, modulus: u64) -> Result<ResidueMatrix> {
    if a.dim() != p.arity() {
        return Err(CatMapError::DimensionMismatch { expected: a.dim(), found: p.arity() });
    }
    if modulus != p.modulus {
        return Err(CatMapError::InvalidArgument(format!(
            "point lives mod {} but the map was asked for mod {modulus}",
            p.modulus
        )));
    }
    a.reduce(modulus)
}

/// `a·p mod N`.
pub fn step_point(p: &LatticePoint, a: &ExactMatrix, modulus: u64) -> Result<LatticePoint> {
    let r = reduced_for(p, a, modulus)?;
    Ok(LatticePoint { coords: r.apply(&p.coords), modulus })
}

/// Iterates from `p` until it comes back.
pub fn pixel_orbit(p: &LatticePoint, a: &ExactMatrix, modulus: u64) -> Result<OrbitRecord> {
    let r = reduced_for(p, a, modulus)?;
    let mut points = vec![p.clone()];
    let mut cur = r.apply(&p.coords);
    while cur != p.coords {
        points.push(LatticePoint { coords: cur.clone(), modulus });
        cur = r.apply(&cur);
    }
    Ok(OrbitRecord { start: p.clone(), length: points.len() as u64, points })
}

/// Row-major `N×N` grid of pixels.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RasterImage<P> {
    side: usize,
    pixels: Vec<P>,
}

impl<P> RasterImage<P> {
    pub fn new(width: usize, height: usize, pixels: Vec<P>) -> Result<Self> {
        if width != height || width == 0 {
            return Err(CatMapError::NonSquareImage { width, height });
        }
        if pixels.len() != width * height {
            return Err(CatMapError::ShapeMismatch { expected: width * height, found: pixels.len() });
        }
        Ok(Self { side: width, pixels })
    }

    pub fn from_rows(rows: Vec<Vec<P>>) -> Result<Self> {
        let height = rows.len();
        let width = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != width) {
            return Err(CatMapError::InvalidArgument("ragged pixel rows".into()));
        }
        Self::new(width, height, rows.into_iter().flatten().collect())
    }

    pub fn side(&self) -> usize {
        self.side
    }

    pub fn pixels(&self) -> &[P] {
        &self.pixels
    }

    pub fn into_pixels(self) -> Vec<P> {
        self.pixels
    }

    pub fn rows(&self) -> impl Iterator<Item = &[P]> {
        self.pixels.chunks(self.side)
    }

    /// Pixel at map coordinates `(x, y)`.
    pub fn at(&self, x: usize, y: usize) -> &P {
        &self.pixels[self.index_of(x, y)]
    }

    fn index_of(&self, x: usize, y: usize) -> usize {
        (self.side - 1 - y) * self.side + x
    }
}

/// Applies the 2D map `t` times. `A^t mod N` is computed once, so the cost
/// does not depend on `t`.
pub fn scramble_image<P: Clone + Send + Sync>(img: &RasterImage<P>, t: u64) -> Result<RasterImage<P>> {
    let n = img.side;
    let r = mat_pow_mod(&cat_map_2d(), t, n as u64)?;
    let (a, b, c, d) = (r[(0, 0)], r[(0, 1)], r[(1, 0)], r[(1, 1)]);
    let m = n as u64;
    // Invert the destination map: gather each output cell from its source.
    let mut source = vec![0usize; n * n];
    for y in 0..n {
        for x in 0..n {
            let (xu, yu) = (x as u64, y as u64);
            let nx = ((a as u128 * xu as u128 + b as u128 * yu as u128) % m as u128) as usize;
            let ny = ((c as u128 * xu as u128 + d as u128 * yu as u128) % m as u128) as usize;
            source[img.index_of(nx, ny)] = img.index_of(x, y);
        }
    }
    let pixels = source.par_iter().map(|&s| img.pixels[s].clone()).collect();
    Ok(RasterImage { side: n, pixels })
}

/// Hypercube of side `N` in `dim` dimensions. Cell `(c_1, …, c_dim)` lives
/// at flat index `Σ c_k N^(dim-k)` (first coordinate most significant).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Lattice<T> {
    side: usize,
    dim: usize,
    cells: Vec<T>,
}

impl<T> Lattice<T> {
    pub fn new(side: usize, dim: usize, cells: Vec<T>) -> Result<Self> {
        if side == 0 {
            return Err(CatMapError::InvalidModulus(0));
        }
        let expected = u32::try_from(dim)
            .ok()
            .and_then(|d| side.checked_pow(d))
            .ok_or_else(|| CatMapError::InvalidArgument(format!("lattice {side}^{dim} is too large")))?;
        if cells.len() != expected {
            return Err(CatMapError::ShapeMismatch { expected, found: cells.len() });
        }
        Ok(Self { side, dim, cells })
    }

    pub fn side(&self) -> usize {
        self.side
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn cells(&self) -> &[T] {
        &self.cells
    }

    pub fn get(&self, coords: &[u64]) -> &T {
        &self.cells[flat_index(coords, self.side)]
    }
}

fn flat_index(coords: &[u64], side: usize) -> usize {
    coords.iter().fold(0usize, |acc, &c| acc * side + c as usize)
}

fn unflatten(mut idx: usize, side: usize, dim: usize) -> Vec<u64> {
    let mut coords = vec![0u64; dim];
    for slot in coords.iter_mut().rev() {
        *slot = (idx % side) as u64;
        idx /= side;
    }
    coords
}

/// Moves each cell `p` to `a^t·p mod N`.
pub fn scramble_lattice<T: Clone + Send + Sync>(data: &Lattice<T>, a: &ExactMatrix, t: u64) -> Result<Lattice<T>> {
    if a.dim() != data.dim {
        return Err(CatMapError::DimensionMismatch { expected: a.dim(), found: data.dim });
    }
    let r = mat_pow_mod(a, t, data.side as u64)?;
    let mut source = vec![0usize; data.cells.len()];
    for idx in 0..data.cells.len() {
        let dest = r.apply(&unflatten(idx, data.side, data.dim));
        source[flat_index(&dest, data.side)] = idx;
    }
    let cells = source.par_iter().map(|&s| data.cells[s].clone()).collect();
    Ok(Lattice { side: data.side, dim: data.dim, cells })
}

/// Cycle structure of the map on the full `N^dim` lattice.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DensityReport {
    pub modulus: u64,
    pub dimension: usize,
    pub cells: u64,
    pub cycle_count: u64,
    pub max_cycle_length: u64,
    /// `(length, how many cycles have it)`, ascending by length.
    pub cycle_length_histogram: Vec<(u64, u64)>,
    /// `max_cycle_length / cells` as an unreduced fraction.
    pub coverage: (u64, u64),
    /// `2 · max_cycle_length <= cells`.
    pub at_most_half: bool,
}

impl DensityReport {
    pub fn coverage_ratio(&self) -> f64 {
        self.coverage.0 as f64 / self.coverage.1 as f64
    }
}

/// Largest lattice [`density_report`] will enumerate.
pub const MAX_DENSITY_CELLS: usize = 1 << 26;

/// Partitions the lattice into cycles and reports their lengths.
pub fn density_report(modulus: u64, a: &ExactMatrix) -> Result<DensityReport> {
    let r = a.reduce(modulus)?;
    let dim = a.dim();
    let side = usize::try_from(modulus).map_err(|_| CatMapError::InvalidArgument("modulus too large".into()))?;
    let cells =
        u32::try_from(dim).ok().and_then(|d| side.checked_pow(d)).filter(|&c| c <= MAX_DENSITY_CELLS).ok_or_else(
            || CatMapError::InvalidArgument(format!("lattice {modulus}^{dim} is too large to enumerate")),
        )?;
    let mut visited = vec![false; cells];
    let mut histogram = std::collections::BTreeMap::new();
    for start in 0..cells {
        if visited[start] {
            continue;
        }
        let mut len = 0u64;
        let mut idx = start;
        loop {
            visited[idx] = true;
            len += 1;
            idx = flat_index(&r.apply(&unflatten(idx, side, dim)), side);
            if idx == start {
                break;
            }
        }
        *histogram.entry(len).or_insert(0u64) += 1;
    }
    let max_cycle_length = histogram.keys().next_back().copied().unwrap_or(0);
    let cells = cells as u64;
    Ok(DensityReport {
        modulus,
        dimension: dim,
        cells,
        cycle_count: histogram.values().sum(),
        max_cycle_length,
        cycle_length_histogram: histogram.into_iter().collect(),
        coverage: (max_cycle_length, cells),
        at_most_half: 2 * max_cycle_length <= cells,
    })
}
