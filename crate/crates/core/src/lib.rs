//! Exact arithmetic for Arnold's discrete cat map in any dimension.
//!
//! - [`linalg`]: big-integer matrices and their residues mod N
//! - [`builder`]: frames, matrix union and the n-dimensional map `A_n`
//! - [`fibonacci`]: Fibonacci numbers and residue cycles
//! - [`period`]: restoration periods and their bounds
//! - [`orbit`]: orbits, image and lattice scrambling, cycle structure
//! - [`raster`]: PPM/PNG input and output
//! - [`spectral`]: characteristic polynomials, eigenvalues, chaos check
//!
//! ```
//! use catmap::{build_dcm, dcm_period_2d};
//!
//! let a3 = build_dcm(3).unwrap();
//! assert_eq!(a3.to_string(), "1 1 1\n2 3 2\n3 4 4");
//! assert_eq!(dcm_period_2d(3).unwrap().period, 4);
//! ```

pub mod builder;
pub mod error;
pub mod fibonacci;
pub mod linalg;
pub mod orbit;
pub mod period;
pub mod poly;
pub mod raster;
pub mod spectral;

pub use builder::{build_dcm, cat_map_2d, fibonacci_matrix, matrix_union, union_basis, BasisMap, FrameSpec};
pub use error::{CatMapError, Result};
pub use fibonacci::{fib, fib_mod, first_repeat_pair, first_zero_fib_index, residue_cycle, FibResidueCycle};
pub use linalg::{det, is_identity, mat_mul, mat_pow_mod, ExactMatrix, ResidueMatrix};
pub use orbit::{
    density_report, pixel_orbit, scramble_image, scramble_lattice, step_point, DensityReport, Lattice, LatticePoint,
    OrbitRecord, RasterImage,
};
pub use period::{
    dcm_period_2d, dcm_period_nd, dyson_falk_class, matrix_order, verify_bounds, BoundsSummary, DysonFalkClass,
    PeriodMethod, PeriodReport, Prediction, DEFAULT_CAP,
};
pub use poly::Dyadic;
pub use spectral::{
    chaos_check, char_poly, dominant_trend, estimate_roots, ChaosVerdict, CharPolynomial, RealRoot, SpectrumEstimate,
    TrendReport,
};
