use thiserror::Error;

/// Errors raised by the catmap library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CatMapError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix entry array of length {len} is not square")]
    NotSquare { len: usize },

    #[error("modulus must be at least 1, got {0}")]
    InvalidModulus(u64),

    #[error("dimension {n} is below the minimum of {min}")]
    DimensionTooSmall { n: usize, min: usize },

    #[error("frame index {index} outside 1..={dim}")]
    FrameIndexOutOfRange { index: usize, dim: usize },

    #[error("grid size {n} is outside the supported range: {reason}")]
    GridSizeOutOfRange { n: u64, reason: &'static str },

    #[error("coordinate {value} at position {position} is not below the modulus {modulus}")]
    CoordinateOutOfRange { position: usize, value: u64, modulus: u64 },

    #[error("image is {width}x{height}; only square images can be scrambled")]
    NonSquareImage { width: usize, height: usize },

    #[error("lattice shape mismatch: expected {expected} cells, found {found}")]
    ShapeMismatch { expected: usize, found: usize },

    #[error("iteration cap of {cap} exceeded while searching for the period")]
    CapExceeded { cap: u64, checked: u64 },

    #[error("no repeated residue pair within {scanned} pairs for modulus {modulus}")]
    PigeonholeViolation { modulus: u64, scanned: u64 },

    #[error("root estimation failed for {polynomial}: {reason}")]
    RootEstimation { polynomial: String, reason: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = CatMapError> = std::result::Result<T, E>;
