//! Structured output for `--json`. Integers that can outgrow 64 bits are
//! decimal strings; everything else uses plain JSON numbers.

use catmap::period::BoundViolation;
use catmap::{DysonFalkClass, PeriodMethod, Prediction};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatrixOutput {
    pub dimension: usize,
    pub rows: Vec<Vec<String>>,
    pub max_bits: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PeriodOutput {
    pub n: u64,
    pub dimension: usize,
    pub period: u64,
    pub method: PeriodMethod,
    pub dyson_falk_class: DysonFalkClass,
    /// Absent for `N < 3`.
    pub prediction: Option<Prediction>,
    pub bound_satisfied: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableRow {
    pub n: u64,
    pub period: u64,
    pub dyson_falk_class: DysonFalkClass,
    pub bound_satisfied: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableOutput {
    pub from: u64,
    pub to: u64,
    pub rows: Vec<TableRow>,
    pub violations: Vec<BoundViolation>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScrambleOutput {
    pub input: String,
    pub output: String,
    pub side: usize,
    pub iterations: u64,
    pub period: u64,
    pub frames: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OrbitOutput {
    pub modulus: u64,
    pub dimension: usize,
    pub length: u64,
    /// Starting point first.
    pub points: Vec<Vec<u64>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FibOutput {
    pub index: u64,
    pub modulus: Option<u64>,
    /// `u_i` itself, or its residue when a modulus is given.
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CharPolyOutput {
    pub dimension: usize,
    /// `det(λI − A)`, leading coefficient first.
    pub coefficients: Vec<String>,
    /// `det(A − λI)`, leading coefficient first.
    pub alternate_sign: Vec<String>,
    pub polynomial: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RootOutput {
    pub lower: String,
    pub upper: String,
    pub estimate: String,
    pub multiplicity: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EigenOutput {
    pub dimension: usize,
    pub tolerance: f64,
    /// Ascending.
    pub roots: Vec<RootOutput>,
    pub dominant: String,
    pub chi_at_one: String,
    pub no_unit_eigenvalue: bool,
    pub expanding_eigenvalue: bool,
    /// Not decided by this tool.
    pub not_asymptotically_periodic: Option<bool>,
    pub chaotic: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrendRow {
    pub dimension: usize,
    pub dominant: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrendOutput {
    pub entries: Vec<TrendRow>,
    pub increasing: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DensityOutput {
    pub modulus: u64,
    pub dimension: usize,
    pub cells: u64,
    pub cycle_count: u64,
    pub max_cycle_length: u64,
    pub cycle_length_histogram: Vec<(u64, u64)>,
    pub coverage: f64,
    pub at_most_half: bool,
}
