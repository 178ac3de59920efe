//! Restoration periods of the cat map.
//!
//! In two dimensions the period comes from the Fibonacci residue cycle:
//! `A_2^t = [[u_{2t-1}, u_{2t}], [u_{2t}, u_{2t+1}]]`, so the period is half
//! the residue cycle length once `N > 2`. In higher dimensions the period is
//! found as the multiplicative order of `A_n` mod N by direct iteration.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::builder::{build_dcm, cat_map_2d};
use crate::error::{CatMapError, Result};
use crate::fibonacci::residue_cycle;
use crate::linalg::{ExactMatrix, ResidueMatrix};

pub const DEFAULT_CAP: u64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PeriodMethod {
    Fibonacci,
    MatrixOrder,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DysonFalkClass {
    /// `N = 2·5^s`, `s >= 1`: period `3N`.
    ThreeN,
    /// `N = 5^s` (`s >= 1`) or `N = 6·5^s` (`s >= 0`): period `2N`.
    TwoN,
    /// Everything else with `N >= 3`: period at most `12N/7`.
    Other,
    /// `N = 1, 2`, outside the regime of the classification.
    SmallNSpecial,
}

/// What the classification says about the period of a given `N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum Prediction {
    Exact(u64),
    /// Inclusive upper bound `⌊12N/7⌋`.
    AtMost(u64),
}

impl Prediction {
    pub fn admits(&self, period: u64) -> bool {
        match *self {
            Prediction::Exact(m) => period == m,
            Prediction::AtMost(m) => period <= m,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodReport {
    pub n: u64,
    pub dimension: usize,
    pub period: u64,
    pub method: PeriodMethod,
    pub dyson_falk_class: DysonFalkClass,
    /// `period <= N²/2`; always true for `N < 3` where the bound is not claimed.
    pub bound_satisfied: bool,
}

fn strip_fives(mut n: u64) -> (u64, u32) {
    let mut s = 0;
    while n.is_multiple_of(5) {
        n /= 5;
        s += 1;
    }
    (n, s)
}

/// Classifies `N >= 3` and returns the predicted period or bound.
pub fn dyson_falk_class(n: u64) -> Result<(DysonFalkClass, Prediction)> {
    if n < 3 {
        return Err(CatMapError::GridSizeOutOfRange { n, reason: "classification needs N >= 3" });
    }
    let (rest, s) = strip_fives(n);
    Ok(match (rest, s) {
        (2, s) if s >= 1 => (DysonFalkClass::ThreeN, Prediction::Exact(3 * n)),
        (1, s) if s >= 1 => (DysonFalkClass::TwoN, Prediction::Exact(2 * n)),
        (6, _) => (DysonFalkClass::TwoN, Prediction::Exact(2 * n)),
        _ => (DysonFalkClass::Other, Prediction::AtMost(12 * n / 7)),
    })
}

fn class_of(n: u64) -> DysonFalkClass {
    dyson_falk_class(n).map(|(c, _)| c).unwrap_or(DysonFalkClass::SmallNSpecial)
}

/// `2M <= N²`, checked without overflow.
fn within_half_square(period: u64, n: u64) -> bool {
    n < 3 || 2 * period as u128 <= n as u128 * n as u128
}

/// Smallest `t >= 1` with `a^t ≡ I (mod N)`, by repeated multiplication.
pub fn matrix_order(a: &ExactMatrix, modulus: u64, cap: u64) -> Result<u64> {
    let base = a.reduce(modulus)?;
    residue_order(&base, cap)
}

pub(crate) fn residue_order(base: &ResidueMatrix, cap: u64) -> Result<u64> {
    let mut power = base.clone();
    let mut t = 1;
    while !power.is_identity() {
        if t >= cap {
            return Err(CatMapError::CapExceeded { cap, checked: t });
        }
        power = power.mul(base)?;
        t += 1;
    }
    Ok(t)
}

/// Period of the 2D map on an `N×N` grid.
pub fn dcm_period_2d(n: u64) -> Result<PeriodReport> {
    if n == 0 {
        return Err(CatMapError::InvalidModulus(0));
    }
    let (period, method) = match n {
        1 => (1, PeriodMethod::MatrixOrder),
        // residue cycle is odd here, so halving does not apply
        2 => (matrix_order(&cat_map_2d(), 2, DEFAULT_CAP)?, PeriodMethod::MatrixOrder),
        _ => (residue_cycle(n)?.cycle_length / 2, PeriodMethod::Fibonacci),
    };
    Ok(PeriodReport {
        n,
        dimension: 2,
        period,
        method,
        dyson_falk_class: class_of(n),
        bound_satisfied: within_half_square(period, n),
    })
}

/// Period of the `dim`-dimensional map on an `N^dim` lattice.
///
/// Stops with [`CatMapError::CapExceeded`] after `cap` powers; the error
/// carries the number of powers checked.
pub fn dcm_period_nd(dim: usize, n: u64, cap: u64) -> Result<PeriodReport> {
    if dim < 2 {
        return Err(CatMapError::DimensionTooSmall { n: dim, min: 2 });
    }
    if n == 0 {
        return Err(CatMapError::InvalidModulus(0));
    }
    let a = build_dcm(dim)?;
    let period = matrix_order(&a, n, cap)?;
    Ok(PeriodReport {
        n,
        dimension: dim,
        period,
        method: PeriodMethod::MatrixOrder,
        dyson_falk_class: class_of(n),
        bound_satisfied: dim != 2 || within_half_square(period, n),
    })
}

/// One failed check from [`verify_bounds`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "check", rename_all = "snake_case")]
pub enum BoundViolation {
    HalfSquare { n: u64, period: u64 },
    DysonFalk { n: u64, period: u64, class: DysonFalkClass, prediction: Prediction },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsSummary {
    pub from: u64,
    pub to: u64,
    pub checked: u64,
    pub three_n: u64,
    pub two_n: u64,
    pub other: u64,
    /// Ordered by N.
    pub violations: Vec<BoundViolation>,
    pub rows: Vec<PeriodReport>,
}

/// Checks `M <= N²/2` and the classification prediction for every `N` in
/// `from..=to`. Violations are collected, never raised.
pub fn verify_bounds(from: u64, to: u64) -> Result<BoundsSummary> {
    if from < 3 {
        return Err(CatMapError::GridSizeOutOfRange { n: from, reason: "bound sweep needs N >= 3" });
    }
    if from > to {
        return Err(CatMapError::InvalidArgument(format!("empty range {from}..={to}")));
    }
    let rows: Vec<PeriodReport> = (from..=to).into_par_iter().map(dcm_period_2d).collect::<Result<_>>()?;
    let mut summary = BoundsSummary {
        from,
        to,
        checked: rows.len() as u64,
        three_n: 0,
        two_n: 0,
        other: 0,
        violations: Vec::new(),
        rows: Vec::new(),
    };
    for r in &rows {
        if !r.bound_satisfied {
            summary.violations.push(BoundViolation::HalfSquare { n: r.n, period: r.period });
        }
        let (class, prediction) = dyson_falk_class(r.n)?;
        match class {
            DysonFalkClass::ThreeN => summary.three_n += 1,
            DysonFalkClass::TwoN => summary.two_n += 1,
            _ => summary.other += 1,
        }
        if !prediction.admits(r.period) {
            summary.violations.push(BoundViolation::DysonFalk { n: r.n, period: r.period, class, prediction });
        }
    }
    summary.rows = rows;
    Ok(summary)
}
