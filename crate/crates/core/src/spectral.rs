//! Characteristic polynomials, eigenvalue estimates and the chaos criterion.
//!
//! The characteristic polynomial is the monic `det(λI − A)`. The other
//! convention, `det(A − λI)`, differs by the factor `(−1)^n`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::builder::build_dcm;
use crate::error::{CatMapError, Result};
use crate::linalg::{mat_mul, ExactMatrix};
use crate::poly::{count_outside_unit, real_roots, Dyadic, IntPoly, RootBracket};

pub const DEFAULT_TOLERANCE: f64 = 1e-8;
pub const DEFAULT_TREND_MAX: usize = 8;

/// Monic integer polynomial `det(λI − A)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CharPolynomial {
    poly: IntPoly,
}

impl CharPolynomial {
    /// From coefficients in descending powers, leading term first.
    pub fn from_descending(coeffs: Vec<BigInt>) -> Result<Self> {
        if coeffs.first().is_none_or(|c| !c.is_one()) {
            return Err(CatMapError::InvalidArgument("characteristic polynomial must be monic".into()));
        }
        Ok(Self { poly: IntPoly::new(coeffs.into_iter().rev().collect()) })
    }

    pub fn degree(&self) -> usize {
        self.poly.degree()
    }

    /// Coefficients from `λ^0` up to `λ^n`.
    pub fn ascending(&self) -> &[BigInt] {
        self.poly.coeffs()
    }

    /// Coefficients from `λ^n` down to `λ^0`.
    pub fn descending(&self) -> Vec<BigInt> {
        self.poly.coeffs().iter().rev().cloned().collect()
    }

    /// Coefficients of `det(A − λI) = (−1)^n det(λI − A)`, descending.
    pub fn alternate_sign_form(&self) -> Vec<BigInt> {
        let flip = self.degree() % 2 == 1;
        self.descending().into_iter().map(|c| if flip { -c } else { c }).collect()
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.poly.eval(x)
    }

    pub fn as_poly(&self) -> &IntPoly {
        &self.poly
    }
}

impl fmt::Display for CharPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.degree();
        let mut first = true;
        for (i, c) in self.descending().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let power = n - i;
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.abs();
            if !mag.is_one() || power == 0 {
                write!(f, "{mag}")?;
            }
            match power {
                0 => {}
                1 => write!(f, "λ")?,
                p => write!(f, "λ^{p}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Faddeev–LeVerrier: `M_1 = I`, `c_{n-k} = −tr(A·M_k)/k`,
/// `M_{k+1} = A·M_k + c_{n-k}·I`. Every division is exact over the integers.
pub fn char_poly(a: &ExactMatrix) -> CharPolynomial {
    let n = a.dim();
    let mut desc = vec![BigInt::one()];
    let mut m = ExactMatrix::identity(n);
    for k in 1..=n {
        let am = mat_mul(a, &m).expect("same dimension");
        let (c, rem) = (-am.trace()).div_rem(&BigInt::from(k));
        debug_assert!(rem.is_zero(), "Faddeev-LeVerrier trace not divisible by {k}");
        if k < n {
            let mut entries = am.entries().to_vec();
            for i in 0..n {
                entries[i * n + i] += &c;
            }
            m = ExactMatrix::new(n, entries).expect("square");
        }
        desc.push(c);
    }
    CharPolynomial { poly: IntPoly::new(desc.into_iter().rev().collect()) }
}

/// A real eigenvalue bracketed by exact endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealRoot {
    pub lower: Dyadic,
    pub upper: Dyadic,
    pub multiplicity: usize,
}

impl RealRoot {
    pub fn midpoint(&self) -> Dyadic {
        self.lower.midpoint(&self.upper)
    }

    pub fn approx(&self) -> f64 {
        self.midpoint().to_f64()
    }

    /// Half-width of the bracket: distance from [`Self::midpoint`] to the root.
    pub fn error_bound(&self) -> Dyadic {
        self.upper.sub(&self.lower).half()
    }

    fn modulus_upper(&self) -> Dyadic {
        self.lower.abs().max(self.upper.abs())
    }

    fn modulus_lower(&self) -> Dyadic {
        if self.lower.signum() <= 0 && self.upper.signum() >= 0 {
            Dyadic::zero()
        } else {
            self.lower.abs().min(self.upper.abs())
        }
    }
}

impl From<(RootBracket, usize)> for RealRoot {
    fn from((b, multiplicity): (RootBracket, usize)) -> Self {
        RealRoot { lower: b.lower, upper: b.upper, multiplicity }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumEstimate {
    /// Ascending by value.
    pub roots: Vec<RealRoot>,
    /// Index into `roots` of the root of largest modulus.
    pub dominant: usize,
    /// Decided by exact evaluation of χ(1).
    pub has_unit_eigenvalue: bool,
}

impl SpectrumEstimate {
    pub fn dominant_root(&self) -> &RealRoot {
        &self.roots[self.dominant]
    }

    /// Midpoint estimate of `|λ_max|`.
    pub fn dominant_modulus(&self) -> Dyadic {
        self.dominant_root().midpoint().abs()
    }

    /// Eigenvalues with multiplicity, as floating-point midpoints.
    pub fn approximations(&self) -> Vec<f64> {
        self.roots.iter().flat_map(|r| std::iter::repeat_n(r.approx(), r.multiplicity)).collect()
    }
}

fn tolerance_dyadic(tol: f64) -> Result<Dyadic> {
    if !(tol.is_finite() && tol > 0.0) {
        return Err(CatMapError::InvalidArgument(format!("tolerance must be positive, got {tol}")));
    }
    // largest power of two not above tol
    Ok(Dyadic::pow2(tol.log2().floor() as i64))
}

/// Brackets every eigenvalue to width at most `tol`.
///
/// Only real spectra are supported; a polynomial with non-real roots is
/// reported as an error rather than partially answered.
pub fn estimate_roots(p: &CharPolynomial, tol: f64) -> Result<SpectrumEstimate> {
    if p.degree() == 0 {
        return Err(CatMapError::RootEstimation { polynomial: p.to_string(), reason: "degree 0".into() });
    }
    let tol = tolerance_dyadic(tol)?;
    let roots: Vec<RealRoot> = real_roots(p.as_poly(), &tol)
        .map_err(|reason| CatMapError::RootEstimation { polynomial: p.to_string(), reason })?
        .into_iter()
        .map(RealRoot::from)
        .collect();
    let found: usize = roots.iter().map(|r| r.multiplicity).sum();
    if found != p.degree() {
        return Err(CatMapError::RootEstimation {
            polynomial: p.to_string(),
            reason: format!("{} of {} roots are non-real", p.degree() - found, p.degree()),
        });
    }
    let dominant = (0..roots.len())
        .max_by(|&i, &j| roots[i].midpoint().abs().cmp(&roots[j].midpoint().abs()))
        .expect("degree >= 1");
    let has_unit_eigenvalue = p.eval(&BigInt::one()).is_zero();
    Ok(SpectrumEstimate { roots, dominant, has_unit_eigenvalue })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Evaluation {
    Passed,
    Failed,
    NotEvaluated,
}

impl From<bool> for Evaluation {
    fn from(b: bool) -> Self {
        if b {
            Evaluation::Passed
        } else {
            Evaluation::Failed
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChaosVerdict {
    pub polynomial: CharPolynomial,
    /// χ(1), computed exactly.
    pub chi_at_one: BigInt,
    pub no_unit_eigenvalue: Evaluation,
    pub expanding_eigenvalue: Evaluation,
    /// Asymptotic periodicity of orbits is outside what this library decides.
    pub not_asymptotically_periodic: Evaluation,
    pub spectrum: SpectrumEstimate,
    /// Conjunction of the two evaluated conditions.
    pub chaotic: bool,
}

/// No eigenvalue equal to 1 (exact) and some eigenvalue with `|λ| > 1`.
pub fn chaos_check(a: &ExactMatrix) -> Result<ChaosVerdict> {
    let polynomial = char_poly(a);
    let spectrum = estimate_roots(&polynomial, DEFAULT_TOLERANCE)?;
    let chi_at_one = polynomial.eval(&BigInt::one());
    let one = Dyadic::from_int(1);
    let dom = spectrum.dominant_root();
    let expanding = if dom.modulus_lower() > one {
        true
    } else if dom.modulus_upper() <= one && spectrum.roots.iter().all(|r| r.modulus_upper() <= one) {
        false
    } else {
        // bracket straddles the unit circle; settle it exactly
        count_outside_unit(polynomial.as_poly()) > 0
    };
    let no_unit = !chi_at_one.is_zero();
    Ok(ChaosVerdict {
        chi_at_one,
        no_unit_eigenvalue: no_unit.into(),
        expanding_eigenvalue: expanding.into(),
        not_asymptotically_periodic: Evaluation::NotEvaluated,
        chaotic: no_unit && expanding,
        spectrum,
        polynomial,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrendEntry {
    pub dimension: usize,
    pub dominant: RealRoot,
}

/// Dominant eigenvalue per dimension. `increasing` is a report, not a claim.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrendReport {
    pub entries: Vec<TrendEntry>,
    /// Every bracket lies strictly above the previous one.
    pub increasing: bool,
}

/// Dominant eigenvalue of `A_n` for `n = 2..=n_max`, ordered by `n`.
pub fn dominant_trend(n_max: usize) -> Result<TrendReport> {
    if n_max < 2 {
        return Err(CatMapError::DimensionTooSmall { n: n_max, min: 2 });
    }
    let entries: Vec<TrendEntry> = (2..=n_max)
        .into_par_iter()
        .map(|n| {
            let a = build_dcm(n)?;
            let spectrum = estimate_roots(&char_poly(&a), DEFAULT_TOLERANCE)?;
            Ok(TrendEntry { dimension: n, dominant: spectrum.dominant_root().clone() })
        })
        .collect::<Result<_>>()?;
    let increasing = entries.windows(2).all(|w| w[1].dominant.modulus_lower() > w[0].dominant.modulus_upper());
    Ok(TrendReport { entries, increasing })
}
