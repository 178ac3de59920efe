//! Integer polynomials and exact real-root isolation.
//!
//! Roots are bracketed by dyadic rationals `m·2^e` and every sign decision is
//! made by exact integer evaluation, so results hold for coefficients far
//! beyond floating-point range.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact dyadic rational `mantissa · 2^exponent`, kept with an odd mantissa
/// (or zero mantissa and zero exponent).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dyadic {
    mantissa: BigInt,
    exponent: i64,
}

impl Dyadic {
    pub fn new(mantissa: BigInt, exponent: i64) -> Self {
        if mantissa.is_zero() {
            return Self::zero();
        }
        let tz = mantissa.trailing_zeros().unwrap_or(0);
        Self { mantissa: mantissa >> tz, exponent: exponent + tz as i64 }
    }

    pub fn zero() -> Self {
        Self { mantissa: BigInt::zero(), exponent: 0 }
    }

    pub fn from_int(v: impl Into<BigInt>) -> Self {
        Self::new(v.into(), 0)
    }

    pub fn pow2(e: i64) -> Self {
        Self { mantissa: BigInt::one(), exponent: e }
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mantissa
    }

    pub fn exponent(&self) -> i64 {
        self.exponent
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    pub fn signum(&self) -> i32 {
        match self.mantissa.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn abs(&self) -> Self {
        Self { mantissa: self.mantissa.abs(), exponent: self.exponent }
    }

    /// Mantissas of `self` and `other` over the common exponent.
    fn aligned(&self, other: &Self) -> (BigInt, BigInt, i64) {
        let e = self.exponent.min(other.exponent);
        (&self.mantissa << (self.exponent - e) as usize, &other.mantissa << (other.exponent - e) as usize, e)
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let (a, b, e) = self.aligned(other);
        Self::new(a + b, e)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self { mantissa: -&self.mantissa, exponent: self.exponent }
    }

    pub fn half(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        Self { mantissa: self.mantissa.clone(), exponent: self.exponent - 1 }
    }

    pub fn midpoint(&self, other: &Self) -> Self {
        self.add(other).half()
    }

    /// `floor(log2 |self|)`; `None` for zero.
    pub fn log2_floor(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.exponent + self.mantissa.bits() as i64 - 1)
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.mantissa.bits() as i64;
        let (m, e) = if bits > 60 {
            (&self.mantissa >> (bits - 60) as usize, self.exponent + bits - 60)
        } else {
            (self.mantissa.clone(), self.exponent)
        };
        let m = m.to_f64().expect("60-bit value fits");
        let e = e.clamp(-4000, 4000) as i32;
        m * 2f64.powi(e / 2) * 2f64.powi(e - e / 2)
    }

    /// Decimal scientific notation with `digits` significant digits,
    /// truncated toward zero. Exact for any magnitude.
    pub fn to_sci_string(&self, digits: usize) -> String {
        let digits = digits.max(1);
        if self.is_zero() {
            return format!("{:.*}e0", digits - 1, 0.0);
        }
        let sign = if self.signum() < 0 { "-" } else { "" };
        let mag = self.abs();
        // log10(2) ≈ 0.30103; start from an estimate and correct below.
        let lg = mag.log2_floor().expect("nonzero");
        let mut d = (lg as f64 * std::f64::consts::LOG10_2).floor() as i64;
        let lower = BigInt::from(10u32).pow(digits as u32 - 1);
        let upper = &lower * 10u32;
        let mut scaled;
        loop {
            scaled = mag.scale_floor(digits as i64 - 1 - d);
            if scaled >= upper {
                d += 1;
            } else if scaled < lower {
                d -= 1;
            } else {
                break;
            }
        }
        let s = scaled.to_string();
        let (head, tail) = s.split_at(1);
        if tail.is_empty() {
            format!("{sign}{head}e{d}")
        } else {
            format!("{sign}{head}.{tail}e{d}")
        }
    }

    /// `floor(|self| · 10^k)` for non-negative `self`.
    fn scale_floor(&self, k: i64) -> BigInt {
        let ten = BigInt::from(10u32);
        let mut num = self.mantissa.clone();
        let mut den = BigInt::one();
        if k >= 0 {
            num *= ten.pow(k as u32);
        } else {
            den *= ten.pow((-k) as u32);
        }
        if self.exponent >= 0 {
            num <<= self.exponent as usize;
        } else {
            den <<= (-self.exponent) as usize;
        }
        num.div_floor(&den)
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b, _) = self.aligned(other);
        a.cmp(&b)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = self.to_f64();
        if v == 0.0 || (1e-6..1e16).contains(&v.abs()) {
            write!(f, "{v}")
        } else {
            write!(f, "{}", self.to_sci_string(17))
        }
    }
}

/// Polynomial with integer coefficients, ascending powers, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn derivative(&self) -> Self {
        Self::new(self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect())
    }

    /// `p(-x)`.
    pub fn reflect(&self) -> Self {
        Self::new(self.coeffs.iter().enumerate().map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() }).collect())
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// `p(x)` as `(v, e)` with `p(x) = v · 2^e`, computed exactly.
    pub fn eval_scaled(&self, x: &Dyadic) -> (BigInt, i64) {
        if self.is_zero() {
            return (BigInt::zero(), 0);
        }
        if x.exponent >= 0 {
            return (self.eval(&(&x.mantissa << x.exponent as usize)), 0);
        }
        // 2^(k·deg) · p(m / 2^k), a homogenized Horner pass
        let k = (-x.exponent) as usize;
        let n = self.degree();
        let mut acc = self.coeffs[n].clone();
        for (j, c) in self.coeffs[..n].iter().rev().enumerate() {
            acc = acc * &x.mantissa + (c << (k * (j + 1)));
        }
        (acc, x.exponent * n as i64)
    }

    /// Sign of `p(x)` computed exactly.
    pub fn sign_at(&self, x: &Dyadic) -> i32 {
        match self.eval_scaled(x).0.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divides out the content, keeping the sign of the leading coefficient.
    pub fn primitive(&self) -> Self {
        let g = self.content();
        if g.is_zero() || g.is_one() {
            return self.clone();
        }
        Self::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    /// Pseudo-remainder scaled by a positive factor, so signs are preserved.
    fn signed_prem(&self, divisor: &Self) -> Self {
        let dd = divisor.degree();
        let lc = divisor.leading();
        let lc_abs = lc.abs();
        let mut r = self.coeffs.clone();
        while r.len() > dd && !r.is_empty() {
            let shift = r.len() - 1 - dd;
            let top = r.last().cloned().expect("nonempty");
            // r <- |lc| * r - sign(lc) * top * x^shift * divisor
            for c in r.iter_mut() {
                *c *= &lc_abs;
            }
            let factor = if lc.is_negative() { -top } else { top };
            for (i, d) in divisor.coeffs.iter().enumerate() {
                r[shift + i] -= &factor * d;
            }
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        Self::new(r)
    }

    /// Exact quotient, assuming `divisor` divides `self` over the integers.
    pub fn div_exact(&self, divisor: &Self) -> Self {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let dd = divisor.degree();
        let lc = divisor.leading();
        let mut r = self.coeffs.clone();
        let mut q = vec![BigInt::zero(); self.coeffs.len().saturating_sub(dd).max(1)];
        while r.len() > dd && !r.is_empty() {
            let shift = r.len() - 1 - dd;
            let (quot, rem) = r.last().expect("nonempty").div_rem(&lc);
            assert!(rem.is_zero(), "inexact polynomial division");
            for (i, d) in divisor.coeffs.iter().enumerate() {
                r[shift + i] -= &quot * d;
            }
            q[shift] = quot;
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        assert!(r.is_empty(), "inexact polynomial division");
        Self::new(q)
    }

    /// Primitive gcd with positive leading coefficient.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.primitive(), other.primitive());
        while !b.is_zero() {
            let r = a.signed_prem(&b).primitive();
            a = b;
            b = r;
        }
        if a.leading().is_negative() {
            a = Self::new(a.coeffs.iter().map(|c| -c).collect());
        }
        a
    }

    /// Yun's algorithm: `p = c · Π f_i^i` with each `f_i` squarefree,
    /// primitive and pairwise coprime. Returns the non-constant `(f_i, i)`.
    pub fn squarefree_factors(&self) -> Vec<(IntPoly, usize)> {
        let p = self.primitive();
        if p.degree() == 0 {
            return Vec::new();
        }
        if p.squarefree_by_reduction() {
            return vec![(p, 1)];
        }
        let dp = p.derivative();
        let a0 = p.gcd(&dp);
        let mut b = p.div_exact(&a0);
        let mut c = dp.div_exact(&a0);
        let mut d = sub(&c, &b.derivative());
        let mut out = Vec::new();
        let mut i = 1;
        while b.degree() > 0 {
            let a = b.gcd(&d);
            b = b.div_exact(&a);
            c = d.div_exact(&a);
            d = sub(&c, &b.derivative());
            if a.degree() > 0 {
                out.push((a, i));
            }
            i += 1;
        }
        out
    }
}

impl IntPoly {
    /// True when `gcd(p, p')` is constant modulo some prime not dividing
    /// the leading coefficient, which forces `p` squarefree over the
    /// rationals. False means "undecided", not "has a square factor".
    fn squarefree_by_reduction(&self) -> bool {
        const PRIMES: [u64; 3] = [(1 << 61) - 1, 1_000_000_007, (1 << 31) - 1];
        PRIMES.iter().any(|&prime| {
            let m = BigInt::from(prime);
            let reduced: Vec<u64> =
                self.coeffs.iter().map(|c| c.mod_floor(&m).try_into().expect("below prime")).collect();
            if reduced.last() == Some(&0) {
                return false;
            }
            let derivative: Vec<u64> =
                reduced.iter().enumerate().skip(1).map(|(i, &c)| mul_mod(c, i as u64 % prime, prime)).collect();
            gcd_mod_degree(reduced, derivative, prime) == Some(0)
        })
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn inv_mod(a: u64, m: u64) -> u64 {
    let (mut base, mut exp, mut acc) = (a, m - 2, 1u64);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

fn trim_mod(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// Degree of `gcd(a, b)` over GF(m); `None` if both are zero.
fn gcd_mod_degree(mut a: Vec<u64>, mut b: Vec<u64>, m: u64) -> Option<usize> {
    trim_mod(&mut a);
    trim_mod(&mut b);
    while !b.is_empty() {
        let inv = inv_mod(*b.last().expect("nonempty"), m);
        while a.len() >= b.len() {
            let factor = mul_mod(*a.last().expect("nonempty"), inv, m);
            let shift = a.len() - b.len();
            for (i, &c) in b.iter().enumerate() {
                a[shift + i] = (a[shift + i] + m - mul_mod(factor, c, m)) % m;
            }
            trim_mod(&mut a);
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len().checked_sub(1)
}

fn sub(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let n = a.coeffs.len().max(b.coeffs.len());
    IntPoly::new(
        (0..n)
            .map(|i| a.coeffs.get(i).cloned().unwrap_or_default() - b.coeffs.get(i).cloned().unwrap_or_default())
            .collect(),
    )
}

/// Sturm chain `q, q', -rem(q, q'), …` of a squarefree polynomial.
pub struct SturmChain {
    chain: Vec<IntPoly>,
}

impl SturmChain {
    pub fn new(q: &IntPoly) -> Self {
        let mut chain = vec![q.clone(), q.derivative().primitive()];
        loop {
            let n = chain.len();
            if chain[n - 1].is_zero() {
                chain.pop();
                break;
            }
            if chain[n - 1].degree() == 0 {
                break;
            }
            let r = chain[n - 2].signed_prem(&chain[n - 1]).primitive();
            chain.push(IntPoly::new(r.coeffs.iter().map(|c| -c).collect()));
        }
        Self { chain }
    }

    pub fn variations_at(&self, x: &Dyadic) -> usize {
        count_variations(self.chain.iter().map(|p| p.sign_at(x)))
    }

    /// Variations at `+∞` (signs of leading coefficients).
    pub fn variations_at_infinity(&self) -> usize {
        count_variations(self.chain.iter().map(|p| p.leading().signum().to_i32().unwrap_or(0)))
    }

    /// Distinct roots in `(a, b]`.
    pub fn count(&self, a: &Dyadic, b: &Dyadic) -> usize {
        self.variations_at(a).saturating_sub(self.variations_at(b))
    }

    /// Distinct roots in `(a, ∞)`.
    pub fn count_above(&self, a: &Dyadic) -> usize {
        self.variations_at(a).saturating_sub(self.variations_at_infinity())
    }
}

fn count_variations(signs: impl Iterator<Item = i32>) -> usize {
    let mut last = 0;
    let mut v = 0;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            v += 1;
        }
        last = s;
    }
    v
}

/// Bracket `[lower, upper]` around a single real root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootBracket {
    pub lower: Dyadic,
    pub upper: Dyadic,
}

impl RootBracket {
    pub fn exact(x: Dyadic) -> Self {
        Self { lower: x.clone(), upper: x }
    }

    pub fn width(&self) -> Dyadic {
        self.upper.sub(&self.lower)
    }

    pub fn midpoint(&self) -> Dyadic {
        self.lower.midpoint(&self.upper)
    }

    fn negated(self) -> Self {
        Self { lower: self.upper.neg(), upper: self.lower.neg() }
    }
}

/// `2^e` with every root magnitude of `p` strictly below it.
fn upper_exponent(p: &IntPoly) -> i64 {
    let lead_bits = p.leading().bits() as i64;
    let max_bits = p.coeffs[..p.degree()].iter().map(BigInt::bits).max().unwrap_or(0) as i64;
    (max_bits - lead_bits + 2).max(1)
}

/// Upper bound on the number of roots of `q` in the open interval `(a, b)`
/// by Descartes' rule of signs after mapping `(a, b)` onto `(0, ∞)`.
/// A result of 0 or 1 is exact.
fn descartes_bound(q: &IntPoly, a: &Dyadic, b: &Dyadic) -> usize {
    let n = q.degree();
    let w = b.sub(a);
    let e = if a.is_zero() { w.exponent } else { a.exponent.min(w.exponent) };
    let shift_a = if a.is_zero() { BigInt::zero() } else { &a.mantissa << (a.exponent - e) as usize };
    let scale_w = &w.mantissa << (w.exponent - e) as usize;
    // r(z) ∝ q(2^e · z)
    let mut r: Vec<BigInt> = q
        .coeffs
        .iter()
        .enumerate()
        .map(|(i, c)| if e >= 0 { c << (e as usize * i) } else { c << ((-e) as usize * (n - i)) })
        .collect();
    taylor_shift(&mut r, &shift_a);
    let mut power = BigInt::one();
    for c in r.iter_mut().skip(1) {
        power *= &scale_w;
        *c *= &power;
    }
    r.reverse();
    taylor_shift(&mut r, &BigInt::one());
    count_variations(r.iter().map(|c| c.signum().to_i32().unwrap_or(0)))
}

/// Coefficients of `r(x + shift)`, in place.
fn taylor_shift(r: &mut [BigInt], shift: &BigInt) {
    if shift.is_zero() {
        return;
    }
    let n = r.len();
    for i in 0..n.saturating_sub(1) {
        for j in (i..n - 1).rev() {
            let t = &r[j + 1] * shift;
            r[j] += t;
        }
    }
}

/// Given `(a, b)` holding exactly one root, returns a subinterval whose
/// endpoints are not roots, or `(root, None)` if a midpoint hits it.
fn shrink_off_roots(q: &IntPoly, mut a: Dyadic, mut b: Dyadic) -> (Dyadic, Option<Dyadic>) {
    while q.sign_at(&a) == 0 || q.sign_at(&b) == 0 {
        let m = a.midpoint(&b);
        if q.sign_at(&m) == 0 {
            return (m, None);
        }
        if descartes_bound(q, &a, &m) == 1 {
            b = m;
        } else {
            a = m;
        }
    }
    (a, Some(b))
}

/// Interval budget for one isolation pass.
const MAX_INTERVALS: usize = 1 << 20;

/// Isolates and refines the positive roots of squarefree `q` with `q(0) != 0`.
fn positive_roots(q: &IntPoly, tol: &Dyadic) -> Result<Vec<RootBracket>, String> {
    let reversed = IntPoly::new(q.coeffs.iter().rev().cloned().collect());
    // roots lie strictly inside (lo, hi), so neither endpoint is a root
    let hi = Dyadic::pow2(upper_exponent(q));
    let lo = Dyadic::pow2(-upper_exponent(&reversed));
    let mut out = Vec::new();
    let mut stack = vec![(lo, hi)];
    let mut budget = MAX_INTERVALS;
    while let Some((a, b)) = stack.pop() {
        budget = budget.checked_sub(1).ok_or_else(|| "isolation did not converge".to_string())?;
        match descartes_bound(q, &a, &b) {
            0 => {}
            1 => {
                let (a, b) = shrink_off_roots(q, a, b);
                out.push(match b {
                    Some(b) => refine(q, a, b, tol),
                    None => RootBracket::exact(a),
                });
            }
            _ => {
                let (ea, eb) = (a.log2_floor().expect("a > 0"), b.log2_floor().expect("b > 0"));
                let split = if eb - ea >= 2 { Dyadic::pow2(ea + (eb - ea) / 2) } else { a.midpoint(&b) };
                if q.sign_at(&split) == 0 {
                    out.push(RootBracket::exact(split.clone()));
                }
                stack.push((a, split.clone()));
                stack.push((split, b));
            }
        }
    }
    out.sort_by(|x, y| x.lower.cmp(&y.lower));
    Ok(out)
}

/// Narrows `(a, b)`, known to hold exactly one simple root and with
/// `q(b) != 0`, down to `tol`.
fn refine(q: &IntPoly, mut a: Dyadic, mut b: Dyadic, tol: &Dyadic) -> RootBracket {
    let sb = q.sign_at(&b);
    if sb == 0 {
        return RootBracket::exact(b);
    }
    // Jump across binades first: the root sits in (a, b] and may be far
    // smaller than b, so probe powers of two before linear halving.
    while let (Some(ea), Some(eb)) = (a.log2_floor(), b.log2_floor()) {
        if eb - ea < 2 || a.signum() <= 0 {
            break;
        }
        let g = Dyadic::pow2(ea + (eb - ea) / 2);
        match q.sign_at(&g) {
            0 => return RootBracket::exact(g),
            s if s == sb => b = g,
            _ => a = g,
        }
    }
    let dq = q.derivative();
    // Newton guesses are trusted to `width / 2^precision`; the precision
    // doubles while guesses keep landing and resets when one misses.
    let mut precision = 4i64;
    while b.sub(&a) > *tol {
        let width = b.sub(&a);
        if let Some(guess) = newton_guess(q, &dq, &a.midpoint(&b), width.log2_floor().unwrap_or(0) - precision) {
            let (lo, hi) = guess;
            let s_lo = if lo > a { q.sign_at(&lo) } else { -sb };
            let s_hi = if hi < b { q.sign_at(&hi) } else { sb };
            if s_lo == 0 {
                return RootBracket::exact(lo);
            }
            if s_hi == 0 {
                return RootBracket::exact(hi);
            }
            let landed = s_lo != sb && s_hi == sb;
            if landed {
                a = a.max(lo);
                b = b.min(hi);
            } else if s_lo == sb {
                b = b.min(lo);
            } else {
                a = a.max(hi);
            }
            if landed && b.sub(&a).add(&b.sub(&a)) <= width {
                precision = (precision * 2).min(1 << 20);
                continue;
            }
            precision = 4;
        }
        if b.sub(&a) <= *tol {
            break;
        }
        let m = a.midpoint(&b);
        match q.sign_at(&m) {
            0 => return RootBracket::exact(m),
            s if s == sb => b = m,
            _ => a = m,
        }
    }
    RootBracket { lower: a, upper: b }
}

/// Newton step from `x`, rounded to a multiple of `2^grid`, returned as the
/// candidate bracket `(x' − 2^grid, x' + 2^grid)`.
fn newton_guess(q: &IntPoly, dq: &IntPoly, x: &Dyadic, grid: i64) -> Option<(Dyadic, Dyadic)> {
    let (v0, e0) = q.eval_scaled(x);
    let (v1, e1) = dq.eval_scaled(x);
    if v1.is_zero() {
        return None;
    }
    // x' / 2^grid = m·2^(t−grid) − (v0/v1)·2^(e0−e1−grid), brought over a
    // common power of two and floored.
    let t = x.exponent;
    let shift = 0.max(grid - t).max(grid - (e0 - e1));
    let lhs = &x.mantissa << (t - grid + shift) as usize;
    let rhs = v0 << (e0 - e1 - grid + shift) as usize;
    let den = &v1 << shift as usize;
    let steps = (lhs * &v1 - rhs).div_floor(&den);
    let center = Dyadic::new(steps, grid);
    let g = Dyadic::pow2(grid);
    Some((center.sub(&g), center.add(&g)))
}

/// Every real root of `p`, each bracketed to width at most `tol`, with
/// multiplicities. Sorted ascending.
pub fn real_roots(p: &IntPoly, tol: &Dyadic) -> Result<Vec<(RootBracket, usize)>, String> {
    let mut out = Vec::new();
    for (factor, mult) in p.squarefree_factors() {
        let mut q = factor;
        if q.coeffs[0].is_zero() {
            out.push((RootBracket::exact(Dyadic::zero()), mult));
            q = IntPoly::new(q.coeffs[1..].to_vec());
        }
        if q.degree() == 0 {
            continue;
        }
        out.extend(positive_roots(&q, tol)?.into_iter().map(|r| (r, mult)));
        out.extend(positive_roots(&q.reflect(), tol)?.into_iter().map(|r| (r.negated(), mult)));
    }
    out.sort_by(|x, y| x.0.lower.cmp(&y.0.lower));
    Ok(out)
}

/// Number of distinct real roots of `p` with `|x| > 1`, decided exactly.
pub fn count_outside_unit(p: &IntPoly) -> usize {
    let mut total = 0;
    for (q, _) in p.squarefree_factors() {
        total += SturmChain::new(&q).count_above(&Dyadic::from_int(1));
        total += SturmChain::new(&q.reflect()).count_above(&Dyadic::from_int(1));
    }
    total
}
