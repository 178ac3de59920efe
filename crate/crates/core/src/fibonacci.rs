//! Fibonacci numbers `u_0 = 0, u_1 = 1, …` and their residues mod N.
//!
//! The residue sequence is what ties the cat map's period to Fibonacci
//! divisibility. Everything here is a brute scan; N stays at desk scale.

use std::collections::HashSet;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{CatMapError, Result};

/// Summary of the Fibonacci residue sequence mod `modulus`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FibResidueCycle {
    pub modulus: u64,
    /// Smallest `c >= 1` with `u_c ≡ 0` and `u_{c+1} ≡ 1`.
    pub cycle_length: u64,
    /// Smallest `k >= 1` with `u_k ≡ 0`.
    pub first_zero_index: u64,
    /// One-based position of the first recurrence in `⟨φ1,φ2⟩, ⟨φ2,φ3⟩, …`.
    pub first_repeat_pair_index: u64,
}

#[inline]
fn add_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 + b as u128) % m as u128) as u64
}

fn check_modulus(modulus: u64) -> Result<()> {
    if modulus == 0 {
        Err(CatMapError::InvalidModulus(modulus))
    } else {
        Ok(())
    }
}

/// Iterator over `φ_0, φ_1, φ_2, …` mod `modulus`.
#[derive(Clone, Debug)]
pub struct Residues {
    cur: u64,
    next: u64,
    modulus: u64,
}

impl Iterator for Residues {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        let out = self.cur;
        self.cur = self.next;
        self.next = add_mod(out, self.next, self.modulus);
        Some(out)
    }
}

pub fn residues(modulus: u64) -> Result<Residues> {
    check_modulus(modulus)?;
    Ok(Residues { cur: 0, next: 1 % modulus, modulus })
}

/// Exact `u_i` by the recurrence.
pub fn fib(i: u64) -> BigUint {
    let (mut a, mut b) = (BigUint::zero(), BigUint::one());
    for _ in 0..i {
        let c = &a + &b;
        a = std::mem::replace(&mut b, c);
    }
    a
}

/// `φ_i`, computed iteratively in residues.
pub fn fib_mod(i: u64, modulus: u64) -> Result<u64> {
    let mut seq = residues(modulus)?;
    Ok(seq.nth(i as usize).expect("residue iterator is infinite"))
}

/// Scans `⟨φ1,φ2⟩, ⟨φ2,φ3⟩, …` for the first pair seen twice and returns the
/// one-based position of its second occurrence together with the pair.
pub fn first_repeat_pair(modulus: u64) -> Result<(u64, (u64, u64))> {
    check_modulus(modulus)?;
    if modulus < 2 {
        return Err(CatMapError::InvalidArgument(format!(
            "first repeated pair needs a modulus of at least 2, got {modulus}"
        )));
    }
    first_repeat_scan(modulus)
}

fn first_repeat_scan(modulus: u64) -> Result<(u64, (u64, u64))> {
    let limit = modulus.saturating_mul(modulus).saturating_add(1);
    let mut seen = HashSet::new();
    let mut seq = residues(modulus)?.skip(1);
    let mut prev = seq.next().expect("infinite");
    for (pos, cur) in (1..=limit).zip(seq) {
        let pair = (prev, cur);
        if !seen.insert(pair) {
            return Ok((pos, pair));
        }
        prev = cur;
    }
    Err(CatMapError::PigeonholeViolation { modulus, scanned: limit })
}

/// Smallest `k >= 1` with `N | u_k`.
pub fn first_zero_fib_index(modulus: u64) -> Result<u64> {
    let seq = residues(modulus)?;
    let k =
        seq.enumerate().skip(1).find(|&(_, r)| r == 0).map(|(k, _)| k as u64).expect("a zero residue always exists");
    Ok(k)
}

fn cycle_length(modulus: u64) -> u64 {
    let one = 1 % modulus;
    let (mut a, mut b) = (one, add_mod(0, one, modulus));
    // (a, b) = (φ_c, φ_{c+1}) starting at c = 1
    let mut c = 1;
    while !(a == 0 && b == one) {
        let next = add_mod(a, b, modulus);
        a = b;
        b = next;
        c += 1;
    }
    c
}

pub fn residue_cycle(modulus: u64) -> Result<FibResidueCycle> {
    check_modulus(modulus)?;
    let cycle_length = cycle_length(modulus);
    let first_zero_index = first_zero_fib_index(modulus)?;
    let (first_repeat_pair_index, _) = first_repeat_scan(modulus)?;
    Ok(FibResidueCycle { modulus, cycle_length, first_zero_index, first_repeat_pair_index })
}
