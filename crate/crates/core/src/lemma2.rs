//! Unit pairs `x + y ≡ 2 (mod m)` with `x, y ≠ 1` nontrivial e-th power units,
//! and point counts of `x^e + y^e = 2` over prime fields.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::RangeInclusive;

use crate::error::{Error, Result};
use crate::modarith::{factorize, gcd, is_power_unit, is_prime, pow_mod, primes_in, Factorization};

/// Largest prime accepted by [`count_fermat_points`].
pub const FERMAT_PRIME_BOUND: u64 = 1_000_000;

/// A verified solution of `x + y ≡ 2 (mod m)` with `x, y ≠ 1` units.
///
/// Only constructible through [`PairWitness::new`], which re-checks every
/// condition, including `u^e ≡ x` and `v^e ≡ y` when roots are attached.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairWitness {
    m: u64,
    e: u64,
    x: u64,
    y: u64,
    u: Option<u64>,
    v: Option<u64>,
}

impl PairWitness {
    pub fn new(m: u64, e: u64, x: u64, y: u64, u: Option<u64>, v: Option<u64>) -> Option<Self> {
        if m < 2 || x >= m || y >= m {
            return None;
        }
        let ok = gcd(x, m) == 1
            && gcd(y, m) == 1
            && x != 1
            && y != 1
            && (x + y) % m == 2 % m
            && u.is_none_or(|u| pow_mod(u, e, m) == x)
            && v.is_none_or(|v| pow_mod(v, e, m) == y);
        ok.then_some(PairWitness { m, e, x, y, u, v })
    }

    pub fn modulus(&self) -> u64 {
        self.m
    }

    pub fn exponent(&self) -> u64 {
        self.e
    }

    pub fn x(&self) -> u64 {
        self.x
    }

    pub fn y(&self) -> u64 {
        self.y
    }

    /// e-th roots of `x` and `y`, when attached.
    pub fn roots(&self) -> (Option<u64>, Option<u64>) {
        (self.u, self.v)
    }
}

fn smallest_root(x: u64, m: u64, e: u64) -> Option<u64> {
    (1..m).find(|&u| gcd(u, m) == 1 && pow_mod(u, e, m) == x)
}

/// Smallest `x` of a pair, without computing roots.
fn first_pair(fac: &Factorization, e: u64) -> Option<(u64, u64)> {
    let m = fac.value();
    if m < 2 {
        return None;
    }
    let two = 2 % m;
    (0..m)
        .filter(|&x| x != 1 && is_power_unit(x, fac, e))
        .map(|x| (x, (two + m - x) % m))
        .find(|&(_, y)| is_power_unit(y, fac, e))
}

fn exists_pair_factored(fac: &Factorization, e: u64) -> Option<PairWitness> {
    let m = fac.value();
    let (x, y) = first_pair(fac, e)?;
    PairWitness::new(m, e, x, y, smallest_root(x, m, e), smallest_root(y, m, e))
}

/// Lexicographically smallest `(x, y)` with `x, y ∈ ((Z/m)^*)^e`, both `≠ 1`,
/// and `x + y ≡ 2`, with e-th roots attached.
pub fn exists_pair(m: u64, e: u64) -> Result<Option<PairWitness>> {
    let fac = factorize(m)?;
    Ok(exists_pair_factored(&fac, e))
}

/// Failures of [`exists_pair`] over a range of moduli.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lemma2Report {
    pub e: u64,
    pub scanned_max: u64,
    pub failures: Vec<u64>,
    /// Witnesses for the successes, when requested.
    pub witnesses: Option<Vec<PairWitness>>,
}

impl Lemma2Report {
    /// Largest failing modulus within the scan; the empirical `C(e)`.
    pub fn empirical_constant(&self) -> Option<u64> {
        self.failures.last().copied()
    }
}

/// Moduli in `range` with no unit pair, ascending.
pub fn failures_in(e: u64, range: RangeInclusive<u64>) -> Result<Vec<u64>> {
    let mut out = Vec::new();
    for m in range {
        if m == 0 {
            continue;
        }
        if first_pair(&factorize(m)?, e).is_none() {
            out.push(m);
        }
    }
    Ok(out)
}

pub fn failure_scan(e: u64, max_m: u64) -> Result<Lemma2Report> {
    Ok(Lemma2Report {
        e,
        scanned_max: max_m,
        failures: failures_in(e, 1..=max_m)?,
        witnesses: None,
    })
}

/// Like [`failure_scan`] but keeps a witness for every success.
pub fn failure_scan_witnessed(e: u64, max_m: u64) -> Result<Lemma2Report> {
    let mut failures = Vec::new();
    let mut witnesses = Vec::new();
    for m in 1..=max_m {
        match exists_pair(m, e)? {
            Some(w) => witnesses.push(w),
            None => failures.push(m),
        }
    }
    Ok(Lemma2Report {
        e,
        scanned_max: max_m,
        failures,
        witnesses: Some(witnesses),
    })
}

/// Outcome of the explicit prime-power construction `x = 1 + e·p^(n−k−1)`,
/// `y = 1 − e·p^(n−k−1)` with `e = u·p^k`, `gcd(u, p) = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimePowerWitness {
    pub p: u64,
    pub n: u32,
    pub e: u64,
    /// `(x, y)` mod `p^n`, when `n − k − 1 ≥ 0`.
    pub candidate: Option<(u64, u64)>,
    /// `x ≡ (1 + p^(n−k−1))^e`.
    pub x_identity: bool,
    /// `y ≡ (1 − p^(n−k−1))^e`.
    pub y_identity: bool,
    /// Whether the candidate is a valid pair of e-th power units.
    pub candidate_valid: bool,
    /// The verified witness: the candidate if valid, else the exhaustive result.
    pub witness: Option<PairWitness>,
    pub used_fallback: bool,
}

pub fn prime_power_witness(p: u64, n: u32, e: u64) -> Result<PrimePowerWitness> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if n < 2 {
        return Err(Error::OutOfRange {
            value: n as u64,
            bound: 2,
        });
    }
    let modulus = p
        .checked_pow(n)
        .filter(|&q| q <= crate::modarith::FACTOR_BOUND)
        .ok_or(Error::OutOfRange {
            value: p,
            bound: crate::modarith::FACTOR_BOUND,
        })?;
    let fac = factorize(modulus)?;
    if e == 0 {
        return Err(Error::OutOfRange { value: 0, bound: 1 });
    }
    let mut k = 0u32;
    let mut rest = e;
    while rest.is_multiple_of(p) {
        rest /= p;
        k += 1;
    }
    let mut result = PrimePowerWitness {
        p,
        n,
        e,
        candidate: None,
        x_identity: false,
        y_identity: false,
        candidate_valid: false,
        witness: None,
        used_fallback: false,
    };
    if n > k {
        let shift = p.pow(n - k - 1);
        let step = ((e as u128 * shift as u128) % modulus as u128) as u64;
        let x = (1 + step) % modulus;
        let y = (1 + modulus - step) % modulus;
        let root_x = (1 + shift) % modulus;
        let root_y = (1 + modulus - shift % modulus) % modulus;
        result.candidate = Some((x, y));
        result.x_identity = pow_mod(root_x, e, modulus) == x;
        result.y_identity = pow_mod(root_y, e, modulus) == y;
        if is_power_unit(x, &fac, e) && is_power_unit(y, &fac, e) {
            let u = if result.x_identity {
                Some(root_x)
            } else {
                smallest_root(x, modulus, e)
            };
            let v = if result.y_identity {
                Some(root_y)
            } else {
                smallest_root(y, modulus, e)
            };
            result.witness = PairWitness::new(modulus, e, x, y, u, v);
            result.candidate_valid = result.witness.is_some();
        }
    }
    if !result.candidate_valid {
        result.used_fallback = true;
        result.witness = exists_pair_factored(&fac, e);
    }
    Ok(result)
}

/// Number of `(x, y) ∈ F_p²` with `x^e + y^e = 2`, by bucketing `z ↦ z^e`.
pub fn count_fermat_points(e: u64, p: u64) -> Result<u64> {
    if p > FERMAT_PRIME_BOUND {
        return Err(Error::PrimeTooLarge {
            p,
            bound: FERMAT_PRIME_BOUND,
        });
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let mut buckets = vec![0u64; p as usize];
    for z in 0..p {
        buckets[pow_mod(z, e, p) as usize] += 1;
    }
    let two = 2 % p;
    Ok((0..p)
        .map(|a| buckets[a as usize] * buckets[((two + p - a) % p) as usize])
        .sum())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeilThreshold {
    pub e: u64,
    pub bound: u64,
    /// Primes `l ≤ bound` with at most `e² + 2e` solutions.
    pub primes: Vec<u64>,
    pub largest: Option<u64>,
    /// For `e ≥ 3`: the first prime from which the Hasse–Weil lower bound
    /// `l + 1 − 2g√l − e > e² + 2e` holds for good, `g = (e−1)(e−2)/2`.
    pub weil_cutoff: Option<u64>,
}

/// Smallest prime `l` with `l + 1 − 2g√l − e > e² + 2e`, searching only where
/// the left side is increasing (`l ≥ g²`).
fn weil_cutoff(e: u64) -> Option<u64> {
    if e < 3 {
        return None;
    }
    let g = (e - 1) * (e - 2) / 2;
    let target = (e * e + 2 * e) as i128;
    let mut l = (g * g).max(2);
    loop {
        if is_prime(l) {
            // compare l + 1 − e − target > 2g√l without floats: both sides
            // positive, so square
            let lhs = l as i128 + 1 - e as i128 - target;
            if lhs > 0 && lhs * lhs > 4 * (g as i128) * (g as i128) * l as i128 {
                return Some(l);
            }
        }
        l += 1;
    }
}

pub fn weil_threshold_prime(e: u64, bound: u64) -> Result<WeilThreshold> {
    let target = e * e + 2 * e;
    let mut primes = Vec::new();
    for l in primes_in(2, bound) {
        if count_fermat_points(e, l)? <= target {
            primes.push(l);
        }
    }
    Ok(WeilThreshold {
        e,
        bound,
        largest: primes.last().copied(),
        primes,
        weil_cutoff: weil_cutoff(e),
    })
}
