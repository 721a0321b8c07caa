//! Exact residue arithmetic on native integers.
//!
//! Everything here works on `u64` inputs up to [`FACTOR_BOUND`] with `u128`
//! intermediates for products, so no big-integer support is needed.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Largest input accepted by [`factorize`].
pub const FACTOR_BOUND: u64 = 1 << 48;

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// `a mod m` for signed `a`, in `[0, m)`.
#[inline]
pub fn reduce_signed(a: i128, m: u64) -> u64 {
    a.rem_euclid(m as i128) as u64
}

/// Prime factorization `m = ∏ p^k` with strictly increasing primes.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Factorization {
    m: u64,
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn value(&self) -> u64 {
        self.m
    }

    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn is_prime(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }

    /// Euler's totient.
    pub fn phi(&self) -> u64 {
        self.factors
            .iter()
            .map(|&(p, k)| (p - 1) * p.pow(k - 1))
            .product()
    }

    /// The prime-power components `p^k`, in increasing order of `p`.
    pub fn prime_powers(&self) -> impl Iterator<Item = (u64, u32, u64)> + '_ {
        self.factors.iter().map(|&(p, k)| (p, k, p.pow(k)))
    }
}

/// Trial division with a 2·3·5 wheel.
pub fn factorize(m: u64) -> Result<Factorization> {
    if m == 0 {
        return Err(Error::ZeroModulus);
    }
    if m > FACTOR_BOUND {
        return Err(Error::OutOfRange {
            value: m,
            bound: FACTOR_BOUND,
        });
    }
    let mut rest = m;
    let mut factors = Vec::new();
    let mut take = |p: u64, rest: &mut u64| {
        let mut k = 0;
        while (*rest).is_multiple_of(p) {
            *rest /= p;
            k += 1;
        }
        if k > 0 {
            factors.push((p, k));
        }
    };
    for p in [2, 3, 5] {
        take(p, &mut rest);
    }
    const WHEEL: [u64; 8] = [4, 2, 4, 2, 4, 6, 2, 6];
    let mut p = 7u64;
    let mut i = 0;
    while p * p <= rest {
        take(p, &mut rest);
        p += WHEEL[i];
        i = (i + 1) % WHEEL.len();
    }
    if rest > 1 {
        factors.push((rest, 1));
    }
    Ok(Factorization { m, factors })
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n).map(|f| f.is_prime()).unwrap_or(false)
}

/// Primes in `[lo, hi]`, by a plain sieve of Eratosthenes.
pub fn primes_in(lo: u64, hi: u64) -> Vec<u64> {
    if hi < 2 || lo > hi {
        return Vec::new();
    }
    let n = hi as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if composite[i] {
            continue;
        }
        if i as u64 >= lo {
            out.push(i as u64);
        }
        let mut j = i * i;
        while j <= n {
            composite[j] = true;
            j += i;
        }
    }
    out
}

/// Multiplicative order of a unit `a` mod `m`, given `φ(m)` factored.
fn unit_order(a: u64, m: u64, phi: &Factorization) -> u64 {
    let mut order = phi.value();
    for &(q, _) in phi.factors() {
        while order.is_multiple_of(q) && pow_mod(a, order / q, m) == 1 {
            order /= q;
        }
    }
    order
}

/// Smallest primitive root mod an odd prime power.
fn primitive_root_odd(p: u64, k: u32) -> u64 {
    let m = p.pow(k);
    let phi = factorize((p - 1) * p.pow(k - 1)).expect("phi within range");
    (2..m)
        .find(|&g| g % p != 0 && unit_order(g, m, &phi) == phi.value())
        .expect("odd prime powers are cyclic")
}

/// Generators of the unit group of `Z/p^k`.
fn prime_power_generators(p: u64, k: u32) -> Vec<u64> {
    match (p, k) {
        (2, 1) => Vec::new(),
        (2, 2) => vec![3],
        (2, k) => vec![(1 << k) - 1, 5],
        (p, k) => vec![primitive_root_odd(p, k)],
    }
}

/// Generators of `(Z/m)^*`.
///
/// Odd prime powers contribute their smallest primitive root and `2^k` (k ≥ 3)
/// contributes `{2^k − 1, 5}`. Each per-component generator is lifted by CRT to
/// a residue that is `1` on every other component.
pub fn unit_group_generators(m: u64) -> Result<Vec<u64>> {
    let fac = factorize(m)?;
    let mut gens = Vec::new();
    for (p, k, q) in fac.prime_powers() {
        let rest = m / q;
        for g in prime_power_generators(p, k) {
            let (lifted, _) = crt_combine(&[(g, q), (1 % rest, rest)])?;
            gens.push(lifted);
        }
    }
    Ok(gens)
}

/// A multiplicatively closed set of units mod `modulus`, kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UnitSet {
    modulus: u64,
    elements: Vec<u64>,
}

impl UnitSet {
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, x: u64) -> bool {
        self.elements.binary_search(&(x % self.modulus)).is_ok()
    }
}

/// `{u^e mod m : gcd(u, m) = 1}`, by enumeration.
///
/// For `m = 1` this is `{0}`, the single residue standing in for the unit.
pub fn power_subgroup(m: u64, e: u64) -> Result<UnitSet> {
    if m == 0 {
        return Err(Error::ZeroModulus);
    }
    if m == 1 {
        return Ok(UnitSet {
            modulus: 1,
            elements: vec![0],
        });
    }
    let mut hit = vec![false; m as usize];
    for u in 1..m {
        if gcd(u, m) == 1 {
            hit[pow_mod(u, e, m) as usize] = true;
        }
    }
    let elements = hit
        .iter()
        .enumerate()
        .filter_map(|(x, &h)| h.then_some(x as u64))
        .collect();
    Ok(UnitSet {
        modulus: m,
        elements,
    })
}

/// Whether `x` is the e-th power of a unit mod `fac.value()`.
///
/// Works per prime power: odd components are cyclic of order `φ`, so `x` is an
/// e-th power iff `x^(φ/gcd(e,φ)) = 1`; for `2^k` with `k ≥ 3` the group is
/// `{±1} × ⟨5⟩` and e-th powers for even `e` lie in `⟨5⟩`.
pub fn is_power_unit(x: u64, fac: &Factorization, e: u64) -> bool {
    let m = fac.value();
    if m == 1 {
        return true;
    }
    if gcd(x % m, m) != 1 {
        return false;
    }
    fac.prime_powers().all(|(p, k, q)| {
        let r = x % q;
        if p == 2 && k >= 3 {
            if e % 2 == 1 {
                return true;
            }
            if r % 4 != 1 {
                return false;
            }
            let t = 1u64 << (k - 2);
            pow_mod(r, t / gcd(e, t), q) == 1
        } else {
            let phi = (p - 1) * p.pow(k - 1);
            pow_mod(r, phi / gcd(e, phi), q) == 1
        }
    })
}

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = ext_gcd(b, a.rem_euclid(b));
        (g, y, x - a.div_euclid(b) * y)
    }
}

/// Inverse of `a` mod `m`, when it exists.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (g, x, _) = ext_gcd(a as i128 % m as i128, m as i128);
    (g == 1).then(|| reduce_signed(x, m))
}

/// Solves `x ≡ rᵢ (mod mᵢ)` for pairwise coprime moduli.
///
/// Returns `(x, ∏ mᵢ)` with `0 ≤ x < ∏ mᵢ`. The empty system gives `(0, 1)`.
pub fn crt_combine(parts: &[(u64, u64)]) -> Result<(u64, u64)> {
    for (i, &(_, a)) in parts.iter().enumerate() {
        if a == 0 {
            return Err(Error::ZeroModulus);
        }
        for &(_, b) in &parts[i + 1..] {
            if gcd(a, b) != 1 {
                return Err(Error::NonCoprimeModuli { a, b });
            }
        }
    }
    let mut x = 0u64;
    let mut modulus = 1u64;
    for &(r, m) in parts {
        let product = modulus.checked_mul(m).ok_or(Error::OutOfRange {
            value: m,
            bound: u64::MAX / modulus,
        })?;
        // x + modulus * t ≡ r (mod m)
        let inv = inv_mod(modulus % m, m).unwrap_or(0);
        let diff = reduce_signed(r as i128 - x as i128, m);
        let t = mul_mod(diff, inv, m);
        x = ((x as u128 + modulus as u128 * t as u128) % product as u128) as u64;
        modulus = product;
    }
    Ok((x, modulus))
}

/// Jacobi symbol `(a / m)` for odd `m ≥ 1`.
pub fn jacobi_symbol(a: i64, m: u64) -> Result<i8> {
    if m.is_multiple_of(2) {
        return Err(Error::EvenJacobiModulus(m));
    }
    let mut a = reduce_signed(a as i128, m);
    let mut n = m;
    let mut sign = 1i8;
    while a != 0 {
        while a.is_multiple_of(2) {
            a /= 2;
            if n % 8 == 3 || n % 8 == 5 {
                sign = -sign;
            }
        }
        core::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            sign = -sign;
        }
        a %= n;
    }
    Ok(if n == 1 { sign } else { 0 })
}
