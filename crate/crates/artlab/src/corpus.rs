//! Seeded random corpus of valid Galois modules for property checks.
//!
//! Generators are products of elementary automorphisms (unit scalings of a
//! coordinate and admissible shears `xᵢ += c·xⱼ`), so every draw is invertible.

use artlab_core::modarith::gcd;
use artlab_core::{GaloisModule, Limits, ModuleDescription};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const MAX_CORPUS_POINTS: u64 = 10_000;
pub const MAX_CORPUS_CLOSURE: usize = 1_000;

fn random_factors(rng: &mut ChaCha8Rng) -> Vec<u64> {
    loop {
        let rank = rng.gen_range(1..=3);
        let bound = match rank {
            1 => 200,
            2 => 60,
            _ => 14,
        };
        let factors: Vec<u64> = (0..rank).map(|_| rng.gen_range(1..=bound)).collect();
        if factors.iter().product::<u64>() <= MAX_CORPUS_POINTS {
            return factors;
        }
    }
}

fn random_automorphism(rng: &mut ChaCha8Rng, d: &[u64]) -> Vec<Vec<i64>> {
    let k = d.len();
    let mut m: Vec<Vec<i64>> = (0..k)
        .map(|i| (0..k).map(|j| (i == j) as i64).collect())
        .collect();
    for _ in 0..rng.gen_range(1..=4) {
        let i = rng.gen_range(0..k);
        let j = rng.gen_range(0..k);
        if i == j || rng.gen_bool(0.4) {
            let units: Vec<u64> = (1..=d[i]).filter(|&u| gcd(u, d[i]) == 1).collect();
            let u = *units.choose(rng).unwrap() as i64;
            for x in m[i].iter_mut() {
                *x = (*x * u).rem_euclid(d[i] as i64);
            }
        } else {
            let c = rng.gen_range(1..=3) * (d[i] / gcd(d[i], d[j])) as i64;
            let src = m[j].clone();
            for (x, s) in m[i].iter_mut().zip(src) {
                *x = (*x + c * s).rem_euclid(d[i] as i64);
            }
        }
    }
    m
}

/// `count` modules with at most 10⁴ points and closures of at most 10³
/// elements, reproducible from `seed`.
pub fn random_modules(seed: u64, count: usize) -> Vec<GaloisModule> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let limits = Limits {
        max_closure: MAX_CORPUS_CLOSURE,
        ..Limits::default()
    };
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let factors = random_factors(&mut rng);
        let gens = (0..rng.gen_range(0..=3))
            .map(|_| random_automorphism(&mut rng, &factors))
            .collect();
        let desc = ModuleDescription {
            name: Some(format!("random#{}", out.len())),
            factors,
            galois: gens,
        };
        if let Ok(m) = GaloisModule::validate(&desc, &limits) {
            out.push(m);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_is_reproducible_and_bounded() {
        let a = random_modules(7, 20);
        let b = random_modules(7, 20);
        assert_eq!(a, b);
        for m in &a {
            assert!(m.point_count() <= MAX_CORPUS_POINTS as u128);
            assert!(m.closure().len() <= MAX_CORPUS_CLOSURE);
        }
        assert!(a.iter().any(|m| m.closure().len() > 1));
    }
}
