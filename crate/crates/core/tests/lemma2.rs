use artlab_core::lemma2::{count_fermat_points, exists_pair, failure_scan, prime_power_witness};
use artlab_core::modarith::{crt_combine, factorize, gcd, pow_mod, primes_in};

/// Quadratic-time oracle for `x^e + y^e = 2` over `F_p`.
fn fermat_double_loop(e: u64, p: u64) -> u64 {
    let mut count = 0;
    for x in 0..p {
        for y in 0..p {
            if (pow_mod(x, e, p) + pow_mod(y, e, p)) % p == 2 % p {
                count += 1;
            }
        }
    }
    count
}

/// Brute force: every pair of units, no membership shortcuts.
fn pair_by_brute_force(m: u64, e: u64) -> Option<(u64, u64)> {
    let powers: Vec<u64> = {
        let mut v: Vec<u64> = (1..m)
            .filter(|&u| gcd(u, m) == 1)
            .map(|u| pow_mod(u, e, m))
            .collect();
        v.sort();
        v.dedup();
        v
    };
    for &x in &powers {
        for &y in &powers {
            if x != 1 && y != 1 && (x + y) % m == 2 % m {
                return Some((x, y));
            }
        }
    }
    None
}

#[test]
fn exists_pair_matches_brute_force() {
    for m in 1..=400 {
        for e in 1..=4 {
            let got = exists_pair(m, e).unwrap().map(|w| (w.x(), w.y()));
            assert_eq!(got, pair_by_brute_force(m, e), "m={m} e={e}");
        }
    }
}

#[test]
fn witnesses_carry_valid_roots() {
    for m in 2..=300 {
        for e in 1..=3 {
            if let Some(w) = exists_pair(m, e).unwrap() {
                let (u, v) = w.roots();
                assert_eq!(pow_mod(u.unwrap(), e, m), w.x());
                assert_eq!(pow_mod(v.unwrap(), e, m), w.y());
                assert_eq!((w.x() + w.y()) % m, 2 % m);
            }
        }
    }
}

#[test]
fn crt_lifting_of_prime_power_pairs() {
    for m in 2..=1000u64 {
        let fac = factorize(m).unwrap();
        for e in 1..=3 {
            for (_, _, q) in fac.prime_powers() {
                let Some(w) = exists_pair(q, e).unwrap() else {
                    continue;
                };
                let rest = m / q;
                let (x, _) = crt_combine(&[(w.x(), q), (1 % rest, rest)]).unwrap();
                let (y, _) = crt_combine(&[(w.y(), q), (1 % rest, rest)]).unwrap();
                assert_eq!((x + y) % m, 2 % m);
                assert!(exists_pair(m, e).unwrap().is_some(), "m={m} e={e} q={q}");
            }
        }
    }
}

#[test]
fn scans_are_monotone_in_the_bound() {
    for e in 1..=3 {
        let big = failure_scan(e, 600).unwrap().failures;
        for bound in [1, 17, 100, 333] {
            let small = failure_scan(e, bound).unwrap().failures;
            let restricted: Vec<u64> = big.iter().copied().filter(|&m| m <= bound).collect();
            assert_eq!(small, restricted);
        }
    }
}

#[test]
fn fermat_counts_match_double_loop() {
    for p in primes_in(2, 100) {
        for e in 1..=5 {
            assert_eq!(
                count_fermat_points(e, p).unwrap(),
                fermat_double_loop(e, p),
                "p={p} e={e}"
            );
        }
    }
}

#[test]
fn prime_power_construction_always_ends_verified() {
    for p in [2u64, 3, 5, 7, 11, 13] {
        for n in 2..=6u32 {
            if p.pow(n) > 200_000 {
                continue;
            }
            for e in 1..=6 {
                let r = prime_power_witness(p, n, e).unwrap();
                let exhaustive = exists_pair(p.pow(n), e).unwrap();
                assert_eq!(
                    r.witness.is_some(),
                    exhaustive.is_some(),
                    "p={p} n={n} e={e}"
                );
                if !r.used_fallback {
                    assert_eq!(r.witness.as_ref().map(|w| (w.x(), w.y())), r.candidate);
                }
            }
        }
    }
}
