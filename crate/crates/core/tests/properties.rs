//! Invariants of the Galois-module predicate, checked on random modules.

use artlab_core::galmod::{
    cyclotomic_module, halving_exclusion, homothety_module, lemma4_audit, quotient_by,
};
use artlab_core::lemma2::exists_pair;
use artlab_core::modarith::{gcd, unit_group_generators};
use artlab_core::{GaloisModule, Limits, ModuleDescription, ModulePoint};
use proptest::prelude::*;

/// Elementary automorphisms of `⊕ Z/dᵢ`.
#[derive(Debug, Clone)]
enum Op {
    Scale { row: usize, unit_pick: usize },
    Shear { row: usize, col: usize, mult: i64 },
}

fn apply_op(m: &mut [Vec<i64>], d: &[u64], op: &Op) {
    let k = d.len();
    match *op {
        Op::Scale { row, unit_pick } => {
            let row = row % k;
            let units: Vec<u64> = (1..=d[row]).filter(|&u| gcd(u, d[row]) == 1).collect();
            let u = units[unit_pick % units.len()] as i64;
            for x in m[row].iter_mut() {
                *x *= u;
            }
        }
        Op::Shear { row, col, mult } => {
            let (i, j) = (row % k, col % k);
            if i == j {
                return;
            }
            // x_i += c·x_j needs (dᵢ / gcd(dᵢ, dⱼ)) | c
            let c = mult * (d[i] / gcd(d[i], d[j])) as i64;
            let src = m[j].clone();
            for (x, s) in m[i].iter_mut().zip(src) {
                *x += c * s;
            }
        }
    }
    for (row, &di) in m.iter_mut().zip(d) {
        for x in row.iter_mut() {
            *x = x.rem_euclid(di as i64);
        }
    }
}

fn op() -> impl Strategy<Value = Op> {
    prop_oneof![
        (0..3usize, 0..16usize).prop_map(|(row, unit_pick)| Op::Scale { row, unit_pick }),
        (0..3usize, 0..3usize, -3..4i64).prop_map(|(row, col, mult)| Op::Shear { row, col, mult }),
    ]
}

fn module() -> impl Strategy<Value = GaloisModule> {
    let factors = prop_oneof![
        (1..40u64).prop_map(|d| vec![d]),
        (1..13u64, 1..13u64).prop_map(|(a, b)| vec![a, b]),
        (1..6u64, 1..6u64, 1..6u64).prop_map(|(a, b, c)| vec![a, b, c]),
    ];
    (
        factors,
        prop::collection::vec(prop::collection::vec(op(), 1..4), 0..3),
    )
        .prop_filter_map("closure too large", |(factors, gens)| {
            let k = factors.len();
            let galois = gens
                .iter()
                .map(|ops| {
                    let mut m: Vec<Vec<i64>> = (0..k)
                        .map(|i| (0..k).map(|j| (i == j) as i64).collect())
                        .collect();
                    for o in ops {
                        apply_op(&mut m, &factors, o);
                    }
                    m
                })
                .collect();
            let limits = Limits {
                max_closure: 1000,
                ..Limits::default()
            };
            GaloisModule::validate(
                &ModuleDescription {
                    name: None,
                    factors,
                    galois,
                },
                &limits,
            )
            .ok()
        })
}

fn all_points(m: &GaloisModule) -> Vec<ModulePoint> {
    m.points().unwrap().collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn difference_set_agrees_with_double_loop(m in module()) {
        let mut pointwise = Vec::new();
        for p in all_points(&m) {
            let ar = m.is_almost_rational(&p);
            prop_assert_eq!(ar, m.is_almost_rational_naive(&p), "{:?}", p);
            if ar {
                pointwise.push(p);
            }
        }
        prop_assert_eq!(m.almost_rational_set().unwrap().ar_points, pointwise);
    }

    #[test]
    fn elementary_facts(m in module()) {
        let points = all_points(&m);
        let fixed: Vec<&ModulePoint> = points.iter().filter(|p| m.is_fixed(p)).collect();
        let ar = m.almost_rational_set().unwrap().ar_points;
        for q in &fixed {
            prop_assert!(ar.contains(q), "fixed point {:?} not a.r.", q);
        }
        for p in &ar {
            for g in m.closure() {
                prop_assert!(m.is_almost_rational(&m.apply(g, p)));
            }
            for q in &fixed {
                prop_assert!(m.is_almost_rational(&m.add(p, q)));
            }
        }
        for p in &points {
            if halving_exclusion(&m, p, m.closure()) {
                prop_assert!(!m.is_almost_rational(p));
            }
        }
        prop_assert!(lemma4_audit(&m).unwrap().passed());
    }

    #[test]
    fn automorphisms_are_additive(m in module(), a in 0usize..1000, b in 0usize..1000) {
        let points = all_points(&m);
        let p = &points[a % points.len()];
        let q = &points[b % points.len()];
        for g in m.closure() {
            prop_assert_eq!(m.apply(g, &m.add(p, q)), m.add(&m.apply(g, p), &m.apply(g, q)));
            for h in m.closure().iter().take(8) {
                let gh = m.compose(g, h);
                prop_assert!(m.closure().binary_search(&gh).is_ok());
                prop_assert_eq!(m.apply(&gh, p), m.apply(g, &m.apply(h, p)));
            }
        }
    }

    #[test]
    fn quotient_projection_is_equivariant(m in module(), pick in 0usize..1000) {
        // quotient by the fixed subgroup generated by one fixed point
        let points = all_points(&m);
        let fixed: Vec<ModulePoint> = points.iter().filter(|p| m.is_fixed(p)).cloned().collect();
        let s = fixed[pick % fixed.len()].clone();
        let q = quotient_by(&m, std::slice::from_ref(&s)).unwrap();
        let h = m.subgroup_generated(std::slice::from_ref(&s)).unwrap();
        prop_assert_eq!(q.module.point_count() * h.len() as u128, m.point_count());
        for p in &points {
            let image = q.project(p);
            prop_assert_eq!(image.is_zero(), h.contains(p));
            for (g, g_bar) in m.generators().iter().zip(q.module.generators()) {
                prop_assert_eq!(q.project(&m.apply(g, p)), q.module.apply(g_bar, &image));
            }
        }
    }
}

#[test]
fn cyclotomic_closed_form() {
    let l = Limits::default();
    for n in 1..=200u64 {
        let m = cyclotomic_module(n, &l).unwrap();
        let ar = m.almost_rational_set().unwrap().ar_points;
        let closed: Vec<ModulePoint> = all_points(&m)
            .into_iter()
            .filter(|p| [1, 2, 3, 6].contains(&m.order(p)))
            .collect();
        assert_eq!(ar, closed, "n={n}");
    }
}

#[test]
fn homothety_bridge() {
    let l = Limits::default();
    for m in 1..=300u64 {
        for e in 1..=3 {
            let module = homothety_module(m, e, 1, &l).unwrap();
            let has_ar_generator = module.is_almost_rational(&module.point(&[1]).unwrap());
            assert_eq!(
                has_ar_generator,
                exists_pair(m, e).unwrap().is_none(),
                "m={m} e={e}"
            );
        }
    }
}

#[test]
fn cyclotomic_images_are_full_unit_groups() {
    let l = Limits::default();
    for n in 1..=60u64 {
        let m = cyclotomic_module(n, &l).unwrap();
        let phi = (1..=n).filter(|&u| gcd(u, n) == 1).count();
        assert_eq!(m.closure().len(), phi.max(1), "n={n}");
        assert_eq!(
            m.generators().len(),
            unit_group_generators(n).unwrap().len()
        );
    }
}
