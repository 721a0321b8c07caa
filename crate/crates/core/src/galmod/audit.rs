use alloc::vec::Vec;

use super::module::{Automorphism, GaloisModule, ModulePoint};
use crate::error::Result;

/// An almost-rational point moved by a two-step unipotent automorphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnipotentViolation {
    pub automorphism: Automorphism,
    pub point: ModulePoint,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lemma4Audit {
    /// Closure elements with `(σ − 1)² = 0`, identity included.
    pub unipotent: Vec<Automorphism>,
    pub ar_count: usize,
    pub violations: Vec<UnipotentViolation>,
}

impl Lemma4Audit {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks that every almost-rational point is fixed by every two-step
/// unipotent element of the closure.
///
/// For such `σ`, `σ²P − 2σP + P = 0` rearranges to `σP − P = P − σ⁻¹P`, so
/// almost rationality forces `σP = P`.
pub fn lemma4_audit(module: &GaloisModule) -> Result<Lemma4Audit> {
    let ar = module.almost_rational_set()?.ar_points;
    Ok(lemma4_audit_with(module, &ar))
}

/// [`lemma4_audit`] against an almost-rational set computed elsewhere.
pub fn lemma4_audit_with(module: &GaloisModule, ar: &[ModulePoint]) -> Lemma4Audit {
    let id = module.identity();
    let unipotent: Vec<Automorphism> = module
        .closure()
        .iter()
        .filter(|s| {
            let n = module.subtract(s, &id);
            module.is_zero_map(&module.compose(&n, &n))
        })
        .cloned()
        .collect();
    let mut violations = Vec::new();
    for s in unipotent.iter().filter(|s| **s != id) {
        for p in ar {
            if module.apply(s, p) != *p {
                violations.push(UnipotentViolation {
                    automorphism: s.clone(),
                    point: p.clone(),
                });
            }
        }
    }
    Lemma4Audit {
        unipotent,
        ar_count: ar.len(),
        violations,
    }
}

/// True when some `σ` in `subgroup` fixes `2p` but moves `p`, which certifies
/// that `p` is not almost rational (`σ(p) − p` is then 2-torsion and equals
/// `p − σ(p)`).
pub fn halving_exclusion(
    module: &GaloisModule,
    p: &ModulePoint,
    subgroup: &[Automorphism],
) -> bool {
    let two_p = module.scale(2, p);
    subgroup
        .iter()
        .any(|s| module.apply(s, &two_p) == two_p && module.apply(s, p) != *p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galmod::{constant_module, cyclotomic_module, Limits, ModuleDescription};
    use alloc::vec;

    #[test]
    fn shear_on_z9_squared() {
        let m = GaloisModule::validate(
            &ModuleDescription {
                name: None,
                factors: vec![9, 9],
                galois: vec![vec![vec![1, 3], vec![0, 1]]],
            },
            &Limits::default(),
        )
        .unwrap();
        let audit = lemma4_audit(&m).unwrap();
        assert!(audit.passed());
        // σ, σ², and the identity are all two-step unipotent
        assert_eq!(audit.unipotent.len(), 3);
        let fixed: Vec<ModulePoint> = m.points().unwrap().filter(|p| m.is_fixed(p)).collect();
        let ar = m.almost_rational_set().unwrap().ar_points;
        assert_eq!(ar, fixed);
    }

    #[test]
    fn constant_module_passes_vacuously() {
        let m = constant_module(10, &Limits::default()).unwrap();
        let audit = lemma4_audit(&m).unwrap();
        assert_eq!(audit.unipotent, vec![m.identity()]);
        assert!(audit.passed());
        assert_eq!(audit.ar_count, 10);
    }

    #[test]
    fn mu8_multiplication_by_five_is_unipotent() {
        let m = cyclotomic_module(8, &Limits::default()).unwrap();
        let audit = lemma4_audit(&m).unwrap();
        let scalars: Vec<u64> = audit.unipotent.iter().map(|a| a.entry(0, 0)).collect();
        assert_eq!(scalars, [1, 5]);
        assert!(audit.passed());
        let ar: Vec<u64> = m
            .almost_rational_set()
            .unwrap()
            .ar_points
            .iter()
            .map(|p| p.coords()[0])
            .collect();
        assert_eq!(ar, [0, 4]);
    }

    #[test]
    fn halving_examples() {
        let l = Limits::default();
        let mu8 = cyclotomic_module(8, &l).unwrap();
        let five = mu8.automorphism(&[vec![5]]).unwrap();
        let p = mu8.point(&[1]).unwrap();
        assert!(halving_exclusion(&mu8, &p, &[five]));
        assert!(!mu8.is_almost_rational(&p));

        let z5 = constant_module(5, &l).unwrap();
        assert!(!halving_exclusion(
            &z5,
            &z5.point(&[2]).unwrap(),
            z5.closure()
        ));

        let mu3 = cyclotomic_module(3, &l).unwrap();
        let two = mu3.automorphism(&[vec![2]]).unwrap();
        assert!(!halving_exclusion(&mu3, &mu3.point(&[1]).unwrap(), &[two]));
    }
}
