//! Prime levels `N`: Eisenstein number, genus of `X₀(N)`, Ogg's hyperelliptic
//! table, and Galois-module models of `C + Σ ⊂ J₀(N)`.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::galmod::{
    constant_module, cyclotomic_module, direct_sum, quotient_by, ArtReport, GaloisModule, Limits,
    ModulePoint, Pairing, Verdict,
};
use crate::modarith::{gcd, is_prime, jacobi_symbol, primes_in};

/// Prime levels with hyperelliptic `X₀(N)` (Ogg).
pub const OGG_HYPERELLIPTIC: [u64; 8] = [23, 29, 31, 37, 41, 47, 59, 71];

/// The one hyperelliptic level whose hyperelliptic involution is not `w_N`.
pub const HYPERELLIPTIC_EXCEPTION: u64 = 37;

pub const MIN_LEVEL: u64 = 23;

fn require_prime(n: u64) -> Result<()> {
    if is_prime(n) {
        Ok(())
    } else {
        Err(Error::NotPrime(n))
    }
}

/// Numerator of `(N − 1)/12`: the order of the cuspidal and Shimura subgroups.
pub fn eisenstein_number(level: u64) -> Result<u64> {
    require_prime(level)?;
    Ok((level - 1) / gcd(level - 1, 12))
}

/// Genus of `X₀(N)` for prime `N`: `(N + 1 − 3ν₂ − 4ν₃)/12` with two cusps.
pub fn genus_x0(level: u64) -> Result<u64> {
    require_prime(level)?;
    let (nu2, nu3) = match level {
        2 => (1, 0),
        3 => (0, 1),
        n => (
            1 + jacobi_symbol(-1, n)? as i64,
            1 + jacobi_symbol(-3, n)? as i64,
        ),
    };
    let twelve_g = level as i64 + 1 - 3 * nu2 - 4 * nu3;
    debug_assert!(twelve_g >= 0 && twelve_g % 12 == 0);
    Ok((twelve_g / 12) as u64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LevelInvariants {
    pub level: u64,
    pub n: u64,
    pub genus: u64,
    pub hyperelliptic: bool,
    /// `X₀(N)⁺` has genus zero.
    pub plus_quotient_genus_zero: bool,
    pub level_mod_9: u64,
    pub three_divides_n: bool,
}

pub fn level_invariants(level: u64) -> Result<LevelInvariants> {
    let n = eisenstein_number(level)?;
    let hyperelliptic = OGG_HYPERELLIPTIC.contains(&level);
    Ok(LevelInvariants {
        level,
        n,
        genus: genus_x0(level)?,
        hyperelliptic,
        plus_quotient_genus_zero: hyperelliptic && level != HYPERELLIPTIC_EXCEPTION,
        level_mod_9: level % 9,
        three_divides_n: n % 3 == 0,
    })
}

/// `Z/n ⊕ μ_n` (n odd) or its quotient by `⟨(n/2, n/2)⟩` (n even), with the
/// images of the generators of `C` and `Σ`.
#[derive(Debug, Clone)]
pub struct EisensteinModel {
    pub level: u64,
    pub n: u64,
    pub module: GaloisModule,
    pub c_generator: ModulePoint,
    pub sigma_generator: ModulePoint,
    /// `⟨C, Σ[3]⟩`, sorted.
    pub expected: Vec<ModulePoint>,
}

impl EisensteinModel {
    pub fn is_fused(&self) -> bool {
        self.n.is_multiple_of(2)
    }

    pub fn c_image(&self) -> Result<Vec<ModulePoint>> {
        self.module
            .subgroup_generated(core::slice::from_ref(&self.c_generator))
    }

    pub fn sigma_image(&self) -> Result<Vec<ModulePoint>> {
        self.module
            .subgroup_generated(core::slice::from_ref(&self.sigma_generator))
    }
}

pub fn eisenstein_model(level: u64, limits: &Limits) -> Result<EisensteinModel> {
    let n = eisenstein_number(level)?;
    if level < MIN_LEVEL {
        return Err(Error::LevelTooSmall(level));
    }
    // diag(1, g) for g in the unit-group generators
    let sum = direct_sum(
        &constant_module(n, limits)?,
        &cyclotomic_module(n, limits)?,
        &Pairing::Independent,
        limits,
    )?;
    let c = sum.point(&[1, 0])?;
    let s = sum.point(&[0, 1])?;
    let (module, c_generator, sigma_generator) = if n % 2 == 0 {
        let half = (n / 2) as i64;
        let q = quotient_by(&sum, &[sum.point(&[half, half])?])?;
        let (c, s) = (q.project(&c), q.project(&s));
        (q.module, c, s)
    } else {
        (sum, c, s)
    };
    let module = module.with_name(alloc::format!("J0({level})[C+Sigma]"));
    let sigma3 = module.scale(n / gcd(n, 3), &sigma_generator);
    let expected = module.subgroup_generated(&[c_generator.clone(), sigma3])?;
    Ok(EisensteinModel {
        level,
        n,
        module,
        c_generator,
        sigma_generator,
        expected,
    })
}

/// Compares the exhaustive almost-rational set of the model with `⟨C, Σ[3]⟩`.
pub fn theorem3_check(level: u64, limits: &Limits) -> Result<ArtReport> {
    let model = eisenstein_model(level, limits)?;
    Ok(model
        .module
        .almost_rational_set()?
        .with_expected(model.expected))
}

#[derive(Debug, Clone)]
pub struct SurveyRecord {
    pub invariants: LevelInvariants,
    pub report: ArtReport,
}

#[derive(Debug, Clone)]
pub struct Survey {
    pub records: Vec<SurveyRecord>,
    /// Levels with genus-zero `X₀(N)⁺` where `3 | n`; must be empty.
    pub side_condition_failures: Vec<u64>,
}

impl Survey {
    pub fn passed(&self) -> usize {
        self.records
            .iter()
            .filter(|r| r.report.verdict == Verdict::Pass)
            .count()
    }

    pub fn failed(&self) -> usize {
        self.records.len() - self.passed()
    }

    pub fn all_pass(&self) -> bool {
        self.failed() == 0 && self.side_condition_failures.is_empty()
    }
}

/// Prime levels in `[from, to]`.
pub fn survey_levels(from: u64, to: u64) -> Result<Vec<u64>> {
    if from < MIN_LEVEL {
        return Err(Error::LevelTooSmall(from));
    }
    Ok(primes_in(from, to))
}

/// Assembles a survey from per-level records (which callers may compute in
/// parallel), checking the genus-zero side condition.
pub fn assemble_survey(mut records: Vec<SurveyRecord>) -> Survey {
    records.sort_by_key(|r| r.invariants.level);
    let side_condition_failures = records
        .iter()
        .filter(|r| r.invariants.plus_quotient_genus_zero && r.invariants.three_divides_n)
        .map(|r| r.invariants.level)
        .collect();
    Survey {
        records,
        side_condition_failures,
    }
}

pub fn survey_record(level: u64, limits: &Limits) -> Result<SurveyRecord> {
    Ok(SurveyRecord {
        invariants: level_invariants(level)?,
        report: theorem3_check(level, limits)?,
    })
}

pub fn survey(from: u64, to: u64, limits: &Limits) -> Result<Survey> {
    let records = survey_levels(from, to)?
        .into_iter()
        .map(|level| survey_record(level, limits))
        .collect::<Result<Vec<_>>>()?;
    Ok(assemble_survey(records))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eisenstein_number_examples() {
        assert_eq!(eisenstein_number(23).unwrap(), 11);
        assert_eq!(eisenstein_number(37).unwrap(), 3);
        assert_eq!(eisenstein_number(73).unwrap(), 6);
        assert_eq!(eisenstein_number(24), Err(Error::NotPrime(24)));
    }

    #[test]
    fn genus_examples() {
        assert_eq!(genus_x0(23).unwrap(), 2);
        assert_eq!(genus_x0(41).unwrap(), 3);
        assert_eq!(genus_x0(71).unwrap(), 6);
        assert_eq!(genus_x0(2).unwrap(), 0);
        assert_eq!(genus_x0(3).unwrap(), 0);
        assert_eq!(genus_x0(11).unwrap(), 1);
        let ogg: Vec<u64> = OGG_HYPERELLIPTIC
            .iter()
            .map(|&n| genus_x0(n).unwrap())
            .collect();
        assert_eq!(ogg, [2, 2, 2, 2, 3, 4, 5, 6]);
    }

    #[test]
    fn level_invariant_examples() {
        assert_eq!(
            level_invariants(37).unwrap(),
            LevelInvariants {
                level: 37,
                n: 3,
                genus: 2,
                hyperelliptic: true,
                plus_quotient_genus_zero: false,
                level_mod_9: 1,
                three_divides_n: true,
            }
        );
        assert_eq!(
            level_invariants(23).unwrap(),
            LevelInvariants {
                level: 23,
                n: 11,
                genus: 2,
                hyperelliptic: true,
                plus_quotient_genus_zero: true,
                level_mod_9: 5,
                three_divides_n: false,
            }
        );
        let l = level_invariants(53).unwrap();
        assert_eq!((l.n, l.genus, l.hyperelliptic), (13, 4, false));
        assert_eq!(level_invariants(24), Err(Error::NotPrime(24)));
    }

    #[test]
    fn model_examples() {
        let l = Limits::default();
        let m = eisenstein_model(23, &l).unwrap();
        assert_eq!(m.module.point_count(), 121);
        assert_eq!(m.module.closure().len(), 10);
        assert!(!m.is_fused());
        assert_eq!(eisenstein_model(73, &l).unwrap().module.point_count(), 18);
        assert_eq!(eisenstein_model(41, &l).unwrap().module.point_count(), 50);
        assert_eq!(
            eisenstein_model(19, &l).unwrap_err(),
            Error::LevelTooSmall(19)
        );
    }

    #[test]
    fn theorem3_examples() {
        let l = Limits::default();
        for (level, count) in [(23, 11), (37, 9), (41, 10), (73, 18)] {
            let r = theorem3_check(level, &l).unwrap();
            assert_eq!(r.ar_points.len(), count, "N={level}");
            assert_eq!(r.verdict, Verdict::Pass, "N={level}");
        }
    }

    #[test]
    fn survey_examples() {
        let l = Limits::default();
        let s = survey(23, 100, &l).unwrap();
        assert_eq!(s.records.len(), 17);
        assert!(s.all_pass());
        assert_eq!(survey(23, 23, &l).unwrap().records.len(), 1);
        assert!(survey(23, 22, &l).unwrap().records.is_empty());
        assert_eq!(survey(5, 30, &l).unwrap_err(), Error::LevelTooSmall(5));
    }
}
