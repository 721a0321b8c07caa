//! Data-parallel versions of the exhaustive scans. Work is partitioned into
//! contiguous chunks and merged in order, so output never depends on the
//! thread count.

use artlab_core::lemma2::{failure_scan, failures_in, Lemma2Report};
use artlab_core::modcurve::{
    assemble_survey, eisenstein_model, level_invariants, survey_levels, Survey, SurveyRecord,
};
use artlab_core::{ArtReport, GaloisModule, Limits, Result};
use rayon::prelude::*;

/// Below this many moduli a unit-pair scan stays on one thread.
pub const SERIAL_SCAN_LIMIT: u64 = 10_000;

pub struct Runner {
    pool: rayon::ThreadPool,
}

impl Runner {
    /// `threads = None` uses rayon's default.
    pub fn new(threads: Option<usize>) -> Self {
        let mut builder = rayon::ThreadPoolBuilder::new();
        if let Some(t) = threads {
            builder = builder.num_threads(t.max(1));
        }
        Runner {
            pool: builder.build().expect("thread pool"),
        }
    }

    pub fn threads(&self) -> usize {
        self.pool.current_num_threads()
    }

    fn chunks(&self, len: u64, min_chunk: u64) -> Vec<(u64, u64)> {
        let target = (len / (self.threads() as u64 * 8)).max(min_chunk).max(1);
        (0..len.div_ceil(target))
            .map(|i| (i * target, ((i + 1) * target).min(len)))
            .collect()
    }

    pub fn almost_rational_set(&self, module: &GaloisModule) -> Result<ArtReport> {
        let reps = module.orbit_representatives()?;
        let roots: Vec<u64> = (0..reps.len() as u64)
            .filter(|&i| reps[i as usize] == i)
            .collect();
        let chunk = (roots.len() / (self.threads() * 8)).max(64);
        let flags: Vec<bool> = self.pool.install(|| {
            roots
                .par_chunks(chunk)
                .flat_map_iter(|c| module.almost_rational_flags(c))
                .collect()
        });
        Ok(module.report_from_orbits(&reps, &roots, &flags))
    }

    pub fn failure_scan(&self, e: u64, max_m: u64) -> Result<Lemma2Report> {
        if max_m < SERIAL_SCAN_LIMIT {
            return failure_scan(e, max_m);
        }
        let chunks = self.chunks(max_m, 1000);
        let parts: Vec<Vec<u64>> = self.pool.install(|| {
            chunks
                .par_iter()
                .map(|&(a, b)| failures_in(e, a + 1..=b))
                .collect::<Result<_>>()
        })?;
        Ok(Lemma2Report {
            e,
            scanned_max: max_m,
            failures: parts.into_iter().flatten().collect(),
            witnesses: None,
        })
    }

    pub fn theorem3_check(&self, level: u64, limits: &Limits) -> Result<ArtReport> {
        let model = eisenstein_model(level, limits)?;
        Ok(self
            .almost_rational_set(&model.module)?
            .with_expected(model.expected))
    }

    pub fn survey(&self, from: u64, to: u64, limits: &Limits) -> Result<Survey> {
        let levels = survey_levels(from, to)?;
        let records: Vec<SurveyRecord> = self.pool.install(|| {
            levels
                .par_iter()
                .map(|&level| {
                    let model = eisenstein_model(level, limits)?;
                    let report = model
                        .module
                        .almost_rational_set()?
                        .with_expected(model.expected);
                    Ok(SurveyRecord {
                        invariants: level_invariants(level)?,
                        report,
                    })
                })
                .collect::<Result<_>>()
        })?;
        Ok(assemble_survey(records))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use artlab_core::galmod::cyclotomic_module;
    use artlab_core::modcurve::theorem3_check;

    #[test]
    fn parallel_matches_serial() {
        let l = Limits::default();
        let m = cyclotomic_module(5000, &l).unwrap();
        let serial = m.almost_rational_set().unwrap();
        for t in [1, 3, 8] {
            assert_eq!(
                Runner::new(Some(t)).almost_rational_set(&m).unwrap(),
                serial
            );
        }
        let r = Runner::new(Some(4));
        assert_eq!(
            r.theorem3_check(263, &l).unwrap(),
            theorem3_check(263, &l).unwrap()
        );
        assert_eq!(
            r.failure_scan(2, 20_000).unwrap(),
            failure_scan(2, 20_000).unwrap()
        );
    }
}
