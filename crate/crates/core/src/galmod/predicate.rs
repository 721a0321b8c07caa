use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::Range;
use core::time::Duration;

use super::module::{GaloisModule, ModulePoint};
use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    NotChecked,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::NotChecked => "not-checked",
        }
    }
}

/// The almost-rational points of a module, optionally compared with an
/// expected set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArtReport {
    pub name: String,
    pub total_points: u64,
    pub ar_points: Vec<ModulePoint>,
    pub expected: Option<Vec<ModulePoint>>,
    pub verdict: Verdict,
    /// Filled in by callers that time the computation.
    pub elapsed: Option<Duration>,
}

impl ArtReport {
    pub fn new(name: String, total_points: u64, ar_points: Vec<ModulePoint>) -> Self {
        ArtReport {
            name,
            total_points,
            ar_points,
            expected: None,
            verdict: Verdict::NotChecked,
            elapsed: None,
        }
    }

    /// Attaches the expected set (sorted) and sets the verdict.
    pub fn with_expected(mut self, mut expected: Vec<ModulePoint>) -> Self {
        expected.sort();
        expected.dedup();
        self.verdict = if expected == self.ar_points {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        self.expected = Some(expected);
        self
    }
}

/// Reusable buffers for the difference-set test.
struct Scratch {
    image: Vec<u64>,
    diffs: Vec<(u64, u64)>,
    seen: Vec<u64>,
}

impl GaloisModule {
    /// Difference-set form of the predicate: with `D = {σ(p) − p}` over the
    /// closure, `p` is almost rational iff `D ∩ (−D) ⊆ {0}`.
    pub fn is_almost_rational(&self, p: &ModulePoint) -> bool {
        let mut scratch = self.scratch();
        self.ar_with(&p.0, &mut scratch)
    }

    fn scratch(&self) -> Scratch {
        Scratch {
            image: vec![0; self.rank()],
            diffs: Vec::with_capacity(self.closure().len()),
            seen: Vec::with_capacity(self.closure().len()),
        }
    }

    fn ar_with(&self, c: &[u64], s: &mut Scratch) -> bool {
        let d = self.factors();
        s.diffs.clear();
        for sigma in self.closure() {
            self.apply_into(sigma, c, &mut s.image);
            let mut pos = 0u64;
            let mut neg = 0u64;
            let mut stride = 1u64;
            for i in (0..d.len()).rev() {
                let diff = (s.image[i] + d[i] - c[i]) % d[i];
                pos += diff * stride;
                neg += ((d[i] - diff) % d[i]) * stride;
                stride *= d[i];
            }
            if pos != 0 {
                s.diffs.push((pos, neg));
            }
        }
        s.seen.clear();
        s.seen.extend(s.diffs.iter().map(|&(pos, _)| pos));
        s.seen.sort_unstable();
        !s.diffs
            .iter()
            .any(|&(_, neg)| s.seen.binary_search(&neg).is_ok())
    }

    /// The literal two-quantifier definition, `O(|closure|²)`; kept as an oracle.
    pub fn is_almost_rational_naive(&self, p: &ModulePoint) -> bool {
        let images: Vec<ModulePoint> = self.closure().iter().map(|s| self.apply(s, p)).collect();
        for sp in &images {
            let lhs = self.sub(sp, p);
            for tp in &images {
                let rhs = self.sub(p, tp);
                if lhs == rhs && !(sp == p && tp == p) {
                    return false;
                }
            }
        }
        true
    }

    /// Indices (in point-index order) of almost-rational points whose index
    /// lies in `range`. Used to partition enumeration across workers.
    pub fn almost_rational_indices(&self, range: Range<u64>) -> Vec<u64> {
        let mut scratch = self.scratch();
        range
            .filter(|&i| {
                let p = self.point_at(i);
                self.ar_with(&p.0, &mut scratch)
            })
            .collect()
    }

    /// For every point index, the index of a fixed representative of its
    /// Galois orbit. Almost rationality is constant on orbits, so the
    /// predicate only has to run on representatives.
    pub fn orbit_representatives(&self) -> Result<Vec<u64>> {
        let n = self.checked_point_count()?;
        let mut parent: Vec<u64> = (0..n).collect();
        fn find(parent: &mut [u64], mut i: u64) -> u64 {
            while parent[i as usize] != i {
                let up = parent[parent[i as usize] as usize];
                parent[i as usize] = up;
                i = up;
            }
            i
        }
        let mut image = vec![0; self.rank()];
        for i in 0..n {
            let p = self.point_at(i);
            for g in self.generators() {
                self.apply_into(g, &p.0, &mut image);
                let (a, b) = (
                    find(&mut parent, i),
                    find(&mut parent, self.index_of_coords(&image)),
                );
                if a != b {
                    // the smaller index becomes the root
                    parent[a.max(b) as usize] = a.min(b);
                }
            }
        }
        for i in 0..n {
            parent[i as usize] = find(&mut parent, i);
        }
        Ok(parent)
    }

    /// The predicate at each of the given point indices.
    pub fn almost_rational_flags(&self, indices: &[u64]) -> Vec<bool> {
        let mut scratch = self.scratch();
        indices
            .iter()
            .map(|&i| self.ar_with(&self.point_at(i).0, &mut scratch))
            .collect()
    }

    /// Exhaustive almost-rational set, single-threaded.
    pub fn almost_rational_set(&self) -> Result<ArtReport> {
        let reps = self.orbit_representatives()?;
        let roots: Vec<u64> = (0..reps.len() as u64)
            .filter(|&i| reps[i as usize] == i)
            .collect();
        let flags = self.almost_rational_flags(&roots);
        Ok(self.report_from_orbits(&reps, &roots, &flags))
    }

    /// Assembles the report from per-representative verdicts.
    pub fn report_from_orbits(&self, reps: &[u64], roots: &[u64], flags: &[bool]) -> ArtReport {
        let mut ar = vec![false; reps.len()];
        for (&r, &f) in roots.iter().zip(flags) {
            ar[r as usize] = f;
        }
        let points = (0..reps.len())
            .filter(|&i| ar[reps[i] as usize])
            .map(|i| self.point_at(i as u64))
            .collect();
        ArtReport::new(self.label(), reps.len() as u64, points)
    }
}
