use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::modarith::{gcd, reduce_signed};

/// Resource caps applied while materializing closures and point sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_closure: usize,
    pub max_points: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_closure: 1_000_000,
            max_points: 10_000_000,
        }
    }
}

/// Unvalidated module description, as read from a file or built by hand.
///
/// `galois[g][i][j]` is entry `A_ij` of generator `g`; matrices act on column
/// vectors of coordinates.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ModuleDescription {
    pub name: Option<String>,
    pub factors: Vec<u64>,
    pub galois: Vec<Vec<Vec<i64>>>,
}

/// A point of `⊕ Z/dᵢ`, coordinates reduced into `[0, dᵢ)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ModulePoint(pub(crate) Vec<u64>);

impl ModulePoint {
    pub fn coords(&self) -> &[u64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }
}

/// A group endomorphism of `⊕ Z/dᵢ` given by a `k × k` matrix, row-major,
/// with row `i` reduced mod `dᵢ`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Automorphism {
    dim: usize,
    entries: Vec<u64>,
}

impl Automorphism {
    pub(crate) fn from_entries(dim: usize, entries: Vec<u64>) -> Self {
        debug_assert_eq!(entries.len(), dim * dim);
        Automorphism { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn entry(&self, row: usize, col: usize) -> u64 {
        self.entries[row * self.dim + col]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u64]> {
        self.entries.chunks(self.dim)
    }
}

/// A finite abelian group `⊕ Z/dᵢ` with a finite group of automorphisms
/// playing the role of the Galois image.
///
/// Built only through [`GaloisModule::validate`] (or the constructors in this
/// module family), so the generators are always well defined and invertible,
/// and the closure is always materialized.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaloisModule {
    name: Option<String>,
    factors: Vec<u64>,
    strides: Vec<u64>,
    point_count: u128,
    generators: Vec<Automorphism>,
    closure: Vec<Automorphism>,
    limits: Limits,
}

impl GaloisModule {
    /// Checks a description and computes the closure of its generators.
    pub fn validate(desc: &ModuleDescription, limits: &Limits) -> Result<Self> {
        let k = desc.factors.len();
        if k == 0 {
            return Err(Error::InvalidModule("factors must be nonempty".into()));
        }
        if let Some(i) = desc.factors.iter().position(|&d| d == 0) {
            return Err(Error::InvalidModule(format!("factor {i} is zero")));
        }
        let d = &desc.factors;
        let generators = desc
            .galois
            .iter()
            .enumerate()
            .map(|(g, rows)| reduce_matrix(d, rows, g))
            .collect::<Result<Vec<_>>>()?;
        Self::from_generators(desc.name.clone(), d.clone(), generators, limits)
    }

    /// Builds a module from generators already known to be well defined.
    pub(crate) fn from_generators(
        name: Option<String>,
        factors: Vec<u64>,
        generators: Vec<Automorphism>,
        limits: &Limits,
    ) -> Result<Self> {
        let k = factors.len();
        let mut strides = vec![1u64; k];
        let mut count: u128 = 1;
        for i in (0..k).rev() {
            strides[i] = count.min(u64::MAX as u128) as u64;
            count = count.saturating_mul(factors[i] as u128);
        }
        let mut module = GaloisModule {
            name,
            factors,
            strides,
            point_count: count,
            generators,
            closure: Vec::new(),
            limits: *limits,
        };
        module.closure = module.compute_closure()?;
        let id = module.identity();
        for (g, gen) in module.generators.iter().enumerate() {
            if !module.closure.iter().any(|h| module.compose(gen, h) == id) {
                return Err(Error::NonInvertibleGenerator(g));
            }
        }
        Ok(module)
    }

    fn compute_closure(&self) -> Result<Vec<Automorphism>> {
        let cap = self.limits.max_closure;
        let mut seen = BTreeSet::new();
        let id = self.identity();
        let mut frontier = vec![id.clone()];
        seen.insert(id);
        while let Some(a) = frontier.pop() {
            for g in &self.generators {
                let next = self.compose(g, &a);
                if !seen.contains(&next) {
                    if seen.len() >= cap {
                        return Err(Error::ClosureCap { cap });
                    }
                    seen.insert(next.clone());
                    frontier.push(next);
                }
            }
        }
        Ok(seen.into_iter().collect())
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn label(&self) -> String {
        match &self.name {
            Some(n) => n.clone(),
            None => {
                let parts: Vec<String> = self.factors.iter().map(|d| format!("Z/{d}")).collect();
                parts.join("+")
            }
        }
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn limits(&self) -> &Limits {
        &self.limits
    }

    pub fn point_count(&self) -> u128 {
        self.point_count
    }

    pub fn generators(&self) -> &[Automorphism] {
        &self.generators
    }

    /// All automorphisms generated by the generators, sorted by entries.
    pub fn closure(&self) -> &[Automorphism] {
        &self.closure
    }

    pub fn identity(&self) -> Automorphism {
        let k = self.rank();
        let mut entries = vec![0; k * k];
        for i in 0..k {
            entries[i * k + i] = 1 % self.factors[i];
        }
        Automorphism { dim: k, entries }
    }

    /// Builds an automorphism from integer entries, checking well-definedness.
    /// Invertibility is not checked.
    pub fn automorphism(&self, rows: &[Vec<i64>]) -> Result<Automorphism> {
        reduce_matrix(&self.factors, rows, 0)
    }

    /// `a ∘ b`.
    pub fn compose(&self, a: &Automorphism, b: &Automorphism) -> Automorphism {
        let k = self.rank();
        let mut entries = vec![0u64; k * k];
        for i in 0..k {
            let d = self.factors[i] as u128;
            for j in 0..k {
                let mut acc: u128 = 0;
                for l in 0..k {
                    acc += a.entry(i, l) as u128 * b.entry(l, j) as u128;
                }
                entries[i * k + j] = (acc % d) as u64;
            }
        }
        Automorphism { dim: k, entries }
    }

    /// `a − b` as an endomorphism.
    pub fn subtract(&self, a: &Automorphism, b: &Automorphism) -> Automorphism {
        let k = self.rank();
        let entries = (0..k * k)
            .map(|idx| {
                let d = self.factors[idx / k];
                (a.entries[idx] + d - b.entries[idx]) % d
            })
            .collect();
        Automorphism { dim: k, entries }
    }

    pub fn is_zero_map(&self, a: &Automorphism) -> bool {
        a.entries.iter().all(|&x| x == 0)
    }

    /// Coordinate `i` of the image is `Σ_j A_ij c_j mod dᵢ`.
    pub fn apply(&self, a: &Automorphism, p: &ModulePoint) -> ModulePoint {
        let mut out = vec![0; self.rank()];
        self.apply_into(a, &p.0, &mut out);
        ModulePoint(out)
    }

    #[inline]
    pub(crate) fn apply_into(&self, a: &Automorphism, c: &[u64], out: &mut [u64]) {
        let k = self.rank();
        for (i, o) in out.iter_mut().enumerate().take(k) {
            let row = &a.entries[i * k..(i + 1) * k];
            let acc: u128 = row
                .iter()
                .zip(c)
                .map(|(&x, &y)| x as u128 * y as u128)
                .sum();
            *o = (acc % self.factors[i] as u128) as u64;
        }
    }

    /// Validates and reduces a coordinate tuple.
    pub fn point(&self, coords: &[i64]) -> Result<ModulePoint> {
        if coords.len() != self.rank() {
            return Err(Error::InvalidModule(format!(
                "point has {} coordinates, module has rank {}",
                coords.len(),
                self.rank()
            )));
        }
        Ok(ModulePoint(
            coords
                .iter()
                .zip(&self.factors)
                .map(|(&c, &d)| reduce_signed(c as i128, d))
                .collect(),
        ))
    }

    pub fn zero(&self) -> ModulePoint {
        ModulePoint(vec![0; self.rank()])
    }

    pub fn add(&self, p: &ModulePoint, q: &ModulePoint) -> ModulePoint {
        ModulePoint(
            p.0.iter()
                .zip(&q.0)
                .zip(&self.factors)
                .map(|((&a, &b), &d)| ((a as u128 + b as u128) % d as u128) as u64)
                .collect(),
        )
    }

    pub fn neg(&self, p: &ModulePoint) -> ModulePoint {
        ModulePoint(
            p.0.iter()
                .zip(&self.factors)
                .map(|(&a, &d)| (d - a) % d)
                .collect(),
        )
    }

    pub fn sub(&self, p: &ModulePoint, q: &ModulePoint) -> ModulePoint {
        self.add(p, &self.neg(q))
    }

    pub fn scale(&self, s: u64, p: &ModulePoint) -> ModulePoint {
        ModulePoint(
            p.0.iter()
                .zip(&self.factors)
                .map(|(&a, &d)| ((a as u128 * s as u128) % d as u128) as u64)
                .collect(),
        )
    }

    /// Additive order of `p`.
    pub fn order(&self, p: &ModulePoint) -> u64 {
        p.0.iter().zip(&self.factors).fold(1u64, |acc, (&c, &d)| {
            let o = d / gcd(c, d);
            acc / gcd(acc, o) * o
        })
    }

    /// Mixed-radix index; the first coordinate is most significant, so index
    /// order is lexicographic order.
    pub fn index_of(&self, p: &ModulePoint) -> u64 {
        self.index_of_coords(&p.0)
    }

    #[inline]
    pub(crate) fn index_of_coords(&self, c: &[u64]) -> u64 {
        c.iter().zip(&self.strides).map(|(&x, &s)| x * s).sum()
    }

    pub fn point_at(&self, mut index: u64) -> ModulePoint {
        let mut out = vec![0; self.rank()];
        for (i, o) in out.iter_mut().enumerate() {
            *o = index / self.strides[i];
            index %= self.strides[i];
        }
        ModulePoint(out)
    }

    /// Point count as `u64`, or a resource error above the point cap.
    pub fn checked_point_count(&self) -> Result<u64> {
        let cap = self.limits.max_points;
        if self.point_count > cap as u128 {
            return Err(Error::PointCap {
                count: self.point_count,
                cap,
            });
        }
        Ok(self.point_count as u64)
    }

    pub fn points(&self) -> Result<impl Iterator<Item = ModulePoint> + '_> {
        let n = self.checked_point_count()?;
        Ok((0..n).map(move |i| self.point_at(i)))
    }

    /// Whether every closure element fixes `p`.
    pub fn is_fixed(&self, p: &ModulePoint) -> bool {
        self.generators.iter().all(|g| self.apply(g, p) == *p)
    }

    /// The subgroup generated by `gens`, sorted.
    pub fn subgroup_generated(&self, gens: &[ModulePoint]) -> Result<Vec<ModulePoint>> {
        self.checked_point_count()?;
        let mut seen = BTreeSet::new();
        let zero = self.zero();
        let mut frontier = vec![zero.clone()];
        seen.insert(zero);
        while let Some(p) = frontier.pop() {
            for g in gens {
                let q = self.add(&p, g);
                if seen.insert(q.clone()) {
                    frontier.push(q);
                }
            }
        }
        Ok(seen.into_iter().collect())
    }
}

/// Checks `(dᵢ / gcd(dᵢ, dⱼ)) | A_ij` for every entry and reduces row `i` mod `dᵢ`.
fn reduce_matrix(d: &[u64], rows: &[Vec<i64>], generator: usize) -> Result<Automorphism> {
    let k = d.len();
    if rows.len() != k || rows.iter().any(|r| r.len() != k) {
        return Err(Error::InvalidModule(format!(
            "generator {generator} is not a {k}x{k} matrix"
        )));
    }
    let mut entries = Vec::with_capacity(k * k);
    for (i, row) in rows.iter().enumerate() {
        for (j, &a) in row.iter().enumerate() {
            let divisor = d[i] / gcd(d[i], d[j]);
            if a.rem_euclid(divisor as i64) != 0 {
                return Err(Error::IllDefinedEntry {
                    generator,
                    row: i + 1,
                    col: j + 1,
                    value: a,
                    divisor,
                });
            }
            entries.push(reduce_signed(a as i128, d[i]));
        }
    }
    Ok(Automorphism { dim: k, entries })
}
