use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::module::{Automorphism, GaloisModule, Limits, ModuleDescription};
use crate::error::{Error, Result};
use crate::modarith::{pow_mod, unit_group_generators};

fn scalar_rows(dim: usize, s: u64) -> Vec<Vec<i64>> {
    (0..dim)
        .map(|i| {
            let mut row = vec![0i64; dim];
            row[i] = s as i64;
            row
        })
        .collect()
}

/// `μ_n`: `Z/n` with `(Z/n)^*` acting by multiplication, presented by the
/// generators of [`unit_group_generators`].
pub fn cyclotomic_module(n: u64, limits: &Limits) -> Result<GaloisModule> {
    let gens = unit_group_generators(n)?;
    GaloisModule::validate(
        &ModuleDescription {
            name: Some(format!("mu_{n}")),
            factors: vec![n],
            galois: gens.into_iter().map(|g| scalar_rows(1, g)).collect(),
        },
        limits,
    )
}

/// `Z/n` with trivial action.
pub fn constant_module(n: u64, limits: &Limits) -> Result<GaloisModule> {
    if n == 0 {
        return Err(Error::ZeroModulus);
    }
    GaloisModule::validate(
        &ModuleDescription {
            name: Some(format!("Z/{n}")),
            factors: vec![n],
            galois: Vec::new(),
        },
        limits,
    )
}

/// `(Z/m)^dim` with the e-th power homotheties `u^e · Id` as Galois image.
pub fn homothety_module(m: u64, e: u64, dim: usize, limits: &Limits) -> Result<GaloisModule> {
    if dim == 0 {
        return Err(Error::InvalidModule("dimension must be at least 1".into()));
    }
    let gens = unit_group_generators(m)?;
    GaloisModule::validate(
        &ModuleDescription {
            name: Some(format!("hom(m={m},e={e},dim={dim})")),
            factors: vec![m; dim],
            galois: gens
                .into_iter()
                .map(|u| scalar_rows(dim, pow_mod(u, e, m)))
                .collect(),
        },
        limits,
    )
}

/// How the generators of a direct sum are assembled from the summands'.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Pairing {
    /// Each generator of either summand acts alone, identity on the other block.
    Independent,
    /// The i-th generators of both summands act together; counts must match.
    Zip,
    /// Explicit pairs of generator indices; `None` means identity on that block.
    Explicit(Vec<(Option<usize>, Option<usize>)>),
}

fn block(
    a: &GaloisModule,
    b: &GaloisModule,
    left: Option<&Automorphism>,
    right: Option<&Automorphism>,
) -> Automorphism {
    let (ka, kb) = (a.rank(), b.rank());
    let id_a = a.identity();
    let id_b = b.identity();
    let left = left.unwrap_or(&id_a);
    let right = right.unwrap_or(&id_b);
    let k = ka + kb;
    let mut entries = vec![0u64; k * k];
    for i in 0..ka {
        for j in 0..ka {
            entries[i * k + j] = left.entry(i, j);
        }
    }
    for i in 0..kb {
        for j in 0..kb {
            entries[(ka + i) * k + ka + j] = right.entry(i, j);
        }
    }
    Automorphism::from_entries(k, entries)
}

/// `a ⊕ b` with block-diagonal generators chosen by `pairing`.
pub fn direct_sum(
    a: &GaloisModule,
    b: &GaloisModule,
    pairing: &Pairing,
    limits: &Limits,
) -> Result<GaloisModule> {
    let (ga, gb) = (a.generators(), b.generators());
    let pairs: Vec<(Option<usize>, Option<usize>)> = match pairing {
        Pairing::Independent => (0..ga.len())
            .map(|i| (Some(i), None))
            .chain((0..gb.len()).map(|j| (None, Some(j))))
            .collect(),
        Pairing::Zip => {
            if ga.len() != gb.len() {
                return Err(Error::PairingMismatch(format!(
                    "{} generators against {}",
                    ga.len(),
                    gb.len()
                )));
            }
            (0..ga.len()).map(|i| (Some(i), Some(i))).collect()
        }
        Pairing::Explicit(pairs) => pairs.clone(),
    };
    let mut gens = Vec::with_capacity(pairs.len());
    for (i, j) in pairs {
        let left = match i {
            Some(i) => Some(ga.get(i).ok_or_else(|| {
                Error::PairingMismatch(format!("left index {i} out of {}", ga.len()))
            })?),
            None => None,
        };
        let right = match j {
            Some(j) => Some(gb.get(j).ok_or_else(|| {
                Error::PairingMismatch(format!("right index {j} out of {}", gb.len()))
            })?),
            None => None,
        };
        gens.push(block(a, b, left, right));
    }
    let mut factors = a.factors().to_vec();
    factors.extend_from_slice(b.factors());
    GaloisModule::from_generators(
        Some(format!("{}+{}", a.label(), b.label())),
        factors,
        gens,
        limits,
    )
}
