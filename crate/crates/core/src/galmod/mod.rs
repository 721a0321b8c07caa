//! Finite Galois modules and almost-rational points.
//!
//! A point `p` is almost rational when `σ(p) − p = p − τ(p)` for closure
//! elements `σ, τ` forces `σ(p) = τ(p) = p`.

mod audit;
mod constructors;
mod module;
mod predicate;
mod quotient;

pub use audit::{
    halving_exclusion, lemma4_audit, lemma4_audit_with, Lemma4Audit, UnipotentViolation,
};
pub use constructors::{constant_module, cyclotomic_module, direct_sum, homothety_module, Pairing};
pub use module::{Automorphism, GaloisModule, Limits, ModuleDescription, ModulePoint};
pub use predicate::{ArtReport, Verdict};
pub use quotient::{quotient_by, Quotient};

use crate::error::Result;

/// Shorthand for [`GaloisModule::validate`].
pub fn validate_module(desc: &ModuleDescription, limits: &Limits) -> Result<GaloisModule> {
    GaloisModule::validate(desc, limits)
}
