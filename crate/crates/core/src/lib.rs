//! Almost-rational torsion points on explicitly presented finite Galois modules.
//!
//! The crate is `no_std` (it needs `alloc`) and contains only pure computation:
//!
//! * [`modarith`]: factorization, unit groups mod `m`, e-th power subgroups, CRT,
//!   Jacobi symbols.
//! * [`galmod`]: finite abelian groups `⊕ Z/dᵢ` with a finite group of matrix
//!   automorphisms standing in for the Galois image, the almost-rationality
//!   predicate, module constructors, quotients and the unipotent/halving audits.
//! * [`lemma2`]: the unit-pair engine (`x + y = 2` among nontrivial e-th power
//!   units mod `m`) and Fermat point counts over prime fields.
//! * [`modcurve`]: invariants of prime levels `N` and the Galois-module models of
//!   the Eisenstein torsion `C + Σ` of `J₀(N)`.
//!
//! IO, timing, parallel scans and the command line live in the `artlab` crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

mod error;
pub mod galmod;
pub mod lemma2;
pub mod modarith;
pub mod modcurve;

pub use error::{Error, ErrorKind, Result};
pub use galmod::{
    ArtReport, Automorphism, GaloisModule, Limits, ModuleDescription, ModulePoint, Verdict,
};
