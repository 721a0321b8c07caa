use alloc::string::String;

use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Coarse classification used by front ends to pick exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    InvalidInput,
    ResourceExhausted,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus must be at least 1")]
    ZeroModulus,
    #[error("{value} exceeds the supported bound {bound}")]
    OutOfRange { value: u64, bound: u64 },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("moduli {a} and {b} are not coprime")]
    NonCoprimeModuli { a: u64, b: u64 },
    #[error("Jacobi symbol needs an odd modulus, got {0}")]
    EvenJacobiModulus(u64),
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("generator {generator}: entry ({row},{col}) = {value} must be divisible by {divisor}")]
    IllDefinedEntry {
        generator: usize,
        row: usize,
        col: usize,
        value: i64,
        divisor: u64,
    },
    #[error("generator {0} is not invertible")]
    NonInvertibleGenerator(usize),
    #[error(
        "subgroup is not Galois-stable: automorphism {automorphism} sends a generator outside it"
    )]
    UnstableSubgroup { automorphism: usize },
    #[error("generator pairing mismatch: {0}")]
    PairingMismatch(String),
    #[error("level {0} is below 23")]
    LevelTooSmall(u64),
    #[error("Galois closure exceeds the cap of {cap} automorphisms")]
    ClosureCap { cap: usize },
    #[error("module has {count} points, above the cap of {cap}")]
    PointCap { count: u128, cap: u64 },
    #[error("prime {p} exceeds the point-count bound {bound}")]
    PrimeTooLarge { p: u64, bound: u64 },
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::ClosureCap { .. } | Error::PointCap { .. } | Error::PrimeTooLarge { .. } => {
                ErrorKind::ResourceExhausted
            }
            _ => ErrorKind::InvalidInput,
        }
    }
}
