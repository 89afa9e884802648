use thiserror::Error;

/// Errors surfaced by the library. Variant names follow the operation
/// contracts; the CLI maps them onto exit codes.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("generator is zero")]
    ZeroGenerator,
    #[error("group has no effective generator (only 1s)")]
    TrivialGroup,
    #[error("failed to fully factor {0} within the trial-division/rho budget")]
    FactorizationOverflow(String),
    #[error("coset is not 2-torsion in its modulus")]
    NotTwoTorsion,
    #[error("2^{alpha} does not divide {n}")]
    ModulusMismatch { n: u64, alpha: u32 },
    #[error("{d} does not divide {n}")]
    DivisibilityViolation { n: u64, d: u64 },
    #[error("group has rank 0; density formulas require rank >= 1")]
    RankZero,
    #[error("cannot reach target precision {0:e}")]
    PrecisionUnreachable(f64),
    #[error("parity violation: {0}")]
    ParityViolation(&'static str),
    #[error("degenerate input: base must not be 0 or \u{b1}1")]
    DegenerateInput,
    #[error("prime {0} lies in the support of the group")]
    SupportPrime(u64),
    #[error("sieve limit {x} exceeds configured maximum {max}")]
    ResourceLimit { x: u64, max: u64 },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("histograms are not mergeable: {0}")]
    MergeMismatch(String),
}

pub type Result<T> = std::result::Result<T, Error>;
