//! Local solubility of (2,2)-forms over Q_p: a residue-disc search with
//! Hensel certificates, the same search for generalised binary quartics,
//! and the everywhere-local check for integer forms.

pub mod els;
pub mod factor;
pub mod gbq;
pub mod modp;
pub mod padic;
pub mod rank;
pub mod smooth;
pub mod solver;

pub use els::{els_decide, ElsReport, ElsVerdict, Place};
pub use gbq::{certify_gbq_witness, decide_gbq, GbqWitness};
pub use padic::{normalize, valuation_grid, DigitSource, PadicApprox, PadicForm, SharedRng, Valuation, ValuationGrid};
pub use smooth::{find_smooth_point, sqrt_mod};
pub use rank::{phi_derivative_rank, RankCase};
pub use solver::{
    certify_witness, decide_int, decide_local, decide_qp, Chart, LocalProblem, Outcome, Patch, Reason, ResidueSet, Verdict,
    Witness, DEFAULT_MAX_DEPTH,
};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QpError {
    #[error("every coefficient vanishes at the known precision")]
    AllZero,
    #[error("the discriminant is zero")]
    SingularDiscriminantZero,
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("{0} is above the residue search limit {MAX_SEARCH_PRIME}")]
    PrimeTooLarge(u64),
    #[error("residue sets must have p + 1 entries")]
    ResidueSetSize,
}

/// Largest prime the residue-disc search accepts; it keeps one flag per
/// residue class.
pub const MAX_SEARCH_PRIME: u64 = 1 << 24;

pub fn is_prime(p: u64) -> bool {
    factor::is_prime_u64(p)
}
