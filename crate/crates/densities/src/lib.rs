//! Exact local solubility densities of (2,2)-forms and their numerical checks:
//! the case-by-case assembly, Monte Carlo sampling over Z_p and R, and the
//! product of the local densities over all places.

pub mod linalg;
pub mod mc;
pub mod product;
pub mod rational;
pub mod real;
pub mod table;

pub use mc::{mc_conditional, mc_rho, McEstimate, Selector};
pub use product::{global_constant, prime_product, tail_constant_holds, GlobalConstant, Interval, PrimeProduct};
pub use rational::{Count, ExactRational};
pub use real::{mc_real_density, real_soluble, RealDensity};
pub use table::{bq_constants, build_case_table, rho_assembled, rho_closed, BqConstants, CaseDensityTable};

/// Forms with exact rational coefficients, for the real decider.
pub type RealForm22 = biform_core::RatForm;

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum DensityError {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("unknown case selector {0:?}")]
    UnknownSelector(String),
    #[error("at least one sample is required")]
    NoSamples,
    #[error("bound {0} is below 2")]
    BadBound(u64),
}
