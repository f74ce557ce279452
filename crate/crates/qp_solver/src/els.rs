use std::fmt;

use biform_core::{discriminant, real_soluble_int, IntForm};
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::factor::prime_factors;
use crate::smooth::find_smooth_point;
use crate::solver::{decide_int, Reason, Verdict};
use crate::QpError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Place {
    Real,
    Prime(BigInt),
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Real => write!(f, "inf"),
            Place::Prime(p) => write!(f, "{p}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ElsVerdict {
    Els,
    NotEls(Place),
    Undetermined(Place, Reason),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElsReport {
    pub verdict: ElsVerdict,
    pub discriminant: BigInt,
    /// The finite places that needed checking: primes dividing `2 disc`.
    pub primes: Vec<BigInt>,
}

/// Fibres scanned for a smooth point before the full search.
pub const SMOOTH_TRIES: u64 = 256;
/// Largest prime handed to the full residue search; above it a prime without
/// a smooth point among the scanned fibres is left undetermined.
pub const FULL_SEARCH_LIMIT: u64 = 1 << 20;

/// Decide everywhere-local solubility of an integer form.
///
/// Only the primes dividing `2 disc` are examined; at any other prime the
/// reduction is a smooth genus one curve and has a smooth F_p-point.
pub fn els_decide(f: &IntForm, max_depth: u32) -> Result<ElsReport, QpError> {
    let disc = discriminant(f);
    if disc.is_zero() {
        return Err(QpError::SingularDiscriminantZero);
    }
    let primes: Vec<BigInt> = prime_factors(&(BigInt::from(2) * &disc).abs().to_biguint().expect("positive"))
        .into_iter()
        .map(BigInt::from)
        .collect();
    let verdict = if !real_soluble_int(f) {
        ElsVerdict::NotEls(Place::Real)
    } else {
        let mut verdict = ElsVerdict::Els;
        for p in &primes {
            if find_smooth_point(f, p, SMOOTH_TRIES).is_some() {
                continue;
            }
            let Some(q) = p.to_u64().filter(|&q| q <= FULL_SEARCH_LIMIT) else {
                verdict = ElsVerdict::Undetermined(Place::Prime(p.clone()), Reason::Depth);
                continue;
            };
            match decide_int(f, q, max_depth)? {
                Verdict::Soluble(_) => {}
                Verdict::Insoluble => {
                    verdict = ElsVerdict::NotEls(Place::Prime(p.clone()));
                    break;
                }
                Verdict::Undetermined(r) => verdict = ElsVerdict::Undetermined(Place::Prime(p.clone()), r),
            }
        }
        verdict
    };
    Ok(ElsReport { verdict, discriminant: disc, primes })
}
