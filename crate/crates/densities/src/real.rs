use biform_core::{real_soluble_small, IntForm};
use num_bigint::BigInt;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::mc::{sample_rng, McEstimate};
use crate::DensityError;

pub use biform_core::real_soluble;

/// Coefficients are `k / 2^53` with `k` uniform in `[-2^53, 2^53]`; the scale
/// is dropped since solubility is scale invariant.
const RESOLUTION: i64 = 1 << 53;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RealDensity {
    pub mc: McEstimate,
    /// Insoluble samples whose four corner coefficients do not share a sign.
    pub mixed_corner_insoluble: u64,
}

fn random_grid(seed: u64, i: u64) -> [[i64; 3]; 3] {
    let mut rng = sample_rng(seed, i);
    std::array::from_fn(|_| std::array::from_fn(|_| rng.gen_range(-RESOLUTION..=RESOLUTION)))
}

/// Sample `i` of the real Monte Carlo, scaled to integers.
pub fn random_real_form(seed: u64, i: u64) -> IntForm {
    IntForm::new(random_grid(seed, i).map(|r| r.map(BigInt::from)))
}

fn corners_agree(a: &[[i64; 3]; 3]) -> bool {
    let c = [a[0][0], a[0][2], a[2][0], a[2][2]];
    c.iter().all(|&x| x > 0) || c.iter().all(|&x| x < 0)
}

/// Fraction of forms with real coefficients that have a real point.
pub fn mc_real_density(samples: u64, seed: u64) -> Result<RealDensity, DensityError> {
    if samples == 0 {
        return Err(DensityError::NoSamples);
    }
    let (hits, mixed) = (0..samples)
        .into_par_iter()
        .map(|i| {
            let f = random_grid(seed, i);
            if real_soluble_small(&f) {
                (1u64, 0u64)
            } else {
                (0, u64::from(!corners_agree(&f)))
            }
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    Ok(RealDensity { mc: McEstimate::from_counts(hits, samples, 0, seed), mixed_corner_insoluble: mixed })
}
