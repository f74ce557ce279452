use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::real::mc_real_density;
use crate::table::rho_closed;
use crate::DensityError;

/// A closed interval of reals with outward-rounded endpoints.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn mid(&self) -> f64 {
        (self.lo + self.hi) / 2.0
    }

    fn mul(self, o: Interval) -> Interval {
        // all endpoints here are nonnegative
        Interval { lo: (self.lo * o.lo).next_down(), hi: (self.hi * o.hi).next_up() }
    }
}

/// Enclosure of an exact rational in [0, 1].
fn enclose(x: &BigRational) -> Interval {
    let f = x.to_f64().expect("finite");
    Interval { lo: f.next_down().max(0.0), hi: f.next_up().min(1.0) }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PrimeProduct {
    pub p_max: u64,
    /// Product of the densities over primes up to `p_max`.
    pub value: Interval,
    /// Lower bound for the product over the remaining primes.
    pub tail_bound: f64,
}

impl PrimeProduct {
    /// Enclosure of the full product over all primes.
    pub fn full(&self) -> Interval {
        Interval { lo: (self.value.lo * self.tail_bound).next_down(), hi: self.value.hi }
    }
}

fn primes_upto(n: u64) -> Vec<u64> {
    let n = n as usize;
    let mut sieve = vec![true; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if sieve[i] {
            out.push(i as u64);
            (i * i..=n).step_by(i).for_each(|j| sieve[j] = false);
        }
    }
    out
}

/// From this prime on, `1 - rho(p) <= 1/p^2`.
pub const TAIL_START: u64 = 11;

/// Checks `p^2 (1 - rho(p)) <= 1` for every real `p >= TAIL_START` by
/// expanding the difference of the two sides around `TAIL_START` and seeing
/// only nonnegative coefficients.
pub fn tail_constant_holds() -> bool {
    // 8(p^8-1)(p^9-1) - p^3 (p-1)(p^2-1) f(p), as a polynomial in p
    let f: Vec<i64> = vec![-2, 6, -2, 2, -1, 5, -2, 5, -1, 4, -4, 4];
    let mul = |a: &[BigInt], b: &[BigInt]| {
        let mut r = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                r[i + j] += x * y;
            }
        }
        r
    };
    let from = |v: &[i64]| v.iter().map(|&c| BigInt::from(c)).collect::<Vec<_>>();
    let mut lhs = mul(&from(&[-1, 0, 0, 0, 0, 0, 0, 0, 1]), &from(&[-1, 0, 0, 0, 0, 0, 0, 0, 0, 1]));
    lhs.iter_mut().for_each(|c| *c *= 8);
    let rhs = mul(&mul(&from(&[0, 0, 0, -1, 1]), &from(&[-1, 0, 1])), &from(&f));
    let n = lhs.len().max(rhs.len());
    let diff: Vec<BigInt> =
        (0..n).map(|i| lhs.get(i).cloned().unwrap_or_default() - rhs.get(i).cloned().unwrap_or_default()).collect();
    // substitute p = TAIL_START + x
    let mut shifted = vec![BigInt::zero(); n];
    let base = BigInt::from(TAIL_START);
    for c in diff.iter().rev() {
        // shifted = shifted * (base + x) + c
        let mut next = vec![BigInt::zero(); n];
        for i in 0..n {
            next[i] += &shifted[i] * &base;
            if i + 1 < n {
                next[i + 1] += &shifted[i];
            }
        }
        next[0] += c;
        shifted = next;
    }
    shifted.iter().all(|c| !c.is_negative())
}

/// Interval enclosure of the product of local densities over `p <= p_max`,
/// with a lower bound for the remaining factors.
pub fn prime_product(p_max: u64) -> Result<PrimeProduct, DensityError> {
    if p_max < 2 {
        return Err(DensityError::BadBound(p_max));
    }
    let mut value = Interval { lo: 1.0, hi: 1.0 };
    for p in primes_upto(p_max) {
        let loss = BigRational::one() - rho_closed(p)?.0;
        let l = enclose(&loss);
        let rho = Interval { lo: (1.0 - l.hi).next_down(), hi: (1.0 - l.lo).next_up().min(1.0) };
        value = value.mul(rho);
    }
    // exact factors up to the point where the 1/p^2 bound takes over
    let mut tail = Interval { lo: 1.0, hi: 1.0 };
    for p in primes_upto(TAIL_START - 1).into_iter().filter(|&p| p > p_max) {
        tail = tail.mul(enclose(&rho_closed(p)?.0));
    }
    // prod over p > N of (1 - 1/p^2) >= 1 - sum over n > N of 1/n^2 >= 1 - 1/N
    let n = p_max.max(TAIL_START - 1) as f64;
    let tail_bound = (tail.lo * (1.0 - 1.0 / n).next_down()).next_down();
    Ok(PrimeProduct { p_max, value, tail_bound })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GlobalConstant {
    pub product: PrimeProduct,
    pub real: crate::real::RealDensity,
    /// Real density enclosure: estimate plus or minus four standard errors.
    pub real_interval: Interval,
    pub value: Interval,
}

/// Product of the local densities at all places, with combined uncertainty.
pub fn global_constant(p_max: u64, real_samples: u64, seed: u64) -> Result<GlobalConstant, DensityError> {
    let product = prime_product(p_max)?;
    let real = mc_real_density(real_samples, seed)?;
    let half = 4.0 * real.mc.stderr.max(1.0 / real_samples as f64);
    let real_interval = Interval { lo: (real.mc.estimate - half).max(0.0), hi: (real.mc.estimate + half).min(1.0) };
    let value = product.full().mul(real_interval);
    Ok(GlobalConstant { product, real, real_interval, value })
}
