use std::cell::RefCell;
use std::fmt;
use std::rc::Rc;
use std::str::FromStr;

use biform_core::BiForm22;
use num_bigint::BigInt;
use qp_solver::{decide_local, DEFAULT_MAX_DEPTH, LocalProblem, PadicApprox, PadicForm, Verdict};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::DensityError;

/// A proportion estimated by sampling.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct McEstimate {
    pub estimate: f64,
    pub stderr: f64,
    /// Samples that were decided.
    pub samples: u64,
    pub seed: u64,
    pub hits: u64,
    /// Samples left undetermined; expected to be zero.
    pub anomalies: u64,
}

impl McEstimate {
    pub fn from_counts(hits: u64, samples: u64, anomalies: u64, seed: u64) -> Self {
        let n = samples.max(1) as f64;
        let estimate = hits as f64 / n;
        McEstimate { estimate, stderr: (estimate * (1.0 - estimate) / n).sqrt(), samples, seed, hits, anomalies }
    }

    /// Whether `x` lies within `k` standard errors of the estimate.
    pub fn within(&self, x: f64, k: f64) -> bool {
        (self.estimate - x).abs() <= k * self.stderr
    }
}

/// The generator for sample `i`: one stream per sample, so results do not
/// depend on how samples are spread over threads.
pub fn sample_rng(seed: u64, i: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(i);
    r
}

#[derive(Clone, Copy, Default)]
struct Tally {
    hits: u64,
    decided: u64,
    anomalies: u64,
}

fn tally<F>(samples: u64, seed: u64, one: F) -> McEstimate
where
    F: Fn(u64) -> Option<bool> + Sync,
{
    let t = (0..samples)
        .into_par_iter()
        .fold(Tally::default, |mut t, i| {
            match one(i) {
                Some(true) => {
                    t.hits += 1;
                    t.decided += 1;
                }
                Some(false) => t.decided += 1,
                None => t.anomalies += 1,
            }
            t
        })
        .reduce(Tally::default, |a, b| Tally {
            hits: a.hits + b.hits,
            decided: a.decided + b.decided,
            anomalies: a.anomalies + b.anomalies,
        });
    McEstimate::from_counts(t.hits, t.decided, t.anomalies, seed)
}

fn verdict(v: Verdict) -> Option<bool> {
    match v {
        Verdict::Soluble(_) => Some(true),
        Verdict::Insoluble => Some(false),
        Verdict::Undetermined(_) => None,
    }
}

/// Fraction of Haar-random forms over Z_p with a Q_p-point.
pub fn mc_rho(p: u64, samples: u64, seed: u64) -> Result<McEstimate, DensityError> {
    if !qp_solver::is_prime(p) {
        return Err(DensityError::NotPrime(p));
    }
    if samples == 0 {
        return Err(DensityError::NoSamples);
    }
    Ok(tally(samples, seed, |i| {
        let rng = Rc::new(RefCell::new(sample_rng(seed, i)));
        let mut f = PadicForm::random(p, rng);
        let v = qp_solver::decide_qp(&mut f, DEFAULT_MAX_DEPTH).ok()?;
        verdict(v)
    }))
}

/// Residue and valuation classes sampled by [`mc_conditional`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Selector {
    Case1i,
    Case1iii,
    Case3,
    Case4,
    Case5,
    HalfS,
    HalfT,
    LineCondition,
}

impl Selector {
    pub const ALL: [Selector; 8] = [
        Selector::Case1i,
        Selector::Case1iii,
        Selector::Case3,
        Selector::Case4,
        Selector::Case5,
        Selector::HalfS,
        Selector::HalfT,
        Selector::LineCondition,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Selector::Case1i => "Case1i",
            Selector::Case1iii => "Case1iii",
            Selector::Case3 => "Case3",
            Selector::Case4 => "Case4",
            Selector::Case5 => "Case5",
            Selector::HalfS => "Half-S",
            Selector::HalfT => "Half-T",
            Selector::LineCondition => "LineCondition",
        }
    }
}

impl fmt::Display for Selector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Selector {
    type Err = DensityError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Selector::ALL
            .into_iter()
            .find(|x| x.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| DensityError::UnknownSelector(s.to_string()))
    }
}

/// How one coefficient is drawn: fixed residue mod `p^k`, Haar above.
#[derive(Clone, Copy)]
enum Cell {
    /// `prefix mod p^k`
    Fixed(i64, u32),
    /// exact valuation `v`
    Val(u32),
}

fn irreducible(p: u64, rng: &mut ChaCha8Rng) -> [i64; 3] {
    let all = qp_solver::rank::irreducible_quadratics(p);
    all[rng.gen_range(0..all.len())]
}

fn cells(sel: Selector, p: u64, rng: &mut ChaCha8Rng) -> [[Cell; 3]; 3] {
    use Cell::*;
    let red = |c: [i64; 9]| -> [[Cell; 3]; 3] { std::array::from_fn(|i| std::array::from_fn(|j| Fixed(c[3 * i + j], 1))) };
    match sel {
        Selector::Case1i => {
            let [f0, f1, f2] = irreducible(p, rng);
            red([0, 0, f0, 0, f1, 0, f2, 0, 0])
        }
        Selector::Case1iii => red(qp_solver::rank::case1iii_form(irreducible(p, rng)).to_row_major().try_into().unwrap()),
        Selector::Case3 => {
            let [f0, f1, f2] = irreducible(p, rng);
            red([f0, 0, 0, f1, 0, 0, f2, 0, 0])
        }
        Selector::Case4 => red(qp_solver::rank::case4_form().to_row_major().try_into().unwrap()),
        Selector::Case5 => red([1, 0, 0, 0, 0, 0, 0, 0, 0]),
        Selector::LineCondition => {
            let [f0, f1, f2] = irreducible(p, rng);
            let free = Fixed(0, 0);
            [[Fixed(f0, 1), free, free], [Fixed(f1, 1), free, free], [Fixed(f2, 1), free, free]]
        }
        Selector::HalfS | Selector::HalfT => {
            let top = if sel == Selector::HalfT { Fixed(0, 1) } else { Fixed(0, 0) };
            [
                [Fixed(0, 2), Fixed(0, 2), Val(1)],
                [Fixed(0, 1), Fixed(0, 1), Fixed(0, 1)],
                [Val(0), top, top],
            ]
        }
    }
}

fn conditional_form(sel: Selector, p: u64, rng: Rc<RefCell<ChaCha8Rng>>) -> PadicForm {
    let plan = cells(sel, p, &mut rng.borrow_mut());
    let coeff = |c: Cell| match c {
        Cell::Fixed(a, k) => PadicApprox::random_above(p, &BigInt::from(a), k, rng.clone()),
        Cell::Val(v) => {
            let unit: u64 = rng.borrow_mut().gen_range(1..p);
            let prefix = BigInt::from(unit) * BigInt::from(p).pow(v);
            PadicApprox::random_above(p, &prefix, v + 1, rng.clone())
        }
    };
    let a = plan.map(|row| row.map(coeff));
    PadicForm { p, a: BiForm22::new(a) }
}

/// Solubility frequency within one residue or valuation class.
///
/// The two `Half` classes only count points with `p` not dividing `X1 Y1`.
pub fn mc_conditional(p: u64, sel: Selector, samples: u64, seed: u64) -> Result<McEstimate, DensityError> {
    if !qp_solver::is_prime(p) {
        return Err(DensityError::NotPrime(p));
    }
    if samples == 0 {
        return Err(DensityError::NoSamples);
    }
    Ok(tally(samples, seed, |i| {
        let rng = Rc::new(RefCell::new(sample_rng(seed, i)));
        let form = conditional_form(sel, p, rng);
        let mut problem = match sel {
            Selector::HalfS | Selector::HalfT => LocalProblem::affine(form),
            _ => LocalProblem::new(form),
        };
        verdict(decide_local(&mut problem, DEFAULT_MAX_DEPTH).ok()?)
    }))
}
