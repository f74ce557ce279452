use std::cell::RefCell;
use std::fmt;
use std::rc::Rc;

use biform_core::{BiForm22, IntForm};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::QpError;

/// A generator shared by the coefficients of one sampled form.
pub type SharedRng = Rc<RefCell<ChaCha8Rng>>;

/// Where further p-adic digits of a coefficient come from.
#[derive(Clone, Debug)]
pub enum DigitSource {
    /// The coefficient is this integer exactly.
    Exact(BigInt),
    /// Haar-random digits drawn on demand.
    Random(SharedRng),
}

pub fn pow(p: u64, n: u32) -> BigInt {
    BigInt::from(p).pow(n)
}

/// p-adic valuation of a nonzero integer, `None` for zero.
pub fn val(x: &BigInt, p: u64) -> Option<u32> {
    if x.is_zero() {
        return None;
    }
    let pb = BigInt::from(p);
    let mut x = x.clone();
    let mut v = 0;
    loop {
        let (q, r) = x.div_rem(&pb);
        if !r.is_zero() {
            return Some(v);
        }
        x = q;
        v += 1;
    }
}

/// Valuation of `x mod p^n`, capped at `n`.
pub fn val_mod(x: &BigInt, p: u64, n: u32) -> u32 {
    val(&x.mod_floor(&pow(p, n)), p).map_or(n, |v| v.min(n))
}

/// A valuation known exactly, or only bounded below by the precision.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Valuation {
    Exact(u32),
    AtLeast(u32),
}

impl Valuation {
    pub fn bound(self) -> u32 {
        match self {
            Valuation::Exact(v) | Valuation::AtLeast(v) => v,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Exact(v) => write!(f, "{v}"),
            Valuation::AtLeast(v) => write!(f, ">={v}"),
        }
    }
}

/// A p-adic integer known modulo `p^precision`, optionally extendable.
///
/// The represented number is `u / p^shift` where `u` is the underlying
/// integer fed by `source`; `shift` records content already divided out.
#[derive(Clone, Debug)]
pub struct PadicApprox {
    p: u64,
    value: BigInt,
    precision: u32,
    shift: u32,
    source: Option<DigitSource>,
}

impl PadicApprox {
    pub fn exact(p: u64, v: &BigInt, precision: u32) -> Self {
        let mut a = Self::residue(p, v, 0);
        a.source = Some(DigitSource::Exact(v.clone()));
        a.extend_to(precision);
        a
    }

    /// A fixed-precision residue with no way to learn more digits.
    pub fn residue(p: u64, v: &BigInt, precision: u32) -> Self {
        PadicApprox { p, value: v.mod_floor(&pow(p, precision)), precision, shift: 0, source: None }
    }

    pub fn random(p: u64, rng: SharedRng, precision: u32) -> Self {
        let mut a = PadicApprox {
            p,
            value: BigInt::zero(),
            precision: 0,
            shift: 0,
            source: Some(DigitSource::Random(rng)),
        };
        a.extend_to(precision);
        a
    }

    /// `prefix + p^k U` with `U` Haar-random; `prefix` is reduced mod `p^k`.
    pub fn random_above(p: u64, prefix: &BigInt, k: u32, rng: SharedRng) -> Self {
        PadicApprox {
            p,
            value: prefix.mod_floor(&pow(p, k)),
            precision: k,
            shift: 0,
            source: Some(DigitSource::Random(rng)),
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// Representative in `[0, p^precision)`.
    pub fn value(&self) -> &BigInt {
        &self.value
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn has_source(&self) -> bool {
        self.source.is_some()
    }

    /// Learn digits up to precision `n`; false if no source can supply them.
    pub fn extend_to(&mut self, n: u32) -> bool {
        if n <= self.precision {
            return true;
        }
        match &self.source {
            None => false,
            Some(DigitSource::Exact(u)) => {
                let m = pow(self.p, n + self.shift);
                self.value = u.mod_floor(&m) / pow(self.p, self.shift);
                self.precision = n;
                true
            }
            Some(DigitSource::Random(rng)) => {
                let mut rng = rng.borrow_mut();
                let mut scale = pow(self.p, self.precision);
                for _ in self.precision..n {
                    let d: u64 = rng.gen_range(0..self.p);
                    self.value += &scale * d;
                    scale *= self.p;
                }
                self.precision = n;
                true
            }
        }
    }

    pub fn valuation(&self) -> Valuation {
        match val(&self.value, self.p) {
            Some(v) => Valuation::Exact(v),
            None => Valuation::AtLeast(self.precision),
        }
    }

    /// Divide by `p^s`; the caller guarantees the division is exact.
    fn divide_out(&mut self, s: u32) {
        debug_assert!(self.valuation().bound() >= s);
        self.value /= pow(self.p, s);
        self.precision -= s;
        self.shift += s;
    }
}

/// A (2,2)-form over Z_p.
#[derive(Clone, Debug)]
pub struct PadicForm {
    pub p: u64,
    pub a: BiForm22<PadicApprox>,
}

pub(crate) const START_PRECISION: u32 = 4;

impl PadicForm {
    /// An integer form, extendable to any precision.
    pub fn from_integers(p: u64, f: &IntForm) -> Self {
        PadicForm { p, a: f.map(|c| PadicApprox::exact(p, c, START_PRECISION)) }
    }

    /// Integers known only modulo `p^precision`.
    pub fn from_residues(p: u64, f: &IntForm, precision: u32) -> Self {
        PadicForm { p, a: f.map(|c| PadicApprox::residue(p, c, precision)) }
    }

    /// A Haar-random form whose digits come from `rng`.
    pub fn random(p: u64, rng: SharedRng) -> Self {
        let a = std::array::from_fn(|_| std::array::from_fn(|_| PadicApprox::random(p, rng.clone(), 2)));
        PadicForm { p, a: BiForm22::new(a) }
    }

    pub fn precision(&self) -> u32 {
        self.a.coeffs().map(|c| c.precision).min().expect("nine coefficients")
    }

    pub fn extend_to(&mut self, n: u32) -> bool {
        let mut ok = true;
        for row in self.a.a.iter_mut() {
            for c in row.iter_mut() {
                ok &= c.extend_to(n);
            }
        }
        ok
    }

    /// Current residues as integers.
    pub fn residues(&self) -> IntForm {
        self.a.map(|c| c.value.clone())
    }

    pub fn coeff_mut(&mut self, i: usize, j: usize) -> &mut PadicApprox {
        &mut self.a.a[i][j]
    }
}

/// Coefficient valuations of a form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValuationGrid {
    pub v: [[Valuation; 3]; 3],
}

pub fn valuation_grid(f: &PadicForm) -> ValuationGrid {
    ValuationGrid { v: std::array::from_fn(|i| std::array::from_fn(|j| f.a.a[i][j].valuation())) }
}

/// Divide out the content of `f`, returning the quotient and the power of p.
pub fn normalize(f: &PadicForm) -> Result<(PadicForm, u32), QpError> {
    let mut f = f.clone();
    loop {
        let grid = valuation_grid(&f);
        let exact = grid.v.iter().flatten().filter_map(|v| match v {
            Valuation::Exact(e) => Some(*e),
            Valuation::AtLeast(_) => None,
        });
        let Some(lo) = exact.min() else {
            // everything vanishes at known precision; look further if we can
            let target = f.precision() + 8;
            if f.a.coeffs().any(|c| c.has_source()) && target <= 4096 && f.extend_to(target) {
                continue;
            }
            return Err(QpError::AllZero);
        };
        // a vanishing coefficient known to less than `lo` digits hides the true content
        let mut progressed = false;
        let mut scale = lo;
        for (i, j) in cells() {
            if let Valuation::AtLeast(b) = grid.v[i][j] {
                if b <= lo {
                    if f.a.a[i][j].extend_to(lo + 1) {
                        progressed = true;
                    } else {
                        scale = scale.min(b);
                    }
                }
            }
        }
        if progressed {
            continue;
        }
        for row in f.a.a.iter_mut() {
            for c in row.iter_mut() {
                c.divide_out(scale);
            }
        }
        return Ok((f, scale));
    }
}

pub(crate) fn cells() -> impl Iterator<Item = (usize, usize)> {
    (0..3).flat_map(|i| (0..3).map(move |j| (i, j)))
}

/// Inverse of a unit modulo `m`.
pub fn inv_mod(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    e.gcd.is_one().then(|| e.x.mod_floor(m))
}
