//! The binomial inequality showing that reducible multihomogeneous
//! polynomials have codimension at least two, with an exhaustive scanner.
//!
//! Products are computed in `u128` and promoted to big integers on overflow,
//! so every comparison is exact.

use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigUint;
use num_traits::One;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InequalityError {
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("scan bounds must be at least 1")]
    BadBounds,
}

/// Multidegree data `(n, d, r)` for a product of `k` projective spaces.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawInstance")]
pub struct InequalityInstance {
    n: Vec<u32>,
    d: Vec<u32>,
    r: Vec<u32>,
}

#[derive(Deserialize)]
struct RawInstance {
    n: Vec<u32>,
    d: Vec<u32>,
    r: Vec<u32>,
}

impl TryFrom<RawInstance> for InequalityInstance {
    type Error = InequalityError;

    fn try_from(raw: RawInstance) -> Result<Self, Self::Error> {
        InequalityInstance::new(raw.n, raw.d, raw.r)
    }
}

impl InequalityInstance {
    pub fn new(n: Vec<u32>, d: Vec<u32>, r: Vec<u32>) -> Result<Self, InequalityError> {
        let bad = |m: String| Err(InequalityError::InvalidInstance(m));
        if n.is_empty() {
            return bad("k must be positive".into());
        }
        if n.len() != d.len() || n.len() != r.len() {
            return bad(format!("length mismatch {}/{}/{}", n.len(), d.len(), r.len()));
        }
        if n.iter().chain(&d).any(|&x| x == 0) {
            return bad("n and d entries must be positive".into());
        }
        if r.iter().zip(&d).any(|(ri, di)| ri > di) {
            return bad("r exceeds d".into());
        }
        let (sr, sd): (u64, u64) = (r.iter().map(|&x| x as u64).sum(), d.iter().map(|&x| x as u64).sum());
        if sr == 0 || sr >= sd {
            return bad(format!("need 0 < sum r < sum d, got {sr} and {sd}"));
        }
        Ok(InequalityInstance { n, d, r })
    }

    pub fn k(&self) -> usize {
        self.n.len()
    }
    pub fn n(&self) -> &[u32] {
        &self.n
    }
    pub fn d(&self) -> &[u32] {
        &self.d
    }
    pub fn r(&self) -> &[u32] {
        &self.r
    }

    /// `r ↦ d − r`.
    pub fn complement(&self) -> Self {
        let r = self.d.iter().zip(&self.r).map(|(d, r)| d - r).collect();
        InequalityInstance { n: self.n.clone(), d: self.d.clone(), r }
    }

    /// Reorders the indices: entry `i` of the result is entry `perm[i]` of self.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let pick = |v: &[u32]| perm.iter().map(|&j| v[j]).collect();
        InequalityInstance { n: pick(&self.n), d: pick(&self.d), r: pick(&self.r) }
    }

    /// Whether the instance falls under one of the three hypotheses.
    pub fn hypotheses_hold(&self) -> bool {
        match self.k() {
            1 => {
                let (n, d) = (self.n[0], self.d[0]);
                n >= 2 && d >= 2 && (n, d) != (2, 2)
            }
            2 => !(self.n[0] == 1 && self.n[1] == 1) || (self.d[0] >= 2 && self.d[1] >= 2),
            _ => true,
        }
    }
}

impl fmt::Display for InequalityInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let j = |v: &[u32]| v.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
        write!(f, "{}\t{}\t{}\t{}", self.k(), j(&self.n), j(&self.d), j(&self.r))
    }
}

/// Exact nonnegative integer, small when it fits.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Exact {
    Small(u128),
    Big(BigUint),
}

impl Exact {
    pub fn to_biguint(&self) -> BigUint {
        match self {
            Exact::Small(x) => BigUint::from(*x),
            Exact::Big(x) => x.clone(),
        }
    }

    fn normal(x: BigUint) -> Exact {
        match u128::try_from(&x) {
            Ok(s) => Exact::Small(s),
            Err(_) => Exact::Big(x),
        }
    }

    fn mul(&self, o: &Exact) -> Exact {
        if let (Exact::Small(a), Exact::Small(b)) = (self, o) {
            if let Some(c) = a.checked_mul(*b) {
                return Exact::Small(c);
            }
        }
        Exact::normal(self.to_biguint() * o.to_biguint())
    }

    fn add(&self, o: &Exact) -> Exact {
        if let (Exact::Small(a), Exact::Small(b)) = (self, o) {
            if let Some(c) = a.checked_add(*b) {
                return Exact::Small(c);
            }
        }
        Exact::normal(self.to_biguint() + o.to_biguint())
    }
}

impl fmt::Display for Exact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exact::Small(x) => write!(f, "{x}"),
            Exact::Big(x) => write!(f, "{x}"),
        }
    }
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::default();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

const PASCAL_ROWS: usize = 128;

fn pascal() -> &'static [Vec<u128>] {
    static TABLE: OnceLock<Vec<Vec<u128>>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut rows: Vec<Vec<u128>> = vec![vec![1]];
        for n in 1..PASCAL_ROWS {
            let prev = &rows[n - 1];
            let row = (0..=n)
                .map(|k| if k == 0 || k == n { 1 } else { prev[k - 1] + prev[k] })
                .collect();
            rows.push(row);
        }
        rows
    })
}

fn binom_exact(n: u32, k: u32) -> Exact {
    if (n as usize) < PASCAL_ROWS {
        return Exact::Small(pascal()[n as usize][k as usize]);
    }
    Exact::normal(binomial(n as u64, k as u64))
}

fn product(inst: &InequalityInstance, top: impl Fn(usize) -> u32) -> Exact {
    (0..inst.k()).fold(Exact::Small(1), |acc, i| acc.mul(&binom_exact(inst.n[i] + top(i), inst.n[i])))
}

/// The three sides of the inequality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sides {
    /// ∏ C(n+r, n)
    pub left_r: Exact,
    /// ∏ C(n+d−r, n)
    pub left_dr: Exact,
    /// ∏ C(n+d, n)
    pub right: Exact,
}

impl Sides {
    pub fn holds(&self) -> bool {
        self.left_r.add(&self.left_dr) < self.right
    }
}

pub fn sides(inst: &InequalityInstance) -> Sides {
    Sides {
        left_r: product(inst, |i| inst.r[i]),
        left_dr: product(inst, |i| inst.d[i] - inst.r[i]),
        right: product(inst, |i| inst.d[i]),
    }
}

pub fn inequality_holds(inst: &InequalityInstance) -> bool {
    sides(inst).holds()
}

/// Sizes of the tuple-of-subsets sets used by the counting argument.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetCounts {
    pub s: BigUint,
    pub s1: BigUint,
    pub s2: BigUint,
    pub s12: BigUint,
    /// explicit lower bound on |S \ (S1 ∪ S2)| from the construction
    pub outside_lower: BigUint,
}

impl SetCounts {
    pub fn outside(&self) -> BigUint {
        &self.s + &self.s12 - &self.s1 - &self.s2
    }

    /// The bound is consistent with the counts.
    pub fn consistent(&self) -> bool {
        &self.s1 + &self.s2 + &self.outside_lower <= &self.s + &self.s12
    }
}

/// Product formulas for |S|, |S1|, |S2|, |S1 ∩ S2| where `A_i` ranges over
/// `n_i`-subsets of `{1..n_i+d_i}`, `S1` avoids `{1..r_i}` and `S2` avoids
/// `{r_i+1..d_i}`.
pub fn set_counts(inst: &InequalityInstance) -> SetCounts {
    let prod = |f: &dyn Fn(usize) -> BigUint| (0..inst.k()).fold(BigUint::one(), |a, i| a * f(i));
    let (n, d, r) = (&inst.n, &inst.d, &inst.r);
    let s = prod(&|i| binomial((n[i] + d[i]) as u64, n[i] as u64));
    let s1 = prod(&|i| binomial((n[i] + d[i] - r[i]) as u64, n[i] as u64));
    let s2 = prod(&|i| binomial((n[i] + r[i]) as u64, n[i] as u64));
    let s12 = BigUint::one();
    let big = |x: u32| BigUint::from(x);
    let outside_lower = match inst.k() {
        1 => big(r[0]) * big(d[0] - r[0]) * binomial(n[0] as u64, 2),
        2 => (big(r[0]) * big(d[1] - r[1]) + big(r[1]) * big(d[0] - r[0])) * big(n[0]) * big(n[1]),
        k => {
            let mut acc = BigUint::default();
            for i in 0..k {
                for j in 0..k {
                    if i != j {
                        acc += big(r[i]) * big(d[j] - r[j]);
                    }
                }
            }
            acc
        }
    };
    SetCounts { s, s1, s2, s12, outside_lower }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanReport {
    pub checked: u64,
    /// hypotheses hold but the inequality fails
    pub violations: Vec<InequalityInstance>,
    /// hypotheses fail and so does the inequality
    pub excluded_failures: Vec<InequalityInstance>,
}

fn tuples(k: usize, lo: u32, hi: &[u32]) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for &h in hi.iter().take(k) {
        out = out
            .into_iter()
            .flat_map(|t| {
                (lo..=h).map(move |x| {
                    let mut t = t.clone();
                    t.push(x);
                    t
                })
            })
            .collect();
    }
    out
}

/// Checks every instance with `k ≤ k_max`, `n_i ≤ n_max`, `d_i ≤ d_max`.
pub fn scan(k_max: usize, n_max: u32, d_max: u32) -> Result<ScanReport, InequalityError> {
    if k_max == 0 || n_max == 0 || d_max == 0 {
        return Err(InequalityError::BadBounds);
    }
    let mut grid = Vec::new();
    for k in 1..=k_max {
        for n in tuples(k, 1, &vec![n_max; k]) {
            for d in tuples(k, 1, &vec![d_max; k]) {
                grid.push((n.clone(), d));
            }
        }
    }
    let parts: Vec<ScanReport> = grid
        .into_par_iter()
        .map(|(n, d)| {
            let mut rep = ScanReport::default();
            for r in tuples(n.len(), 0, &d) {
                let Ok(inst) = InequalityInstance::new(n.clone(), d.clone(), r) else { continue };
                rep.checked += 1;
                if inequality_holds(&inst) {
                    continue;
                }
                if inst.hypotheses_hold() {
                    rep.violations.push(inst);
                } else {
                    rep.excluded_failures.push(inst);
                }
            }
            rep
        })
        .collect();
    let mut out = ScanReport::default();
    for p in parts {
        out.checked += p.checked;
        out.violations.extend(p.violations);
        out.excluded_failures.extend(p.excluded_failures);
    }
    Ok(out)
}
