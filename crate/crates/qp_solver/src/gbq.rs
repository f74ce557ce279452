use biform_core::IntQuartic;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::padic::{pow, val};
use crate::solver::{hensel_root, Chart, Reason, Verdict, NODE_BUDGET};
use crate::QpError;

/// A point `((s:1) or (1:s), z)` on `z^2 + G2 z = G4`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GbqWitness {
    pub chart: Chart,
    pub s: BigInt,
    pub z: BigInt,
    pub e: u32,
}

/// Coefficients `c[i][j]` of `s^i z^j`.
#[derive(Clone, Debug)]
struct Poly {
    c: [[BigInt; 3]; 5],
}

impl Poly {
    fn chart(g: &IntQuartic, chart: Chart) -> Self {
        let mut c: [[BigInt; 3]; 5] = Default::default();
        c[0][2] = BigInt::one();
        // binary form coefficient k multiplies x0^(n-k) x1^k
        let at = |n: usize, k: usize| match chart {
            Chart::Finite => n - k,
            Chart::Infinite => k,
        };
        for (k, a) in g.g2.coeffs.iter().enumerate() {
            c[at(2, k)][1] += a;
        }
        for (k, a) in g.g4.coeffs.iter().enumerate() {
            c[at(4, k)][0] -= a;
        }
        Poly { c }
    }

    fn eval(&self, s: &BigInt, z: &BigInt) -> [BigInt; 3] {
        let mut f = BigInt::zero();
        let mut fs = BigInt::zero();
        let mut fz = BigInt::zero();
        for i in 0..5 {
            for j in 0..3 {
                let a = &self.c[i][j];
                if a.is_zero() {
                    continue;
                }
                f += a * s.pow(i as u32) * z.pow(j as u32);
                if i > 0 {
                    fs += a * i * s.pow(i as u32 - 1) * z.pow(j as u32);
                }
                if j > 0 {
                    fz += a * j * s.pow(i as u32) * z.pow(j as u32 - 1);
                }
            }
        }
        [f, fs, fz]
    }

    /// `f(a + p s, b + p z)`.
    fn shift(&self, a: u64, b: u64, p: u64) -> Self {
        let expand = |base: u64, n: usize| -> Vec<BigInt> {
            // coefficients of (base + p t)^n in t
            (0..=n)
                .map(|k| binom(n, k) * BigInt::from(base).pow((n - k) as u32) * pow(p, k as u32))
                .collect()
        };
        let mut c: [[BigInt; 3]; 5] = Default::default();
        for i in 0..5 {
            let es = expand(a, i);
            for j in 0..3 {
                if self.c[i][j].is_zero() {
                    continue;
                }
                let ez = expand(b, j);
                for (k, x) in es.iter().enumerate() {
                    for (l, y) in ez.iter().enumerate() {
                        c[k][l] += &self.c[i][j] * x * y;
                    }
                }
            }
        }
        Poly { c }
    }

    fn content(&self, p: u64) -> Option<u32> {
        self.c.iter().flatten().filter_map(|x| val(x, p)).min()
    }

    fn divide(&mut self, d: &BigInt) {
        for x in self.c.iter_mut().flatten() {
            *x /= d;
        }
    }
}

fn binom(n: usize, k: usize) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

struct GbqSearch {
    p: u64,
    max_depth: u32,
    nodes: u64,
    original: Poly,
    chart: Chart,
}

impl GbqSearch {
    /// `f` is the original polynomial at `(s0 + p^d s, z0 + p^d z)`, content removed.
    fn node(&mut self, f: Poly, s0: BigInt, z0: BigInt, d: u32, only_zero: bool) -> Verdict<GbqWitness> {
        self.nodes += 1;
        let p = self.p;
        let pb = BigInt::from(p);
        let mut singular = Vec::new();
        let s_range = if only_zero { 0..1 } else { 0..p };
        for a in s_range {
            for b in 0..p {
                let [v, vs, vz] = f.eval(&BigInt::from(a), &BigInt::from(b));
                if !v.mod_floor(&pb).is_zero() {
                    continue;
                }
                let smooth_s = !vs.mod_floor(&pb).is_zero();
                let smooth_z = !vz.mod_floor(&pb).is_zero();
                if smooth_s || smooth_z {
                    return self.witness(&f, &s0, &z0, d, a, b, smooth_s);
                }
                singular.push((a, b));
            }
        }
        if singular.is_empty() {
            return Verdict::Insoluble;
        }
        if d >= self.max_depth || self.nodes >= NODE_BUDGET {
            return Verdict::Undetermined(Reason::Depth);
        }
        let scale = pow(p, d);
        let mut pending = None;
        for (a, b) in singular {
            let mut child = f.shift(a, b, p);
            let c = child.content(p).expect("leading z^2 survives");
            child.divide(&pow(p, c));
            let cs = &s0 + &scale * a;
            let cz = &z0 + &scale * b;
            match self.node(child, cs, cz, d + 1, false) {
                Verdict::Soluble(w) => return Verdict::Soluble(w),
                Verdict::Insoluble => {}
                Verdict::Undetermined(r) => pending = Some(r),
            }
        }
        pending.map_or(Verdict::Insoluble, Verdict::Undetermined)
    }

    #[allow(clippy::too_many_arguments)]
    fn witness(&self, f: &Poly, s0: &BigInt, z0: &BigInt, d: u32, a: u64, b: u64, along_s: bool) -> Verdict<GbqWitness> {
        let p = self.p;
        let g = f.shift_to(a, b);
        let scale = pow(p, d);
        let mut k = 2;
        while k <= 4096 {
            // univariate restriction through the residue point, moved to 0
            let coeffs: Vec<BigInt> = if along_s {
                (0..5).map(|i| g.c[i][0].clone()).collect()
            } else {
                (0..3).map(|j| g.c[0][j].clone()).collect()
            };
            let u = hensel_root(&coeffs, p, k);
            let (ls, lz) = if along_s { (u, BigInt::zero()) } else { (BigInt::zero(), u) };
            let s = s0 + &scale * (BigInt::from(a) + ls);
            let z = z0 + &scale * (BigInt::from(b) + lz);
            let w = GbqWitness { chart: self.chart, s, z, e: 0 };
            if let Some(e) = gbq_certificate(&self.original, p, &w) {
                return Verdict::Soluble(GbqWitness { e, ..w });
            }
            k *= 2;
        }
        Verdict::Undetermined(Reason::Precision)
    }
}

impl Poly {
    /// `f(a + s, b + z)`, an integer translation.
    fn shift_to(&self, a: u64, b: u64) -> Self {
        let mut c: [[BigInt; 3]; 5] = Default::default();
        for i in 0..5 {
            for j in 0..3 {
                if self.c[i][j].is_zero() {
                    continue;
                }
                for k in 0..=i {
                    for l in 0..=j {
                        c[k][l] += &self.c[i][j]
                            * binom(i, k)
                            * binom(j, l)
                            * BigInt::from(a).pow((i - k) as u32)
                            * BigInt::from(b).pow((j - l) as u32);
                    }
                }
            }
        }
        Poly { c }
    }
}

fn gbq_certificate(f: &Poly, p: u64, w: &GbqWitness) -> Option<u32> {
    let [v, vs, vz] = f.eval(&w.s, &w.z);
    let e = val(&vs, p).unwrap_or(u32::MAX).min(val(&vz, p).unwrap_or(u32::MAX));
    if e == u32::MAX {
        return None;
    }
    let fv = val(&v, p).unwrap_or(u32::MAX);
    (fv > 2 * e).then_some(e)
}

/// Whether `w` certifies a point of `z^2 + G2 z = G4` over Q_p.
pub fn certify_gbq_witness(g: &IntQuartic, p: u64, w: &GbqWitness) -> bool {
    gbq_certificate(&Poly::chart(g, w.chart), p, w).is_some()
}

/// Decide whether `z^2 + G2(x) z = G4(x)` has a solution with `x` in P^1(Q_p).
///
/// Works directly with the quadratic in `z`, so no square-root test is needed at `p = 2`.
pub fn decide_gbq(g: &IntQuartic, p: u64, max_depth: u32) -> Result<Verdict<GbqWitness>, QpError> {
    if !crate::is_prime(p) {
        return Err(QpError::NotPrime(p));
    }
    if p > crate::MAX_SEARCH_PRIME {
        return Err(QpError::PrimeTooLarge(p));
    }
    if g.is_zero() {
        return Err(QpError::AllZero);
    }
    let mut pending = None;
    for chart in [Chart::Finite, Chart::Infinite] {
        let f = Poly::chart(g, chart);
        let mut search = GbqSearch { p, max_depth, nodes: 0, original: f.clone(), chart };
        // the second chart only needs x1/x0 divisible by p
        match search.node(f, BigInt::zero(), BigInt::zero(), 0, chart == Chart::Infinite) {
            Verdict::Soluble(w) => return Ok(Verdict::Soluble(w)),
            Verdict::Insoluble => {}
            Verdict::Undetermined(r) => pending = Some(r),
        }
    }
    Ok(pending.map_or(Verdict::Insoluble, Verdict::Undetermined))
}
