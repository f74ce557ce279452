use std::fmt;

use biform_core::{IntForm, IntMat, Mat2};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::padic::{cells, inv_mod, pow, val, val_mod, PadicForm};
use crate::{modp, QpError};

pub const DEFAULT_MAX_DEPTH: u32 = 64;
/// Search nodes allowed per decision; discriminant-zero forms can branch forever.
pub const NODE_BUDGET: u64 = 20_000;
/// Residue points examined per decision.
pub const WORK_BUDGET: u64 = 20_000_000;
const LIFT_LIMIT: u32 = 4096;

/// Which affine chart of P^1 a coordinate lives on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Chart {
    /// `(s : 1)`
    Finite,
    /// `(1 : s)`
    Infinite,
}

impl Chart {
    pub fn point(self, s: &BigInt) -> [BigInt; 2] {
        match self {
            Chart::Finite => [s.clone(), BigInt::one()],
            Chart::Infinite => [BigInt::one(), s.clone()],
        }
    }

    /// Index of the coordinate whose partial derivative is the chart derivative.
    fn partial_index(self) -> usize {
        match self {
            Chart::Finite => 0,
            Chart::Infinite => 1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Patch {
    pub x: Chart,
    pub y: Chart,
}

/// A residue solution certified by quantitative Hensel.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub patch: Patch,
    pub x: BigInt,
    pub y: BigInt,
    /// The point is known modulo `p^precision`.
    pub precision: u32,
    /// Valuation of the best chart partial derivative.
    pub e: u32,
}

fn show(c: Chart, s: &BigInt) -> String {
    match c {
        Chart::Finite => format!("({s}:1)"),
        Chart::Infinite => format!("(1:{s})"),
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{}) mod p^{} e={}", show(self.patch.x, &self.x), show(self.patch.y, &self.y), self.precision, self.e)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Reason {
    Precision,
    Depth,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict<W = Witness> {
    Soluble(W),
    Insoluble,
    Undetermined(Reason),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Outcome {
    Soluble,
    Insoluble,
    Undetermined,
}

impl<W> Verdict<W> {
    pub fn outcome(&self) -> Outcome {
        match self {
            Verdict::Soluble(_) => Outcome::Soluble,
            Verdict::Insoluble => Outcome::Insoluble,
            Verdict::Undetermined(_) => Outcome::Undetermined,
        }
    }

    pub fn is_soluble(&self) -> bool {
        matches!(self, Verdict::Soluble(_))
    }
}

/// Residues of P^1(F_p): index `i < p` is `(i:1)`, index `p` is `(1:0)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueSet(pub Vec<bool>);

impl ResidueSet {
    pub fn full(p: u64) -> Self {
        ResidueSet(vec![true; p as usize + 1])
    }

    /// Residues `(i:1)` only.
    pub fn affine(p: u64) -> Self {
        let mut v = vec![true; p as usize + 1];
        v[p as usize] = false;
        ResidueSet(v)
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.0.iter().enumerate().filter(|(_, b)| **b).map(|(i, _)| i as u64)
    }

    pub fn is_empty(&self) -> bool {
        !self.0.iter().any(|b| *b)
    }
}

/// A search for points of `form` reducing into `allowed_x` x `allowed_y`.
#[derive(Clone, Debug)]
pub struct LocalProblem {
    pub form: PadicForm,
    pub allowed_x: ResidueSet,
    pub allowed_y: ResidueSet,
    pub depth: u32,
    /// Power of p already divided out of `form`.
    pub scale: u32,
}

impl LocalProblem {
    pub fn new(form: PadicForm) -> Self {
        let p = form.p;
        LocalProblem { form, allowed_x: ResidueSet::full(p), allowed_y: ResidueSet::full(p), depth: 0, scale: 0 }
    }

    /// Only points with `p` not dividing `X1 Y1`.
    pub fn affine(form: PadicForm) -> Self {
        let p = form.p;
        LocalProblem { form, allowed_x: ResidueSet::affine(p), allowed_y: ResidueSet::affine(p), depth: 0, scale: 0 }
    }
}

/// Matrix sending `(0:1)` to the residue with index `i`.
fn translate(p: u64, i: u64) -> IntMat {
    if i == p {
        Mat2::swap()
    } else {
        Mat2::shear(BigInt::from(i))
    }
}

fn dilate(p: u64) -> IntMat {
    Mat2::scale_first(BigInt::from(p))
}

enum Node {
    Done(Verdict),
    Form { g: IntForm, c: u32 },
}

struct Search<'a> {
    f: &'a mut PadicForm,
    p: u64,
    max_depth: u32,
    nodes: u64,
    work: u64,
}

impl Search<'_> {
    /// `F(Mx, Ny)` with content divided out, learning digits as needed.
    fn current(&mut self, mx: &IntMat, my: &IntMat) -> Node {
        loop {
            let prec = self.f.precision();
            let h = self.f.residues().act(mx, my);
            let c = h.coeffs().map(|x| val_mod(x, self.p, prec)).min().expect("nine");
            if c < prec {
                let m = pow(self.p, prec - c);
                let d = pow(self.p, c);
                let g = h.map(|x| (x.mod_floor(&pow(self.p, prec)) / &d).mod_floor(&m));
                return Node::Form { g, c };
            }
            if prec >= LIFT_LIMIT || !self.f.extend_to(prec + 4 + prec / 2) {
                return Node::Done(Verdict::Undetermined(Reason::Precision));
            }
        }
    }

    fn node(&mut self, mx: IntMat, my: IntMat, ax: &ResidueSet, ay: &ResidueSet, depth: u32) -> Verdict {
        self.nodes += 1;
        let (g, c) = match self.current(&mx, &my) {
            Node::Done(v) => return v,
            Node::Form { g, c } => (g, c),
        };
        let p = self.p;
        let gp: [[u64; 3]; 3] = std::array::from_fn(|i| {
            std::array::from_fn(|j| g.a[i][j].mod_floor(&BigInt::from(p)).try_into().expect("small"))
        });
        let mut singular = Vec::new();
        for xi in ax.iter() {
            let ys = zeros_over(&gp, p, xi, ay);
            self.work += 1 + ys.len() as u64;
            for yi in ys {
                match residue_status(&gp, p, xi, yi) {
                    Status::Off => {}
                    Status::Smooth => return self.witness(&mx, &my, c, xi, yi),
                    Status::Singular => singular.push((xi, yi)),
                }
            }
        }
        if singular.is_empty() {
            return Verdict::Insoluble;
        }
        if depth >= self.max_depth || self.nodes >= NODE_BUDGET || self.work >= WORK_BUDGET {
            return Verdict::Undetermined(Reason::Depth);
        }
        let affine = ResidueSet::affine(p);
        let mut pending = None;
        for (xi, yi) in singular {
            let cx = mx.mul(&translate(p, xi)).mul(&dilate(p));
            let cy = my.mul(&translate(p, yi)).mul(&dilate(p));
            match self.node(cx, cy, &affine, &affine, depth + 1) {
                Verdict::Soluble(w) => return Verdict::Soluble(w),
                Verdict::Insoluble => {}
                Verdict::Undetermined(r) => pending = Some(r),
            }
        }
        pending.map_or(Verdict::Insoluble, Verdict::Undetermined)
    }

    /// Lift a smooth residue point of the current node and certify it on `F`.
    fn witness(&mut self, mx: &IntMat, my: &IntMat, c: u32, xi: u64, yi: u64) -> Verdict {
        let p = self.p;
        let m = mx.mul(&translate(p, xi));
        let n = my.mul(&translate(p, yi));
        let mut k = 1;
        loop {
            let want = c + k + 1;
            if self.f.precision() < want {
                self.f.extend_to(want);
            }
            let prec = self.f.precision();
            if prec <= c {
                return Verdict::Undetermined(Reason::Precision);
            }
            let kk = k.min(prec - c);
            let h = self.f.residues().act(&m, &n);
            let d = pow(p, c);
            let g = h.map(|x| x.mod_floor(&pow(p, prec)) / &d);
            let unit = |x: &BigInt| !x.mod_floor(&BigInt::from(p)).is_zero();
            // g(s,t) has constant term g22, s-term g12, t-term g21
            let (s, t) = if unit(&g.a[1][2]) {
                let coeffs = [g.a[2][2].clone(), g.a[1][2].clone(), g.a[0][2].clone()];
                (hensel_root(&coeffs, p, kk), BigInt::zero())
            } else {
                let coeffs = [g.a[2][2].clone(), g.a[2][1].clone(), g.a[2][0].clone()];
                (BigInt::zero(), hensel_root(&coeffs, p, kk))
            };
            let x = m.apply(&[s, BigInt::one()]);
            let y = n.apply(&[t, BigInt::one()]);
            let (cx, sx) = to_chart(&x, p, prec);
            let (cy, sy) = to_chart(&y, p, prec);
            let w = Witness { patch: Patch { x: cx, y: cy }, x: sx, y: sy, precision: prec, e: 0 };
            if let Some(e) = certificate(self.f, &w) {
                return Verdict::Soluble(Witness { e, ..w });
            }
            if kk < k || k >= LIFT_LIMIT {
                return Verdict::Undetermined(Reason::Precision);
            }
            k *= 2;
        }
    }
}

enum Status {
    Off,
    Smooth,
    Singular,
}

fn residue_point(i: u64, p: u64) -> [u64; 2] {
    if i == p {
        [1, 0]
    } else {
        [i, 1]
    }
}

fn monomials(v: [u64; 2], p: u64) -> [u64; 3] {
    [modp::mul(v[0], v[0], p), modp::mul(v[0], v[1], p), modp::mul(v[1], v[1], p)]
}

fn residue_status(g: &[[u64; 3]; 3], p: u64, xi: u64, yi: u64) -> Status {
    use modp::{add, mul};
    let x = residue_point(xi, p);
    let y = residue_point(yi, p);
    let (mx, my) = (monomials(x, p), monomials(y, p));
    let dmono = |v: [u64; 2]| [[mul(2, v[0], p), v[1] % p, 0], [0, v[0] % p, mul(2, v[1], p)]];
    let (ddx, ddy) = (dmono(x), dmono(y));
    let mut f = 0u64;
    let mut dx = [0u64; 2];
    let mut dy = [0u64; 2];
    for (i, j) in cells() {
        let a = g[i][j];
        f = add(f, mul(mul(a, mx[i], p), my[j], p), p);
        for k in 0..2 {
            dx[k] = add(dx[k], mul(mul(a, ddx[k][i], p), my[j], p), p);
            dy[k] = add(dy[k], mul(mul(a, mx[i], p), ddy[k][j], p), p);
        }
    }
    if f != 0 {
        return Status::Off;
    }
    // chart derivative: along X0 on (s:1), along X1 on (1:s)
    let kx = usize::from(xi == p);
    let ky = usize::from(yi == p);
    if dx[kx] != 0 || dy[ky] != 0 {
        Status::Smooth
    } else {
        Status::Singular
    }
}

/// Residues `y` in the allowed set with `G(x, y) = 0 mod p`.
fn zeros_over(g: &[[u64; 3]; 3], p: u64, xi: u64, ay: &ResidueSet) -> Vec<u64> {
    let mx = monomials(residue_point(xi, p), p);
    let a: [u64; 3] = std::array::from_fn(|j| {
        (0..3).fold(0, |acc, i| modp::add(acc, modp::mul(g[i][j], mx[i], p), p))
    });
    match modp::quadratic_roots(a[0], a[1], a[2], p) {
        None => ay.iter().collect(),
        Some(r) => r.into_iter().filter(|&y| ay.0[y as usize]).collect(),
    }
}

/// Root near 0 of `c0 + c1 u + c2 u^2 + ...` modulo `p^k`, assuming `c1` is a
/// unit and `c0 = 0 mod p`.
pub fn hensel_root(c: &[BigInt], p: u64, k: u32) -> BigInt {
    let m = pow(p, k.max(1));
    let mut u = BigInt::zero();
    let mut known = 1;
    loop {
        let (fu, du) = eval_with_derivative(c, &u);
        let Some(inv) = inv_mod(&du, &m) else { return u };
        u = (&u - fu * inv).mod_floor(&m);
        if known >= k {
            return u;
        }
        known *= 2;
    }
}

fn eval_with_derivative(c: &[BigInt], u: &BigInt) -> (BigInt, BigInt) {
    let mut f = BigInt::zero();
    let mut d = BigInt::zero();
    for a in c.iter().rev() {
        d = d * u + &f;
        f = f * u + a;
    }
    (f, d)
}

/// Scale a nonzero integer vector to a primitive one and read off its chart.
fn to_chart(v: &[BigInt; 2], p: u64, prec: u32) -> (Chart, BigInt) {
    let a = val(&v[0], p).unwrap_or(u32::MAX);
    let b = val(&v[1], p).unwrap_or(u32::MAX);
    let m = pow(p, prec);
    if b <= a {
        let s = &v[0] / pow(p, b);
        let u = &v[1] / pow(p, b);
        (Chart::Finite, (s * inv_mod(&u, &m).expect("unit")).mod_floor(&m))
    } else {
        let s = &v[1] / pow(p, a);
        let u = &v[0] / pow(p, a);
        (Chart::Infinite, (s * inv_mod(&u, &m).expect("unit")).mod_floor(&m))
    }
}

/// The certified exponent `e` of a witness, if the Hensel certificate holds.
fn certificate(f: &PadicForm, w: &Witness) -> Option<u32> {
    let n = w.precision;
    if n == 0 || f.precision() < n {
        return None;
    }
    let m = pow(f.p, n);
    let g: IntForm = f.residues().map(|c| c.mod_floor(&m));
    let x = w.patch.x.point(&w.x);
    let y = w.patch.y.point(&w.y);
    let v = val_mod(&g.eval(&x, &y), f.p, n);
    let grad = g.gradient(&x, &y);
    let ex = val_mod(&grad[w.patch.x.partial_index()], f.p, n);
    let ey = val_mod(&grad[2 + w.patch.y.partial_index()], f.p, n);
    let e = ex.min(ey);
    (2 * e < n && v > 2 * e).then_some(e)
}

/// Whether `w` is a quantitative Hensel certificate for a point of `F = 0`:
/// `v(F) > 2e` with `2e < N`, `e` the least valuation of the chart partials.
pub fn certify_witness(f: &PadicForm, w: &Witness) -> bool {
    certificate(f, w).is_some()
}

/// Decide whether `F = 0` has a point over Q_p.
pub fn decide_qp(f: &mut PadicForm, max_depth: u32) -> Result<Verdict, QpError> {
    if f.p > crate::MAX_SEARCH_PRIME {
        return Err(QpError::PrimeTooLarge(f.p));
    }
    let mut problem = LocalProblem::new(f.clone());
    let v = decide_local(&mut problem, max_depth)?;
    *f = problem.form;
    Ok(v)
}

/// Decide whether the form has a Q_p-point reducing into the allowed set.
pub fn decide_local(problem: &mut LocalProblem, max_depth: u32) -> Result<Verdict, QpError> {
    let p = problem.form.p;
    if !crate::is_prime(p) {
        return Err(QpError::NotPrime(p));
    }
    if problem.allowed_x.0.len() != p as usize + 1 || problem.allowed_y.0.len() != p as usize + 1 {
        return Err(QpError::ResidueSetSize);
    }
    if problem.allowed_x.is_empty() || problem.allowed_y.is_empty() {
        return Ok(Verdict::Insoluble);
    }
    // content check up front so an all-zero form is reported as such
    crate::padic::normalize(&problem.form)?;
    let mut search = Search { f: &mut problem.form, p, max_depth: max_depth.saturating_sub(problem.depth), nodes: 0, work: 0 };
    let id = Mat2::identity();
    let (ax, ay) = (problem.allowed_x.clone(), problem.allowed_y.clone());
    Ok(search.node(id.clone(), id, &ax, &ay, 0))
}

/// Convenience wrapper for integer forms.
pub fn decide_int(f: &IntForm, p: u64, max_depth: u32) -> Result<Verdict, QpError> {
    decide_qp(&mut PadicForm::from_integers(p, f), max_depth)
}
