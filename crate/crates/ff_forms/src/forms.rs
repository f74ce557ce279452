use biform_core::{BiForm22, BinaryForm, Mat2};

use crate::field::{FiniteField, Gf, Gf2};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MonicClass {
    TwoDistinct,
    Conjugate,
    DoubleRoot,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BinaryClass {
    SplitDistinct,
    Irreducible,
    DoubleRoot,
    Zero,
}

/// Factorisation types of a (2,2)-form over F_q. Rows whose bidegrees are
/// not symmetric cover both the listed type and its transpose; see
/// [`FactorType::dual`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FactorTag {
    /// (1,1)(1,1)
    TwoConics,
    /// (2,1)(0,1)
    CubicLine,
    /// (1,1)(1,0)(0,1)
    ConicTwoLines,
    /// (1,0)(1,0)(0,1)(0,1)
    FourLines,
    /// (2,0)(0,1)(0,1)
    QuadTwoLines,
    /// (2,0)(0,2)
    TwoQuads,
    /// (1,0)^2(0,1)(0,1)
    DoubleLineTwoLines,
    /// (2,0)(0,1)^2
    QuadDoubleLine,
    /// (1,1)^2
    DoubleConic,
    /// (1,0)^2(0,1)^2
    TwoDoubleLines,
    Smooth,
    AbsIrredSingular,
    /// irreducible over F_q, a conjugate pair of (1,1) forms over F_{q^2}
    Conj11,
    Zero,
}

impl FactorTag {
    pub const ALL: [FactorTag; 14] = [
        FactorTag::TwoConics,
        FactorTag::CubicLine,
        FactorTag::ConicTwoLines,
        FactorTag::FourLines,
        FactorTag::QuadTwoLines,
        FactorTag::TwoQuads,
        FactorTag::DoubleLineTwoLines,
        FactorTag::QuadDoubleLine,
        FactorTag::DoubleConic,
        FactorTag::TwoDoubleLines,
        FactorTag::Smooth,
        FactorTag::AbsIrredSingular,
        FactorTag::Conj11,
        FactorTag::Zero,
    ];

    pub fn label(self) -> &'static str {
        match self {
            FactorTag::TwoConics => "(1,1)(1,1)",
            FactorTag::CubicLine => "(2,1)(0,1)|(1,2)(1,0)",
            FactorTag::ConicTwoLines => "(1,1)(1,0)(0,1)",
            FactorTag::FourLines => "(1,0)(1,0)(0,1)(0,1)",
            FactorTag::QuadTwoLines => "(2,0)(0,1)(0,1)|(0,2)(1,0)(1,0)",
            FactorTag::TwoQuads => "(2,0)(0,2)",
            FactorTag::DoubleLineTwoLines => "(1,0)^2(0,1)(0,1)|(0,1)^2(1,0)(1,0)",
            FactorTag::QuadDoubleLine => "(2,0)(0,1)^2|(0,2)(1,0)^2",
            FactorTag::DoubleConic => "(1,1)^2",
            FactorTag::TwoDoubleLines => "(1,0)^2(0,1)^2",
            FactorTag::Smooth => "smooth",
            FactorTag::AbsIrredSingular => "abs-irreducible-singular",
            FactorTag::Conj11 => "(1,1)(1,1)-conjugate",
            FactorTag::Zero => "zero",
        }
    }

    /// Whether the row's two variants are exchanged by swapping the P^1 factors.
    pub fn is_asymmetric(self) -> bool {
        matches!(
            self,
            FactorTag::CubicLine | FactorTag::QuadTwoLines | FactorTag::DoubleLineTwoLines | FactorTag::QuadDoubleLine
        )
    }
}

/// Position of the two singular points of a Conj11 curve.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Conj11Sub {
    RationalPair,
    ConjugatePair,
    SinglePoint,
}

impl Conj11Sub {
    pub const ALL: [Conj11Sub; 3] = [Conj11Sub::RationalPair, Conj11Sub::ConjugatePair, Conj11Sub::SinglePoint];

    pub fn label(self) -> &'static str {
        match self {
            Conj11Sub::RationalPair => "rational-pair",
            Conj11Sub::ConjugatePair => "conjugate-pair",
            Conj11Sub::SinglePoint => "single-point",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FactorType {
    pub tag: FactorTag,
    pub sub: Option<Conj11Sub>,
    /// set for the transposed variant of an asymmetric row
    pub dual: bool,
}

impl FactorType {
    fn plain(tag: FactorTag) -> Self {
        FactorType { tag, sub: None, dual: false }
    }

    fn oriented(tag: FactorTag, dual: bool) -> Self {
        FactorType { tag, sub: None, dual }
    }

    pub fn is_zero(&self) -> bool {
        self.tag == FactorTag::Zero
    }

    /// Type of the form with the two P^1 factors exchanged.
    pub fn transposed(self) -> Self {
        FactorType { dual: self.tag.is_asymmetric() && !self.dual, ..self }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PointPair<F> {
    pub x: [F; 2],
    pub y: [F; 2],
    pub smooth: bool,
}

/// Points of P^1(F) with first nonzero coordinate 1: `(1:t)` then `(0:1)`.
pub fn p1_points<F: FiniteField>() -> Vec<[F; 2]> {
    let mut v: Vec<[F; 2]> = F::elements().map(|t| [F::one(), t]).collect();
    v.push([F::zero(), F::one()]);
    v
}

pub fn normalize_point<F: FiniteField>(v: [F; 2]) -> [F; 2] {
    if !v[0].is_zero() {
        let i = v[0].inv().expect("nonzero");
        [F::one(), v[1] * i]
    } else {
        assert!(!v[1].is_zero(), "not a projective point");
        [F::zero(), F::one()]
    }
}

fn quad_roots<F: FiniteField>(f: &BinaryForm<F>, pts: &[[F; 2]]) -> Vec<[F; 2]> {
    pts.iter().copied().filter(|x| f.eval(&x[0], &x[1]).is_zero()).collect()
}

pub fn classify_monic_quadratic<F: FiniteField>(b: F, c: F) -> MonicClass {
    let roots = F::elements().filter(|&x| (x * x + b * x + c).is_zero()).count();
    match roots {
        2 => MonicClass::TwoDistinct,
        1 => MonicClass::DoubleRoot,
        _ => MonicClass::Conjugate,
    }
}

pub fn classify_binary_quadratic<F: FiniteField>(f: &BinaryForm<F>) -> BinaryClass {
    assert_eq!(f.degree(), 2);
    if f.is_zero() {
        return BinaryClass::Zero;
    }
    match quad_roots(f, &p1_points::<F>()).len() {
        2 => BinaryClass::SplitDistinct,
        1 => BinaryClass::DoubleRoot,
        _ => BinaryClass::Irreducible,
    }
}

fn grid_rank<F: FiniteField>(f: &BiForm22<F>) -> usize {
    let mut m = f.a;
    let mut rank = 0;
    for c in 0..3 {
        let Some(piv) = (rank..3).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(piv, rank);
        let inv = m[rank][c].inv().expect("pivot");
        for r in 0..3 {
            if r != rank && !m[r][c].is_zero() {
                let k = m[r][c] * inv;
                for cc in 0..3 {
                    m[r][cc] = m[r][cc] - k * m[rank][cc];
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Points x with `F(x, .) == 0`.
fn common_x_roots<F: FiniteField>(f: &BiForm22<F>, pts: &[[F; 2]]) -> Vec<[F; 2]> {
    let cols = [f.column(0), f.column(1), f.column(2)];
    pts.iter().copied().filter(|x| cols.iter().all(|c| c.eval(&x[0], &x[1]).is_zero())).collect()
}

fn common_y_roots<F: FiniteField>(f: &BiForm22<F>, pts: &[[F; 2]]) -> Vec<[F; 2]> {
    let rows = [f.row(0), f.row(1), f.row(2)];
    pts.iter().copied().filter(|y| rows.iter().all(|r| r.eval(&y[0], &y[1]).is_zero())).collect()
}

/// Fibre `F(x, .)` as a binary quadratic in Y.
fn fibre<F: FiniteField>(f: &BiForm22<F>, x: &[F; 2]) -> BinaryForm<F> {
    BinaryForm::new((0..3).map(|j| f.column(j).eval(&x[0], &x[1])).collect())
}

/// Matrix sending (1:0), (0:1), (1:1) to the three given points.
fn frame<F: FiniteField>(p: &[[F; 2]; 3]) -> Option<Mat2<F>> {
    // solve l0 p0 + l1 p1 = p2
    let det = p[0][0] * p[1][1] - p[1][0] * p[0][1];
    let di = det.inv()?;
    let l0 = (p[2][0] * p[1][1] - p[1][0] * p[2][1]) * di;
    let l1 = (p[0][0] * p[2][1] - p[2][0] * p[0][1]) * di;
    if l0.is_zero() || l1.is_zero() {
        return None;
    }
    Some(Mat2::new(l0 * p[0][0], l1 * p[1][0], l0 * p[0][1], l1 * p[1][1]))
}

fn inverse<F: FiniteField>(m: &Mat2<F>) -> Option<Mat2<F>> {
    let di = m.det().inv()?;
    let [[a, b], [c, d]] = m.m;
    Some(Mat2::new(d * di, -b * di, -c * di, a * di))
}

fn normalize_mat<F: FiniteField>(m: Mat2<F>) -> Mat2<F> {
    let lead = m.m.iter().flatten().copied().find(|c| !c.is_zero()).expect("nonzero matrix");
    let i = lead.inv().expect("nonzero");
    Mat2 { m: m.m.map(|r| r.map(|c| c * i)) }
}

/// Invertible N (up to scalar) whose graph `y = N x` lies on F. Requires F to
/// have no factor of bidegree (1,0) or (0,1).
pub fn bilinear_factors<F: FiniteField>(f: &BiForm22<F>) -> Vec<Mat2<F>> {
    let pts = p1_points::<F>();
    let xs = [pts[0], pts[1], pts[pts.len() - 1]];
    let roots: Vec<Vec<[F; 2]>> = xs.iter().map(|x| quad_roots(&fibre(f, x), &pts)).collect();
    if roots.iter().any(|r| r.is_empty()) {
        return Vec::new();
    }
    let Some(a) = frame(&xs) else { return Vec::new() };
    let a_inv = inverse(&a).expect("frame is invertible");
    let mut found: Vec<Mat2<F>> = Vec::new();
    for y0 in &roots[0] {
        for y1 in &roots[1] {
            for y2 in &roots[2] {
                let Some(b) = frame(&[*y0, *y1, *y2]) else { continue };
                let n = normalize_mat(b.mul(&a_inv));
                if found.contains(&n) {
                    continue;
                }
                if f.restrict_to_graph(&n).is_zero() {
                    found.push(n);
                }
            }
        }
    }
    found
}

fn is_smooth_at<F: FiniteField>(f: &BiForm22<F>, x: &[F; 2], y: &[F; 2]) -> bool {
    let g = f.gradient(x, y);
    // partial in the chart variable: X1 when x = (1:t), X0 when x = (0:1)
    let gx = if x[0].is_zero() { g[0] } else { g[1] };
    let gy = if y[0].is_zero() { g[2] } else { g[3] };
    !gx.is_zero() || !gy.is_zero()
}

pub fn points_on_curve<F: FiniteField>(f: &BiForm22<F>) -> Vec<PointPair<F>> {
    let pts = p1_points::<F>();
    let mut out = Vec::new();
    for x in &pts {
        for y in &pts {
            if f.eval(x, y).is_zero() {
                out.push(PointPair { x: *x, y: *y, smooth: is_smooth_at(f, x, y) });
            }
        }
    }
    out
}

pub fn has_smooth_point<F: FiniteField>(f: &BiForm22<F>) -> Option<PointPair<F>> {
    let pts = p1_points::<F>();
    for x in &pts {
        for y in &pts {
            if f.eval(x, y).is_zero() && is_smooth_at(f, x, y) {
                return Some(PointPair { x: *x, y: *y, smooth: true });
            }
        }
    }
    None
}

fn combine_pure(cx: BinaryClass, cy: BinaryClass) -> FactorType {
    use BinaryClass::*;
    use FactorTag::*;
    match (cx, cy) {
        (SplitDistinct, SplitDistinct) => FactorType::plain(FourLines),
        (Irreducible, SplitDistinct) => FactorType::oriented(QuadTwoLines, false),
        (SplitDistinct, Irreducible) => FactorType::oriented(QuadTwoLines, true),
        (Irreducible, Irreducible) => FactorType::plain(TwoQuads),
        (DoubleRoot, SplitDistinct) => FactorType::oriented(DoubleLineTwoLines, false),
        (SplitDistinct, DoubleRoot) => FactorType::oriented(DoubleLineTwoLines, true),
        (Irreducible, DoubleRoot) => FactorType::oriented(QuadDoubleLine, false),
        (DoubleRoot, Irreducible) => FactorType::oriented(QuadDoubleLine, true),
        (DoubleRoot, DoubleRoot) => FactorType::plain(TwoDoubleLines),
        _ => unreachable!("rank-one grid has nonzero factors"),
    }
}

/// Factorisation type over F_Q. Forms irreducible over F_Q are split into
/// smooth, absolutely irreducible singular and Conj11 (two conjugate (1,1)
/// components over F_{Q^2}).
pub fn factorization_type<const Q: u8>(f: &BiForm22<Gf<Q>>) -> FactorType {
    if f.is_zero() {
        return FactorType::plain(FactorTag::Zero);
    }
    if grid_rank(f) == 1 {
        let j = (0..3).find(|&j| !f.column(j).is_zero()).expect("nonzero column");
        let i = (0..3).find(|&i| !f.row(i).is_zero()).expect("nonzero row");
        return combine_pure(classify_binary_quadratic(&f.column(j)), classify_binary_quadratic(&f.row(i)));
    }
    let pts = p1_points::<Gf<Q>>();
    let xr = !common_x_roots(f, &pts).is_empty();
    let yr = !common_y_roots(f, &pts).is_empty();
    match (xr, yr) {
        (true, true) => return FactorType::plain(FactorTag::ConicTwoLines),
        (false, true) => return FactorType::oriented(FactorTag::CubicLine, false),
        (true, false) => return FactorType::oriented(FactorTag::CubicLine, true),
        (false, false) => {}
    }
    match bilinear_factors(f).len() {
        0 => {}
        1 => return FactorType::plain(FactorTag::DoubleConic),
        _ => return FactorType::plain(FactorTag::TwoConics),
    }
    let lifted: BiForm22<Gf2<Q>> = f.map(|c| Gf2::embed(*c));
    if !bilinear_factors(&lifted).is_empty() {
        let sub = match points_on_curve(f).len() {
            0 => Conj11Sub::ConjugatePair,
            1 => Conj11Sub::SinglePoint,
            _ => Conj11Sub::RationalPair,
        };
        return FactorType { tag: FactorTag::Conj11, sub: Some(sub), dual: false };
    }
    if points_on_curve(f).iter().any(|pt| !pt.smooth) {
        FactorType::plain(FactorTag::AbsIrredSingular)
    } else {
        FactorType::plain(FactorTag::Smooth)
    }
}
