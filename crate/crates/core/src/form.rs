use crate::binary::{quartic_discriminant, BinaryForm};
use crate::ring::Ring;

/// 2x2 matrix acting on a pair of projective coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat2<R> {
    pub m: [[R; 2]; 2],
}

impl<R: Ring> Mat2<R> {
    pub fn new(m00: R, m01: R, m10: R, m11: R) -> Self {
        Mat2 { m: [[m00, m01], [m10, m11]] }
    }

    pub fn identity() -> Self {
        Self::new(R::one(), R::zero(), R::zero(), R::one())
    }

    pub fn swap() -> Self {
        Self::new(R::zero(), R::one(), R::one(), R::zero())
    }

    /// `X0 <- X0 + c X1`.
    pub fn shear(c: R) -> Self {
        Self::new(R::one(), c, R::zero(), R::one())
    }

    /// `X0 <- s X0`.
    pub fn scale_first(s: R) -> Self {
        Self::new(s, R::zero(), R::zero(), R::one())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let a = &self.m;
        let b = &o.m;
        let e = |i: usize, j: usize| a[i][0].clone() * b[0][j].clone() + a[i][1].clone() * b[1][j].clone();
        Self::new(e(0, 0), e(0, 1), e(1, 0), e(1, 1))
    }

    pub fn det(&self) -> R {
        self.m[0][0].clone() * self.m[1][1].clone() - self.m[0][1].clone() * self.m[1][0].clone()
    }

    pub fn apply(&self, v: &[R; 2]) -> [R; 2] {
        [
            self.m[0][0].clone() * v[0].clone() + self.m[0][1].clone() * v[1].clone(),
            self.m[1][0].clone() * v[0].clone() + self.m[1][1].clone() * v[1].clone(),
        ]
    }

    /// Images of X0^2, X0X1, X1^2 under the substitution, as coefficient rows.
    fn quadratic_images(&self) -> [[R; 3]; 3] {
        let [[a, b], [c, d]] = self.m.clone();
        let two = R::from_i64(2);
        [
            [a.clone() * a.clone(), two.clone() * a.clone() * b.clone(), b.clone() * b.clone()],
            [a.clone() * c.clone(), a.clone() * d.clone() + b.clone() * c.clone(), b.clone() * d.clone()],
            [c.clone() * c.clone(), two * c * d.clone(), d.clone() * d],
        ]
    }
}

/// Bidegree (2,2) form; `a[i][j]` is the coefficient of
/// `X0^(2-i) X1^i Y0^(2-j) Y1^j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BiForm22<R> {
    pub a: [[R; 3]; 3],
}

impl<R> BiForm22<R> {
    pub fn new(a: [[R; 3]; 3]) -> Self {
        BiForm22 { a }
    }

    pub fn map<S, F: FnMut(&R) -> S>(&self, mut f: F) -> BiForm22<S> {
        BiForm22 {
            a: [
                [f(&self.a[0][0]), f(&self.a[0][1]), f(&self.a[0][2])],
                [f(&self.a[1][0]), f(&self.a[1][1]), f(&self.a[1][2])],
                [f(&self.a[2][0]), f(&self.a[2][1]), f(&self.a[2][2])],
            ],
        }
    }

    /// Coefficients in row-major grid order.
    pub fn coeffs(&self) -> impl Iterator<Item = &R> {
        self.a.iter().flat_map(|r| r.iter())
    }
}

impl<R: Clone> BiForm22<R> {
    pub fn from_row_major(c: &[R]) -> Self {
        assert_eq!(c.len(), 9, "a (2,2)-form has nine coefficients");
        BiForm22 {
            a: [
                [c[0].clone(), c[1].clone(), c[2].clone()],
                [c[3].clone(), c[4].clone(), c[5].clone()],
                [c[6].clone(), c[7].clone(), c[8].clone()],
            ],
        }
    }

    pub fn to_row_major(&self) -> Vec<R> {
        self.coeffs().cloned().collect()
    }

    /// Swap the roles of the two P^1 factors.
    pub fn transpose(&self) -> Self {
        let a = &self.a;
        BiForm22 {
            a: [
                [a[0][0].clone(), a[1][0].clone(), a[2][0].clone()],
                [a[0][1].clone(), a[1][1].clone(), a[2][1].clone()],
                [a[0][2].clone(), a[1][2].clone(), a[2][2].clone()],
            ],
        }
    }
}

impl<R: Ring> BiForm22<R> {
    pub fn zero() -> Self {
        BiForm22 { a: std::array::from_fn(|_| std::array::from_fn(|_| R::zero())) }
    }

    pub fn from_i64(c: [i64; 9]) -> Self {
        Self::from_row_major(&c.map(R::from_i64))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs().all(|c| c.is_zero())
    }

    /// Outer product `f(X) g(Y)` of two binary quadratics.
    pub fn product(f: &BinaryForm<R>, g: &BinaryForm<R>) -> Self {
        assert_eq!((f.degree(), g.degree()), (2, 2));
        BiForm22 { a: std::array::from_fn(|i| std::array::from_fn(|j| f.coeffs[i].clone() * g.coeffs[j].clone())) }
    }

    /// `F_j(X)`, the coefficient of `Y0^(2-j) Y1^j`.
    pub fn column(&self, j: usize) -> BinaryForm<R> {
        BinaryForm::new(vec![self.a[0][j].clone(), self.a[1][j].clone(), self.a[2][j].clone()])
    }

    /// The coefficient of `X0^(2-i) X1^i`, a quadratic in Y.
    pub fn row(&self, i: usize) -> BinaryForm<R> {
        BinaryForm::new(self.a[i].to_vec())
    }

    pub fn scale(&self, s: &R) -> Self {
        self.map(|c| c.clone() * s.clone())
    }

    pub fn add(&self, o: &Self) -> Self {
        BiForm22 { a: std::array::from_fn(|i| std::array::from_fn(|j| self.a[i][j].clone() + o.a[i][j].clone())) }
    }

    pub fn eval(&self, x: &[R; 2], y: &[R; 2]) -> R {
        let xm = monomials(x);
        let ym = monomials(y);
        let mut acc = R::zero();
        for i in 0..3 {
            for j in 0..3 {
                if !self.a[i][j].is_zero() {
                    acc = acc + self.a[i][j].clone() * xm[i].clone() * ym[j].clone();
                }
            }
        }
        acc
    }

    /// Formal partials `[dF/dX0, dF/dX1, dF/dY0, dF/dY1]` at a point.
    pub fn gradient(&self, x: &[R; 2], y: &[R; 2]) -> [R; 4] {
        let xm = monomials(x);
        let ym = monomials(y);
        let xd = derivative_monomials(x);
        let yd = derivative_monomials(y);
        let mut g: [R; 4] = std::array::from_fn(|_| R::zero());
        for i in 0..3 {
            for j in 0..3 {
                let c = &self.a[i][j];
                if c.is_zero() {
                    continue;
                }
                g[0] = g[0].clone() + c.clone() * xd[0][i].clone() * ym[j].clone();
                g[1] = g[1].clone() + c.clone() * xd[1][i].clone() * ym[j].clone();
                g[2] = g[2].clone() + c.clone() * xm[i].clone() * yd[0][j].clone();
                g[3] = g[3].clone() + c.clone() * xm[i].clone() * yd[1][j].clone();
            }
        }
        g
    }

    /// `F(M x, N y)`.
    pub fn act(&self, m: &Mat2<R>, n: &Mat2<R>) -> Self {
        let px = m.quadratic_images();
        let py = n.quadratic_images();
        let mut b: [[R; 3]; 3] = std::array::from_fn(|_| std::array::from_fn(|_| R::zero()));
        for (i, row) in self.a.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for k in 0..3 {
                    if px[i][k].is_zero() {
                        continue;
                    }
                    let ck = c.clone() * px[i][k].clone();
                    for l in 0..3 {
                        if !py[j][l].is_zero() {
                            b[k][l] = b[k][l].clone() + ck.clone() * py[j][l].clone();
                        }
                    }
                }
            }
        }
        BiForm22 { a: b }
    }

    /// `F(x, N x)` as a binary quartic in x.
    pub fn restrict_to_graph(&self, n: &Mat2<R>) -> BinaryForm<R> {
        let g = self.act(&Mat2::identity(), n);
        let mut c = vec![R::zero(); 5];
        for i in 0..3 {
            for j in 0..3 {
                c[i + j] = c[i + j].clone() + g.a[i][j].clone();
            }
        }
        BinaryForm::new(c)
    }
}

fn monomials<R: Ring>(v: &[R; 2]) -> [R; 3] {
    [v[0].clone() * v[0].clone(), v[0].clone() * v[1].clone(), v[1].clone() * v[1].clone()]
}

/// Partials of `X0^2, X0X1, X1^2` w.r.t. X0 (row 0) and X1 (row 1).
fn derivative_monomials<R: Ring>(v: &[R; 2]) -> [[R; 3]; 2] {
    let two = R::from_i64(2);
    [
        [two.clone() * v[0].clone(), v[1].clone(), R::zero()],
        [R::zero(), v[0].clone(), two * v[1].clone()],
    ]
}

/// A pair `(G2, G4)` of binary forms of degrees 2 and 4, read as `Z^2 + G2 Z = G4`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GenBinaryQuartic<R> {
    pub g2: BinaryForm<R>,
    pub g4: BinaryForm<R>,
}

impl<R: Ring> GenBinaryQuartic<R> {
    pub fn new(g2: BinaryForm<R>, g4: BinaryForm<R>) -> Self {
        assert_eq!((g2.degree(), g4.degree()), (2, 4));
        GenBinaryQuartic { g2, g4 }
    }

    pub fn is_zero(&self) -> bool {
        self.g2.is_zero() && self.g4.is_zero()
    }

    /// `G2^2 + 4 G4`.
    pub fn quartic(&self) -> BinaryForm<R> {
        self.g2.mul(&self.g2).add(&self.g4.scale(&R::from_i64(4)))
    }
}

/// Writing `F = F0 Y0^2 + F1 Y0 Y1 + F2 Y1^2`, returns `(F1, -F0 F2)`.
pub fn phi<R: Ring>(f: &BiForm22<R>) -> GenBinaryQuartic<R> {
    GenBinaryQuartic::new(f.column(1), f.column(0).mul(&f.column(2)).neg())
}

/// Discriminant of the binary quartic `F1^2 - 4 F0 F2` obtained by projecting
/// to the first P^1, normalised as in [`quartic_discriminant`]. Degree 12 in
/// the coefficients of `F`.
pub fn discriminant<R: Ring>(f: &BiForm22<R>) -> R {
    quartic_discriminant(&phi(f).quartic())
}

/// The same invariant computed through the second projection.
pub fn discriminant_second<R: Ring>(f: &BiForm22<R>) -> R {
    discriminant(&f.transpose())
}
