use crate::ring::Ring;

/// Binary form `sum c[i] X0^(d-i) X1^i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BinaryForm<R> {
    pub coeffs: Vec<R>,
}

impl<R: Ring> BinaryForm<R> {
    pub fn new(coeffs: Vec<R>) -> Self {
        assert!(!coeffs.is_empty(), "a binary form has at least one coefficient");
        BinaryForm { coeffs }
    }

    pub fn zero(degree: usize) -> Self {
        BinaryForm { coeffs: vec![R::zero(); degree + 1] }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn eval(&self, x0: &R, x1: &R) -> R {
        let d = self.degree();
        let mut acc = R::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            acc = acc + c.clone() * pow(x0, d - i) * pow(x1, i);
        }
        acc
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = vec![R::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        BinaryForm { coeffs: out }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.degree(), other.degree());
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.clone() + b.clone()).collect();
        BinaryForm { coeffs }
    }

    pub fn scale(&self, s: &R) -> Self {
        BinaryForm { coeffs: self.coeffs.iter().map(|c| c.clone() * s.clone()).collect() }
    }

    pub fn neg(&self) -> Self {
        BinaryForm { coeffs: self.coeffs.iter().map(|c| -c.clone()).collect() }
    }

    pub fn map<S, F: Fn(&R) -> S>(&self, f: F) -> BinaryForm<S> {
        BinaryForm { coeffs: self.coeffs.iter().map(f).collect() }
    }
}

pub(crate) fn pow<R: Ring>(x: &R, e: usize) -> R {
    let mut acc = R::one();
    for _ in 0..e {
        acc = acc * x.clone();
    }
    acc
}

/// Discriminant of `a X0^4 + b X0^3 X1 + c X0^2 X1^2 + d X0 X1^3 + e X1^4`,
/// normalised so that it equals the polynomial discriminant of the
/// dehomogenised quartic (so `(4I^3 - J^2)/27` in terms of the usual invariants).
pub fn quartic_discriminant<R: Ring>(q: &BinaryForm<R>) -> R {
    assert_eq!(q.degree(), 4);
    let [a, b, c, d, e]: [R; 5] = q.coeffs.clone().try_into().expect("five coefficients");
    let k = |n: i64| R::from_i64(n);
    let p = |x: &R, n: usize| pow(x, n);
    let terms = [
        k(256) * p(&a, 3) * p(&e, 3),
        k(-192) * p(&a, 2) * b.clone() * d.clone() * p(&e, 2),
        k(-128) * p(&a, 2) * p(&c, 2) * p(&e, 2),
        k(144) * p(&a, 2) * c.clone() * p(&d, 2) * e.clone(),
        k(-27) * p(&a, 2) * p(&d, 4),
        k(144) * a.clone() * p(&b, 2) * c.clone() * p(&e, 2),
        k(-6) * a.clone() * p(&b, 2) * p(&d, 2) * e.clone(),
        k(-80) * a.clone() * b.clone() * p(&c, 2) * d.clone() * e.clone(),
        k(18) * a.clone() * b.clone() * c.clone() * p(&d, 3),
        k(16) * a.clone() * p(&c, 4) * e.clone(),
        k(-4) * a.clone() * p(&c, 3) * p(&d, 2),
        k(-27) * p(&b, 4) * p(&e, 2),
        k(18) * p(&b, 3) * c.clone() * d.clone() * e.clone(),
        k(-4) * p(&b, 3) * p(&d, 3),
        k(-4) * p(&b, 2) * p(&c, 3) * e.clone(),
        p(&b, 2) * p(&c, 2) * p(&d, 2),
    ];
    terms.into_iter().fold(R::zero(), |acc, t| acc + t)
}
