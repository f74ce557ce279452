use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};

use biform_core::Ring;
use num_traits::{One, Zero};
use thiserror::Error;

pub const MAX_Q: usize = 9;
pub const SUPPORTED_Q: [u8; 7] = [2, 3, 4, 5, 7, 8, 9];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("unsupported field size {0}; expected one of 2,3,4,5,7,8,9")]
    Unsupported(u32),
    #[error("field tables for q={q} violate {axiom}")]
    Axiom { q: u8, axiom: &'static str },
}

/// Addition/multiplication tables of F_q. Elements are encoded as base-p
/// digit strings of their coordinates in the power basis of a fixed
/// generating polynomial; multiplication goes through log/antilog tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldTables {
    pub q: u8,
    pub p: u8,
    pub k: u8,
    pub add: [[u8; MAX_Q]; MAX_Q],
    pub mul: [[u8; MAX_Q]; MAX_Q],
    pub neg: [u8; MAX_Q],
    pub inv: [u8; MAX_Q],
    pub log: [u8; MAX_Q],
    pub exp: [u8; MAX_Q],
}

/// `(p, k, r)` with `theta^k = r[0] + r[1] theta + r[2] theta^2`.
const fn presentation(q: u8) -> Option<(u8, u8, [u8; 3])> {
    match q {
        2 | 3 | 5 | 7 => Some((q, 1, [0, 0, 0])),
        4 => Some((2, 2, [1, 1, 0])),
        8 => Some((2, 3, [1, 1, 0])),
        9 => Some((3, 2, [2, 0, 0])),
        _ => None,
    }
}

const fn digits(x: u8, p: u8) -> [u8; 3] {
    [x % p, (x / p) % p, (x / p / p) % p]
}

const fn undigits(d: [u8; 3], p: u8) -> u8 {
    d[0] + p * (d[1] + p * d[2])
}

const fn poly_mul(a: u8, b: u8, p: u8, k: u8, r: [u8; 3]) -> u8 {
    let da = digits(a, p);
    let db = digits(b, p);
    let mut prod = [0u32; 5];
    let mut i = 0;
    while i < 3 {
        let mut j = 0;
        while j < 3 {
            prod[i + j] += (da[i] as u32) * (db[j] as u32);
            j += 1;
        }
        i += 1;
    }
    let mut deg = 4;
    while deg >= k as usize {
        let c = prod[deg] % p as u32;
        prod[deg] = 0;
        let mut t = 0;
        while t < k as usize {
            prod[deg - k as usize + t] += c * r[t] as u32;
            t += 1;
        }
        deg -= 1;
    }
    undigits([(prod[0] % p as u32) as u8, (prod[1] % p as u32) as u8, (prod[2] % p as u32) as u8], p)
}

impl FieldTables {
    pub const fn build(q: u8) -> FieldTables {
        let Some((p, k, r)) = presentation(q) else {
            panic!("unsupported field size");
        };
        let mut t = FieldTables {
            q,
            p,
            k,
            add: [[0; MAX_Q]; MAX_Q],
            mul: [[0; MAX_Q]; MAX_Q],
            neg: [0; MAX_Q],
            inv: [0; MAX_Q],
            log: [0; MAX_Q],
            exp: [0; MAX_Q],
        };
        let n = q as usize;
        let mut a = 0;
        while a < n {
            let da = digits(a as u8, p);
            t.neg[a] = undigits([(p - da[0]) % p, (p - da[1]) % p, (p - da[2]) % p], p);
            let mut b = 0;
            while b < n {
                let db = digits(b as u8, p);
                t.add[a][b] = undigits([(da[0] + db[0]) % p, (da[1] + db[1]) % p, (da[2] + db[2]) % p], p);
                b += 1;
            }
            a += 1;
        }
        // smallest generator of the multiplicative group
        let mut g = 1u8;
        loop {
            g += 1;
            if g as usize >= n && n > 2 {
                panic!("no generator");
            }
            if n == 2 {
                g = 1;
            }
            let mut x = 1u8;
            let mut order = 0;
            loop {
                x = poly_mul(x, g, p, k, r);
                order += 1;
                if x == 1 {
                    break;
                }
            }
            if order == n - 1 {
                break;
            }
        }
        let mut x = 1u8;
        let mut e = 0;
        while e < n - 1 {
            t.exp[e] = x;
            t.log[x as usize] = e as u8;
            x = poly_mul(x, g, p, k, r);
            e += 1;
        }
        let m = (n - 1) as usize;
        let mut a = 1;
        while a < n {
            let la = t.log[a] as usize;
            t.inv[a] = t.exp[(m - la) % m];
            let mut b = 1;
            while b < n {
                t.mul[a][b] = t.exp[(la + t.log[b] as usize) % m];
                b += 1;
            }
            a += 1;
        }
        t
    }

    /// Checks the field axioms on the tables; returns the first failure.
    pub const fn first_violation(&self) -> Option<&'static str> {
        let n = self.q as usize;
        let mut a = 0;
        while a < n {
            if self.add[a][0] != a as u8 || self.mul[a][1] != a as u8 || self.mul[a][0] != 0 {
                return Some("identities");
            }
            if self.add[a][self.neg[a] as usize] != 0 {
                return Some("additive inverses");
            }
            if a != 0 && self.mul[a][self.inv[a] as usize] != 1 {
                return Some("multiplicative inverses");
            }
            let mut b = 0;
            while b < n {
                if self.add[a][b] != self.add[b][a] || self.mul[a][b] != self.mul[b][a] {
                    return Some("commutativity");
                }
                let mut c = 0;
                while c < n {
                    if self.add[self.add[a][b] as usize][c] != self.add[a][self.add[b][c] as usize] {
                        return Some("additive associativity");
                    }
                    if self.mul[self.mul[a][b] as usize][c] != self.mul[a][self.mul[b][c] as usize] {
                        return Some("multiplicative associativity");
                    }
                    if self.mul[a][self.add[b][c] as usize] != self.add[self.mul[a][b] as usize][self.mul[a][c] as usize] {
                        return Some("distributivity");
                    }
                    c += 1;
                }
                b += 1;
            }
            a += 1;
        }
        None
    }
}

/// Runtime descriptor of a supported field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldDesc {
    pub q: u8,
    pub p: u8,
    pub tables: FieldTables,
}

impl FieldDesc {
    pub fn new(q: u32) -> Result<FieldDesc, FieldError> {
        let q8 = u8::try_from(q).map_err(|_| FieldError::Unsupported(q))?;
        if !SUPPORTED_Q.contains(&q8) {
            return Err(FieldError::Unsupported(q));
        }
        let tables = FieldTables::build(q8);
        if let Some(axiom) = tables.first_violation() {
            return Err(FieldError::Axiom { q: q8, axiom });
        }
        Ok(FieldDesc { q: q8, p: tables.p, tables })
    }
}

/// Finite field with a fixed enumeration of its elements.
pub trait FiniteField: Ring + Copy + Eq + Hash + Send + Sync + fmt::Debug + 'static {
    const ORDER: usize;
    const CHAR: u8;

    fn from_index(i: usize) -> Self;
    fn index(self) -> usize;
    fn inv(self) -> Option<Self>;

    fn elements() -> impl Iterator<Item = Self> {
        (0..Self::ORDER).map(Self::from_index)
    }
}

/// Element of F_Q for `Q` in [`SUPPORTED_Q`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Gf<const Q: u8>(u8);

impl<const Q: u8> Gf<Q> {
    const TABLES: &'static FieldTables = &FieldTables::build(Q);
    const CHECKED: () = assert!(Self::TABLES.first_violation().is_none(), "field axioms fail");

    #[inline]
    fn t() -> &'static FieldTables {
        #[allow(clippy::let_unit_value)]
        let _ = Self::CHECKED;
        Self::TABLES
    }

    pub fn raw(self) -> u8 {
        self.0
    }
}

impl<const Q: u8> fmt::Debug for Gf<Q> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const Q: u8> fmt::Display for Gf<Q> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const Q: u8> Add for Gf<Q> {
    type Output = Self;
    #[inline]
    fn add(self, o: Self) -> Self {
        Gf(Self::t().add[self.0 as usize][o.0 as usize])
    }
}

impl<const Q: u8> Sub for Gf<Q> {
    type Output = Self;
    #[inline]
    fn sub(self, o: Self) -> Self {
        let t = Self::t();
        Gf(t.add[self.0 as usize][t.neg[o.0 as usize] as usize])
    }
}

impl<const Q: u8> Mul for Gf<Q> {
    type Output = Self;
    #[inline]
    fn mul(self, o: Self) -> Self {
        Gf(Self::t().mul[self.0 as usize][o.0 as usize])
    }
}

impl<const Q: u8> Neg for Gf<Q> {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Gf(Self::t().neg[self.0 as usize])
    }
}

impl<const Q: u8> Zero for Gf<Q> {
    fn zero() -> Self {
        Gf(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const Q: u8> One for Gf<Q> {
    fn one() -> Self {
        Gf(1)
    }
}

impl<const Q: u8> Ring for Gf<Q> {
    fn from_i64(n: i64) -> Self {
        let p = Self::t().p as i64;
        Gf(n.rem_euclid(p) as u8)
    }
}

impl<const Q: u8> FiniteField for Gf<Q> {
    const ORDER: usize = Q as usize;
    const CHAR: u8 = FieldTables::build(Q).p;

    fn from_index(i: usize) -> Self {
        assert!(i < Q as usize);
        Gf(i as u8)
    }
    fn index(self) -> usize {
        self.0 as usize
    }
    fn inv(self) -> Option<Self> {
        (self.0 != 0).then(|| Gf(Self::t().inv[self.0 as usize]))
    }
}

/// `(r0, r1)` such that `w^2 = r0 + r1 w` has no root in F_Q.
const fn quadratic_modulus(q: u8) -> (u8, u8) {
    let t = FieldTables::build(q);
    let n = q as usize;
    let mut r1 = 0;
    while r1 < n {
        let mut r0 = 0;
        while r0 < n {
            let mut has_root = false;
            let mut x = 0;
            while x < n {
                if t.mul[x][x] == t.add[r0][t.mul[r1][x] as usize] {
                    has_root = true;
                }
                x += 1;
            }
            if !has_root {
                return (r0 as u8, r1 as u8);
            }
            r0 += 1;
        }
        r1 += 1;
    }
    panic!("no irreducible quadratic");
}

/// Element `a + b w` of the quadratic extension F_{Q^2}.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Gf2<const Q: u8> {
    pub a: Gf<Q>,
    pub b: Gf<Q>,
}

impl<const Q: u8> Gf2<Q> {
    const W: (u8, u8) = quadratic_modulus(Q);

    pub fn embed(a: Gf<Q>) -> Self {
        Gf2 { a, b: Gf::zero() }
    }

    /// Frobenius conjugate `x^Q`.
    pub fn conj(self) -> Self {
        let mut r = Self::one();
        for _ in 0..Q {
            r = r * self;
        }
        r
    }

    pub fn is_base(self) -> bool {
        self.b.is_zero()
    }
}

impl<const Q: u8> fmt::Debug for Gf2<Q> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}+{}w", self.a, self.b)
    }
}

impl<const Q: u8> Add for Gf2<Q> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Gf2 { a: self.a + o.a, b: self.b + o.b }
    }
}

impl<const Q: u8> Sub for Gf2<Q> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Gf2 { a: self.a - o.a, b: self.b - o.b }
    }
}

impl<const Q: u8> Neg for Gf2<Q> {
    type Output = Self;
    fn neg(self) -> Self {
        Gf2 { a: -self.a, b: -self.b }
    }
}

impl<const Q: u8> Mul for Gf2<Q> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let (r0, r1) = Self::W;
        let (r0, r1) = (Gf::<Q>(r0), Gf::<Q>(r1));
        let bd = self.b * o.b;
        Gf2 { a: self.a * o.a + bd * r0, b: self.a * o.b + self.b * o.a + bd * r1 }
    }
}

impl<const Q: u8> Zero for Gf2<Q> {
    fn zero() -> Self {
        Gf2 { a: Gf::zero(), b: Gf::zero() }
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl<const Q: u8> One for Gf2<Q> {
    fn one() -> Self {
        Self::embed(Gf::one())
    }
}

impl<const Q: u8> Ring for Gf2<Q> {
    fn from_i64(n: i64) -> Self {
        Self::embed(Gf::from_i64(n))
    }
}

impl<const Q: u8> FiniteField for Gf2<Q> {
    const ORDER: usize = (Q as usize) * (Q as usize);
    const CHAR: u8 = Gf::<Q>::CHAR;

    fn from_index(i: usize) -> Self {
        Gf2 { a: Gf::from_index(i % Q as usize), b: Gf::from_index(i / Q as usize) }
    }
    fn index(self) -> usize {
        self.a.index() + (Q as usize) * self.b.index()
    }
    fn inv(self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        // x^(q^2 - 2)
        let mut r = Self::one();
        for _ in 0..Self::ORDER - 2 {
            r = r * self;
        }
        Some(r)
    }
}

pub type F2 = Gf<2>;
pub type F3 = Gf<3>;
pub type F4 = Gf<4>;
pub type F5 = Gf<5>;
pub type F7 = Gf<7>;
pub type F8 = Gf<8>;
pub type F9 = Gf<9>;
