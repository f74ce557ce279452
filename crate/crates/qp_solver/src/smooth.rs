//! Smooth points of the reduction mod a prime of any size. A smooth F_p-point
//! lifts to a Q_p-point, so finding one settles solubility at p.

use biform_core::IntForm;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

fn md(a: &BigInt, p: &BigInt) -> BigInt {
    a.mod_floor(p)
}

fn legendre_is_one(a: &BigInt, p: &BigInt) -> bool {
    a.modpow(&((p - 1u32) >> 1), p).is_one()
}

/// A square root of `a` modulo the odd prime `p`.
pub fn sqrt_mod(a: &BigInt, p: &BigInt) -> Option<BigInt> {
    let a = md(a, p);
    if a.is_zero() {
        return Some(a);
    }
    if !legendre_is_one(&a, p) {
        return None;
    }
    let one = BigInt::one();
    let mut q: BigInt = p - 1u32;
    let mut s = 0u32;
    while q.is_even() {
        q >>= 1;
        s += 1;
    }
    let mut z = BigInt::from(2);
    while legendre_is_one(&z, p) {
        z += 1u32;
    }
    let mut m = s;
    let mut c = z.modpow(&q, p);
    let mut t = a.modpow(&q, p);
    let mut r = a.modpow(&((&q + 1u32) >> 1), p);
    while t != one {
        let mut i = 0;
        let mut tt = t.clone();
        while tt != one {
            tt = &tt * &tt % p;
            i += 1;
        }
        let b = c.modpow(&(BigInt::one() << (m - i - 1)), p);
        m = i;
        c = &b * &b % p;
        t = t * &c % p;
        r = r * b % p;
    }
    Some(r)
}

fn inv_mod(a: &BigInt, p: &BigInt) -> BigInt {
    a.modpow(&(p - 2u32), p)
}

/// Projective roots of `c0 Y0^2 + c1 Y0 Y1 + c2 Y1^2` mod p, or a few sample
/// points when the quadratic vanishes identically.
fn fibre_roots(c: &[BigInt; 3], p: &BigInt) -> Vec<[BigInt; 2]> {
    let (zero, one) = (BigInt::zero(), BigInt::one());
    if c.iter().all(Zero::is_zero) {
        return vec![[zero.clone(), one.clone()], [one.clone(), zero], [one.clone(), one]];
    }
    if *p == BigInt::from(2) {
        let pts = [[zero.clone(), one.clone()], [one.clone(), one.clone()], [one, zero]];
        return pts
            .into_iter()
            .filter(|y| md(&(&c[0] * &y[0] * &y[0] + &c[1] * &y[0] * &y[1] + &c[2] * &y[1] * &y[1]), p).is_zero())
            .collect();
    }
    let mut out = Vec::new();
    if c[0].is_zero() {
        out.push([one.clone(), zero]);
        if !c[1].is_zero() {
            out.push([md(&(-&c[2] * inv_mod(&c[1], p)), p), one]);
        }
        return out;
    }
    let disc = md(&(&c[1] * &c[1] - 4u32 * &c[0] * &c[2]), p);
    if let Some(s) = sqrt_mod(&disc, p) {
        let den = inv_mod(&md(&(2u32 * &c[0]), p), p);
        for r in [&s, &md(&-&s, p)] {
            out.push([md(&((r - &c[1]) * &den), p), one.clone()]);
        }
    }
    out
}

/// Looks for a smooth point of `F mod p` over the first `tries` fibres
/// `x = (t:1)` and the fibre `x = (1:0)`.
pub fn find_smooth_point(f: &IntForm, p: &BigInt, tries: u64) -> Option<([BigInt; 2], [BigInt; 2])> {
    let g = f.map(|c| md(c, p));
    let mut xs = vec![[BigInt::one(), BigInt::zero()]];
    let mut t = BigInt::zero();
    for _ in 0..tries {
        if t >= *p {
            break;
        }
        xs.push([t.clone(), BigInt::one()]);
        t += 1u32;
    }
    for x in xs {
        let fib: [BigInt; 3] = std::array::from_fn(|j| md(&g.column(j).eval(&x[0], &x[1]), p));
        for y in fibre_roots(&fib, p) {
            if !md(&g.eval(&x, &y), p).is_zero() {
                continue;
            }
            if g.gradient(&x, &y).iter().any(|d| !md(d, p).is_zero()) {
                return Some((x, y));
            }
        }
    }
    None
}
