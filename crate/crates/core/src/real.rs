use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::form::{phi, BiForm22};

fn trim(mut v: Vec<BigRational>) -> Vec<BigRational> {
    while v.len() > 1 && v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn derivative(f: &[BigRational]) -> Vec<BigRational> {
    if f.len() <= 1 {
        return vec![BigRational::zero()];
    }
    f.iter().enumerate().skip(1).map(|(i, c)| c * BigRational::from_integer(BigInt::from(i))).collect()
}

fn rem(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lead = b[db].clone();
    while r.len() > db && !(r.len() == 1 && r[0].is_zero()) {
        let dr = r.len() - 1;
        let k = r[dr].clone() / lead.clone();
        for i in 0..=db {
            let t = k.clone() * b[i].clone();
            r[dr - db + i] -= t;
        }
        r.pop();
        r = trim(r);
        if r.len() <= db {
            break;
        }
    }
    trim(r)
}

fn sign_changes(signs: impl Iterator<Item = i8>) -> usize {
    let mut last = 0;
    let mut n = 0;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            n += 1;
        }
        last = s;
    }
    n
}

fn sgn(x: &BigRational) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

/// Number of distinct real roots of a nonzero polynomial (coefficients in
/// increasing degree), by a Sturm sequence.
pub fn count_real_roots(f: &[BigRational]) -> usize {
    let f = trim(f.to_vec());
    if f.len() <= 1 {
        return 0;
    }
    let mut seq = vec![f.clone(), trim(derivative(&f))];
    loop {
        let n = seq.len();
        if seq[n - 1].len() == 1 {
            break;
        }
        let r = rem(&seq[n - 2], &seq[n - 1]);
        if r.len() == 1 && r[0].is_zero() {
            break;
        }
        seq.push(r.into_iter().map(|c| -c).collect());
    }
    let at_pos = sign_changes(seq.iter().map(|p| sgn(p.last().expect("nonempty"))));
    let at_neg = sign_changes(seq.iter().map(|p| {
        let s = sgn(p.last().expect("nonempty"));
        if (p.len() - 1) % 2 == 1 {
            -s
        } else {
            s
        }
    }));
    at_neg - at_pos
}

/// Whether the binary form `sum c[k] x0^(n-k) x1^k` takes a value >= 0 at some
/// point of P^1(R).
pub fn form_nonnegative_somewhere(c: &[BigInt]) -> bool {
    let n = c.len() - 1;
    if !c[0].is_negative() || !c[n].is_negative() {
        return true;
    }
    // cheap probes before the exact root count
    for (x0, x1) in [(1i64, 1i64), (1, -1), (2, 1), (1, 2), (2, -1), (1, -2)] {
        let (x0, x1) = (BigInt::from(x0), BigInt::from(x1));
        if !eval_exact(c, &x0, &x1).is_negative() {
            return true;
        }
    }
    if n == 4 {
        if let Some(has_root) = quartic_has_real_root(c) {
            return has_root;
        }
    }
    let g: Vec<BigRational> = c.iter().map(|x| BigRational::from_integer(x.clone())).collect();
    count_real_roots(&g) > 0
}

/// Root existence for a quartic with nonzero discriminant, from the signs of
/// the discriminant and two auxiliary invariants; `None` when the
/// discriminant vanishes.
fn quartic_has_real_root(c: &[BigInt]) -> Option<bool> {
    let disc = crate::binary::quartic_discriminant(&crate::binary::BinaryForm::new(c.to_vec()));
    if disc.is_zero() {
        return None;
    }
    if disc.is_negative() {
        return Some(true);
    }
    let (a, b, cc, d, e) = (&c[0], &c[1], &c[2], &c[3], &c[4]);
    let p = BigInt::from(8) * a * cc - BigInt::from(3) * b * b;
    let dd = BigInt::from(64) * a.pow(3) * e - BigInt::from(16) * a * a * cc * cc + BigInt::from(16) * a * b * b * cc
        - BigInt::from(16) * a * a * b * d
        - BigInt::from(3) * b.pow(4);
    Some(p.is_negative() && dd.is_negative())
}

fn eval_exact(c: &[BigInt], x0: &BigInt, x1: &BigInt) -> BigInt {
    let n = c.len() - 1;
    c.iter().enumerate().map(|(k, ck)| ck * x0.pow((n - k) as u32) * x1.pow(k as u32)).sum()
}

/// Whether `F = 0` has a point in P^1(R) x P^1(R); integer coefficients.
pub fn real_soluble_int(f: &BiForm22<BigInt>) -> bool {
    let q = phi(f).quartic();
    form_nonnegative_somewhere(&q.coeffs)
}

/// Whether `F = 0` has a point in P^1(R) x P^1(R); rational coefficients.
pub fn real_soluble(f: &BiForm22<BigRational>) -> bool {
    let l = f.coeffs().fold(BigInt::from(1), |acc, c| acc.lcm(c.denom()));
    let g = f.map(|c| (c * BigRational::from_integer(l.clone())).to_integer());
    real_soluble_int(&g)
}

/// [`real_soluble_int`] for coefficients of absolute value at most `2^60`,
/// with the quartic assembled in machine integers.
pub fn real_soluble_small(a: &[[i64; 3]; 3]) -> bool {
    let col = |j: usize| [a[0][j] as i128, a[1][j] as i128, a[2][j] as i128];
    let (f0, f1, f2) = (col(0), col(1), col(2));
    let mut g = [0i128; 5];
    for i in 0..3 {
        for k in 0..3 {
            g[i + k] += f1[i] * f1[k] - 4 * f0[i] * f2[k];
        }
    }
    if g[0] >= 0 || g[4] >= 0 {
        return true;
    }
    let c: Vec<BigInt> = g.iter().map(|&x| BigInt::from(x)).collect();
    form_nonnegative_somewhere(&c)
}
