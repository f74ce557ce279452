//! Prime factorisation of discriminants.

use std::sync::OnceLock;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::modp;

const TRIAL_LIMIT: u64 = 1_000_000;
const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

fn small_primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let n = TRIAL_LIMIT as usize;
        let mut sieve = vec![true; n + 1];
        sieve[0] = false;
        sieve[1] = false;
        let mut i = 2;
        while i * i <= n {
            if sieve[i] {
                (i * i..=n).step_by(i).for_each(|j| sieve[j] = false);
            }
            i += 1;
        }
        (0..=n).filter(|&i| sieve[i]).map(|i| i as u64).collect()
    })
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &b in &BASES {
        if n % b == 0 {
            return n == b;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    BASES.iter().all(|&a| {
        let mut x = modp::pow(a, d, n);
        if x == 1 || x == n - 1 {
            return true;
        }
        for _ in 1..s {
            x = modp::mul(x, x, n);
            if x == n - 1 {
                return true;
            }
        }
        false
    })
}

/// Miller-Rabin with the first twelve prime bases; deterministic below 3.3e24.
pub fn is_prime_big(n: &BigUint) -> bool {
    if let Some(m) = n.to_u64() {
        return is_prime_u64(m);
    }
    if n.is_even() {
        return false;
    }
    let one = BigUint::one();
    let nm1 = n - &one;
    let s = nm1.trailing_zeros().expect("n > 1");
    let d = &nm1 >> s;
    BASES.iter().all(|&a| {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x == one || x == nm1 {
            return true;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == nm1 {
                return true;
            }
        }
        false
    })
}

fn rho_u64(n: u64) -> u64 {
    let mut c = 1;
    loop {
        let f = |x: u64| modp::add(modp::mul(x, x, n), c, n);
        let (mut x, mut y, mut g) = (2u64, 2u64, 1u64);
        while g == 1 {
            x = f(x);
            y = f(f(y));
            g = x.abs_diff(y).gcd(&n);
        }
        if g != n {
            return g;
        }
        c += 1;
    }
}

/// Brent's variant with batched gcds.
fn rho_big(n: &BigUint) -> BigUint {
    let mut c = BigUint::one();
    loop {
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut y = BigUint::from(2u32);
        let mut r = 1u64;
        let mut q = BigUint::one();
        let mut g = BigUint::one();
        let mut x = y.clone();
        let mut ys = y.clone();
        while g.is_one() {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                for _ in 0..(r - k).min(128) {
                    y = f(&y);
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = (q * diff) % n;
                }
                g = q.gcd(n);
                k += 128;
            }
            r *= 2;
        }
        if &g == n {
            loop {
                ys = f(&ys);
                let diff = if x > ys { &x - &ys } else { &ys - &x };
                g = diff.gcd(n);
                if !g.is_one() {
                    break;
                }
            }
        }
        if &g != n {
            return g;
        }
        c += 1u32;
    }
}

fn split(n: BigUint, out: &mut Vec<BigUint>) {
    if n.is_one() {
        return;
    }
    if is_prime_big(&n) {
        out.push(n);
        return;
    }
    let d = match n.to_u64() {
        Some(m) => BigUint::from(rho_u64(m)),
        None => rho_big(&n),
    };
    let e = &n / &d;
    split(d, out);
    split(e, out);
}

/// Distinct prime divisors of a nonzero integer, ascending.
pub fn prime_factors(n: &BigUint) -> Vec<BigUint> {
    assert!(!n.is_zero(), "zero has no factorisation");
    let mut n = n.clone();
    let mut out = Vec::new();
    for &p in small_primes() {
        if let Some(m) = n.to_u64() {
            if p * p > m {
                break;
            }
            if m % p == 0 {
                out.push(BigUint::from(p));
                let mut m = m;
                while m % p == 0 {
                    m /= p;
                }
                n = BigUint::from(m);
            }
        } else if (&n % p).is_zero() {
            out.push(BigUint::from(p));
            while (&n % p).is_zero() {
                n /= p;
            }
        }
    }
    let mut rest = Vec::new();
    split(n, &mut rest);
    out.extend(rest);
    out.sort();
    out.dedup();
    out
}
