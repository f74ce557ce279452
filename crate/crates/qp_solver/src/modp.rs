//! Arithmetic modulo a prime below 2^64.

pub fn mul(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn add(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 + b as u128) % p as u128) as u64
}

pub fn sub(a: u64, b: u64, p: u64) -> u64 {
    add(a, p - b % p, p)
}

pub fn pow(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul(r, a, p);
        }
        a = mul(a, a, p);
        e >>= 1;
    }
    r
}

pub fn inv(a: u64, p: u64) -> u64 {
    pow(a, p - 2, p)
}

/// A square root of `a` modulo the odd prime `p`, if one exists.
pub fn sqrt(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    if pow(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    if p % 4 == 3 {
        return Some(pow(a, (p + 1) / 4, p));
    }
    let mut q = p - 1;
    let mut s = 0;
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let z = (2..p).find(|&z| pow(z, (p - 1) / 2, p) == p - 1).expect("a non-residue exists");
    let mut m = s;
    let mut c = pow(z, q, p);
    let mut t = pow(a, q, p);
    let mut r = pow(a, (q + 1) / 2, p);
    while t != 1 {
        let mut i = 0;
        let mut tt = t;
        while tt != 1 {
            tt = mul(tt, tt, p);
            i += 1;
        }
        let b = pow(c, 1 << (m - i - 1), p);
        m = i;
        c = mul(b, b, p);
        t = mul(t, c, p);
        r = mul(r, b, p);
    }
    Some(r)
}

/// Projective roots of `a0 Y0^2 + a1 Y0 Y1 + a2 Y1^2` as residue indices
/// (`t` for `(t:1)`, `p` for `(1:0)`); `None` when the quadratic vanishes.
pub fn quadratic_roots(a0: u64, a1: u64, a2: u64, p: u64) -> Option<Vec<u64>> {
    if a0 == 0 && a1 == 0 && a2 == 0 {
        return None;
    }
    if p < 64 {
        let mut r: Vec<u64> = (0..p)
            .filter(|&t| add(add(mul(mul(a0, t, p), t, p), mul(a1, t, p), p), a2, p) == 0)
            .collect();
        if a0 == 0 {
            r.push(p);
        }
        return Some(r);
    }
    let mut r = Vec::new();
    if a0 == 0 {
        if a1 != 0 {
            r.push(mul(sub(0, a2, p), inv(a1, p), p));
        }
        r.push(p);
        return Some(r);
    }
    let d = sub(mul(a1, a1, p), mul(4, mul(a0, a2, p), p), p);
    if let Some(s) = sqrt(d, p) {
        let den = inv(mul(2, a0, p), p);
        let t1 = mul(sub(s, a1, p), den, p);
        let t2 = mul(sub(sub(0, s, p), a1, p), den, p);
        r.push(t1);
        if t2 != t1 {
            r.push(t2);
        }
    }
    Some(r)
}
