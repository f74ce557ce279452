//! Brute-force local solubility: enumerate residue solutions mod p^k level by
//! level and stop at a quantitative Hensel certificate or an empty level.

#![allow(dead_code)]

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OracleVerdict {
    Soluble,
    Insoluble,
    Unknown,
}

pub struct Oracle {
    p: i128,
    modulus: i128,
    cap: u32,
    a: [[i128; 3]; 3],
}

impl Oracle {
    /// `a` is the coefficient grid; residues are tracked up to `p^max_level`.
    pub fn new(p: u64, a: [[i128; 3]; 3], max_level: u32) -> Self {
        let cap = 2 * max_level + 2;
        let modulus = (p as i128).pow(cap);
        let a = a.map(|r| r.map(|c| c.rem_euclid(modulus)));
        Oracle { p: p as i128, modulus, cap, a }
    }

    fn md(&self, x: i128) -> i128 {
        x.rem_euclid(self.modulus)
    }

    fn mul(&self, x: i128, y: i128) -> i128 {
        self.md(x * y)
    }

    fn v(&self, x: i128) -> u32 {
        let mut x = self.md(x);
        if x == 0 {
            return self.cap;
        }
        let mut v = 0;
        while x % self.p == 0 {
            x /= self.p;
            v += 1;
        }
        v
    }

    /// Value and the two chart partials at `x = (s:1) or (1:s)`, `y` likewise.
    fn eval(&self, s: i128, t: i128, flip_x: bool, flip_y: bool) -> (i128, i128, i128) {
        // monomials X0^(2-i) X1^i with the chart variable u
        let mono = |u: i128, flip: bool| -> ([i128; 3], [i128; 3]) {
            let u2 = self.mul(u, u);
            if flip {
                ([1, u, u2], [0, 1, self.md(2 * u)])
            } else {
                ([u2, u, 1], [self.md(2 * u), 1, 0])
            }
        };
        let (mx, dx) = mono(s, flip_x);
        let (my, dy) = mono(t, flip_y);
        let (mut f, mut fs, mut ft) = (0, 0, 0);
        for i in 0..3 {
            for j in 0..3 {
                let c = self.a[i][j];
                f = self.md(f + self.mul(self.mul(c, mx[i]), my[j]));
                fs = self.md(fs + self.mul(self.mul(c, dx[i]), my[j]));
                ft = self.md(ft + self.mul(self.mul(c, mx[i]), dy[j]));
            }
        }
        (f, fs, ft)
    }

    fn certified(&self, s: i128, t: i128, fx: bool, fy: bool) -> bool {
        let (f, fs, ft) = self.eval(s, t, fx, fy);
        let e = self.v(fs).min(self.v(ft));
        2 * e < self.cap && self.v(f) > 2 * e
    }

    pub fn decide(&self, max_level: u32, budget: usize) -> OracleVerdict {
        // the (1:s) charts only need s = 0 mod p
        let mut level: Vec<(i128, i128, bool, bool)> = Vec::new();
        let p = self.p;
        for fx in [false, true] {
            for fy in [false, true] {
                let sr: Vec<i128> = if fx { vec![0] } else { (0..p).collect() };
                let tr: Vec<i128> = if fy { vec![0] } else { (0..p).collect() };
                for &s in &sr {
                    for &t in &tr {
                        if self.v(self.eval(s, t, fx, fy).0) >= 1 {
                            level.push((s, t, fx, fy));
                        }
                    }
                }
            }
        }
        let mut pk = p;
        for k in 1..=max_level {
            if level.is_empty() {
                return OracleVerdict::Insoluble;
            }
            if level.iter().any(|&(s, t, fx, fy)| self.certified(s, t, fx, fy)) {
                return OracleVerdict::Soluble;
            }
            if k == max_level {
                break;
            }
            let mut next = Vec::new();
            for &(s, t, fx, fy) in &level {
                for a in 0..p {
                    for b in 0..p {
                        let (s2, t2) = (s + pk * a, t + pk * b);
                        if self.v(self.eval(s2, t2, fx, fy).0) > k {
                            next.push((s2, t2, fx, fy));
                        }
                    }
                }
                if next.len() > budget {
                    return OracleVerdict::Unknown;
                }
            }
            level = next;
            pk *= p;
        }
        if level.is_empty() {
            OracleVerdict::Insoluble
        } else {
            OracleVerdict::Unknown
        }
    }
}

/// Bounded enumeration of residue pairs mod `p^n` on the `(s:1),(t:1)` chart
/// with `v(F) >= need`; returns whether any exists.
pub fn exists_affine_residue(p: u64, a: [[i128; 3]; 3], n: u32, need: u32) -> bool {
    let o = Oracle::new(p, a, n.max(need));
    let m = (p as i128).pow(n);
    (0..m).any(|s| (0..m).any(|t| o.v(o.eval(s, t, false, false).0) >= need))
}
