use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::linalg::solve;
use crate::rational::{Count, ExactRational};
use crate::DensityError;

type Q = BigRational;

fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

fn int(x: &Q) -> BigInt {
    assert!(x.is_integer(), "count {x} is not an integer");
    x.to_integer()
}

/// Horner evaluation with integer coefficients listed from the top degree down.
fn horner(p: &Q, top_down: &[i64]) -> Q {
    top_down.iter().fold(Q::zero(), |acc, &c| acc * p + q(c))
}

fn pw(p: &Q, n: i32) -> Q {
    num_traits::pow::Pow::pow(p, n)
}

fn check_prime(p: u64) -> Result<Q, DensityError> {
    if !qp_solver::is_prime(p) {
        return Err(DensityError::NotPrime(p));
    }
    Ok(Q::from_integer(BigInt::from(p)))
}

const F_RHO: [i64; 12] = [4, -4, 4, -1, 5, -2, 5, -1, 2, -2, 6, -2];

/// The closed form `1 - p(p-1)(p^2-1) f(p) / (8 (p^8-1)(p^9-1))`.
pub fn rho_closed(p: u64) -> Result<ExactRational, DensityError> {
    let p = check_prime(p)?;
    let one = Q::one();
    let num = &p * (&p - &one) * (pw(&p, 2) - &one) * horner(&p, &F_RHO);
    let den = q(8) * (pw(&p, 8) - &one) * (pw(&p, 9) - &one);
    Ok(ExactRational(one - num / den))
}

/// `(sigma, tau, tau*)`: solubility proportions of generalised binary quartics.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BqConstants {
    pub sigma: ExactRational,
    pub tau: ExactRational,
    pub tau_star: ExactRational,
}

pub fn bq_constants(p: u64) -> Result<BqConstants, DensityError> {
    let p = check_prime(p)?;
    let one = Q::one();
    let p9 = pw(&p, 9) - &one;
    let sigma = horner(&p, &[2, 3, 0, 0, 0, -1, 2, 0, -2, -3, -1]) / (q(2) * pw(&(&p + &one), 2) * &p9);
    let tau = horner(&p, &[5, 8, 1, -1, 2, -3, 0, 4, 0, -10, -6]) / (q(8) * (&p + &one) * &p9);
    let tau_star = horner(&p, &[5, 5, 0, -1, 3, -4, 0, 4, 0, -8, -4]) / (q(8) * (&p + &one) * &p9);
    Ok(BqConstants { sigma: sigma.into(), tau: tau.into(), tau_star: tau_star.into() })
}

/// Printed closed forms of the intermediate densities, for comparison.
pub mod printed {
    use super::*;

    pub fn xi3(p: u64) -> ExactRational {
        let p = q(p as i64);
        let d = q(2) * (&p + q(1)) * (pw(&p, 9) - q(1));
        (horner(&p, &[1, 2, 0, 0, 1, -2, 0, 2, 1, -3, -2]) / d).into()
    }

    pub fn xi3_prime(p: u64) -> ExactRational {
        let p = q(p as i64);
        let d = q(2) * (&p + q(1)) * (pw(&p, 9) - q(1));
        (horner(&p, &[2, 1, 0, 1, -2, 0, 2, 1, -2, -2, -1]) / d).into()
    }

    pub fn xi4_prime(p: u64) -> ExactRational {
        let p = q(p as i64);
        let d = q(4) * (&p + q(1)) * (pw(&p, 9) - q(1));
        (horner(&p, &[4, 3, 0, -1, 2, -2, 0, 2, -1, -5, -2]) / d).into()
    }

    pub fn xi5(p: u64) -> ExactRational {
        let p = q(p as i64);
        let f = horner(&p, &[6, 8, 2, -8, 16, -12, -4, 3, 9, -35, 8, -11, 3, -1, 8, -6, -4, 10, 8]);
        let g = q(8) * (&p + q(1)) * (pw(&p, 9) - q(1)) * (pw(&p, 8) - q(1));
        (f / g).into()
    }

    pub fn xi11(p: u64) -> ExactRational {
        let p = q(p as i64);
        ((q(2) * &p + q(1)) / pw(&(&p + q(1)), 2)).into()
    }

    pub fn xi13(p: u64) -> ExactRational {
        let p = q(p as i64);
        let d = q(2) * pw(&(&p + q(1)), 2) * (pw(&p, 9) - q(1));
        (horner(&p, &[2, 3, 0, 0, 0, -1, 2, 0, -2, -3, -1]) / d).into()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseCounts {
    pub n0: Count,
    pub n1: Count,
    pub n2: Count,
    pub n3: Count,
    pub n4: Count,
    pub n5: Count,
    pub n11: Count,
    pub n12: Count,
    pub n13: Count,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Xi {
    pub xi1: ExactRational,
    pub xi11: ExactRational,
    pub xi12: ExactRational,
    pub xi13: ExactRational,
    pub xi2: ExactRational,
    pub xi3: ExactRational,
    pub xi4: ExactRational,
    pub xi5: ExactRational,
    pub xi51: ExactRational,
    pub xi52: ExactRational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct XiPrime {
    pub xi11: ExactRational,
    pub xi13: ExactRational,
    pub xi3: ExactRational,
    pub xi4: ExactRational,
    pub xi5: ExactRational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Aux {
    pub delta_line: ExactRational,
    pub delta1: ExactRational,
    pub delta2: ExactRational,
    pub delta1_star: ExactRational,
    pub delta2_star: ExactRational,
    pub eps1: ExactRational,
    pub eps2: ExactRational,
    pub alpha: ExactRational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineCounts {
    pub r0: Count,
    pub r11: Count,
    pub r12: Count,
    pub r13: Count,
    pub r2: Count,
    pub r3: Count,
    pub total: Count,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeltaCounts {
    pub s0: Count,
    pub s11: Count,
    pub s12: Count,
    pub s13: Count,
    pub s2: Count,
    pub s3: Count,
    pub s4: Count,
    pub s5: Count,
    pub t0: Count,
}

/// Every count and conditional density in the case analysis at one prime.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseDensityTable {
    pub p: u64,
    pub n: CaseCounts,
    pub xi: Xi,
    pub xi_prime: XiPrime,
    pub aux: Aux,
    pub bq: BqConstants,
    pub r: LineCounts,
    pub s: DeltaCounts,
    pub rho: ExactRational,
}

fn c(x: &Q) -> Count {
    Count(int(x))
}

fn e(x: &Q) -> ExactRational {
    ExactRational(x.clone())
}

pub fn build_case_table(p_int: u64) -> Result<CaseDensityTable, DensityError> {
    let p = check_prime(p_int)?;
    let one = Q::one();
    let half = q(1) / q(2);
    let pm = &p - &one;
    let pp = &p + &one;
    let inv = &one / &p;

    // case sizes among forms up to scalars
    let n1 = (pw(&p, 3) - &p) * (pw(&p, 3) + &p - &one) / q(2);
    let n2 = pw(&p, 2) * pw(&pm, 2) / q(4);
    let n3 = &p * &pp * &pm;
    let n4 = n3.clone();
    let n5 = pw(&pp, 2);
    let classes = (pw(&p, 9) - &one) / &pm;
    let n0 = &classes - (&n1 + &n2 + &n3 + &n4 + &n5);
    let n11 = pw(&p, 3) * pw(&pp, 2) * &pm / q(4);
    let n12 = pw(&p, 2) * &pp * pw(&pm, 2) * (&p - q(2)) / q(4);
    let n13 = &p * pw(&pp, 2) * pw(&pm, 2) / q(2);

    let bq = bq_constants(p_int)?;
    let (sigma, tau, tau_star) = (bq.sigma.0.clone(), bq.tau.0.clone(), bq.tau_star.0.clone());

    // Case 1
    let alpha = &one / &pp;
    let xi11 = &one - pw(&(&one - &alpha), 2);
    let xi11p = &one - (&one - &alpha) * (&one - &p / &pp);
    let xi12 = Q::zero();
    let xi13 = sigma.clone();
    let xi13p = &p * &xi13;
    let xi1 = (&n11 * &xi11 + &n12 * &xi12 + &n13 * &xi13) / &n1;
    let xi2 = Q::zero();

    // Case 4
    let xi4 = tau.clone();
    let xi4p = &p * &tau - &pm * &tau_star;

    // Case 3: unknowns (xi3, delta_line)
    let line_total = pw(&p, 7) * &pm / q(2);
    let r11 = pw(&p, 3) * &pp * pw(&pm, 2) / q(4);
    let r12 = pw(&p, 2) * &pp * pw(&pm, 2) * (&p - q(2)) / q(4);
    let r13 = pw(&p, 2) * &pp * pw(&pm, 2) / q(2);
    let r2 = pw(&p, 2) * pw(&pm, 2) / q(4);
    let r3 = pw(&p, 2) * &pm / q(2);
    let r0 = &line_total - (&r11 + &r12 + &r13 + &r2 + &r3);
    let p3 = pw(&p, 3);
    let known3 = ((pw(&p, 3) - &p) / q(2) + (pw(&p, 2) - &one) * &half) / &p3;
    let known_line = (&r0 + &r11 * &xi11 + &r12 * &xi12 + &r13 * &xi13 + &r2 * &xi2) / &line_total;
    let sol3 = solve(
        vec![vec![one.clone(), -(&one / &p3)], vec![-(&r3 / &line_total), one.clone()]],
        vec![known3, known_line],
    )
    .expect("case 3 system is nonsingular");
    let (xi3, delta_line) = (sol3[0].clone(), sol3[1].clone());
    let xi3p = (&p * &pm + &pm * &half + &delta_line) / pw(&p, 2);

    // Case 5: unknowns xi5, xi52, xi5', d1, d2, d1*, d2*, e1, e2
    let s11 = pw(&p, 3) * &pm / q(2);
    let s13 = &p * pw(&pm, 2) / q(2);
    let s3 = &p * &pm / q(2);
    let s4 = &p * &pm;
    let s5 = p.clone();
    let p5 = pw(&p, 5);
    let s0 = &p5 - (&s11 + &s13 + &s3 + &s4 + &s5);
    let t_total = pw(&p, 4) * &pm;
    let t0 = &t_total - (&s11 + &s13 + &s4);
    let xi51 = q(3) / q(4);
    let z = || Q::zero();
    let row = |entries: &[(usize, Q)]| {
        let mut r = vec![z(); 9];
        for (i, v) in entries {
            r[*i] += v.clone();
        }
        r
    };
    let w = &one - &inv;
    let inv2 = pw(&inv, 2);
    let a = vec![
        row(&[(0, one.clone()), (1, -inv.clone())]),
        row(&[
            (1, one.clone()),
            (6, -(&inv2 * &inv * pw(&w, 2))),
            (5, -(&inv2 * q(2) * &inv * &w)),
            (7, -(&inv2 * &inv2)),
        ]),
        row(&[(2, one.clone()), (3, -pw(&inv, 3))]),
        row(&[(3, one.clone()), (5, -w.clone()), (7, -inv.clone())]),
        row(&[(4, one.clone()), (6, -w.clone()), (8, -inv.clone())]),
        row(&[(3, one.clone()), (0, -(&s5 / &p5))]),
        row(&[(4, one.clone())]),
        row(&[(7, one.clone()), (2, -(&s5 / &p5))]),
        row(&[(8, one.clone())]),
    ];
    let b = vec![
        &w * &xi51,
        &one - &inv2,
        &w + &inv * &w * &xi51 + &inv2 * &w,
        z(),
        z(),
        (&s0 + &s11 * &xi11 + &s13 * &xi13 + &s3 * &xi3 + &s4 * &xi4) / &p5,
        (&t0 + &s11 * &xi11 + &s13 * &xi13 + &s4 * &xi4) / &t_total,
        (&s0 + &s11 * &xi11p + &s13 * &xi13p + &s3 * &xi3p + &s4 * &xi4p) / &p5,
        (&t0 + &s11 * &xi11p + &s13 * &xi13p + &s4 * &xi4p) / &t_total,
    ];
    let x = solve(a, b).expect("case 5 system is nonsingular");
    let [xi5, xi52, xi5p, d1, d2, d1s, d2s, e1, e2] = <[Q; 9]>::try_from(x).expect("nine unknowns");

    let rho = (&n0 + &n1 * &xi1 + &n2 * &xi2 + &n3 * &xi3 + &n4 * &xi4 + &n5 * &xi5) / &classes;

    Ok(CaseDensityTable {
        p: p_int,
        n: CaseCounts {
            n0: c(&n0),
            n1: c(&n1),
            n2: c(&n2),
            n3: c(&n3),
            n4: c(&n4),
            n5: c(&n5),
            n11: c(&n11),
            n12: c(&n12),
            n13: c(&n13),
        },
        xi: Xi {
            xi1: e(&xi1),
            xi11: e(&xi11),
            xi12: e(&xi12),
            xi13: e(&xi13),
            xi2: e(&xi2),
            xi3: e(&xi3),
            xi4: e(&xi4),
            xi5: e(&xi5),
            xi51: e(&xi51),
            xi52: e(&xi52),
        },
        xi_prime: XiPrime { xi11: e(&xi11p), xi13: e(&xi13p), xi3: e(&xi3p), xi4: e(&xi4p), xi5: e(&xi5p) },
        aux: Aux {
            delta_line: e(&delta_line),
            delta1: e(&d1),
            delta2: e(&d2),
            delta1_star: e(&d1s),
            delta2_star: e(&d2s),
            eps1: e(&e1),
            eps2: e(&e2),
            alpha: e(&alpha),
        },
        bq,
        r: LineCounts { r0: c(&r0), r11: c(&r11), r12: c(&r12), r13: c(&r13), r2: c(&r2), r3: c(&r3), total: c(&line_total) },
        s: DeltaCounts {
            s0: c(&s0),
            s11: c(&s11),
            s12: Count(BigInt::zero()),
            s13: c(&s13),
            s2: Count(BigInt::zero()),
            s3: c(&s3),
            s4: c(&s4),
            s5: c(&s5),
            t0: c(&t0),
        },
        rho: e(&rho),
    })
}

/// The density assembled from the case table.
pub fn rho_assembled(p: u64) -> Result<ExactRational, DensityError> {
    Ok(build_case_table(p)?.rho)
}
