use biform_core::{BinaryForm, SmallForm};

/// Reductions at which the derivative of the quartic map is examined.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RankCase {
    /// `f(X0 Y0, X0 Y1 + X1 Y0)` with `f` an irreducible quadratic.
    Case1iii,
    /// `(X0 Y1 - X1 Y0)^2`.
    Case4,
}

/// `f(X0 Y0, X0 Y1 + X1 Y0)` for `f = f0 u^2 + f1 u v + f2 v^2`.
pub fn case1iii_form(f: [i64; 3]) -> SmallForm {
    let [f0, f1, f2] = f;
    SmallForm::from_i64([f0, f1, f2, f1, 2 * f2, 0, f2, 0, 0])
}

pub fn case4_form() -> SmallForm {
    SmallForm::from_i64([0, 0, 1, 0, -2, 0, 1, 0, 0])
}

fn rank_mod(mut rows: Vec<Vec<i64>>, p: i64) -> u32 {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][col].rem_euclid(p) != 0) else { continue };
        rows.swap(rank, piv);
        let inv = crate::modp::inv(rows[rank][col].rem_euclid(p) as u64, p as u64) as i64;
        for r in 0..rows.len() {
            if r != rank {
                let k = rows[r][col].rem_euclid(p) * inv % p;
                for c in 0..ncols {
                    rows[r][c] = (rows[r][c] - k * rows[rank][c]).rem_euclid(p);
                }
            }
        }
        rank += 1;
    }
    rank as u32
}

/// Rank over F_p of `H -> (H1, -(F0 H2 + H0 F2))`, the derivative of the
/// quartic map at `F`, as an 8 x 9 matrix.
pub fn derivative_rank_at(f: &SmallForm, p: u64) -> u32 {
    let (f0, f2) = (f.column(0), f.column(2));
    let mut cols = Vec::with_capacity(9);
    for i in 0..3 {
        for j in 0..3 {
            let mut h = SmallForm::zero();
            h.a[i][j] = 1;
            let g4 = f0.mul(&h.column(2)).add(&h.column(0).mul(&f2)).neg();
            let mut col: Vec<i64> = h.column(1).coeffs;
            col.extend(g4.coeffs);
            cols.push(col);
        }
    }
    let rows: Vec<Vec<i64>> = (0..8).map(|r| cols.iter().map(|c| c[r]).collect()).collect();
    rank_mod(rows, p as i64)
}

/// Binary quadratics over F_p with no root on P^1(F_p).
pub fn irreducible_quadratics(p: u64) -> Vec<[i64; 3]> {
    let p = p as i64;
    let mut out = Vec::new();
    for f0 in 1..p {
        for f1 in 0..p {
            for f2 in 1..p {
                let q = BinaryForm::new(vec![f0, f1, f2]);
                if (0..p).all(|t| q.eval(&1, &t).rem_euclid(p) != 0) {
                    out.push([f0, f1, f2]);
                }
            }
        }
    }
    out
}

/// The rank of the derivative; for `Case1iii` the least rank over all
/// irreducible `f`.
pub fn phi_derivative_rank(case: RankCase, p: u64) -> u32 {
    match case {
        RankCase::Case4 => derivative_rank_at(&case4_form(), p),
        RankCase::Case1iii => irreducible_quadratics(p)
            .into_iter()
            .map(|f| derivative_rank_at(&case1iii_form(f), p))
            .min()
            .expect("irreducible quadratics exist"),
    }
}
