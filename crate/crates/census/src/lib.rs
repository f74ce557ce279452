//! Exhaustive enumeration of (2,2)-forms over F_q up to scaling, tallying
//! factorisation types, smooth points and the residue conditions used by the
//! density computation.

mod expected;

use std::collections::BTreeMap;
use std::fmt::Write as _;

use biform_core::{BiForm22, BinaryForm};
use ff_forms::{
    classify_binary_quadratic, factorization_type, has_smooth_point, with_field, BinaryClass, Conj11Sub, FactorTag,
    FiniteField, Gf,
};
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use expected::{expected_delta, expected_line, expected_m, expected_smooth, expected_type_count};

pub const CENSUS_Q: [u32; 4] = [2, 3, 4, 5];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CensusError {
    #[error("census is only run for q in {{2,3,4,5}}, got {0}")]
    UnsupportedField(u32),
}

pub type TypeKey = (FactorTag, Option<Conj11Sub>);

/// Residue classes of the line condition, split by case.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineCounts {
    pub r11: u64,
    pub r12: u64,
    pub r13: u64,
    pub r2: u64,
    pub r3: u64,
    pub r0: u64,
    pub total: u64,
}

/// Classes singular at ((1:0),(1:0)) not containing the line Y1 = 0.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeltaCounts {
    pub s11: u64,
    pub s12: u64,
    pub s13: u64,
    pub s2: u64,
    pub s3: u64,
    pub s4: u64,
    pub s5: u64,
    pub s0: u64,
    pub total: u64,
    /// same tallies restricted to classes also meeting the second condition
    pub t11: u64,
    pub t13: u64,
    pub t3: u64,
    pub t4: u64,
    pub t5: u64,
    pub t_total: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusReport {
    pub q: u32,
    pub total: u64,
    pub counts: BTreeMap<TypeKey, u64>,
    pub smooth: BTreeMap<TypeKey, u64>,
    /// m10, m20, m11, m21
    pub m: [u64; 4],
    pub line: Option<LineCounts>,
    pub delta: Option<DeltaCounts>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportRow {
    pub q: u32,
    pub kind: String,
    pub subtype: String,
    pub count: u64,
    /// closed-form count, or -1 when the smooth-point column disagrees
    pub expected: i64,
    pub smooth: Option<u64>,
}

impl ReportRow {
    pub fn matches(&self) -> bool {
        self.count as i64 == self.expected
            && self.smooth.is_none_or(|s| s == 0 || s == self.count)
    }
}

#[derive(Default, Clone)]
struct Tally {
    total: u64,
    counts: BTreeMap<TypeKey, u64>,
    smooth: BTreeMap<TypeKey, u64>,
    line: LineCounts,
    delta: DeltaCounts,
}

impl Tally {
    fn merge(mut self, o: Tally) -> Tally {
        self.total += o.total;
        for (k, v) in o.counts {
            *self.counts.entry(k).or_default() += v;
        }
        for (k, v) in o.smooth {
            *self.smooth.entry(k).or_default() += v;
        }
        let (l, m) = (&mut self.line, &o.line);
        l.r11 += m.r11;
        l.r12 += m.r12;
        l.r13 += m.r13;
        l.r2 += m.r2;
        l.r3 += m.r3;
        l.r0 += m.r0;
        l.total += m.total;
        let (d, e) = (&mut self.delta, &o.delta);
        d.s11 += e.s11;
        d.s12 += e.s12;
        d.s13 += e.s13;
        d.s2 += e.s2;
        d.s3 += e.s3;
        d.s4 += e.s4;
        d.s5 += e.s5;
        d.s0 += e.s0;
        d.total += e.total;
        d.t11 += e.t11;
        d.t13 += e.t13;
        d.t3 += e.t3;
        d.t4 += e.t4;
        d.t5 += e.t5;
        d.t_total += e.t_total;
        self
    }
}

/// `F(X0, X1; 1, 0)` is an irreducible binary quadratic.
pub fn check_line_condition<F: FiniteField>(f: &BiForm22<F>) -> bool {
    classify_binary_quadratic(&f.column(0)) == BinaryClass::Irreducible
}

/// First flag: the curve is singular at ((1:0),(1:0)) and does not contain the
/// line Y1 = 0. Second flag: additionally it does not contain X1 = 0.
pub fn check_delta1_condition<F: FiniteField>(f: &BiForm22<F>) -> (bool, bool) {
    let a = &f.a;
    let singular = a[0][0].is_zero() && a[1][0].is_zero() && a[0][1].is_zero();
    let delta1 = singular && !f.column(0).is_zero();
    (delta1, delta1 && !f.row(0).is_zero())
}

/// Case index of a type in the density computation: 11, 12, 13 for the Conj11
/// subtypes, then 2..=5, or 0 for the rest.
pub fn case_of(key: TypeKey) -> u32 {
    match key {
        (FactorTag::Conj11, Some(Conj11Sub::RationalPair)) => 11,
        (FactorTag::Conj11, Some(Conj11Sub::ConjugatePair)) => 12,
        (FactorTag::Conj11, Some(Conj11Sub::SinglePoint)) => 13,
        (FactorTag::TwoQuads, _) => 2,
        (FactorTag::QuadDoubleLine, _) => 3,
        (FactorTag::DoubleConic, _) => 4,
        (FactorTag::TwoDoubleLines, _) => 5,
        _ => 0,
    }
}

fn representative<const Q: u8>(lead: usize, mut rest: u64) -> BiForm22<Gf<Q>> {
    let mut c = [Gf::<Q>::default(); 9];
    c[lead] = Gf::from_index(1);
    for slot in c.iter_mut().skip(lead + 1) {
        *slot = Gf::from_index((rest % Q as u64) as usize);
        rest /= Q as u64;
    }
    BiForm22::from_row_major(&c)
}

fn classify_into<const Q: u8>(t: &mut Tally, f: &BiForm22<Gf<Q>>, residue_checks: bool) {
    let ft = factorization_type(f);
    let key = (ft.tag, ft.sub);
    t.total += 1;
    *t.counts.entry(key).or_default() += 1;
    if has_smooth_point(f).is_some() {
        *t.smooth.entry(key).or_default() += 1;
    }
    if !residue_checks {
        return;
    }
    let case = case_of(key);
    if check_line_condition(f) {
        let l = &mut t.line;
        l.total += 1;
        match case {
            11 => l.r11 += 1,
            12 => l.r12 += 1,
            13 => l.r13 += 1,
            2 => l.r2 += 1,
            3 => l.r3 += 1,
            _ => l.r0 += 1,
        }
    }
    let (d1, d2) = check_delta1_condition(f);
    if d1 {
        let d = &mut t.delta;
        d.total += 1;
        match case {
            11 => d.s11 += 1,
            12 => d.s12 += 1,
            13 => d.s13 += 1,
            2 => d.s2 += 1,
            3 => d.s3 += 1,
            4 => d.s4 += 1,
            5 => d.s5 += 1,
            _ => d.s0 += 1,
        }
        if d2 {
            d.t_total += 1;
            match case {
                11 => d.t11 += 1,
                13 => d.t13 += 1,
                3 => d.t3 += 1,
                4 => d.t4 += 1,
                5 => d.t5 += 1,
                _ => {}
            }
        }
    }
}

fn census_field<const Q: u8>() -> CensusReport {
    let q = Q as u64;
    let prime = Gf::<Q>::CHAR as u64 == q;
    let chunks: Vec<(usize, u64, u64)> = (0..9usize)
        .flat_map(|lead| {
            let n = q.pow(8 - lead as u32);
            let step = q.pow(3).min(n);
            (0..n).step_by(step as usize).map(move |s| (lead, s, (s + step).min(n)))
        })
        .collect();
    let tally = chunks
        .into_par_iter()
        .map(|(lead, lo, hi)| {
            let mut t = Tally::default();
            for rest in lo..hi {
                classify_into(&mut t, &representative::<Q>(lead, rest), prime);
            }
            t
        })
        .reduce(Tally::default, Tally::merge);
    CensusReport {
        q: Q as u32,
        total: tally.total,
        counts: tally.counts,
        smooth: tally.smooth,
        m: irreducible_counts::<Q>(),
        line: prime.then_some(tally.line),
        delta: prime.then_some(tally.delta),
    }
}

/// Irreducible forms of bidegree (1,0), (2,0), (1,1), (2,1), up to scaling.
fn irreducible_counts<const Q: u8>() -> [u64; 4] {
    type F<const Q: u8> = Gf<Q>;
    let q = Q as usize;
    let el = |i: usize| F::<Q>::from_index(i);
    let units = (q - 1) as u64;
    let m10 = (q * q - 1) as u64 / units;
    let mut m20 = 0;
    for i in 0..q * q * q {
        let f = BinaryForm::new(vec![el(i % q), el(i / q % q), el(i / q / q)]);
        if classify_binary_quadratic(&f) == BinaryClass::Irreducible {
            m20 += 1;
        }
    }
    let mut m11 = 0;
    for i in 0..q.pow(4) {
        let c = [el(i % q), el(i / q % q), el(i / q / q % q), el(i / q / q / q)];
        if !(c[0] * c[3] - c[1] * c[2]).is_zero() {
            m11 += 1;
        }
    }
    let pts = ff_forms::p1_points::<F<Q>>();
    let mut m21 = 0;
    for i in 1..q.pow(6) {
        let mut r = i;
        // b[i][j]: coefficient of X0^(2-i) X1^i Y0^(1-j) Y1^j
        let b: [[F<Q>; 2]; 3] = std::array::from_fn(|_| {
            std::array::from_fn(|_| {
                let v = el(r % q);
                r /= q;
                v
            })
        });
        let x_root = pts.iter().any(|x| {
            (0..2).all(|j| {
                BinaryForm::new(vec![b[0][j], b[1][j], b[2][j]]).eval(&x[0], &x[1]).is_zero()
            })
        });
        let y_root = pts.iter().any(|y| (0..3).all(|i| (b[i][0] * y[0] + b[i][1] * y[1]).is_zero()));
        if !x_root && !y_root {
            m21 += 1;
        }
    }
    [m10, m20 / units, m11 / units, m21 / units]
}

pub fn run_census(q: u32) -> Result<CensusReport, CensusError> {
    if !CENSUS_Q.contains(&q) {
        return Err(CensusError::UnsupportedField(q));
    }
    with_field!(q, Q, { census_field::<Q>() }).ok_or(CensusError::UnsupportedField(q))
}

/// Census for any supported field size including 7, 8, 9 (slow for q >= 7).
pub fn run_census_unchecked(q: u32) -> Result<CensusReport, CensusError> {
    with_field!(q, Q, { census_field::<Q>() }).ok_or(CensusError::UnsupportedField(q))
}

impl CensusReport {
    pub fn count(&self, tag: FactorTag, sub: Option<Conj11Sub>) -> u64 {
        self.counts.get(&(tag, sub)).copied().unwrap_or(0)
    }

    pub fn tag_count(&self, tag: FactorTag) -> u64 {
        self.counts.iter().filter(|((t, _), _)| *t == tag).map(|(_, v)| v).sum()
    }

    pub fn rows(&self) -> Vec<ReportRow> {
        let q = self.q;
        let mut rows = Vec::new();
        let row = |kind: &str, subtype: &str, count: u64, expected: i128, smooth: Option<u64>| ReportRow {
            q,
            kind: kind.to_string(),
            subtype: subtype.to_string(),
            count,
            expected: i64::try_from(expected).expect("census counts fit in i64"),
            smooth,
        };
        for tag in FactorTag::ALL {
            if tag == FactorTag::Zero {
                continue;
            }
            let count = self.tag_count(tag);
            let smooth: u64 = self.smooth.iter().filter(|((t, _), _)| *t == tag).map(|(_, v)| v).sum();
            let want_smooth = if expected_smooth(tag) { count } else { 0 };
            let mut r = row(tag.label(), "-", count, expected_type_count(q, tag, None), Some(smooth));
            if smooth != want_smooth {
                r.expected = -1;
            }
            rows.push(r);
            if tag == FactorTag::Conj11 {
                for sub in Conj11Sub::ALL {
                    let c = self.count(tag, Some(sub));
                    rows.push(row(tag.label(), sub.label(), c, expected_type_count(q, tag, Some(sub)), None));
                }
            }
        }
        let qq = q as i128;
        rows.push(row("total", "-", self.total, (qq.pow(9) - 1) / (qq - 1), None));
        for (name, (v, e)) in ["m10", "m20", "m11", "m21"].iter().zip(self.m.iter().zip(expected_m(q))) {
            rows.push(row("irreducible", name, *v, e, None));
        }
        if let Some(l) = &self.line {
            let e = expected_line(q);
            let got = [l.r11, l.r12, l.r13, l.r2, l.r3, l.r0, l.total];
            for (i, name) in ["r11", "r12", "r13", "r2", "r3", "r0", "total"].iter().enumerate() {
                rows.push(row("line-condition", name, got[i], e[i], None));
            }
        }
        if let Some(d) = &self.delta {
            let e = expected_delta(q);
            let got = [
                d.s11, d.s12, d.s13, d.s2, d.s3, d.s4, d.s5, d.s0, d.total, d.t11, d.t13, d.t3, d.t4, d.t5, d.t_total,
            ];
            let names =
                ["s11", "s12", "s13", "s2", "s3", "s4", "s5", "s0", "total", "t11", "t13", "t3", "t4", "t5", "t-total"];
            for (i, name) in names.iter().enumerate() {
                rows.push(row("delta-condition", name, got[i], e[i], None));
            }
        }
        rows
    }

    pub fn mismatches(&self) -> Vec<ReportRow> {
        self.rows().into_iter().filter(|r| !r.matches()).collect()
    }

    pub fn to_tsv(&self) -> String {
        let mut s = String::from("q\ttype\tsubtype\tcount\texpected\tsmooth\n");
        for r in self.rows() {
            let smooth = r.smooth.map_or("-".to_string(), |v| v.to_string());
            let _ = writeln!(s, "{}\t{}\t{}\t{}\t{}\t{}", r.q, r.kind, r.subtype, r.count, r.expected, smooth);
        }
        s
    }
}
