use ff_forms::{Conj11Sub, FactorTag};

/// Closed-form number of classes of each type over F_q (up to scaling).
pub fn expected_type_count(q: u32, tag: FactorTag, sub: Option<Conj11Sub>) -> i128 {
    let q = q as i128;
    match (tag, sub) {
        (FactorTag::TwoConics, _) => (q.pow(3) - q) * (q.pow(3) - q - 1) / 2,
        (FactorTag::CubicLine, _) => 2 * q.pow(3) * (q + 1).pow(2) * (q - 1),
        (FactorTag::ConicTwoLines, _) => q * (q + 1).pow(3) * (q - 1),
        (FactorTag::FourLines, _) => q * q * (q + 1).pow(2) / 4,
        (FactorTag::QuadTwoLines, _) => q * q * (q + 1) * (q - 1) / 2,
        (FactorTag::TwoQuads, _) => q * q * (q - 1).pow(2) / 4,
        (FactorTag::DoubleLineTwoLines, _) => q * (q + 1).pow(2),
        (FactorTag::QuadDoubleLine, _) => q * (q + 1) * (q - 1),
        (FactorTag::DoubleConic, _) => q * (q + 1) * (q - 1),
        (FactorTag::TwoDoubleLines, _) => (q + 1).pow(2),
        (FactorTag::Smooth, _) => q.pow(4) * (q + 1).pow(2) * (q - 1).pow(2),
        (FactorTag::AbsIrredSingular, _) => q.pow(3) * (q + 1).pow(2) * (q - 1).pow(2),
        (FactorTag::Conj11, None) => (q.pow(3) - q) * (q.pow(3) + q - 1) / 2,
        (FactorTag::Conj11, Some(Conj11Sub::RationalPair)) => q.pow(3) * (q + 1).pow(2) * (q - 1) / 4,
        (FactorTag::Conj11, Some(Conj11Sub::ConjugatePair)) => q * q * (q + 1) * (q - 1).pow(2) * (q - 2) / 4,
        (FactorTag::Conj11, Some(Conj11Sub::SinglePoint)) => q * (q + 1).pow(2) * (q - 1).pow(2) / 2,
        (FactorTag::Zero, _) => 0,
    }
}

/// Whether every form of the type has a smooth F_q-point (otherwise none does).
pub fn expected_smooth(tag: FactorTag) -> bool {
    !matches!(
        tag,
        FactorTag::TwoQuads | FactorTag::QuadDoubleLine | FactorTag::DoubleConic | FactorTag::TwoDoubleLines | FactorTag::Conj11
    )
}

/// m10, m20, m11, m21.
pub fn expected_m(q: u32) -> [i128; 4] {
    let q = q as i128;
    [q + 1, (q * q - q) / 2, q.pow(3) - q, q.pow(5) - q.pow(3)]
}

/// r11, r12, r13, r2, r3, r0, total.
pub fn expected_line(p: u32) -> [i128; 7] {
    let p = p as i128;
    let total = p.pow(7) * (p - 1) / 2;
    let r11 = p.pow(3) * (p + 1) * (p - 1).pow(2) / 4;
    let r12 = p * p * (p + 1) * (p - 1).pow(2) * (p - 2) / 4;
    let r13 = p * p * (p + 1) * (p - 1).pow(2) / 2;
    let r2 = p * p * (p - 1).pow(2) / 4;
    let r3 = p * p * (p - 1) / 2;
    [r11, r12, r13, r2, r3, total - (r11 + r12 + r13 + r2 + r3), total]
}

/// s11, s12, s13, s2, s3, s4, s5, s0, total, then the second-condition
/// tallies t11, t13, t3, t4, t5 and their total p^4 (p - 1).
pub fn expected_delta(p: u32) -> [i128; 15] {
    let p = p as i128;
    let s11 = p.pow(3) * (p - 1) / 2;
    let s13 = p * (p - 1).pow(2) / 2;
    let s3 = p * (p - 1) / 2;
    let s4 = p * (p - 1);
    let s5 = p;
    let total = p.pow(5);
    [
        s11,
        0,
        s13,
        0,
        s3,
        s4,
        s5,
        total - (s11 + s13 + s3 + s4 + s5),
        total,
        s11,
        s13,
        0,
        s4,
        0,
        p.pow(4) * (p - 1),
    ]
}
