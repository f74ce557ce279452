use biform_core::{BiForm22, BinaryForm, Mat2, Ring};
use ff_forms::{
    classify_binary_quadratic, factorization_type, has_smooth_point, points_on_curve, BinaryClass, Conj11Sub,
    FactorTag, FiniteField, Gf,
};
use proptest::prelude::*;

fn form<const Q: u8>(c: [i64; 9]) -> BiForm22<Gf<Q>> {
    BiForm22::from_row_major(&c.map(Gf::<Q>::from_i64))
}

#[test]
fn binary_quadratic_class_counts() {
    // split: (q-1) q(q+1)/2, double: (q-1)(q+1), irreducible: (q-1)(q^2-q)/2
    fn check<const Q: u8>() {
        let q = Q as usize;
        let mut counts = [0usize; 4];
        for a in Gf::<Q>::elements() {
            for b in Gf::<Q>::elements() {
                for c in Gf::<Q>::elements() {
                    let i = match classify_binary_quadratic(&BinaryForm::new(vec![a, b, c])) {
                        BinaryClass::SplitDistinct => 0,
                        BinaryClass::DoubleRoot => 1,
                        BinaryClass::Irreducible => 2,
                        BinaryClass::Zero => 3,
                    };
                    counts[i] += 1;
                }
            }
        }
        assert_eq!(counts, [(q - 1) * q * (q + 1) / 2, (q - 1) * (q + 1), (q - 1) * (q * q - q) / 2, 1]);
    }
    check::<2>();
    check::<3>();
    check::<4>();
    check::<5>();
    check::<7>();
    check::<8>();
    check::<9>();
}

#[test]
fn factorisation_examples() {
    // X0^2 Y0^2 - X1^2 Y1^2 = (X0Y0 - X1Y1)(X0Y0 + X1Y1)
    let d = [1, 0, 0, 0, 0, 0, 0, 0, -1];
    assert_eq!(factorization_type(&form::<3>(d)).tag, FactorTag::TwoConics);
    assert_eq!(factorization_type(&form::<5>(d)).tag, FactorTag::TwoConics);
    // the two factors coincide in characteristic 2
    assert_eq!(factorization_type(&form::<2>(d)).tag, FactorTag::DoubleConic);

    // (X0^2 + X1^2)(Y0^2 + Y1^2): x^2+1 is irreducible mod 3, split mod 5
    let s = [1, 0, 1, 0, 0, 0, 1, 0, 1];
    assert_eq!(factorization_type(&form::<3>(s)).tag, FactorTag::TwoQuads);
    assert_eq!(factorization_type(&form::<5>(s)).tag, FactorTag::FourLines);
    assert_eq!(factorization_type(&form::<7>(s)).tag, FactorTag::TwoQuads);

    // X0 X1 Y0 Y1
    assert_eq!(factorization_type(&form::<3>([0, 0, 0, 0, 1, 0, 0, 0, 0])).tag, FactorTag::FourLines);
    // X0^2 Y0 Y1
    let t = factorization_type(&form::<5>([0, 1, 0, 0, 0, 0, 0, 0, 0]));
    assert_eq!(t.tag, FactorTag::DoubleLineTwoLines);
    // X0^2 Y0^2
    assert_eq!(factorization_type(&form::<5>([1, 0, 0, 0, 0, 0, 0, 0, 0])).tag, FactorTag::TwoDoubleLines);
    // X0 (X0 Y0^2 + X1 Y1^2)
    assert_eq!(factorization_type(&form::<5>([1, 0, 0, 0, 0, 1, 0, 0, 0])).tag, FactorTag::CubicLine);
    assert_eq!(factorization_type(&form::<5>([0; 9])).tag, FactorTag::Zero);
    // (X0Y0 + X1Y1)^2
    assert_eq!(factorization_type(&form::<5>([1, 0, 0, 0, 2, 0, 0, 0, 1])).tag, FactorTag::DoubleConic);
}

#[test]
fn conjugate_conic_pair() {
    // (X0Y0 + i X1Y1)(X0Y0 - i X1Y1) = X0^2Y0^2 + X1^2Y1^2 over F_3, i^2 = -1
    let f = form::<3>([1, 0, 0, 0, 0, 0, 0, 0, 1]);
    let t = factorization_type(&f);
    assert_eq!(t.tag, FactorTag::Conj11);
    // both components meet at ((1:0),(0:1)) and ((0:1),(1:0))
    assert_eq!(t.sub, Some(Conj11Sub::RationalPair));
    assert_eq!(points_on_curve(&f).len(), 2);
    assert!(has_smooth_point(&f).is_none());
}

#[test]
fn smooth_curve_has_smooth_points() {
    // pseudo-random grids over F_5
    let mut found = 0;
    for seed in 0..200u64 {
        let c: [i64; 9] = std::array::from_fn(|i| ((seed * 2654435761 + i as u64 * 40503) >> 7) as i64 % 5);
        let f = form::<5>(c);
        if factorization_type(&f).tag == FactorTag::Smooth {
            found += 1;
            let pts = points_on_curve(&f);
            assert!(pts.iter().all(|p| p.smooth));
            // genus one over F_5: Hasse bound gives at least 6 - 2*sqrt(5) > 1 points
            assert!(pts.len() >= 2 && pts.len() <= 10, "{}", pts.len());
            assert!(has_smooth_point(&f).is_some());
        }
    }
    assert!(found > 50);
}

fn arb_form<const Q: u8>() -> impl Strategy<Value = BiForm22<Gf<Q>>> {
    prop::array::uniform9(0..Q as usize).prop_map(|c| BiForm22::from_row_major(&c.map(Gf::<Q>::from_index)))
}

fn arb_mat<const Q: u8>() -> impl Strategy<Value = Mat2<Gf<Q>>> {
    prop::array::uniform4(0..Q as usize)
        .prop_map(|c| Mat2::new(Gf::from_index(c[0]), Gf::from_index(c[1]), Gf::from_index(c[2]), Gf::from_index(c[3])))
        .prop_filter("invertible", |m| !num_traits::Zero::is_zero(&m.det()))
}

macro_rules! invariance {
    ($name:ident, $q:expr) => {
        proptest! {
            #[test]
            fn $name(f in arb_form::<$q>(), m in arb_mat::<$q>(), n in arb_mat::<$q>(), s in 1..$q as usize) {
                let t = factorization_type(&f);
                prop_assert_eq!(factorization_type(&f.act(&m, &n)), t);
                prop_assert_eq!(factorization_type(&f.scale(&Gf::from_index(s))), t);
                prop_assert_eq!(factorization_type(&f.transpose()), t.transposed());
                prop_assert_eq!(points_on_curve(&f.act(&m, &n)).len(), points_on_curve(&f).len());
            }
        }
    };
}

invariance!(invariant_under_group_f2, 2);
invariance!(invariant_under_group_f3, 3);
invariance!(invariant_under_group_f4, 4);
invariance!(invariant_under_group_f5, 5);
