//! Finite fields of order at most 9 and the classification of binary
//! quadratics and (2,2)-forms over them.

pub mod field;
pub mod forms;

pub use field::{FieldDesc, FieldError, FieldTables, FiniteField, Gf, Gf2, SUPPORTED_Q};
pub use forms::{
    bilinear_factors, classify_binary_quadratic, classify_monic_quadratic, factorization_type, has_smooth_point,
    normalize_point, p1_points, points_on_curve, BinaryClass, Conj11Sub, FactorTag, FactorType, MonicClass,
    PointPair,
};

/// Runs `$body` with `$F` bound to the field type of order `$q`.
#[macro_export]
macro_rules! with_field {
    ($q:expr, $Q:ident, $body:block) => {
        match $q {
            2 => {
                const $Q: u8 = 2;
                Some($body)
            }
            3 => {
                const $Q: u8 = 3;
                Some($body)
            }
            4 => {
                const $Q: u8 = 4;
                Some($body)
            }
            5 => {
                const $Q: u8 = 5;
                Some($body)
            }
            7 => {
                const $Q: u8 = 7;
                Some($body)
            }
            8 => {
                const $Q: u8 = 8;
                Some($body)
            }
            9 => {
                const $Q: u8 = 9;
                Some($body)
            }
            _ => None,
        }
    };
}
