//! Forms of bidegree (2,2) over an arbitrary commutative ring, together with
//! the binary forms, coordinate actions and quartic invariants shared by the
//! finite-field, p-adic and real code.

pub mod binary;
pub mod form;
pub mod real;
pub mod ring;

pub use binary::{quartic_discriminant, BinaryForm};
pub use form::{discriminant, discriminant_second, phi, BiForm22, GenBinaryQuartic, Mat2};
pub use real::{count_real_roots, real_soluble, real_soluble_int, real_soluble_small};
pub use ring::Ring;

use num_bigint::BigInt;
use num_rational::BigRational;

pub type IntForm = BiForm22<BigInt>;
pub type RatForm = BiForm22<BigRational>;
pub type SmallForm = BiForm22<i64>;
pub type IntMat = Mat2<BigInt>;
pub type IntQuartic = GenBinaryQuartic<BigInt>;
pub type IntBinaryForm = BinaryForm<BigInt>;
