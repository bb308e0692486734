//! Exact scalar and polynomial arithmetic.
//!
//! Integers and rationals are backed by `num-bigint` / `num-rational`; every
//! other type in this module is built on top of them and never rounds.

mod arith;
mod poly;
mod quad;
mod ring;
mod sturm;
mod tripoly;

pub use arith::{
    ceil, floor, integer_sqrt_floor, integers_strictly_between, rational, sqrt2_bracket,
    sqrt_bracket,
};
pub use poly::IntPolynomial;
pub use quad::QuadRational;
pub use ring::{pow, Ring};
pub use sturm::{count_roots, isolate_roots, sign_variations, sturm_sequence, IsolatingInterval};
pub use tripoly::{Exponents, TriPolynomial};

/// Arbitrary-precision signed integer.
pub type Integer = num_bigint::BigInt;

/// Arbitrary-precision rational, always stored in lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

/// Serde helper writing a rational as `"num/den"`.
pub fn serialize_ratio<S: serde::Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&quad::ratio_string(r))
}

/// Serde helper writing a slice of rationals as `["num/den", ...]`.
pub fn serialize_ratios<S: serde::Serializer>(rs: &[Rational], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(rs.iter().map(quad::ratio_string))
}

/// Serde helper writing an integer as a decimal string.
pub fn serialize_integer<S: serde::Serializer>(n: &Integer, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(n)
}

/// `"num/den"`, also for integers (`"5/1"`).
pub fn ratio_string(r: &Rational) -> String {
    quad::ratio_string(r)
}
