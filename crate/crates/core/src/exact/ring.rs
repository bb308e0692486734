use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{Integer, Rational};

/// Commutative ring with the operations the polynomial builders need.
///
/// Implemented for the exact scalars and for [`super::TriPolynomial`], so the
/// same grouped coefficient formulas can be evaluated numerically or expanded
/// symbolically.
pub trait Ring:
    Clone
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn from_i64(v: i64) -> Self;
}

impl Ring for Integer {
    fn from_i64(v: i64) -> Self {
        Integer::from(v)
    }
}

impl Ring for Rational {
    fn from_i64(v: i64) -> Self {
        Rational::from_integer(Integer::from(v))
    }
}

/// `base^exp` by square-and-multiply.
pub fn pow<R: Ring>(base: &R, mut exp: u32) -> R {
    let mut acc = R::one();
    let mut sq = base.clone();
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * sq.clone();
        }
        exp >>= 1;
        if exp > 0 {
            sq = sq.clone() * sq;
        }
    }
    acc
}
