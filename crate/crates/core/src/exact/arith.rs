use num_bigint::Sign;
use num_traits::{One, Signed};

use super::{Integer, Rational};
use crate::error::{Error, Result};

/// Build `num/den` as a reduced rational. Panics if `den == 0`.
pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(Integer::from(num), Integer::from(den))
}

/// Largest `s` with `s² ≤ n`.
pub fn integer_sqrt_floor(n: &Integer) -> Result<Integer> {
    if n.sign() == Sign::Minus {
        return Err(Error::NegativeInput(n.to_string()));
    }
    Ok(n.sqrt())
}

pub fn floor(x: &Rational) -> Integer {
    x.floor().to_integer()
}

pub fn ceil(x: &Rational) -> Integer {
    x.ceil().to_integer()
}

/// All integers `n` with `lo < n < hi`, ascending.
pub fn integers_strictly_between(lo: &Rational, hi: &Rational) -> Vec<Integer> {
    let mut out = Vec::new();
    let mut n: Integer = floor(lo) + Integer::one();
    let end = ceil(hi);
    while n < end {
        out.push(n.clone());
        n += Integer::one();
    }
    out
}

/// Rational bracket `lo ≤ √y ≤ hi` with `hi - lo = 1/(den(y)·2^bits)`.
///
/// `lo < hi` always holds, so when `y` is a perfect square the upper end is
/// strictly above the root.
pub fn sqrt_bracket(y: &Rational, bits: u32) -> Result<(Rational, Rational)> {
    if y.is_negative() {
        return Err(Error::NegativeInput(y.to_string()));
    }
    let scale = Integer::one() << bits;
    let den = y.denom() * &scale;
    // √(n/d) = √(n·d·K²) / (d·K)
    let radicand = y.numer() * y.denom() * &scale * &scale;
    let s = integer_sqrt_floor(&radicand)?;
    let lo = Rational::new(s.clone(), den.clone());
    let hi = Rational::new(s + 1, den);
    Ok((lo, hi))
}

/// Rational bracket of √2 with width `2^-bits`.
pub fn sqrt2_bracket(bits: u32) -> (Rational, Rational) {
    sqrt_bracket(&Rational::from_integer(Integer::from(2)), bits).expect("2 is nonnegative")
}
