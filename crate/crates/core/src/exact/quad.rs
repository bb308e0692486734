use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use super::arith::sqrt2_bracket;
use super::ring::Ring;
use super::{Integer, Rational};

/// Exact element `rat + irr·√2` of `Q(√2)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadRational {
    pub rat: Rational,
    pub irr: Rational,
}

impl QuadRational {
    pub fn new(rat: Rational, irr: Rational) -> Self {
        QuadRational { rat, irr }
    }

    pub fn from_rational(rat: Rational) -> Self {
        QuadRational {
            rat,
            irr: Rational::zero(),
        }
    }

    pub fn from_int(v: i64) -> Self {
        Self::from_rational(Rational::from_integer(Integer::from(v)))
    }

    /// `a + b√2` with integer parts.
    pub fn from_ints(a: i64, b: i64) -> Self {
        QuadRational {
            rat: Rational::from_integer(Integer::from(a)),
            irr: Rational::from_integer(Integer::from(b)),
        }
    }

    pub fn sqrt2() -> Self {
        Self::from_ints(0, 1)
    }

    pub fn is_rational(&self) -> bool {
        self.irr.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.rat)
    }

    pub fn conj(&self) -> Self {
        QuadRational {
            rat: self.rat.clone(),
            irr: -self.irr.clone(),
        }
    }

    /// Field norm `rat² − 2·irr²`.
    pub fn norm(&self) -> Rational {
        &self.rat * &self.rat - Rational::from_integer(Integer::from(2)) * &self.irr * &self.irr
    }

    /// Exact sign: -1, 0 or 1.
    pub fn signum(&self) -> i8 {
        let sr = sign_of(&self.rat);
        let si = sign_of(&self.irr);
        if sr >= 0 && si >= 0 {
            return (sr + si).signum();
        }
        if sr <= 0 && si <= 0 {
            return -1;
        }
        // Mixed signs: |rat| vs √2·|irr| decided by rat² vs 2·irr².
        let two = Rational::from_integer(Integer::from(2));
        let lhs = &self.rat * &self.rat;
        let rhs = two * &self.irr * &self.irr;
        match lhs.cmp(&rhs) {
            Ordering::Greater => sr,
            Ordering::Less => si,
            Ordering::Equal => 0,
        }
    }

    pub fn abs(&self) -> Self {
        if self.signum() < 0 {
            -self.clone()
        } else {
            self.clone()
        }
    }

    pub fn checked_div(&self, rhs: &Self) -> Option<Self> {
        let n = rhs.norm();
        if n.is_zero() {
            return None;
        }
        let num = self.clone() * rhs.conj();
        Some(QuadRational {
            rat: num.rat / &n,
            irr: num.irr / n,
        })
    }

    /// Rational bounds `lo ≤ self ≤ hi` with `hi − lo ≤ |irr|·2^-bits`.
    pub fn bracket(&self, bits: u32) -> (Rational, Rational) {
        if self.is_rational() {
            return (self.rat.clone(), self.rat.clone());
        }
        let (s_lo, s_hi) = sqrt2_bracket(bits);
        let a = &self.rat + &self.irr * &s_lo;
        let b = &self.rat + &self.irr * &s_hi;
        if self.irr.is_positive() {
            (a, b)
        } else {
            (b, a)
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.rat.to_f64().unwrap_or(f64::NAN)
            + self.irr.to_f64().unwrap_or(f64::NAN) * std::f64::consts::SQRT_2
    }
}

fn sign_of(r: &Rational) -> i8 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

impl From<Rational> for QuadRational {
    fn from(r: Rational) -> Self {
        Self::from_rational(r)
    }
}

impl From<&Rational> for QuadRational {
    fn from(r: &Rational) -> Self {
        Self::from_rational(r.clone())
    }
}

impl From<Integer> for QuadRational {
    fn from(v: Integer) -> Self {
        Self::from_rational(Rational::from_integer(v))
    }
}

impl PartialOrd for QuadRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QuadRational {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).signum().cmp(&0)
    }
}

impl PartialEq<Rational> for QuadRational {
    fn eq(&self, other: &Rational) -> bool {
        self.irr.is_zero() && &self.rat == other
    }
}

impl PartialOrd<Rational> for QuadRational {
    fn partial_cmp(&self, other: &Rational) -> Option<Ordering> {
        Some(self.cmp(&QuadRational::from(other)))
    }
}

impl fmt::Display for QuadRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.rat.is_zero(), self.irr.is_zero()) {
            (_, true) => write!(f, "{}", self.rat),
            (true, false) => write!(f, "{}*sqrt2", self.irr),
            (false, false) => {
                if self.irr.is_negative() {
                    write!(f, "{} - {}*sqrt2", self.rat, -self.irr.clone())
                } else {
                    write!(f, "{} + {}*sqrt2", self.rat, self.irr)
                }
            }
        }
    }
}

/// Serialized as `{"rat": "num/den", "irr": "num/den"}`.
impl Serialize for QuadRational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("QuadRational", 2)?;
        st.serialize_field("rat", &ratio_string(&self.rat))?;
        st.serialize_field("irr", &ratio_string(&self.irr))?;
        st.end()
    }
}

/// `"num/den"`, also for integers (`"5/1"`).
pub(crate) fn ratio_string(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl $trait<&QuadRational> for &QuadRational {
            type Output = QuadRational;
            fn $method(self, rhs: &QuadRational) -> QuadRational {
                let f: fn(&QuadRational, &QuadRational) -> QuadRational = $body;
                f(self, rhs)
            }
        }
        impl $trait<QuadRational> for QuadRational {
            type Output = QuadRational;
            fn $method(self, rhs: QuadRational) -> QuadRational {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&QuadRational> for QuadRational {
            type Output = QuadRational;
            fn $method(self, rhs: &QuadRational) -> QuadRational {
                (&self).$method(rhs)
            }
        }
        impl $trait<QuadRational> for &QuadRational {
            type Output = QuadRational;
            fn $method(self, rhs: QuadRational) -> QuadRational {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| QuadRational {
    rat: &a.rat + &b.rat,
    irr: &a.irr + &b.irr,
});
forward_binop!(Sub, sub, |a, b| QuadRational {
    rat: &a.rat - &b.rat,
    irr: &a.irr - &b.irr,
});
forward_binop!(Mul, mul, |a, b| {
    let two = Rational::from_integer(Integer::from(2));
    QuadRational {
        rat: &a.rat * &b.rat + two * &a.irr * &b.irr,
        irr: &a.rat * &b.irr + &a.irr * &b.rat,
    }
});
forward_binop!(Div, div, |a, b| a
    .checked_div(b)
    .expect("division by zero in Q(sqrt 2)"));

impl Neg for QuadRational {
    type Output = QuadRational;
    fn neg(self) -> QuadRational {
        QuadRational {
            rat: -self.rat,
            irr: -self.irr,
        }
    }
}

impl Neg for &QuadRational {
    type Output = QuadRational;
    fn neg(self) -> QuadRational {
        -self.clone()
    }
}

impl Zero for QuadRational {
    fn zero() -> Self {
        QuadRational {
            rat: Rational::zero(),
            irr: Rational::zero(),
        }
    }
    fn is_zero(&self) -> bool {
        self.rat.is_zero() && self.irr.is_zero()
    }
}

impl One for QuadRational {
    fn one() -> Self {
        QuadRational {
            rat: Rational::one(),
            irr: Rational::zero(),
        }
    }
}

impl Ring for QuadRational {
    fn from_i64(v: i64) -> Self {
        QuadRational::from_int(v)
    }
}
