use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::Sign;
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use super::{Integer, Rational};

/// Dense univariate polynomial over the integers; `coeffs[k]` multiplies `x^k`.
///
/// The coefficient vector never has trailing zeros, so the zero polynomial is
/// the empty vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<Integer>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<Integer>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Integer::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: Integer) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Self::from_i64s(&[0, 1])
    }

    /// `∏ (x - r)` for integer `r`.
    pub fn from_roots(roots: &[i64]) -> Self {
        roots.iter().fold(Self::from_i64s(&[1]), |acc, &r| {
            acc * Self::from_i64s(&[-r, 1])
        })
    }

    pub fn coeffs(&self) -> &[Integer] {
        &self.coeffs
    }

    /// Coefficient of `x^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> Integer {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Integer> {
        self.coeffs.last()
    }

    pub fn eval_integer(&self, x: &Integer) -> Integer {
        self.coeffs
            .iter()
            .rev()
            .fold(Integer::zero(), |acc, c| acc * x + c)
    }

    /// Exact value at a rational point.
    pub fn eval(&self, x: &Rational) -> Rational {
        let Some(deg) = self.degree() else {
            return Rational::zero();
        };
        let den = num_traits::pow(x.denom().clone(), deg);
        Rational::new(self.homogeneous_numerator(x), den)
    }

    /// Sign of the value at `x` without forming the reduced rational.
    pub fn sign_at(&self, x: &Rational) -> Sign {
        if self.is_zero() {
            return Sign::NoSign;
        }
        // Denominator power is positive, so the sign is that of the numerator.
        self.homogeneous_numerator(x).sign()
    }

    /// `Σ c_k n^k d^(deg-k)` for `x = n/d`.
    fn homogeneous_numerator(&self, x: &Rational) -> Integer {
        let (n, d) = (x.numer(), x.denom());
        let mut iter = self.coeffs.iter().rev();
        let Some(lead) = iter.next() else {
            return Integer::zero();
        };
        let mut acc = lead.clone();
        if d.is_one() {
            for c in iter {
                acc = acc * n + c;
            }
            return acc;
        }
        let mut dpow = d.clone();
        for c in iter {
            acc = acc * n + c * &dpow;
            dpow *= d;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Integer::from(k))
                .collect(),
        )
    }

    pub fn scale(&self, k: &Integer) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Multiply by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Integer::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPolynomial { coeffs }
    }

    /// Nonnegative gcd of the coefficients (zero for the zero polynomial).
    pub fn content(&self) -> Integer {
        self.coeffs.iter().fold(Integer::zero(), |g, c| g.gcd(c))
    }

    /// Divide out the positive content; signs are preserved.
    pub fn primitive_part(&self) -> Self {
        let g = self.content();
        if g.is_zero() || g.is_one() {
            return self.clone();
        }
        IntPolynomial {
            coeffs: self.coeffs.iter().map(|c| c / &g).collect(),
        }
    }

    /// Pseudo-remainder scaled by a positive constant: returns `r` with
    /// `m·self = s·divisor + r`, `deg r < deg divisor` and `m > 0`.
    pub fn positive_pseudo_rem(&self, divisor: &Self) -> Self {
        let dd = divisor
            .degree()
            .expect("pseudo-remainder by zero polynomial");
        let lc = divisor.leading().unwrap().clone();
        let mut r = self.clone();
        let mut steps = 0usize;
        while let Some(dr) = r.degree() {
            if dr < dd {
                break;
            }
            let lr = r.leading().unwrap().clone();
            r = r.scale(&lc) - divisor.shift(dr - dd).scale(&lr);
            steps += 1;
        }
        // Each step multiplied by lc; make the total multiplier positive.
        if lc.is_negative() && steps % 2 == 1 {
            -r
        } else {
            r
        }
    }

    /// Primitive gcd with nonnegative leading coefficient.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = if self.degree() >= other.degree() {
            (self.primitive_part(), other.primitive_part())
        } else {
            (other.primitive_part(), self.primitive_part())
        };
        while !b.is_zero() {
            let r = a.positive_pseudo_rem(&b).primitive_part();
            a = b;
            b = r;
        }
        if a.leading().is_some_and(Signed::is_negative) {
            -a
        } else {
            a
        }
    }

    /// True when `gcd(self, self')` is a nonzero constant.
    pub fn is_squarefree(&self) -> bool {
        !self.is_zero() && self.gcd(&self.derivative()).degree() == Some(0)
    }

    /// `self(x²)`.
    pub fn compose_square(&self) -> Self {
        let mut coeffs = vec![Integer::zero(); self.coeffs.len() * 2];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[2 * k] = c.clone();
        }
        Self::new(coeffs)
    }

    /// Cauchy bound: every real root lies in `(-B, B)`.
    pub fn cauchy_bound(&self) -> Integer {
        let Some(lead) = self.leading() else {
            return Integer::one();
        };
        let lead = lead.abs();
        let max = self.coeffs[..self.coeffs.len() - 1]
            .iter()
            .map(Signed::abs)
            .max()
            .unwrap_or_default();
        // 1 + max|c_i|/|lead|, rounded up.
        Integer::one() + max.div_ceil(&lead) + 1
    }
}

/// Serialized as decimal strings, ascending powers.
impl serde::Serialize for IntPolynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.coeffs.iter().map(|c| c.to_string()))
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            first = false;
            let a = c.abs();
            match k {
                0 => write!(f, "{a}")?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{a}*")?;
                    }
                    if k == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![Integer::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }
}

impl Add for IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: IntPolynomial) -> IntPolynomial {
        &self + &rhs
    }
}

impl Sub for IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: IntPolynomial) -> IntPolynomial {
        &self - &rhs
    }
}

impl Mul for IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: IntPolynomial) -> IntPolynomial {
        &self * &rhs
    }
}

impl Neg for IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        IntPolynomial {
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational;

    #[test]
    fn zero_polynomial_evaluates_to_zero() {
        assert_eq!(IntPolynomial::zero().eval(&rational(7, 1)), rational(0, 1));
        assert_eq!(IntPolynomial::from_i64s(&[0, 0, 0]), IntPolynomial::zero());
        assert_eq!(IntPolynomial::zero().degree(), None);
    }

    #[test]
    fn eval_at_fraction_matches_direct_sum() {
        let p = IntPolynomial::from_i64s(&[-3, 0, 5, 2]);
        let x = rational(-7, 3);
        let direct = rational(-3, 1) + rational(5, 1) * &x * &x + rational(2, 1) * &x * &x * &x;
        assert_eq!(p.eval(&x), direct);
        assert_eq!(p.sign_at(&x), direct.numer().sign());
    }

    #[test]
    fn pseudo_remainder_identity() {
        let a = IntPolynomial::from_i64s(&[1, -4, 0, 3, 2]);
        let b = IntPolynomial::from_i64s(&[5, 0, -3]);
        let r = a.positive_pseudo_rem(&b);
        assert!(r.degree() < b.degree());
        // lc(b)=-3, three steps → multiplier (-3)^3 negated → 27·a ≡ r (mod b)
        let diff = &a.scale(&Integer::from(27)) - &r;
        assert!(diff.positive_pseudo_rem(&b).is_zero());
    }

    #[test]
    fn gcd_and_squarefree() {
        let f = IntPolynomial::from_roots(&[1, 2, 2, 3]);
        assert!(!f.is_squarefree());
        assert_eq!(f.gcd(&f.derivative()), IntPolynomial::from_roots(&[2]));
        assert!(IntPolynomial::from_roots(&[1, 2, 3]).is_squarefree());
        assert!(IntPolynomial::from_i64s(&[-2, 0, 1]).is_squarefree());
    }

    #[test]
    fn compose_square_round_trip() {
        let p = IntPolynomial::from_i64s(&[-1024, -5760, -3620, -535, -30, 1]);
        let q = p.compose_square();
        assert_eq!(q.degree(), Some(10));
        for k in 0..=5 {
            assert_eq!(q.coeff(2 * k), p.coeff(k));
            assert!(q.coeff(2 * k + 1).is_zero());
        }
    }

    #[test]
    fn cauchy_bound_exceeds_roots() {
        let p = IntPolynomial::from_roots(&[-40, 3, 17]);
        let b = p.cauchy_bound();
        assert!(b > Integer::from(40));
    }
}
