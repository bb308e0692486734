use std::fmt;

use num_bigint::Sign;
use num_traits::Signed;
use serde::{Serialize, Serializer};

use super::quad::ratio_string;
use super::{IntPolynomial, Integer, Rational};
use crate::error::{Error, Result};

/// Half-open rational interval `(lo, hi]`.
///
/// When produced by [`isolate_roots`] it contains exactly one root of the
/// target polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IsolatingInterval {
    pub lo: Rational,
    pub hi: Rational,
}

impl IsolatingInterval {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self> {
        if lo >= hi {
            return Err(Error::EmptyInterval {
                lo: lo.to_string(),
                hi: hi.to_string(),
            });
        }
        Ok(IsolatingInterval { lo, hi })
    }

    pub fn from_ints(lo: i64, hi: i64) -> Result<Self> {
        Self::new(
            Rational::from_integer(Integer::from(lo)),
            Rational::from_integer(Integer::from(hi)),
        )
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / Rational::from_integer(Integer::from(2))
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo < x && x <= &self.hi
    }

    /// `(-hi, -lo)`.
    pub fn negated(&self) -> Self {
        IsolatingInterval {
            lo: -self.hi.clone(),
            hi: -self.lo.clone(),
        }
    }
}

impl fmt::Display for IsolatingInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}]", self.lo, self.hi)
    }
}

impl Serialize for IsolatingInterval {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("IsolatingInterval", 2)?;
        st.serialize_field("lo", &ratio_string(&self.lo))?;
        st.serialize_field("hi", &ratio_string(&self.hi))?;
        st.end()
    }
}

/// Sturm chain `s0 = f, s1 = f', s_{k+1} = -prem(s_{k-1}, s_k)`, with every
/// element after the first reduced to its primitive part.
///
/// Pseudo-remainders are taken with a positive multiplier and contents are
/// positive, so the sign pattern of the classical chain is preserved.
pub fn sturm_sequence(poly: &IntPolynomial) -> Vec<IntPolynomial> {
    assert!(!poly.is_zero(), "Sturm sequence of the zero polynomial");
    let mut chain = vec![poly.clone()];
    let d = poly.derivative().primitive_part();
    if d.is_zero() {
        return chain;
    }
    chain.push(d);
    loop {
        let n = chain.len();
        let r = chain[n - 2].positive_pseudo_rem(&chain[n - 1]);
        if r.is_zero() {
            break;
        }
        chain.push((-r).primitive_part());
    }
    chain
}

/// Number of sign changes in the chain evaluated at `x`, zeros skipped.
pub fn sign_variations(chain: &[IntPolynomial], x: &Rational) -> usize {
    let mut last = Sign::NoSign;
    let mut count = 0;
    for p in chain {
        let s = p.sign_at(x);
        if s == Sign::NoSign {
            continue;
        }
        if last != Sign::NoSign && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

fn is_root(chain: &[IntPolynomial], x: &Rational) -> bool {
    chain[0].sign_at(x) == Sign::NoSign
}

/// Number of distinct real roots of `chain[0]` in `(lo, hi]`.
///
/// An endpoint that is itself a root moves inward by half the interval width
/// (a quarter from each side if both are roots); after two such attempts the
/// call fails with [`Error::EndpointIsRoot`].
pub fn count_roots(chain: &[IntPolynomial], lo: &Rational, hi: &Rational) -> Result<usize> {
    if lo >= hi {
        return Err(Error::EmptyInterval {
            lo: lo.to_string(),
            hi: hi.to_string(),
        });
    }
    let (mut lo, mut hi) = (lo.clone(), hi.clone());
    let two = Rational::from_integer(Integer::from(2));
    let four = Rational::from_integer(Integer::from(4));
    for attempt in 0..=2 {
        let (lo_root, hi_root) = (is_root(chain, &lo), is_root(chain, &hi));
        if !lo_root && !hi_root {
            return Ok(sign_variations(chain, &lo) - sign_variations(chain, &hi));
        }
        if attempt == 2 {
            break;
        }
        let w = &hi - &lo;
        match (lo_root, hi_root) {
            (true, true) => {
                lo = &lo + &w / &four;
                hi = &hi - &w / &four;
            }
            (true, false) => lo = &lo + &w / &two,
            _ => hi = &hi - &w / &two,
        }
    }
    Err(Error::EndpointIsRoot {
        lo: lo.to_string(),
        hi: hi.to_string(),
    })
}

/// Disjoint intervals of width at most `width`, each holding exactly one
/// real root of `poly`, covering every root in `region = (lo, hi]`.
/// Refinement is pure bisection, so endpoints stay exact dyadic splits of
/// the region.
pub fn isolate_roots(
    poly: &IntPolynomial,
    region: &IsolatingInterval,
    width: &Rational,
) -> Result<Vec<IsolatingInterval>> {
    if !width.is_positive() {
        return Err(Error::NonPositiveWidth(width.to_string()));
    }
    if poly.is_zero() {
        return Err(Error::NotSquarefree { gcd_degree: 0 });
    }
    let g = poly.gcd(&poly.derivative());
    if g.degree() != Some(0) {
        return Err(Error::NotSquarefree {
            gcd_degree: g.degree().unwrap_or(0),
        });
    }
    let chain = sturm_sequence(poly);
    let count =
        |a: &Rational, b: &Rational| sign_variations(&chain, a) - sign_variations(&chain, b);

    let mut out = Vec::new();
    // Depth-first, right half pushed first so output is ascending.
    let mut stack = vec![(region.clone(), count(&region.lo, &region.hi))];
    while let Some((iv, n)) = stack.pop() {
        if n == 0 {
            continue;
        }
        if n == 1 && &iv.width() <= width {
            out.push(iv);
            continue;
        }
        let mid = iv.midpoint();
        let left_n = count(&iv.lo, &mid);
        stack.push((
            IsolatingInterval {
                lo: mid.clone(),
                hi: iv.hi,
            },
            n - left_n,
        ));
        stack.push((IsolatingInterval { lo: iv.lo, hi: mid }, left_n));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational;
    use proptest::prelude::*;

    #[test]
    fn chain_of_x() {
        let chain = sturm_sequence(&IntPolynomial::x());
        assert_eq!(
            chain,
            vec![IntPolynomial::x(), IntPolynomial::from_i64s(&[1])]
        );
    }

    #[test]
    fn sqrt2_counts() {
        let f = IntPolynomial::from_i64s(&[-2, 0, 1]);
        let chain = sturm_sequence(&f);
        assert_eq!(
            count_roots(&chain, &rational(0, 1), &rational(2, 1)).unwrap(),
            1
        );
        assert_eq!(
            count_roots(&chain, &rational(-2, 1), &rational(0, 1)).unwrap(),
            1
        );
        assert_eq!(
            count_roots(&chain, &rational(2, 1), &rational(3, 1)).unwrap(),
            0
        );
    }

    #[test]
    fn endpoint_root_is_nudged_then_rejected() {
        // Root at 1: (1, 3] shrinks to (2, 3].
        let f = IntPolynomial::from_roots(&[1, 5]);
        let chain = sturm_sequence(&f);
        assert_eq!(
            count_roots(&chain, &rational(1, 1), &rational(3, 1)).unwrap(),
            0
        );
        // Roots at 0, 1/2, 3/4: (0, 1] → (1/2, 1] → (3/4, 1] is still a root.
        let g = IntPolynomial::from_i64s(&[0, 3, -10, 8]); // x(2x-1)(4x-3)
        let chain = sturm_sequence(&g);
        assert!(matches!(
            count_roots(&chain, &rational(0, 1), &rational(1, 1)),
            Err(Error::EndpointIsRoot { .. })
        ));
    }

    #[test]
    fn isolate_sqrt2() {
        let f = IntPolynomial::from_i64s(&[-2, 0, 1]);
        let region = IsolatingInterval::from_ints(0, 2).unwrap();
        let ivs = isolate_roots(&f, &region, &rational(1, 1024)).unwrap();
        assert_eq!(ivs.len(), 1);
        let iv = &ivs[0];
        assert!(iv.width() <= rational(1, 1024));
        assert!(&iv.lo * &iv.lo < rational(2, 1) && rational(2, 1) <= &iv.hi * &iv.hi);
        assert!(iv.lo <= rational(141_421, 100_000) && rational(141_422, 100_000) <= iv.hi);
    }

    #[test]
    fn isolate_three_integer_roots() {
        let f = IntPolynomial::from_roots(&[1, 2, 3]);
        let region = IsolatingInterval::from_ints(0, 4).unwrap();
        let ivs = isolate_roots(&f, &region, &rational(1, 8)).unwrap();
        assert_eq!(ivs.len(), 3);
        for (iv, r) in ivs.iter().zip([1, 2, 3]) {
            assert!(iv.contains(&rational(r, 1)));
        }
        assert!(ivs.windows(2).all(|w| w[0].hi <= w[1].lo));
    }

    #[test]
    fn isolate_rejects_repeated_roots() {
        let f = IntPolynomial::from_roots(&[1, 1, 2]);
        let region = IsolatingInterval::from_ints(0, 4).unwrap();
        assert!(matches!(
            isolate_roots(&f, &region, &rational(1, 8)),
            Err(Error::NotSquarefree { gcd_degree: 1 })
        ));
    }

    /// Brute-force oracle: sign changes of `f` on a fine grid plus exact zeros.
    fn grid_root_count(f: &IntPolynomial, lo: i64, hi: i64, steps: i64) -> usize {
        let mut count = 0;
        let mut prev = f.sign_at(&rational(lo, 1));
        for k in 1..=steps * (hi - lo) {
            let x = rational(lo * steps + k, steps);
            let s = f.sign_at(&x);
            if s == Sign::NoSign || (prev != Sign::NoSign && s != prev) {
                count += 1;
            }
            prev = s;
        }
        count
    }

    proptest! {
        #[test]
        fn planted_rational_roots_are_found(
            roots in proptest::collection::btree_set((-60i64..60, 1i64..4), 1..=6)
        ) {
            // Roots r = n/d planted via factors (d x - n); deduplicate by value.
            let mut vals: Vec<Rational> = roots.iter().map(|&(n, d)| rational(n, d)).collect();
            vals.sort();
            vals.dedup();
            let f = vals.iter().fold(IntPolynomial::from_i64s(&[1]), |acc, r| {
                acc * IntPolynomial::new(vec![-r.numer().clone(), r.denom().clone()])
            });
            let region = IsolatingInterval::from_ints(-100, 100).unwrap();
            let ivs = isolate_roots(&f, &region, &rational(1, 64)).unwrap();
            prop_assert_eq!(ivs.len(), vals.len());
            for (iv, r) in ivs.iter().zip(&vals) {
                prop_assert!(iv.contains(r));
                prop_assert!(iv.width() <= rational(1, 64));
            }
            // Root count over a range beyond the Cauchy bound agrees.
            let b = f.cauchy_bound();
            let chain = sturm_sequence(&f);
            let lo = Rational::from_integer(-b.clone());
            let hi = Rational::from_integer(b);
            prop_assert_eq!(count_roots(&chain, &lo, &hi).unwrap(), vals.len());
        }

        #[test]
        fn sturm_count_matches_grid_scan(
            roots in proptest::collection::btree_set(-20i64..20, 1..=5),
            extra in 1i64..5,
        ) {
            // Integer roots plus an irreducible quadratic factor x² + extra.
            let rs: Vec<i64> = roots.into_iter().collect();
            let f = IntPolynomial::from_roots(&rs) * IntPolynomial::from_i64s(&[extra, 0, 1]);
            let chain = sturm_sequence(&f);
            let n = sign_variations(&chain, &rational(-21, 1)) - sign_variations(&chain, &rational(21, 1));
            prop_assert_eq!(n, rs.len());
            prop_assert_eq!(grid_root_count(&f, -21, 21, 2), rs.len());
        }
    }
}
