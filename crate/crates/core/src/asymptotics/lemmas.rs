use num_traits::{One, Signed};
use serde::Serialize;

use super::{forward_intervals, rat, require_forward_hypothesis, term, AsymptoticInterval, Axis};
use crate::charpoly::SeedPair;
use crate::error::{Error, Result};
use crate::exact::{floor, Integer, QuadRational, Rational};

/// Whether every forward interval sits strictly on the positive half of its
/// axis and the intervals are pairwise disjoint.
///
/// Real and imaginary intervals live on different axes, so only
/// `t1 | t2 | t3` and `t5 | t4` need comparing.
pub fn check_disjointness(seed: SeedPair) -> Result<bool> {
    let iv = forward_intervals(seed)?;
    let positive = iv.iter().all(|i| i.lo.signum() > 0);
    let real_ordered = iv[0].hi < iv[1].lo && iv[1].hi < iv[2].lo;
    let imag_ordered = iv[4].hi < iv[3].lo;
    Ok(positive && real_ordered && imag_ordered)
}

/// An exact quantity with the lower bound claimed for it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Margin {
    pub name: &'static str,
    pub value: QuadRational,
    pub bound: QuadRational,
    /// `value > bound` when strict, `value ≥ bound` otherwise.
    pub strict: bool,
    /// `value == bound` is claimed as an identity.
    pub exact: bool,
}

impl Margin {
    pub fn holds(&self) -> bool {
        if self.exact {
            self.value == self.bound
        } else if self.strict {
            self.value > self.bound
        } else {
            self.value >= self.bound
        }
    }
}

/// Endpoint positivity, pairwise gaps and the `t1`-vs-`p²` gap, each against
/// its stated multiple of `q²` (or `4qp` for the exact `t2`–`t3` gap).
pub fn lemma_margins(seed: SeedPair) -> Result<Vec<Margin>> {
    let iv = forward_intervals(seed)?;
    let (p, q) = (seed.p_int(), seed.q_int());
    let q2 = rat(&(&q * &q));
    let times_q2 = |n: i64, d: i64| QuadRational::from(Rational::new(n.into(), d.into()) * &q2);
    let p2 = QuadRational::from(rat(&(&p * &p)));
    let m = |name, value, bound, strict| Margin {
        name,
        value,
        bound,
        strict,
        exact: false,
    };
    Ok(vec![
        m("t1 lower endpoint", iv[0].lo.clone(), times_q2(58, 1), true),
        m(
            "t2 lower endpoint",
            iv[1].lo.clone(),
            times_q2(3360, 1),
            true,
        ),
        m(
            "t3 lower endpoint",
            iv[2].lo.clone(),
            times_q2(3597, 1),
            false,
        ),
        m(
            "Im t4 lower endpoint",
            iv[3].lo.clone(),
            times_q2(12, 5),
            true,
        ),
        m(
            "Im t5 lower endpoint",
            iv[4].lo.clone(),
            times_q2(2, 5),
            true,
        ),
        m("gap t1..t2", &iv[1].lo - &iv[0].hi, times_q2(3301, 1), true),
        Margin {
            name: "gap t2..t3",
            value: &iv[2].lo - &iv[1].hi,
            bound: QuadRational::from(rat(&(Integer::from(4) * &q * &p))),
            strict: false,
            exact: true,
        },
        m(
            "gap Im t5..Im t4",
            &iv[3].lo - &iv[4].hi,
            times_q2(1, 1),
            true,
        ),
        m(
            "p^2 above t1 interval",
            p2 - &iv[0].hi,
            times_q2(3421, 1),
            false,
        ),
    ])
}

/// All integers strictly inside a real-axis interval.
pub fn integer_points(interval: &AsymptoticInterval) -> Result<Vec<Integer>> {
    if interval.axis == Axis::Imaginary {
        return Err(Error::ImaginaryAxis);
    }
    // Start just below lo using a coarse rational lower bound, then filter
    // with exact comparisons.
    let mut n = floor(&interval.lo.bracket(8).0);
    let mut out = Vec::new();
    loop {
        let x = QuadRational::from(n.clone());
        if x >= interval.hi {
            break;
        }
        if x > interval.lo {
            out.push(n.clone());
        }
        n += Integer::one();
    }
    Ok(out)
}

/// Hypotheses under which the real forward intervals have few integer
/// points, each evaluated in exact integer arithmetic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct IntegerPointHypotheses {
    /// `p > 9q³`: the `t2` and `t3` intervals contain no integers.
    pub t2_t3_empty: bool,
    /// `p² > 10q⁴`: the `t1` interval contains at most one integer.
    pub t1_at_most_one: bool,
    /// `16p ≥ 256q³ + 5q`: the `t1` interval contains no integers.
    pub t1_empty: bool,
}

pub fn integer_point_hypotheses(seed: SeedPair) -> IntegerPointHypotheses {
    let (p, q) = (seed.p_int(), seed.q_int());
    let q3 = &q * &q * &q;
    IntegerPointHypotheses {
        t2_t3_empty: p > Integer::from(9) * &q3,
        t1_at_most_one: &p * &p > Integer::from(10) * &q3 * &q,
        t1_empty: Integer::from(16) * &p >= Integer::from(256) * &q3 + Integer::from(5) * &q,
    }
}

/// Widths of the real forward intervals: `10q⁴/p²`, `9q³/p`, `9q³/p`.
pub fn real_interval_widths(seed: SeedPair) -> Result<[Rational; 3]> {
    require_forward_hypothesis(seed)?;
    let (p, q) = (seed.p_int(), seed.q_int());
    let w1 = term(10, &q, 4, &p, 2);
    let w23 = term(9, &q, 3, &p, 1);
    debug_assert!(w1.is_positive());
    Ok([w1, w23.clone(), w23])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::asymptotics::{RootLabel, Target};
    use crate::exact::{ceil, rational};

    fn seed(p: u64, q: u64) -> SeedPair {
        SeedPair::new(p, q).unwrap()
    }

    #[test]
    fn disjoint_examples() {
        assert!(check_disjointness(seed(59, 1)).unwrap());
        assert!(check_disjointness(seed(590, 7)).unwrap());
        assert!(check_disjointness(seed(50, 1)).is_err());
    }

    #[test]
    fn margins_hold_on_examples() {
        for s in [seed(59, 1), seed(590, 7), seed(179, 3), seed(10_007, 1)] {
            for m in lemma_margins(s).unwrap() {
                assert!(m.holds(), "{s}: {} = {} vs {}", m.name, m.value, m.bound);
            }
        }
    }

    #[test]
    fn gap_between_t2_and_t3_is_4qp() {
        let m = lemma_margins(seed(61, 1)).unwrap();
        let gap = m.iter().find(|m| m.name == "gap t2..t3").unwrap();
        assert_eq!(gap.value, QuadRational::from_int(4 * 61));
    }

    #[test]
    fn integer_points_examples() {
        let iv = forward_intervals(seed(59, 1)).unwrap();
        assert!(integer_points(&iv[1]).unwrap().is_empty());
        assert!(integer_points(&iv[0]).unwrap().len() <= 1);
        assert!(matches!(integer_points(&iv[3]), Err(Error::ImaginaryAxis)));
        let unit = AsymptoticInterval::new(
            RootLabel::new(1),
            Target::Forward,
            QuadRational::from_int(0),
            QuadRational::from_int(1),
        );
        assert!(integer_points(&unit).unwrap().is_empty());
        let wide = AsymptoticInterval::new(
            RootLabel::new(1),
            Target::Forward,
            QuadRational::from(rational(-5, 2)),
            QuadRational::from_int(2),
        );
        let got: Vec<i64> = integer_points(&wide)
            .unwrap()
            .iter()
            .map(|n| n.try_into().unwrap())
            .collect();
        assert_eq!(got, vec![-2, -1, 0, 1]);
    }

    #[test]
    fn integer_points_match_floor_ceil_count() {
        // Oracle: #{n : lo < n < hi} = ceil(hi) − floor(lo) − 1 for rational ends.
        for p in 59..200u64 {
            for q in 1..=3u64 {
                let Ok(s) = SeedPair::new(p, q) else { continue };
                if p < 59 * q {
                    continue;
                }
                for iv in forward_intervals(s).unwrap().iter().take(3) {
                    let (lo, hi) = (iv.lo.as_rational().unwrap(), iv.hi.as_rational().unwrap());
                    let expect = ceil(hi) - floor(lo) - Integer::one();
                    assert_eq!(Integer::from(integer_points(iv).unwrap().len()), expect);
                }
            }
        }
    }

    #[test]
    fn hypotheses_examples() {
        let h = integer_point_hypotheses(seed(59, 1));
        assert!(h.t2_t3_empty && h.t1_at_most_one && h.t1_empty);
        assert!(!integer_point_hypotheses(seed(59, 2)).t2_t3_empty);
        assert_eq!(
            real_interval_widths(seed(59, 1)).unwrap()[1],
            rational(9, 59)
        );
    }
}
