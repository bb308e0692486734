//! Asymptotic root intervals for `Q_pq` (forward) and `Q_qp` (reverse) when
//! `p ≥ 59q`, the shifted equations behind them, and the lemmas that
//! separate them.
//!
//! Imaginary roots are handled through their imaginary parts; all endpoints
//! are exact elements of `Q(√2)`.

mod lemmas;
mod shifted;

use std::fmt;

use serde::Serialize;

use crate::charpoly::SeedPair;
use crate::error::{Error, Result};
use crate::exact::{Integer, QuadRational, Rational};

pub use lemmas::{
    check_disjointness, integer_point_hypotheses, integer_points, lemma_margins,
    real_interval_widths, IntegerPointHypotheses, Margin,
};
pub use shifted::{
    bound_check, c_from_root, constant_part, derive_shifted_equation, shifted_equation,
    sign_change_check, BoundReport, BoundSample, ResidualSplit, ShiftedEquation,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Axis {
    Real,
    Imaginary,
}

/// Which polynomial an interval refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Target {
    /// `Q_pq` itself.
    Forward,
    /// `Q_qp`, the polynomial with `p` and `q` swapped.
    Reverse,
}

/// One of the five roots in the closed upper half plane, `t1 < t2 < t3` on
/// the positive real axis and `Im t4 > Im t5` on the positive imaginary axis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootLabel {
    index: u8,
}

impl RootLabel {
    pub const ALL: [RootLabel; 5] = [
        RootLabel { index: 1 },
        RootLabel { index: 2 },
        RootLabel { index: 3 },
        RootLabel { index: 4 },
        RootLabel { index: 5 },
    ];

    /// Panics unless `index` is in `1..=5`.
    pub fn new(index: u8) -> Self {
        assert!(
            (1..=5).contains(&index),
            "root label index {index} out of range"
        );
        RootLabel { index }
    }

    pub fn index(self) -> u8 {
        self.index
    }

    pub fn axis(self) -> Axis {
        if self.index <= 3 {
            Axis::Real
        } else {
            Axis::Imaginary
        }
    }

    /// Label of the root related to this one by `t·t̃ = ±p²q²`.
    pub fn partner(self) -> RootLabel {
        RootLabel {
            index: [3, 2, 1, 5, 4][self.index as usize - 1],
        }
    }
}

impl fmt::Display for RootLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t{}", self.index)
    }
}

impl Serialize for RootLabel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Open interval `(lo, hi)` on the real axis, or on the imaginary axis for
/// the imaginary part of the root.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AsymptoticInterval {
    pub label: RootLabel,
    pub axis: Axis,
    pub target: Target,
    pub lo: QuadRational,
    pub hi: QuadRational,
}

impl AsymptoticInterval {
    fn new(label: RootLabel, target: Target, lo: QuadRational, hi: QuadRational) -> Self {
        debug_assert!(lo < hi, "{label}: {lo} !< {hi}");
        AsymptoticInterval {
            label,
            axis: label.axis(),
            target,
            lo,
            hi,
        }
    }

    /// Strict containment `lo < x < hi`.
    pub fn contains(&self, x: &QuadRational) -> bool {
        &self.lo < x && x < &self.hi
    }

    pub fn width(&self) -> QuadRational {
        &self.hi - &self.lo
    }

    /// Rational interval enclosing this one, at `bits` of √2 precision.
    pub fn outer_bounds(&self, bits: u32) -> (Rational, Rational) {
        (self.lo.bracket(bits).0, self.hi.bracket(bits).1)
    }

    /// Rational interval enclosed by this one, or `None` if `bits` is too
    /// coarse to fit one.
    pub fn inner_bounds(&self, bits: u32) -> Option<(Rational, Rational)> {
        let (lo, hi) = (self.lo.bracket(bits).1, self.hi.bracket(bits).0);
        (lo < hi).then_some((lo, hi))
    }
}

impl fmt::Display for AsymptoticInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let part = if self.axis == Axis::Imaginary {
            "Im "
        } else {
            ""
        };
        let tilde = if self.target == Target::Reverse {
            "~"
        } else {
            ""
        };
        write!(f, "{} < {part}{tilde}{} < {}", self.lo, self.label, self.hi)
    }
}

pub(crate) fn rat(v: &Integer) -> Rational {
    Rational::from_integer(v.clone())
}

/// `k·q^e / p^f` as an exact rational.
pub(crate) fn term(k: i64, q: &Integer, e: u32, p: &Integer, f: u32) -> Rational {
    Rational::new(Integer::from(k) * q.pow(e), p.pow(f))
}

pub(crate) fn require_forward_hypothesis(seed: SeedPair) -> Result<()> {
    if u128::from(seed.p) < 59 * u128::from(seed.q) {
        return Err(Error::HypothesisNotMet {
            p: seed.p,
            q: seed.q,
            requirement: "p >= 59q",
        });
    }
    Ok(())
}

fn qr(r: Rational) -> QuadRational {
    QuadRational::from_rational(r)
}

/// Intervals for the five roots of `Q_pq` in the upper half plane.
pub fn forward_intervals(seed: SeedPair) -> Result<Vec<AsymptoticInterval>> {
    require_forward_hypothesis(seed)?;
    let (p, q) = (seed.p_int(), seed.q_int());
    let l = RootLabel::new;
    let f = Target::Forward;

    let c1 = rat(&(&p * &q)) + term(16, &q, 3, &p, 1);
    let w1 = term(5, &q, 4, &p, 2);
    let b2 = rat(&(&p * &p - Integer::from(2) * &q * &p - Integer::from(2) * &q * &q));
    let b3 = rat(&(&p * &p + Integer::from(2) * &q * &p - Integer::from(2) * &q * &q));
    let w23 = term(9, &q, 3, &p, 1);
    let q2 = rat(&(&q * &q));
    let w45 = qr(term(5, &q, 3, &p, 2));
    let s4 = QuadRational::new(q2.clone(), q2.clone());
    let s5 = QuadRational::new(-q2.clone(), q2);

    Ok(vec![
        AsymptoticInterval::new(l(1), f, qr(&c1 - &w1), qr(&c1 + &w1)),
        AsymptoticInterval::new(l(2), f, qr(&b2 - &w23), qr(b2)),
        AsymptoticInterval::new(l(3), f, qr(b3.clone()), qr(b3 + w23)),
        AsymptoticInterval::new(l(4), f, &s4 - &w45, &s4 + &w45),
        AsymptoticInterval::new(l(5), f, &s5 - &w45, &s5 + &w45),
    ])
}

/// Intervals for the five roots of `Q_qp` in the upper half plane, for the
/// seed `(p, q)` with `p ≥ 59q`.
pub fn reverse_intervals(seed: SeedPair) -> Result<Vec<AsymptoticInterval>> {
    require_forward_hypothesis(seed)?;
    let (p, q) = (seed.p_int(), seed.q_int());
    let l = RootLabel::new;
    let r = Target::Reverse;

    let q2 = rat(&(&q * &q));
    let p2 = rat(&(&p * &p));
    let w12 = term(5, &q, 3, &p, 1);
    let c3 = rat(&(&q * &p)) - term(16, &q, 3, &p, 1);
    let w3 = term(5, &q, 4, &p, 2);
    // (√2+1)p² + (√2−2)q² and (√2−1)p² + (√2+2)q²
    let s4 = QuadRational::new(
        &p2 - Rational::from_integer(Integer::from(2)) * &q2,
        &p2 + &q2,
    );
    let s5 = QuadRational::new(
        -p2.clone() + Rational::from_integer(Integer::from(2)) * &q2,
        &p2 + &q2,
    );
    let w45 = qr(w12.clone());

    Ok(vec![
        AsymptoticInterval::new(l(1), r, qr(&q2 - &w12), qr(q2.clone())),
        AsymptoticInterval::new(l(2), r, qr(q2.clone()), qr(&q2 + &w12)),
        AsymptoticInterval::new(l(3), r, qr(&c3 - &w3), qr(&c3 + &w3)),
        AsymptoticInterval::new(l(4), r, &s4 - &w45, &s4 + &w45),
        AsymptoticInterval::new(l(5), r, &s5 - &w45, &s5 + &w45),
    ])
}

/// Forward intervals obtained by pushing the reverse intervals through
/// `t = p²q²/t̃` (real) and `Im t = p²q²/Im t̃` (imaginary), pairing each
/// forward label with [`RootLabel::partner`].
pub fn correspondence_intervals(seed: SeedPair) -> Result<Vec<AsymptoticInterval>> {
    let reverse = reverse_intervals(seed)?;
    let m = QuadRational::from(seed.pq_squared());
    Ok(RootLabel::ALL
        .iter()
        .map(|&label| {
            let src = &reverse[label.partner().index() as usize - 1];
            let lo = m.checked_div(&src.hi).expect("positive endpoint");
            let hi = m.checked_div(&src.lo).expect("positive endpoint");
            AsymptoticInterval::new(label, Target::Forward, lo, hi)
        })
        .collect())
}

/// Truncated large-`p` series of the two endpoints of the `t1` interval
/// obtained by correspondence, through the `q⁶/p⁴` term.
pub fn t1_endpoint_series(seed: SeedPair) -> (Rational, Rational) {
    let (p, q) = (seed.p_int(), seed.q_int());
    let common = rat(&(&p * &q)) + term(16, &q, 3, &p, 1) + term(256, &q, 5, &p, 3);
    let odd = term(5, &q, 4, &p, 2) + term(160, &q, 6, &p, 4);
    (&common - &odd, common + odd)
}
