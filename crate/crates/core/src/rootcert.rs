//! Certified isolation of the five roots of `Q_pq` in the closed upper half
//! plane, their containment in the asymptotic intervals, and the
//! `t·t̃ = p²q²` correspondence with the roots of `Q_qp`.
//!
//! Roots are isolated on the half polynomial `P(y)`, `y = t²`. Positive `y`
//! give real roots `t = √y`; negative `y` give imaginary roots with
//! `Im t = √(−y)`. Square roots are only ever bracketed.

use std::fmt;

use num_bigint::Sign;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::asymptotics::{
    check_disjointness, forward_intervals, reverse_intervals, AsymptoticInterval, Axis, RootLabel,
    Target,
};
use crate::charpoly::{build_qpq, SeedPair};
use crate::error::{Error, Result};
use crate::exact::{
    isolate_roots, sign_variations, sqrt_bracket, sturm_sequence, IntPolynomial, IsolatingInterval,
    Rational,
};

/// Requested width of a root's interval on its own axis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Precision {
    /// `hi − lo ≤ w`.
    Absolute(Rational),
    /// `hi − lo ≤ r·lo`.
    Relative(Rational),
}

impl Precision {
    pub fn absolute(n: i64, d: i64) -> Self {
        Precision::Absolute(crate::exact::rational(n, d))
    }

    pub fn relative(n: i64, d: i64) -> Self {
        Precision::Relative(crate::exact::rational(n, d))
    }

    pub fn validate(&self) -> Result<()> {
        let w = match self {
            Precision::Absolute(w) | Precision::Relative(w) => w,
        };
        if !w.is_positive() {
            return Err(Error::NonPositiveWidth(w.to_string()));
        }
        Ok(())
    }

    pub fn satisfied_by(&self, lo: &Rational, hi: &Rational) -> bool {
        let width = hi - lo;
        match self {
            Precision::Absolute(w) => &width <= w,
            Precision::Relative(r) => lo.is_positive() && width <= r * lo,
        }
    }

    /// Half the tolerance, same kind.
    fn tightened(&self) -> Self {
        let two = crate::exact::rational(2, 1);
        match self {
            Precision::Absolute(w) => Precision::Absolute(w / two),
            Precision::Relative(r) => Precision::Relative(r / two),
        }
    }
}

/// A root of `Q_pq` (target forward) or `Q_qp` (target reverse) with an
/// interval `(lo, hi)` on its axis that contains it strictly and no other
/// root.
///
/// `y_interval` is the interval of `P` the axis interval was derived from.
/// The image of `interval` under `t ↦ t²` (real) or `s ↦ −s²` (imaginary) has
/// non-root endpoints and Sturm count 1.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IsolatedRoot {
    pub label: RootLabel,
    /// `true` for the mirrored root `−t`.
    pub negated: bool,
    pub axis: Axis,
    pub interval: IsolatingInterval,
    pub y_interval: IsolatingInterval,
    pub seed: SeedPair,
    pub target: Target,
    /// Midpoint in floating point, for display.
    pub approx: f64,
}

impl IsolatedRoot {
    /// Position in the ten-root family: `1..=5`, or `6..=10` for `−t_k`.
    pub fn root_index(&self) -> u8 {
        self.label.index() + if self.negated { 5 } else { 0 }
    }
}

impl fmt::Display for IsolatedRoot {
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
        write!(
            f,
            "{part}{tilde}t{} in {} (~{:.9})",
            self.root_index(),
            self.interval,
            self.approx
        )
    }
}

/// Half polynomial of one seed with its Sturm chain.
struct RootContext {
    seed: SeedPair,
    target: Target,
    half: IntPolynomial,
    chain: Vec<IntPolynomial>,
}

impl RootContext {
    fn new(poly_seed: SeedPair, reported_seed: SeedPair, target: Target) -> Result<Self> {
        let half = build_qpq(poly_seed).half;
        if !half.is_squarefree() {
            let g = half.gcd(&half.derivative());
            return Err(Error::NotSquarefree {
                gcd_degree: g.degree().unwrap_or(0),
            });
        }
        let chain = sturm_sequence(&half);
        Ok(RootContext {
            seed: reported_seed,
            target,
            half,
            chain,
        })
    }

    fn is_root(&self, y: &Rational) -> bool {
        self.half.sign_at(y) == Sign::NoSign
    }

    /// Roots in `(a, b]`.
    fn count(&self, a: &Rational, b: &Rational) -> usize {
        sign_variations(&self.chain, a) - sign_variations(&self.chain, b)
    }

    /// Move root-valued endpoints of a single-root interval so the root is
    /// strictly interior and both endpoints are non-roots.
    fn normalize(&self, mut iv: IsolatingInterval) -> IsolatingInterval {
        let two = crate::exact::rational(2, 1);
        if self.is_root(&iv.hi) {
            // The root sits at hi; extend until the extension holds no root.
            let mut step = iv.width();
            loop {
                let cand = &iv.hi + &step;
                if self.count(&iv.hi, &cand) == 0 && !self.is_root(&cand) {
                    iv.hi = cand;
                    break;
                }
                step /= &two;
            }
        }
        while self.is_root(&iv.lo) {
            // A root at lo is not counted; raise lo.
            iv.lo = &iv.lo + iv.width() / &two;
        }
        iv
    }

    /// Bisect a normalized single-root interval, keeping it normalized.
    fn bisect(&self, iv: &IsolatingInterval) -> IsolatingInterval {
        let mut mid = iv.midpoint();
        if self.is_root(&mid) {
            mid = &iv.lo + iv.width() / crate::exact::rational(3, 1);
        }
        if self.count(&iv.lo, &mid) == 1 {
            IsolatingInterval {
                lo: iv.lo.clone(),
                hi: mid,
            }
        } else {
            IsolatingInterval {
                lo: mid,
                hi: iv.hi.clone(),
            }
        }
    }

    /// Axis interval enclosing the root of `y_iv`, or `None` if the sqrt
    /// brackets at `bits` are too loose to certify.
    fn axis_interval(&self, y_iv: &IsolatingInterval, bits: u32) -> Option<IsolatingInterval> {
        let (lo, hi, img_lo, img_hi) = if !y_iv.hi.is_positive() {
            // Imaginary: s ∈ (√(−hi), √(−lo)).
            let lo = sqrt_bracket(&-y_iv.hi.clone(), bits).ok()?.0;
            let hi = sqrt_bracket(&-y_iv.lo.clone(), bits).ok()?.1;
            let (ilo, ihi) = (-(&hi * &hi), -(&lo * &lo));
            (lo, hi, ilo, ihi)
        } else {
            let lo = sqrt_bracket(&y_iv.lo, bits).ok()?.0;
            let hi = sqrt_bracket(&y_iv.hi, bits).ok()?.1;
            let (ilo, ihi) = (&lo * &lo, &hi * &hi);
            (lo, hi, ilo, ihi)
        };
        if self.is_root(&img_lo) || self.is_root(&img_hi) || self.count(&img_lo, &img_hi) != 1 {
            return None;
        }
        Some(IsolatingInterval { lo, hi })
    }

    /// Refine `y_iv` until its axis interval meets `precision`.
    fn certify(
        &self,
        label: RootLabel,
        mut y_iv: IsolatingInterval,
        precision: &Precision,
    ) -> IsolatedRoot {
        y_iv = self.normalize(y_iv);
        let mut bits = 64u32;
        loop {
            if let Some(iv) = self.axis_interval(&y_iv, bits) {
                if precision.satisfied_by(&iv.lo, &iv.hi) {
                    return self.build(label, iv, y_iv);
                }
            }
            y_iv = self.bisect(&y_iv);
            bits += 4;
        }
    }

    fn build(
        &self,
        label: RootLabel,
        interval: IsolatingInterval,
        y_interval: IsolatingInterval,
    ) -> IsolatedRoot {
        use num_traits::ToPrimitive;
        let approx = interval.midpoint().to_f64().unwrap_or(f64::NAN);
        IsolatedRoot {
            label,
            negated: false,
            axis: label.axis(),
            interval,
            y_interval,
            seed: self.seed,
            target: self.target,
            approx,
        }
    }

    /// The five roots `t1 < t2 < t3`, `Im t4 > Im t5`.
    fn upper_roots(&self, precision: &Precision) -> Result<Vec<IsolatedRoot>> {
        precision.validate()?;
        let b = Rational::from_integer(self.half.cauchy_bound());
        let zero = Rational::zero();
        let coarse = &b + &b;
        let pos = isolate_roots(
            &self.half,
            &IsolatingInterval::new(zero.clone(), b.clone())?,
            &coarse,
        )?;
        let neg = isolate_roots(&self.half, &IsolatingInterval::new(-b, zero)?, &coarse)?;
        if pos.len() != 3 || neg.len() != 2 {
            return Err(Error::UnexpectedRootStructure {
                positive: pos.len(),
                negative: neg.len(),
            });
        }
        let mut out = Vec::with_capacity(5);
        for (k, iv) in pos.into_iter().enumerate() {
            out.push(self.certify(RootLabel::new(k as u8 + 1), iv, precision));
        }
        // More negative y means larger imaginary part: ascending y is t4, t5.
        for (k, iv) in neg.into_iter().enumerate() {
            out.push(self.certify(RootLabel::new(k as u8 + 4), iv, precision));
        }
        Ok(out)
    }
}

/// Isolate the five upper-half-plane roots of `Q_pq` and label them by
/// order, without comparing against any predicted interval.
pub fn isolate_condition_roots(seed: SeedPair, precision: &Precision) -> Result<Vec<IsolatedRoot>> {
    RootContext::new(seed, seed, Target::Forward)?.upper_roots(precision)
}

/// As [`isolate_condition_roots`] for `Q_qp`, reported against `seed`.
pub fn isolate_reverse_roots(seed: SeedPair, precision: &Precision) -> Result<Vec<IsolatedRoot>> {
    RootContext::new(seed.swapped(), seed, Target::Reverse)?.upper_roots(precision)
}

/// Position of a certified root relative to its predicted interval.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Containment {
    Inside,
    Outside,
    /// Still straddling an endpoint after the refinement budget.
    Undecided,
}

/// Number of roots of `P` in the image of a predicted interval, bounded by
/// inner and outer rational approximations of its endpoints.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SturmCount {
    pub inner: usize,
    pub outer: usize,
}

impl SturmCount {
    pub fn exact(&self) -> Option<usize> {
        (self.inner == self.outer).then_some(self.inner)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RootVerdict {
    pub label: RootLabel,
    pub root: IsolatedRoot,
    pub predicted: AsymptoticInterval,
    pub containment: Containment,
    pub sturm_count: SturmCount,
}

/// Per-root comparison of certified roots with the asymptotic intervals.
#[derive(Clone, Debug, Serialize)]
pub struct CertificationReport {
    pub seed: SeedPair,
    /// Forward when `p ≥ 59q`; reverse (roots of `Q_pq` read as the reverse
    /// polynomial of `(q, p)`) when `q ≥ 59p`.
    pub target: Target,
    pub disjoint: bool,
    pub verdicts: Vec<RootVerdict>,
}

impl CertificationReport {
    pub fn contained(&self) -> usize {
        self.verdicts
            .iter()
            .filter(|v| v.containment == Containment::Inside)
            .count()
    }

    pub fn all_simple_and_contained(&self) -> bool {
        self.verdicts
            .iter()
            .all(|v| v.containment == Containment::Inside && v.sturm_count.exact() == Some(1))
    }
}

const REFINE_BUDGET: usize = 256;

fn classify(root: &IsolatingInterval, predicted: &AsymptoticInterval) -> Containment {
    // The root lies strictly inside (lo, hi).
    if predicted.lo <= root.lo && predicted.hi >= root.hi {
        Containment::Inside
    } else if predicted.lo >= root.hi || predicted.hi <= root.lo {
        Containment::Outside
    } else {
        Containment::Undecided
    }
}

impl RootContext {
    /// Roots of `P` inside the `y`-image of a predicted open interval.
    fn predicted_count(&self, predicted: &AsymptoticInterval) -> SturmCount {
        let image = |lo: &Rational, hi: &Rational| match predicted.axis {
            Axis::Real => (lo * lo, hi * hi),
            Axis::Imaginary => (-(hi * hi), -(lo * lo)),
        };
        // Open interval (a, b): (a, b] minus b when b is a root.
        let open_count = |a: &Rational, b: &Rational| {
            if a >= b {
                return 0;
            }
            self.count(a, b) - usize::from(self.is_root(b))
        };
        let mut bits = 64;
        loop {
            let (olo, ohi) = predicted.outer_bounds(bits);
            let (a, b) = image(&olo, &ohi);
            // Outer is closed so that boundary roots are counted.
            let outer =
                open_count(&a, &b) + usize::from(self.is_root(&a)) + usize::from(self.is_root(&b));
            let inner = match predicted.inner_bounds(bits) {
                Some((ilo, ihi)) => {
                    let (a, b) = image(&ilo, &ihi);
                    open_count(&a, &b)
                }
                None => 0,
            };
            if inner == outer || bits >= 4096 {
                return SturmCount { inner, outer };
            }
            bits *= 2;
        }
    }

    fn verdict(
        &self,
        root: IsolatedRoot,
        predicted: AsymptoticInterval,
        precision: &Precision,
    ) -> RootVerdict {
        let mut root = root;
        let mut containment = classify(&root.interval, &predicted);
        let mut p = precision.clone();
        let mut budget = REFINE_BUDGET;
        while containment == Containment::Undecided && budget > 0 {
            p = p.tightened();
            root = self.certify(root.label, root.y_interval.clone(), &p);
            containment = classify(&root.interval, &predicted);
            budget -= 1;
        }
        let sturm_count = self.predicted_count(&predicted);
        RootVerdict {
            label: root.label,
            root,
            predicted,
            containment,
            sturm_count,
        }
    }
}

/// Certify the five roots of `Q_pq` and compare each with its asymptotic
/// interval: the forward intervals when `p ≥ 59q`, or the reverse intervals
/// of `(q, p)` when `q ≥ 59p`.
pub fn certification_report(seed: SeedPair, precision: &Precision) -> Result<CertificationReport> {
    let (target, predicted, disjoint) = if u128::from(seed.p) >= 59 * u128::from(seed.q) {
        (
            Target::Forward,
            forward_intervals(seed)?,
            check_disjointness(seed)?,
        )
    } else if u128::from(seed.q) >= 59 * u128::from(seed.p) {
        let rev = seed.swapped();
        let iv = reverse_intervals(rev)?;
        let disjoint = iv[0].hi <= iv[1].lo
            && iv[1].hi < iv[2].lo
            && iv[4].hi < iv[3].lo
            && iv.iter().all(|i| i.lo.signum() > 0);
        (Target::Reverse, iv, disjoint)
    } else {
        return Err(Error::HypothesisNotMet {
            p: seed.p,
            q: seed.q,
            requirement: "p >= 59q or q >= 59p",
        });
    };
    let ctx = RootContext::new(seed, seed, target)?;
    let roots = ctx.upper_roots(precision)?;
    let verdicts = roots
        .into_iter()
        .zip(predicted)
        .map(|(r, pr)| ctx.verdict(r, pr, precision))
        .collect();
    Ok(CertificationReport {
        seed,
        target,
        disjoint,
        verdicts,
    })
}

/// Strict certification: every root inside its interval or an error naming
/// the first that is not.
pub fn certify_roots(seed: SeedPair, precision: &Precision) -> Result<Vec<IsolatedRoot>> {
    let report = certification_report(seed, precision)?;
    let mut out = Vec::with_capacity(5);
    for v in report.verdicts {
        if v.containment != Containment::Inside || v.sturm_count.exact() != Some(1) {
            return Err(Error::ContainmentFailure {
                label: v.label.to_string(),
                lo: v.root.interval.lo.to_string(),
                hi: v.root.interval.hi.to_string(),
                predicted: v.predicted.to_string(),
            });
        }
        out.push(v.root);
    }
    Ok(out)
}

/// The ten-root family: the given roots followed by their negatives.
pub fn opposite_roots(roots: &[IsolatedRoot]) -> Vec<IsolatedRoot> {
    let mirrored = roots.iter().map(|r| {
        let mut m = r.clone();
        m.negated = !r.negated;
        m.interval = r.interval.negated();
        m.approx = -r.approx;
        m
    });
    roots.iter().cloned().chain(mirrored).collect()
}

/// One pairing `t_k ↔ t̃_partner` with the product of the two intervals.
#[derive(Clone, Debug, Serialize)]
pub struct CorrespondencePair {
    pub forward: IsolatedRoot,
    pub reverse: IsolatedRoot,
    #[serde(serialize_with = "crate::exact::serialize_ratio")]
    pub product_lo: Rational,
    #[serde(serialize_with = "crate::exact::serialize_ratio")]
    pub product_hi: Rational,
    pub contains_pq_squared: bool,
}

/// Certify both `Q_pq` and `Q_qp` and pair the roots by `t·t̃ = p²q²`
/// (imaginary parts for the imaginary pairs).
pub fn correspondence_pairs(
    seed: SeedPair,
    precision: &Precision,
) -> Result<Vec<CorrespondencePair>> {
    if u128::from(seed.p) < 59 * u128::from(seed.q) {
        return Err(Error::HypothesisNotMet {
            p: seed.p,
            q: seed.q,
            requirement: "p >= 59q",
        });
    }
    let forward = isolate_condition_roots(seed, precision)?;
    let reverse = isolate_reverse_roots(seed, precision)?;
    let m = Rational::from_integer(seed.pq_squared());
    Ok(forward
        .into_iter()
        .map(|f| {
            let r = reverse[f.label.partner().index() as usize - 1].clone();
            // Both factors are positive and each root is interior to its
            // interval, so the product lies in (lo·lo', hi·hi').
            let product_lo = &f.interval.lo * &r.interval.lo;
            let product_hi = &f.interval.hi * &r.interval.hi;
            let contains_pq_squared = product_lo < m && m < product_hi;
            CorrespondencePair {
                forward: f,
                reverse: r,
                product_lo,
                product_hi,
                contains_pq_squared,
            }
        })
        .collect())
}

/// Whether all five pairings contain `p²q²`.
pub fn verify_correspondence(seed: SeedPair, precision: &Precision) -> Result<bool> {
    Ok(correspondence_pairs(seed, precision)?
        .iter()
        .all(|p| p.contains_pq_squared))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{count_roots, rational};

    fn seed(p: u64, q: u64) -> SeedPair {
        SeedPair::new(p, q).unwrap()
    }

    #[test]
    fn structure_at_59_1() {
        let roots = isolate_condition_roots(seed(59, 1), &Precision::absolute(1, 1 << 20)).unwrap();
        assert_eq!(roots.len(), 5);
        let approx: Vec<f64> = roots.iter().map(|r| r.approx).collect();
        let expect = [59.2715054, 3360.909106, 3597.079349, 2.40853364, 0.41424245];
        for (a, e) in approx.iter().zip(expect) {
            assert!((a - e).abs() < 1e-5, "{a} vs {e}");
        }
        for r in &roots {
            assert!(r.interval.width() <= rational(1, 1 << 20));
        }
        let half = build_qpq(seed(59, 1)).half;
        let chain = sturm_sequence(&half);
        let b = Rational::from_integer(half.cauchy_bound());
        assert_eq!(count_roots(&chain, &Rational::zero(), &b).unwrap(), 3);
        assert_eq!(count_roots(&chain, &-b, &Rational::zero()).unwrap(), 2);
    }

    #[test]
    fn t3_inside_predicted_interval() {
        let report = certification_report(seed(59, 1), &Precision::absolute(1, 1000)).unwrap();
        let v3 = &report.verdicts[2];
        assert_eq!(v3.containment, Containment::Inside);
        assert!(v3.root.interval.lo >= rational(3597, 1));
        assert!(v3.root.interval.hi <= rational(3597, 1) + rational(9, 59));
        assert_eq!(v3.sturm_count.exact(), Some(1));
        assert!(report.disjoint);
    }

    #[test]
    fn t4_falls_below_its_predicted_interval() {
        // Im t4 ≈ (√2+1) − (10+7√2)/p², outside ±5/p² around √2+1.
        let report = certification_report(seed(59, 1), &Precision::absolute(1, 1 << 16)).unwrap();
        let v4 = &report.verdicts[3];
        assert_eq!(v4.containment, Containment::Outside);
        assert_eq!(v4.sturm_count.exact(), Some(0));
        assert!(v4.predicted.lo > v4.root.interval.hi);
        assert_eq!(report.contained(), 4);
        assert!(matches!(
            certify_roots(seed(59, 1), &Precision::absolute(1, 1000)),
            Err(Error::ContainmentFailure { .. })
        ));
    }

    #[test]
    fn t4_inside_correspondence_interval() {
        let s = seed(59, 1);
        let roots = isolate_condition_roots(s, &Precision::absolute(1, 1 << 30)).unwrap();
        let derived = crate::asymptotics::correspondence_intervals(s).unwrap();
        for (r, d) in roots.iter().zip(&derived) {
            assert_eq!(classify(&r.interval, d), Containment::Inside, "{}", r.label);
        }
    }

    #[test]
    fn reverse_target_for_mirrored_seed() {
        let report = certification_report(seed(1, 59), &Precision::absolute(1, 1000)).unwrap();
        assert_eq!(report.target, Target::Reverse);
        assert_eq!(report.contained(), 5);
        assert!(report.all_simple_and_contained());
    }

    #[test]
    fn linear_region_rejected() {
        assert!(matches!(
            certification_report(seed(3, 2), &Precision::absolute(1, 10)),
            Err(Error::HypothesisNotMet { .. })
        ));
    }

    #[test]
    fn ten_roots() {
        let roots = isolate_condition_roots(seed(61, 1), &Precision::absolute(1, 100)).unwrap();
        let all = opposite_roots(&roots);
        assert_eq!(all.len(), 10);
        assert_eq!(all[5].interval, roots[0].interval.negated());
        assert_eq!(all[5].root_index(), 6);
    }

    #[test]
    fn correspondence_at_59_1() {
        let s = seed(59, 1);
        assert!(verify_correspondence(s, &Precision::relative(1, 1_000_000)).unwrap());
        assert!(verify_correspondence(s, &Precision::relative(1, 1 << 30)).unwrap());
        let pairs = correspondence_pairs(s, &Precision::relative(1, 1_000_000)).unwrap();
        assert_eq!(pairs[0].reverse.label, RootLabel::new(3));
        assert_eq!(pairs[3].reverse.label, RootLabel::new(5));
    }

    #[test]
    fn refining_keeps_labels() {
        let s = seed(179, 3);
        let coarse = isolate_condition_roots(s, &Precision::absolute(1, 10)).unwrap();
        let fine = isolate_condition_roots(s, &Precision::absolute(1, 1 << 40)).unwrap();
        for (c, f) in coarse.iter().zip(&fine) {
            assert_eq!(c.label, f.label);
            // Both intervals contain the same root, so they overlap.
            assert!(c.interval.lo < f.interval.hi && f.interval.lo < c.interval.hi);
        }
    }
}
