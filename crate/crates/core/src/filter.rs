//! Region decomposition of the `(p, q)` quadrant, admissibility of integer
//! roots, the exclusion inequalities for `p ≥ 59q`, and reconstruction of
//! cuboid edge and diagonal ratios from a root.

use std::fmt;

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::asymptotics::{forward_intervals, integer_points, lemma_margins, Margin};
use crate::charpoly::{build_qpq, Branch, CharParams, SeedPair};
use crate::error::{Error, Result};
use crate::exact::{Integer, Rational};

/// Where a seed sits in the positive quadrant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RegionClass {
    /// `q/59 < p < 59q`: only the integer-root sieve applies.
    Linear,
    /// `59q ≤ p ≤ 9q³`: roots outside the `t3` interval are excluded.
    Nonlinear,
    /// `p > 9q³` with `p ≥ 59q`, or `q ≥ 59p`: no perfect cuboid.
    NoCuboid,
}

impl fmt::Display for RegionClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RegionClass::Linear => "linear",
            RegionClass::Nonlinear => "nonlinear",
            RegionClass::NoCuboid => "no_cuboid",
        })
    }
}

/// Classify any positive pair; coprimality is not required here.
pub fn classify_quadrant(p: u64, q: u64) -> Result<RegionClass> {
    if p == 0 || q == 0 {
        return Err(Error::InvalidSeed {
            p,
            q,
            reason: "p and q must be positive",
        });
    }
    let (p, q) = (u128::from(p), u128::from(q));
    Ok(if q < 59 * p && p < 59 * q {
        RegionClass::Linear
    } else if 59 * q <= p && p <= 9 * q * q * q {
        RegionClass::Nonlinear
    } else {
        RegionClass::NoCuboid
    })
}

pub fn classify_region(seed: SeedPair) -> RegionClass {
    classify_quadrant(seed.p, seed.q).expect("seed is positive")
}

/// `t > p²`, `t > pq`, `t > q²` and `(p² + t)(pq + t) > 2t²`.
pub fn admissible_triple(p: &Integer, q: &Integer, t: &Integer) -> bool {
    let (p2, pq, q2) = (p * p, p * q, q * q);
    t > &p2 && t > &pq && t > &q2 && upper_inequality(p, q, t)
}

/// `(p² + t)(pq + t) > 2t²` exactly.
pub fn upper_inequality(p: &Integer, q: &Integer, t: &Integer) -> bool {
    (p * p + t) * (p * q + t) > Integer::from(2) * t * t
}

/// `t < (p² + pq)/2 + p·√(p² + 6pq + q²)/2`, compared after squaring.
pub fn upper_bound_holds(p: &Integer, q: &Integer, t: &Integer) -> bool {
    let lhs = Integer::from(2) * t - p * p - p * q;
    if !lhs.is_positive() {
        return true;
    }
    &lhs * &lhs < p * p * (p * p + Integer::from(6) * p * q + q * q)
}

/// Integer root `t > 0` of `Q_pq`, attached to one of the two parameter
/// branches.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CuboidCandidate {
    pub seed: SeedPair,
    #[serde(serialize_with = "crate::exact::serialize_integer")]
    pub t: Integer,
    pub branch: Branch,
}

impl CuboidCandidate {
    pub fn new(seed: SeedPair, t: Integer, branch: Branch) -> Result<Self> {
        if !t.is_positive() || !build_qpq(seed).poly.eval_integer(&t).is_zero() {
            return Err(Error::NotARoot {
                p: seed.p,
                q: seed.q,
                t: t.to_string(),
            });
        }
        Ok(CuboidCandidate { seed, t, branch })
    }

    pub fn admissible(&self) -> bool {
        admissible_triple(&self.seed.p_int(), &self.seed.q_int(), &self.t)
    }
}

/// Exact results of the exclusion argument for one seed with `p ≥ 59q`.
#[derive(Clone, Debug, Serialize)]
pub struct ExclusionReport {
    pub seed: SeedPair,
    /// The `t2` interval lies entirely below `p²`.
    pub t2_below_p_squared: bool,
    /// `p² − (upper end of the t1 interval)` against its `3421q²` bound.
    pub t1_margin: Margin,
    /// `p > 9q³`.
    pub t3_free_of_integers: bool,
    /// Integer points of the `t3` interval (empty when the flag above holds).
    pub t3_integer_points: Vec<String>,
    /// No admissible integer root can exist.
    pub fully_excluded: bool,
}

pub fn exclusion_check(seed: SeedPair) -> Result<ExclusionReport> {
    let iv = forward_intervals(seed)?;
    let (p, q) = (seed.p_int(), seed.q_int());
    let p2 = Rational::from_integer(&p * &p);
    let t2_below_p_squared = iv[1].hi < p2;
    let t1_margin = lemma_margins(seed)?
        .into_iter()
        .find(|m| m.name == "p^2 above t1 interval")
        .expect("margin present");
    let t3_points = integer_points(&iv[2])?;
    let t3_free_of_integers = p > Integer::from(9) * &q * &q * &q;
    let fully_excluded = t2_below_p_squared
        && t1_margin.holds()
        && t1_margin.value.signum() > 0
        && t3_points.is_empty();
    Ok(ExclusionReport {
        seed,
        t2_below_p_squared,
        t1_margin,
        t3_free_of_integers,
        t3_integer_points: t3_points.iter().map(ToString::to_string).collect(),
        fully_excluded,
    })
}

/// Edge and diagonal ratios per unit space diagonal `L`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CuboidReconstruction {
    #[serde(serialize_with = "crate::exact::serialize_integer")]
    pub a: Integer,
    #[serde(serialize_with = "crate::exact::serialize_integer")]
    pub b: Integer,
    #[serde(serialize_with = "crate::exact::serialize_integer")]
    pub u: Integer,
    #[serde(serialize_with = "crate::exact::serialize_integer")]
    pub t: Integer,
    #[serde(serialize_with = "crate::exact::serialize_ratio")]
    pub alpha: Rational,
    #[serde(serialize_with = "crate::exact::serialize_ratio")]
    pub beta: Rational,
    #[serde(serialize_with = "crate::exact::serialize_ratio")]
    pub upsilon: Rational,
    #[serde(serialize_with = "crate::exact::serialize_ratio")]
    pub z_param: Rational,
    #[serde(serialize_with = "crate::exact::serialize_ratios")]
    pub x: [Rational; 3],
    #[serde(serialize_with = "crate::exact::serialize_ratios")]
    pub d: [Rational; 3],
}

impl CuboidReconstruction {
    /// `x1²+x2²+x3²−1`, `x2²+x3²−d1²`, `x3²+x1²−d2²`, `x1²+x2²−d3²`.
    pub fn residuals(&self) -> [Rational; 4] {
        let sq = |r: &Rational| r * r;
        let [x1, x2, x3] = &self.x;
        let [d1, d2, d3] = &self.d;
        [
            sq(x1) + sq(x2) + sq(x3) - Rational::one(),
            sq(x2) + sq(x3) - sq(d1),
            sq(x3) + sq(x1) - sq(d2),
            sq(x1) + sq(x2) - sq(d3),
        ]
    }

    pub fn is_exact(&self) -> bool {
        self.residuals().iter().all(Zero::is_zero)
    }

    /// Least common denominator of the six ratios; scaling by it gives
    /// integer edges, diagonals and `L`.
    pub fn common_denominator(&self) -> Integer {
        self.x
            .iter()
            .chain(&self.d)
            .fold(Integer::one(), |acc, r| acc.lcm(r.denom()))
    }
}

/// Reconstruct from explicit parameters without checking that `t` is a root.
pub fn reconstruct_params(params: &CharParams, t: &Integer) -> Result<CuboidReconstruction> {
    if !t.is_positive() {
        return Err(Error::DegenerateDenominator("t must be positive"));
    }
    let one = Rational::one();
    let two = Rational::from_integer(Integer::from(2));
    let alpha = Rational::new(params.a.clone(), t.clone());
    let beta = Rational::new(params.b.clone(), t.clone());
    let upsilon = Rational::new(params.u.clone(), t.clone());
    let (a2, b2, u2) = (&alpha * &alpha, &beta * &beta, &upsilon * &upsilon);

    let z_den = &two * (&one + &b2) * (&one - &a2 * &u2);
    if z_den.is_zero() {
        return Err(Error::DegenerateDenominator("1 - alpha^2 upsilon^2 = 0"));
    }
    let z = (&one + &u2) * (&one - &b2) * (&one + &a2) / z_den;
    let z2 = &z * &z;
    let pu = &one + &u2;
    let mu = &one - &u2;
    let pz = &one + &z2;
    let den = &pu * &pz;

    let x1 = &two * &upsilon / &pu;
    let d1 = &mu / &pu;
    let x2 = &two * &z * &mu / &den;
    let x3 = &mu * (&one - &z2) / &den;
    let d2 = (&den + &two * &z * &mu) / &den * &beta;
    let d3 = &two * (&u2 * &z2 + &one) / &den * &alpha;

    Ok(CuboidReconstruction {
        a: params.a.clone(),
        b: params.b.clone(),
        u: params.u.clone(),
        t: t.clone(),
        alpha,
        beta,
        upsilon,
        z_param: z,
        x: [x1, x2, x3],
        d: [d1, d2, d3],
    })
}

pub fn reconstruct(candidate: &CuboidCandidate) -> Result<CuboidReconstruction> {
    reconstruct_params(
        &CharParams::from_seed(candidate.seed, candidate.branch),
        &candidate.t,
    )
}
