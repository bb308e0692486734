//! The degree-12 characteristic polynomial in `t` with parameters `a, b, u`,
//! its reduction `Q_pq` under `a = pq, b = p², u = q²`, and the exact
//! identities tying them together.

use std::fmt;

use num_integer::Integer as _;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{pow, IntPolynomial, Integer, Ring};

/// Coprime seed `(p, q)` with `p ≠ q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SeedPair {
    pub p: u64,
    pub q: u64,
}

impl SeedPair {
    pub fn new(p: u64, q: u64) -> Result<Self> {
        if p == 0 || q == 0 {
            return Err(Error::InvalidSeed {
                p,
                q,
                reason: "p and q must be positive",
            });
        }
        if p == q {
            return Err(Error::InvalidSeed {
                p,
                q,
                reason: "p and q must differ",
            });
        }
        if p.gcd(&q) != 1 {
            return Err(Error::InvalidSeed {
                p,
                q,
                reason: "p and q must be coprime",
            });
        }
        Ok(SeedPair { p, q })
    }

    /// `(q, p)`; always valid when `self` is.
    pub fn swapped(self) -> Self {
        SeedPair {
            p: self.q,
            q: self.p,
        }
    }

    pub fn p_int(&self) -> Integer {
        Integer::from(self.p)
    }

    pub fn q_int(&self) -> Integer {
        Integer::from(self.q)
    }

    /// `p²q²`, the product that maps roots of `Q_qp` to roots of `Q_pq`.
    pub fn pq_squared(&self) -> Integer {
        let pq = self.p_int() * self.q_int();
        &pq * &pq
    }
}

impl fmt::Display for SeedPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(p={}, q={})", self.p, self.q)
    }
}

/// Which of the two quadratic relations between `a, b, u` the seed resolves.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    /// `b·u = a²`: `a = pq, b = p², u = q²`.
    First,
    /// `a·u = b²`: `a = p², b = pq, u = q²`.
    Second,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CharParams {
    #[serde(serialize_with = "crate::exact::serialize_integer")]
    pub a: Integer,
    #[serde(serialize_with = "crate::exact::serialize_integer")]
    pub b: Integer,
    #[serde(serialize_with = "crate::exact::serialize_integer")]
    pub u: Integer,
}

impl CharParams {
    pub fn new(a: Integer, b: Integer, u: Integer) -> Result<Self> {
        if !a.is_positive() || !b.is_positive() || !u.is_positive() {
            return Err(Error::InvalidConfig("a, b, u must be positive".into()));
        }
        Ok(CharParams { a, b, u })
    }

    pub fn from_seed(seed: SeedPair, branch: Branch) -> Self {
        let (p, q) = (seed.p_int(), seed.q_int());
        let pq = &p * &q;
        let (a, b) = match branch {
            Branch::First => (pq, &p * &p),
            Branch::Second => (&p * &p, pq),
        };
        CharParams { a, b, u: &q * &q }
    }

    /// The parameter cancelled by the quadratic factor: `a` on the first
    /// branch, `b` on the second. Both equal `pq`.
    pub fn factor_root(&self, branch: Branch) -> &Integer {
        match branch {
            Branch::First => &self.a,
            Branch::Second => &self.b,
        }
    }
}

/// `Q_pq` together with `P` where `P(t²) = Q_pq(t)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CuboidPolynomial {
    pub seed: SeedPair,
    pub poly: IntPolynomial,
    pub half: IntPolynomial,
}

/// Coefficients of the characteristic polynomial indexed by `t`-power
/// `0, 2, …, 12`, in the grouped form.
pub fn characteristic_groups<R: Ring>(a: &R, b: &R, u: &R) -> [R; 7] {
    let k = |v: i64| R::from_i64(v);
    let (a2, b2, u2) = (pow(a, 2), pow(b, 2), pow(u, 2));
    let (a4, b4, u4) = (pow(a, 4), pow(b, 4), pow(u, 4));
    let t12 = R::one();
    let t10 = k(6) * u2.clone() - k(2) * a2.clone() - k(2) * b2.clone();
    let t8 = u4.clone()
        + b4.clone()
        + a4.clone()
        + k(4) * a2.clone() * u2.clone()
        + k(4) * b2.clone() * u2.clone()
        - k(12) * b2.clone() * a2.clone();
    let t6 = k(6) * a4.clone() * u2.clone() + k(6) * u2.clone() * b4.clone()
        - k(8) * a2.clone() * b2.clone() * u2.clone()
        - k(2) * u4.clone() * a2.clone()
        - k(2) * u4.clone() * b2.clone()
        - k(2) * a4.clone() * b2.clone()
        - k(2) * b4.clone() * a2.clone();
    let t4 = k(4) * u2.clone() * b4.clone() * a2.clone()
        + k(4) * a4.clone() * u2.clone() * b2.clone()
        - k(12) * u4.clone() * a2.clone() * b2.clone()
        + u4.clone() * a4.clone()
        + u4.clone() * b4.clone()
        + a4.clone() * b4.clone();
    let t2 = k(6) * a4.clone() * u2.clone() * b4.clone()
        - k(2) * u4.clone() * a4.clone() * b2.clone()
        - k(2) * u4.clone() * a2.clone() * b4.clone();
    let t0 = u4 * a4 * b4;
    [t0, t2, t4, t6, t8, t10, t12]
}

/// Coefficients of `Q_pq` indexed by `t`-power `0, 2, …, 10`, in the grouped
/// form.
pub fn qpq_groups<R: Ring>(p: &R, q: &R) -> [R; 6] {
    let k = |v: i64| R::from_i64(v);
    let (p2, q2) = (pow(p, 2), pow(q, 2));
    let (p4, q4) = (pow(p, 4), pow(q, 4));
    let (p6, q6) = (pow(p, 6), pow(q, 6));
    let (p8, q8) = (pow(p, 8), pow(q, 8));
    let t10 = R::one();
    let t8 = (k(2) * q2.clone() + p2.clone()) * (k(3) * q2.clone() - k(2) * p2.clone());
    let t6 = q8.clone() + k(10) * p2.clone() * q6.clone() + k(4) * p4.clone() * q4.clone()
        - k(14) * p6.clone() * q2.clone()
        + p8.clone();
    let t4 = -(p2.clone() * q2.clone())
        * (q8.clone() - k(14) * p2.clone() * q6.clone()
            + k(4) * p4.clone() * q4.clone()
            + k(10) * p6.clone() * q2.clone()
            + p8.clone());
    let t2 = -(p6.clone() * q6.clone())
        * (q2.clone() + k(2) * p2.clone())
        * (k(3) * p2.clone() - k(2) * q2.clone());
    let t0 = -(pow(q, 10) * pow(p, 10));
    [t0, t2, t4, t6, t8, t10]
}

fn spread_even(groups: &[Integer]) -> IntPolynomial {
    let mut coeffs = vec![Integer::zero(); 2 * groups.len() - 1];
    for (k, g) in groups.iter().enumerate() {
        coeffs[2 * k] = g.clone();
    }
    IntPolynomial::new(coeffs)
}

/// Degree-12 characteristic polynomial in `t`.
pub fn build_characteristic(params: &CharParams) -> IntPolynomial {
    spread_even(&characteristic_groups(&params.a, &params.b, &params.u))
}

/// `Q_pq` and its half polynomial.
pub fn build_qpq(seed: SeedPair) -> CuboidPolynomial {
    let poly = qpq_polynomial(seed);
    let half = half_polynomial(&poly).expect("Q_pq is even");
    CuboidPolynomial { seed, poly, half }
}

fn qpq_polynomial(seed: SeedPair) -> IntPolynomial {
    spread_even(&qpq_groups(&seed.p_int(), &seed.q_int()))
}

/// `P` with `P(t²) = poly(t)`; fails on the first odd-power term.
pub fn half_polynomial(poly: &IntPolynomial) -> Result<IntPolynomial> {
    let c = poly.coeffs();
    if let Some(k) = (1..c.len()).step_by(2).find(|&k| !c[k].is_zero()) {
        return Err(Error::OddTermPresent(k));
    }
    Ok(IntPolynomial::new(c.iter().step_by(2).cloned().collect()))
}

/// `(t² − r²)·Q`, where `r = pq` is the cancelled parameter of `branch`.
fn factored_form(params: &CharParams, branch: Branch, q: &IntPolynomial) -> IntPolynomial {
    let r = params.factor_root(branch);
    let quad = IntPolynomial::new(vec![-(r * r), Integer::zero(), Integer::from(1)]);
    &quad * q
}

/// Whether the characteristic polynomial at the branch parameters equals
/// `(t² − p²q²)·Q_pq` coefficientwise.
pub fn verify_factorization(seed: SeedPair, branch: Branch) -> bool {
    verify_factorization_with(seed, branch, &qpq_polynomial(seed))
}

/// As [`verify_factorization`], against a caller-supplied `Q`.
pub fn verify_factorization_with(seed: SeedPair, branch: Branch, q: &IntPolynomial) -> bool {
    let params = CharParams::from_seed(seed, branch);
    build_characteristic(&params) == factored_form(&params, branch, q)
}

/// Whether `p¹⁰q¹⁰·Q_pq(t) + t¹⁰·Q_qp(p²q²/t)` vanishes identically.
///
/// The second term is expanded as `Σ_k c_k(Q_qp)·(p²q²)^k·t^(10−k)`.
pub fn verify_reversion(seed: SeedPair) -> bool {
    reversion_residual(seed).is_zero()
}

/// The polynomial whose vanishing [`verify_reversion`] tests.
pub fn reversion_residual(seed: SeedPair) -> IntPolynomial {
    let m = seed.pq_squared();
    let lhs = qpq_polynomial(seed).scale(&pow(&m, 5));
    lhs + reversed_expansion(&qpq_polynomial(seed.swapped()), &m)
}

/// `t^deg·f(m/t)` as a polynomial in `t`.
pub fn reversed_expansion(f: &IntPolynomial, m: &Integer) -> IntPolynomial {
    let Some(deg) = f.degree() else {
        return IntPolynomial::zero();
    };
    let mut coeffs = vec![Integer::zero(); deg + 1];
    let mut mk = Integer::from(1);
    for (k, c) in f.coeffs().iter().enumerate() {
        coeffs[deg - k] = c * &mk;
        mk *= m;
    }
    IntPolynomial::new(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::TriPolynomial;

    fn seed(p: u64, q: u64) -> SeedPair {
        SeedPair::new(p, q).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<Integer> {
        v.iter().map(|&x| Integer::from(x)).collect()
    }

    #[test]
    fn seed_validation() {
        assert!(SeedPair::new(2, 1).is_ok());
        assert!(matches!(
            SeedPair::new(4, 2),
            Err(Error::InvalidSeed { .. })
        ));
        assert!(matches!(
            SeedPair::new(1, 1),
            Err(Error::InvalidSeed { .. })
        ));
        assert!(matches!(
            SeedPair::new(0, 1),
            Err(Error::InvalidSeed { .. })
        ));
        assert_eq!(seed(7, 3).swapped(), seed(3, 7));
    }

    #[test]
    fn q21_and_q12_coefficients() {
        let q21 = build_qpq(seed(2, 1));
        assert_eq!(
            q21.half.coeffs(),
            ints(&[-1024, -5760, -3620, -535, -30, 1]).as_slice()
        );
        let q12 = build_qpq(seed(1, 2));
        assert_eq!(
            q12.half.coeffs(),
            ints(&[-1024, 1920, 2140, 905, 90, 1]).as_slice()
        );
        assert_eq!(q21.poly.coeff(9), Integer::zero());
        assert_eq!(q21.half.compose_square(), q21.poly);
    }

    #[test]
    fn characteristic_at_unit_params() {
        let one = Integer::from(1);
        let f = build_characteristic(&CharParams::new(one.clone(), one.clone(), one).unwrap());
        let even: Vec<Integer> = f.coeffs().iter().step_by(2).cloned().collect();
        assert_eq!(even, ints(&[1, 2, -1, -4, -1, 2, 1]));
        assert_eq!(f.coeff(11), Integer::zero());
    }

    #[test]
    fn characteristic_constant_term() {
        let f = build_characteristic(&CharParams::from_seed(seed(2, 1), Branch::First));
        assert_eq!(f.coeff(0), Integer::from(4096));
        assert_eq!(f.degree(), Some(12));
    }

    /// Oracle: expand the dehomogenized relation in `α = a/t, β = b/t,
    /// υ = u/t` symbolically and read off `t^(12−deg)` from each monomial of
    /// total degree `deg`. Independent of the grouped-by-`t`-power form.
    fn dehomogenized_relation() -> TriPolynomial<Integer> {
        type P = TriPolynomial<Integer>;
        let (al, be, up) = (P::var(0), P::var(1), P::var(2));
        let mono = |c: i64, ea: u32, eb: u32, eu: u32| {
            P::constant(Integer::from(c)) * al.pow(ea) * be.pow(eb) * up.pow(eu)
        };
        // Terms transcribed group by group, in printed order.
        let terms: [(i64, u32, u32, u32); 27] = [
            (1, 4, 4, 4),
            (6, 4, 4, 2),
            (-2, 4, 2, 4),
            (-2, 2, 4, 4),
            (4, 2, 4, 2),
            (4, 4, 2, 2),
            (-12, 2, 2, 4),
            (1, 4, 0, 4),
            (1, 0, 4, 4),
            (1, 4, 4, 0),
            (6, 4, 0, 2),
            (6, 0, 4, 2),
            (-8, 2, 2, 2),
            (-2, 2, 0, 4),
            (-2, 0, 2, 4),
            (-2, 4, 2, 0),
            (-2, 2, 4, 0),
            (1, 0, 0, 4),
            (1, 0, 4, 0),
            (1, 4, 0, 0),
            (4, 2, 0, 2),
            (4, 0, 2, 2),
            (-12, 2, 2, 0),
            (6, 0, 0, 2),
            (-2, 2, 0, 0),
            (-2, 0, 2, 0),
            (1, 0, 0, 0),
        ];
        terms.iter().fold(P::zero_poly(), |acc, &(c, ea, eb, eu)| {
            acc + mono(c, ea, eb, eu)
        })
    }

    fn oracle_characteristic(a: i64, b: i64, u: i64) -> IntPolynomial {
        let rel = dehomogenized_relation();
        let mut coeffs = vec![Integer::zero(); 13];
        for (e, c) in rel.terms() {
            let deg = (e[0] + e[1] + e[2]) as usize;
            let v = c
                * pow(&Integer::from(a), e[0])
                * pow(&Integer::from(b), e[1])
                * pow(&Integer::from(u), e[2]);
            coeffs[12 - deg] += v;
        }
        IntPolynomial::new(coeffs)
    }

    #[test]
    fn characteristic_matches_dehomogenized_oracle() {
        for (a, b, u) in [(1, 1, 1), (2, 4, 1), (6, 4, 9), (3, 5, 7), (10, 1, 3)] {
            let params =
                CharParams::new(Integer::from(a), Integer::from(b), Integer::from(u)).unwrap();
            assert_eq!(
                build_characteristic(&params),
                oracle_characteristic(a, b, u),
                "({a},{b},{u})"
            );
        }
    }

    #[test]
    fn groups_expand_symbolically_to_oracle() {
        // Same check with the grouped form evaluated over polynomials, so it
        // holds for all parameters at once.
        type P = TriPolynomial<Integer>;
        let g = characteristic_groups(&P::var(0), &P::var(1), &P::var(2));
        let rel = dehomogenized_relation();
        for (k, group) in g.iter().enumerate() {
            let deg = 12 - 2 * k as u32;
            let mut expect = P::zero_poly();
            for (e, c) in rel.terms() {
                if e[0] + e[1] + e[2] == deg {
                    expect = expect + P::monomial(c.clone(), *e);
                }
            }
            assert_eq!(group, &expect, "t^{}", 2 * k);
        }
    }

    #[test]
    fn factorization_examples() {
        assert!(verify_factorization(seed(2, 1), Branch::First));
        assert!(verify_factorization(seed(3, 2), Branch::Second));
    }

    #[test]
    fn corrupted_q_breaks_factorization() {
        let s = seed(2, 1);
        let mut c = build_qpq(s).poly.coeffs().to_vec();
        c[2] += 1;
        let bad = IntPolynomial::new(c);
        assert!(!verify_factorization_with(s, Branch::First, &bad));
        assert!(!verify_factorization_with(s, Branch::Second, &bad));
    }

    #[test]
    fn reversion_spot_value() {
        let s = seed(2, 1);
        assert!(verify_reversion(s));
        let q21 = build_qpq(s).poly;
        let q12 = build_qpq(s.swapped()).poly;
        assert_eq!(q21.eval_integer(&Integer::from(1)), Integer::from(-10968));
        assert_eq!(
            q12.eval_integer(&Integer::from(4)),
            Integer::from(11_231_232)
        );
        let m = s.pq_squared();
        assert_eq!(reversed_expansion(&q12, &m).degree(), Some(10));
    }

    #[test]
    fn odd_term_rejected() {
        let f = IntPolynomial::from_i64s(&[1, 0, 2, 5]);
        assert_eq!(half_polynomial(&f), Err(Error::OddTermPresent(3)));
    }

    #[test]
    fn grid_identities() {
        for p in 1..=50u64 {
            for q in 1..=50u64 {
                let Ok(s) = SeedPair::new(p, q) else { continue };
                let cp = build_qpq(s);
                assert_eq!(cp.poly.degree(), Some(10));
                assert_eq!(cp.poly.leading(), Some(&Integer::from(1)));
                assert!(cp
                    .poly
                    .coeffs()
                    .iter()
                    .skip(1)
                    .step_by(2)
                    .all(Zero::is_zero));
                assert!(cp.half.coeff(0).is_negative());
                assert!(verify_factorization(s, Branch::First), "{s}");
                assert!(verify_factorization(s, Branch::Second), "{s}");
                assert!(verify_reversion(s), "{s}");
            }
        }
    }

    #[test]
    fn symbolic_factorization() {
        // (t² − p²q²)·Q_pq equals the characteristic polynomial for
        // indeterminate p, q on both branches, coefficient by coefficient.
        type P = TriPolynomial<Integer>;
        let (p, q) = (P::var(0), P::var(1));
        let qg = qpq_groups(&p, &q);
        let pq = p.clone() * q.clone();
        for (a, b) in [(pq.clone(), p.pow(2)), (p.pow(2), pq.clone())] {
            let cg = characteristic_groups(&a, &b, &q.pow(2));
            let r2 = pq.pow(2);
            for k in 0..7 {
                let hi = if k >= 1 && k - 1 < 6 {
                    qg[k - 1].clone()
                } else {
                    P::zero_poly()
                };
                let lo = if k < 6 {
                    qg[k].clone() * r2.clone()
                } else {
                    P::zero_poly()
                };
                assert_eq!(cg[k], hi - lo, "t^{}", 2 * k);
            }
        }
    }
}
