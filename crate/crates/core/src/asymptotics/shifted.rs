use std::sync::OnceLock;

use num_traits::{One, Zero};
use serde::Serialize;

use super::{rat, require_forward_hypothesis, RootLabel};
use crate::charpoly::{qpq_groups, SeedPair};
use crate::error::{Error, Result};
use crate::exact::{Integer, QuadRational, Rational, TriPolynomial};

type Poly = TriPolynomial<QuadRational>;

const C: usize = 0;

const Z: usize = 2;

/// `κ·q^e` with integer `κ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct QMonomial {
    pub coeff: i64,
    pub q_exp: u32,
}

impl QMonomial {
    const fn new(coeff: i64, q_exp: u32) -> Self {
        QMonomial { coeff, q_exp }
    }

    pub fn eval(&self, q: &Integer) -> Rational {
        rat(&(Integer::from(self.coeff) * q.pow(self.q_exp)))
    }
}

/// How the normalized equation splits as `residual + constant + linear·c = 0`
/// with `|residual| < bound` claimed over the c-range.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ResidualSplit {
    pub constant: QMonomial,
    pub linear: QMonomial,
    pub bound: QMonomial,
}

/// Image of `Q_pq = 0` under a label's substitution and `p = 1/z`, cleared
/// of denominators.
///
/// `lhs` is a polynomial in `(c, q, z)` whose lowest `z` power is `z⁰`. It is
/// normalized only by powers of `z`; [`ResidualSplit`] is compared after
/// dividing by the ratio of the `c·z⁰` coefficient to `split.linear`.
#[derive(Clone, Debug, Serialize)]
pub struct ShiftedEquation {
    pub label: RootLabel,
    #[serde(skip)]
    pub lhs: Poly,
    /// `z` power multiplied in to clear denominators.
    pub z_clearing: u32,
    /// `z` power then divided out so the lowest power is zero.
    pub z_shift: u32,
    /// `c` ranges over `(lo·q^e, hi·q^e)`.
    pub c_range: (i64, i64, u32),
    pub claimed_rhs: &'static str,
    pub split: ResidualSplit,
}

impl ShiftedEquation {
    pub fn term_count(&self) -> usize {
        self.lhs.len()
    }

    pub fn c_degree(&self) -> u32 {
        self.lhs.degree(C).unwrap_or(0)
    }

    pub fn c_bounds(&self, q: &Integer) -> (Rational, Rational) {
        let (lo, hi, e) = self.c_range;
        let qe = q.pow(e);
        (
            rat(&(Integer::from(lo) * &qe)),
            rat(&(Integer::from(hi) * qe)),
        )
    }

    /// `G(c, q, 1/p)` exactly.
    pub fn eval(&self, c: &QuadRational, seed: SeedPair) -> QuadRational {
        let q = QuadRational::from(seed.q_int());
        let z = QuadRational::from(Rational::new(Integer::one(), seed.p_int()));
        self.lhs.eval([c, &q, &z], Clone::clone)
    }

    /// Coefficient of `c¹z⁰` as a polynomial in `q`.
    pub fn linear_part(&self) -> Poly {
        self.lhs.slice(Z, 0).slice(C, 1)
    }

    /// `λ(q)` with `G/λ = residual + constant + linear·c`.
    pub fn normalizer(&self, q: &Integer) -> QuadRational {
        let qv = QuadRational::from(q.clone());
        let zero = QuadRational::zero();
        let g1 = self.linear_part().eval([&zero, &qv, &zero], Clone::clone);
        g1.checked_div(&QuadRational::from(self.split.linear.eval(q)))
            .expect("nonzero linear coefficient")
    }

    /// Residual at `c` for `seed` under the normalization of [`Self::normalizer`].
    pub fn residual(&self, c: &Rational, seed: SeedPair) -> QuadRational {
        let q = seed.q_int();
        let cq = QuadRational::from(c.clone());
        let g = self.eval(&cq, seed);
        let lam = self.normalizer(&q);
        let normalized = g.checked_div(&lam).expect("nonzero normalizer");
        let constant = QuadRational::from(self.split.constant.eval(&q));
        let linear = QuadRational::from(self.split.linear.eval(&q));
        normalized - constant - linear * cq
    }
}

/// Numerator `N` and denominator power `m` with `t = N/z^m`, or the
/// imaginary part `s` with `t = i·s`.
enum Substitution {
    Real { numer: Poly, z_den: u32 },
    Imaginary { s: Poly },
}

fn qrat(n: i64) -> QuadRational {
    QuadRational::from_int(n)
}

fn mono(k: QuadRational, c: u32, q: u32, z: u32) -> Poly {
    Poly::monomial(k, [c, q, z])
}

fn substitution(label: RootLabel) -> Substitution {
    match label.index() {
        // t = pq + 16q³/p + c/p²
        1 => Substitution::Real {
            numer: mono(qrat(1), 0, 1, 0) + mono(qrat(16), 0, 3, 2) + mono(qrat(1), 1, 0, 3),
            z_den: 1,
        },
        // t = p² ∓ 2qp − 2q² + c/p
        2 | 3 => {
            let sign = if label.index() == 2 { -2 } else { 2 };
            Substitution::Real {
                numer: mono(qrat(1), 0, 0, 0)
                    + mono(qrat(sign), 0, 1, 1)
                    + mono(qrat(-2), 0, 2, 2)
                    + mono(qrat(1), 1, 0, 3),
                z_den: 2,
            }
        }
        // Im t = (√2 ± 1)q² + c/p²
        _ => {
            let base = if label.index() == 4 {
                QuadRational::from_ints(1, 1)
            } else {
                QuadRational::from_ints(-1, 1)
            };
            Substitution::Imaginary {
                s: mono(base, 0, 2, 0) + mono(qrat(1), 1, 0, 2),
            }
        }
    }
}

fn split(label: RootLabel) -> (ResidualSplit, (i64, i64, u32), &'static str) {
    let m = QMonomial::new;
    match label.index() {
        1 => (
            ResidualSplit {
                constant: m(0, 0),
                linear: m(2, 5),
                bound: m(3, 9),
            },
            (-5, 5, 4),
            "f(c,q,z) = -2 q^5 c",
        ),
        2 => (
            ResidualSplit {
                constant: m(80, 4),
                linear: m(16, 1),
                bound: m(52, 4),
            },
            (-9, 0, 3),
            "80 q^4 + phi(c,q,z) = -16 q c",
        ),
        3 => (
            ResidualSplit {
                constant: m(80, 4),
                linear: m(-16, 1),
                bound: m(52, 4),
            },
            (0, 9, 3),
            "80 q^4 + psi(c,q,z) = 16 q c",
        ),
        4 => (
            ResidualSplit {
                constant: m(0, 0),
                linear: m(-16, 0),
                bound: m(14, 3),
            },
            (-5, 5, 3),
            "eta(c,q,z) = 16 c",
        ),
        _ => (
            ResidualSplit {
                constant: m(0, 0),
                linear: m(-16, 0),
                bound: m(14, 3),
            },
            (-5, 5, 3),
            "zeta(c,q,z) = 16 c",
        ),
    }
}

/// Symbolic substitution into `Q_pq` (real labels) or its half polynomial
/// with `y = −s²` (imaginary labels), then `p = 1/z` and clearing.
pub fn derive_shifted_equation(label: RootLabel) -> ShiftedEquation {
    // Q's coefficient groups as polynomials in (p, q) stored in slots (0, 1).
    let groups = qpq_groups(&Poly::var(0), &Poly::var(1));
    let p_deg: Vec<u32> = groups.iter().map(|g| g.degree(0).unwrap_or(0)).collect();
    // p^a q^b → z^(d−a) q^b, i.e. the group times z^d with p = 1/z.
    let reversed: Vec<Poly> = groups
        .iter()
        .zip(&p_deg)
        .map(|(g, &d)| {
            g.terms().fold(Poly::zero_poly(), |acc, (e, k)| {
                acc + mono(k.clone(), 0, e[1], d - e[0])
            })
        })
        .collect();

    let sub = substitution(label);
    let (y_num, y_den) = match &sub {
        Substitution::Real { numer, z_den } => (numer.pow(2), 2 * z_den),
        Substitution::Imaginary { s } => (-s.pow(2), 0),
    };
    let clearing = (0..groups.len())
        .map(|k| p_deg[k] + k as u32 * y_den)
        .max()
        .unwrap_or(0);
    let mut g = Poly::zero_poly();
    let mut y_pow = Poly::one();
    for (k, rev) in reversed.iter().enumerate() {
        let pad = clearing - p_deg[k] - k as u32 * y_den;
        g = g + (rev.clone() * y_pow.clone()).shift([0, 0, pad]);
        y_pow = y_pow * y_num.clone();
    }
    let shift = g.min_degree(Z).unwrap_or(0);
    let lhs = g.divide_by_var_power(Z, shift);
    let (split, c_range, claimed_rhs) = split(label);
    ShiftedEquation {
        label,
        lhs,
        z_clearing: clearing,
        z_shift: shift,
        c_range,
        claimed_rhs,
        split,
    }
}

/// Cached [`derive_shifted_equation`] for each label.
pub fn shifted_equation(label: RootLabel) -> &'static ShiftedEquation {
    static CACHE: OnceLock<Vec<ShiftedEquation>> = OnceLock::new();
    let all = CACHE.get_or_init(|| {
        RootLabel::ALL
            .iter()
            .map(|&l| derive_shifted_equation(l))
            .collect()
    });
    &all[label.index() as usize - 1]
}

/// `c` such that the label's substitution gives `value` (`t` on the real
/// axis, `Im t` on the imaginary axis).
pub fn c_from_root(label: RootLabel, seed: SeedPair, value: &QuadRational) -> QuadRational {
    let (p, q) = (seed.p_int(), seed.q_int());
    let pq = QuadRational::from(&p * &q);
    let p1 = QuadRational::from(p.clone());
    let p2 = QuadRational::from(&p * &p);
    let q2 = QuadRational::from(&q * &q);
    let two = qrat(2);
    match label.index() {
        1 => {
            let base =
                &pq + QuadRational::from(Rational::new(Integer::from(16) * q.pow(3), p.clone()));
            (value - base) * p2
        }
        2 => (value - &p2 + &two * &pq + &two * &q2) * p1,
        3 => (value - &p2 - &two * &pq + &two * &q2) * p1,
        4 => (value - QuadRational::from_ints(1, 1) * q2) * p2,
        _ => (value - QuadRational::from_ints(-1, 1) * q2) * p2,
    }
}

/// Whether `G` takes strictly opposite signs at the two ends of the c-range.
pub fn sign_change_check(eq: &ShiftedEquation, seed: SeedPair) -> Result<bool> {
    require_forward_hypothesis(seed)?;
    let (lo, hi) = eq.c_bounds(&seed.q_int());
    let mut signs = [0i8; 2];
    for (slot, c) in signs.iter_mut().zip([lo, hi]) {
        let v = eq.eval(&QuadRational::from(c.clone()), seed);
        if v.is_zero() {
            return Err(Error::ZeroAtEndpoint {
                label: eq.label.to_string(),
                c: c.to_string(),
            });
        }
        *slot = v.signum();
    }
    Ok(signs[0] != signs[1])
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundSample {
    #[serde(serialize_with = "crate::exact::serialize_ratio")]
    pub c: Rational,
    pub residual: f64,
    pub within: bool,
}

/// Residual maxima over sampled `c` against the claimed bound.
#[derive(Clone, Debug, Serialize)]
pub struct BoundReport {
    pub label: RootLabel,
    pub seed: SeedPair,
    pub normalizer: QuadRational,
    #[serde(serialize_with = "crate::exact::serialize_ratio")]
    pub bound: Rational,
    pub max_abs_residual: QuadRational,
    /// `max_abs_residual / bound` in floating point.
    pub ratio: f64,
    pub samples: Vec<BoundSample>,
    pub pass: bool,
}

/// Evaluate the residual at `c = lo + (hi − lo)·k/(samples + 1)` for
/// `k = 1..=samples`, strictly inside the c-range.
pub fn bound_check(eq: &ShiftedEquation, seed: SeedPair, samples: usize) -> Result<BoundReport> {
    require_forward_hypothesis(seed)?;
    let q = seed.q_int();
    let (lo, hi) = eq.c_bounds(&q);
    let bound = eq.split.bound.eval(&q);
    let bound_q = QuadRational::from(bound.clone());
    let step = (&hi - &lo) / rat(&Integer::from(samples as u64 + 1));
    let mut max_abs = QuadRational::zero();
    let mut out = Vec::with_capacity(samples);
    for k in 1..=samples {
        let c = &lo + &step * rat(&Integer::from(k as u64));
        let r = eq.residual(&c, seed).abs();
        let within = r < bound_q;
        if r > max_abs {
            max_abs = r.clone();
        }
        out.push(BoundSample {
            c,
            residual: r.to_f64(),
            within,
        });
    }
    let ratio = max_abs.to_f64() / QuadRational::from(bound.clone()).to_f64();
    Ok(BoundReport {
        label: eq.label,
        seed,
        normalizer: eq.normalizer(&q),
        bound,
        pass: out.iter().all(|s| s.within),
        max_abs_residual: max_abs,
        ratio,
        samples: out,
    })
}

/// `G` at `c = 0`, `z = 0` as a polynomial in `q`; used to expose the
/// constant the split claims.
pub fn constant_part(eq: &ShiftedEquation) -> Poly {
    eq.lhs.slice(Z, 0).slice(C, 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::asymptotics::forward_intervals;
    use crate::charpoly::build_qpq;
    use crate::exact::rational;

    fn seed(p: u64, q: u64) -> SeedPair {
        SeedPair::new(p, q).unwrap()
    }

    fn label(i: u8) -> RootLabel {
        RootLabel::new(i)
    }

    /// Oracle: evaluate `Q_pq` directly at the substituted `t` (real) or the
    /// half polynomial at `−s²` (imaginary), then scale by the recorded
    /// clearing and shift powers of `1/p`.
    fn direct(eq: &ShiftedEquation, s: SeedPair, c: &Rational) -> QuadRational {
        let cp = build_qpq(s);
        let (p, q) = (rat(&s.p_int()), rat(&s.q_int()));
        let pq = &p * &q;
        let value: QuadRational = match eq.label.index() {
            1 => QuadRational::from(
                cp.poly
                    .eval(&(&pq + rational(16, 1) * &q * &q * &q / &p + c / (&p * &p))),
            ),
            2 | 3 => {
                let sg = if eq.label.index() == 2 { -2 } else { 2 };
                let t = &p * &p + rational(sg, 1) * &pq - rational(2, 1) * &q * &q + c / &p;
                QuadRational::from(cp.poly.eval(&t))
            }
            i => {
                let base = if i == 4 {
                    QuadRational::from_ints(1, 1)
                } else {
                    QuadRational::from_ints(-1, 1)
                };
                let sv = base * QuadRational::from(&q * &q) + QuadRational::from(c / (&p * &p));
                let y = -(&sv * &sv);
                cp.half
                    .coeffs()
                    .iter()
                    .rev()
                    .fold(QuadRational::zero(), |acc, k| {
                        acc * &y + QuadRational::from(k.clone())
                    })
            }
        };
        // G = z^(clearing − shift) · Q = Q / p^(clearing − shift)
        let scale = pow(&p, eq.z_clearing - eq.z_shift);
        value.checked_div(&QuadRational::from(scale)).unwrap()
    }

    fn pow(x: &Rational, e: u32) -> Rational {
        crate::exact::pow(x, e)
    }

    #[test]
    fn symbolic_matches_direct_evaluation() {
        for l in RootLabel::ALL {
            let eq = shifted_equation(l);
            for s in [seed(59, 1), seed(61, 2), seed(200, 3)] {
                for c in [rational(0, 1), rational(-7, 3), rational(5, 2)] {
                    assert_eq!(
                        eq.eval(&QuadRational::from(c.clone()), s),
                        direct(eq, s, &c),
                        "{l} {s} c={c}"
                    );
                }
            }
        }
    }

    #[test]
    fn lowest_z_part_is_linear_in_c_for_label1() {
        let eq = shifted_equation(label(1));
        let z0 = eq.lhs.slice(Z, 0);
        // 2q⁵c exactly.
        assert_eq!(z0, mono(qrat(2), 1, 5, 0));
        assert_eq!(eq.normalizer(&Integer::from(3)), qrat(1));
    }

    #[test]
    fn normalizers() {
        let q = Integer::from(2);
        assert_eq!(shifted_equation(label(2)).normalizer(&q), qrat(-1));
        assert_eq!(shifted_equation(label(3)).normalizer(&q), qrat(-1));
        // (2 + √2)·q⁸/2 and −(2 − √2)·q⁸/2
        assert_eq!(
            shifted_equation(label(4)).normalizer(&q),
            QuadRational::from_ints(256, 128)
        );
        assert_eq!(
            shifted_equation(label(5)).normalizer(&q),
            QuadRational::from_ints(-256, 128)
        );
    }

    #[test]
    fn c_degree_is_ten_for_real_labels() {
        for i in 1..=3 {
            assert_eq!(shifted_equation(label(i)).c_degree(), 10);
        }
        for i in 4..=5 {
            assert_eq!(shifted_equation(label(i)).c_degree(), 10);
        }
    }

    #[test]
    fn intervals_are_images_of_c_ranges() {
        let s = seed(131, 2);
        let iv = forward_intervals(s).unwrap();
        for l in RootLabel::ALL {
            let eq = shifted_equation(l);
            let (lo, hi) = eq.c_bounds(&s.q_int());
            let i = &iv[l.index() as usize - 1];
            assert_eq!(c_from_root(l, s, &i.lo), QuadRational::from(lo), "{l}");
            assert_eq!(c_from_root(l, s, &i.hi), QuadRational::from(hi), "{l}");
        }
    }

    #[test]
    fn sign_change_examples() {
        let s = seed(59, 1);
        assert!(sign_change_check(shifted_equation(label(1)), s).unwrap());
        assert!(sign_change_check(shifted_equation(label(2)), s).unwrap());
        assert!(sign_change_check(shifted_equation(label(3)), s).unwrap());
        assert!(sign_change_check(shifted_equation(label(5)), s).unwrap());
        assert!(sign_change_check(shifted_equation(label(1)), seed(58, 1)).is_err());
    }

    #[test]
    fn label2_sign_at_zero() {
        let eq = shifted_equation(label(2));
        let s = seed(59, 1);
        let g = eq.eval(&QuadRational::zero(), s);
        let lam = eq.normalizer(&s.q_int());
        // G/λ = 80q⁴ + φ(0) > 0 since |φ| < 52q⁴.
        assert!(g.checked_div(&lam).unwrap().signum() > 0);
    }

    #[test]
    fn label4_root_lies_outside_its_c_range() {
        // G/λ ≈ c + (10 + 7√2)q⁴ at z = 0: the root sits near c = −19.9q⁴,
        // beyond the claimed |c| < 5q³, so there is no sign change.
        let eq = shifted_equation(label(4));
        let c0 = constant_part(eq);
        assert_eq!(c0, mono(QuadRational::from_ints(-272, -192), 0, 12, 0));
        for s in [seed(59, 1), seed(118, 1), seed(121, 2)] {
            assert!(!sign_change_check(eq, s).unwrap(), "{s}");
        }
    }

    #[test]
    fn bound_reports() {
        let r1 = bound_check(shifted_equation(label(1)), seed(59, 1), 11).unwrap();
        assert!(r1.pass, "max {}", r1.max_abs_residual);
        let r3 = bound_check(shifted_equation(label(3)), seed(59, 1), 11).unwrap();
        assert!(r3.pass, "max {}", r3.max_abs_residual);
        let r5 = bound_check(shifted_equation(label(5)), seed(119, 2), 11).unwrap();
        assert!(r5.pass, "max {}", r5.max_abs_residual);
        let r4 = bound_check(shifted_equation(label(4)), seed(119, 2), 11).unwrap();
        assert!(!r4.pass);
        assert_eq!(r4.samples.len(), 11);
    }
}
