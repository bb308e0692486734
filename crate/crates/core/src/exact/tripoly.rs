use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::ring::{pow, Ring};

/// Exponent triple `(e0, e1, e2)`.
pub type Exponents = [u32; 3];

/// Sparse polynomial in three variables with coefficients in `C`.
///
/// In the shifted equations the slots are `(c, q, z̃)`. Zero coefficients are
/// never stored, and iteration order is lexicographic in the exponents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriPolynomial<C> {
    terms: BTreeMap<Exponents, C>,
}

impl<C: Ring> TriPolynomial<C> {
    pub fn zero_poly() -> Self {
        TriPolynomial {
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: C) -> Self {
        Self::monomial(c, [0, 0, 0])
    }

    pub fn monomial(c: C, exps: Exponents) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        TriPolynomial { terms }
    }

    /// The variable in slot `i`.
    pub fn var(i: usize) -> Self {
        let mut e = [0; 3];
        e[i] = 1;
        Self::monomial(C::one(), e)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &C)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exps: &Exponents) -> C {
        self.terms.get(exps).cloned().unwrap_or_else(C::zero)
    }

    fn add_term(&mut self, exps: Exponents, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exps) {
            Some(v) => {
                let s = v.clone() + c;
                if s.is_zero() {
                    self.terms.remove(&exps);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(exps, c);
            }
        }
    }

    pub fn scale(&self, k: &C) -> Self {
        let mut out = Self::zero_poly();
        for (e, c) in &self.terms {
            out.add_term(*e, c.clone() * k.clone());
        }
        out
    }

    /// Multiply by the monomial with exponents `exps`.
    pub fn shift(&self, exps: Exponents) -> Self {
        TriPolynomial {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| ([e[0] + exps[0], e[1] + exps[1], e[2] + exps[2]], c.clone()))
                .collect(),
        }
    }

    /// Smallest exponent of slot `i` among stored terms.
    pub fn min_degree(&self, i: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[i]).min()
    }

    pub fn degree(&self, i: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[i]).max()
    }

    /// Divide by `var(i)^k`. Panics if some term has a smaller exponent.
    pub fn divide_by_var_power(&self, i: usize, k: u32) -> Self {
        TriPolynomial {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e = *e;
                    e[i] = e[i].checked_sub(k).expect("exponent underflow");
                    (e, c.clone())
                })
                .collect(),
        }
    }

    /// Terms whose slot-`i` exponent equals `k`, with that slot zeroed.
    pub fn slice(&self, i: usize, k: u32) -> Self {
        let mut out = Self::zero_poly();
        for (e, c) in &self.terms {
            if e[i] == k {
                let mut e = *e;
                e[i] = 0;
                out.add_term(e, c.clone());
            }
        }
        out
    }

    pub fn map_coeffs<D: Ring>(&self, f: impl Fn(&C) -> D) -> TriPolynomial<D> {
        let mut out = TriPolynomial::zero_poly();
        for (e, c) in &self.terms {
            out.add_term(*e, f(c));
        }
        out
    }

    /// Evaluate at `(x0, x1, x2)` with power tables per slot.
    pub fn eval<V>(&self, point: [&V; 3], embed: impl Fn(&C) -> V) -> V
    where
        V: Ring,
    {
        let mut tables: [Vec<V>; 3] = [Vec::new(), Vec::new(), Vec::new()];
        for (i, table) in tables.iter_mut().enumerate() {
            let d = self.degree(i).unwrap_or(0) as usize;
            let mut acc = V::one();
            for _ in 0..=d {
                table.push(acc.clone());
                acc = acc * point[i].clone();
            }
        }
        let mut sum = V::zero();
        for (e, c) in &self.terms {
            let term = embed(c)
                * tables[0][e[0] as usize].clone()
                * tables[1][e[1] as usize].clone()
                * tables[2][e[2] as usize].clone();
            sum = sum + term;
        }
        sum
    }

    pub fn pow(&self, n: u32) -> Self {
        pow(self, n)
    }
}

impl<C: Ring> Add for TriPolynomial<C> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for (e, c) in rhs.terms {
            self.add_term(e, c);
        }
        self
    }
}

impl<C: Ring> Sub for TriPolynomial<C> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<C: Ring> Neg for TriPolynomial<C> {
    type Output = Self;
    fn neg(self) -> Self {
        TriPolynomial {
            terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }
}

impl<C: Ring> Mul for TriPolynomial<C> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut out = Self::zero_poly();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term(
                    [ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]],
                    ca.clone() * cb.clone(),
                );
            }
        }
        out
    }
}

impl<C: Ring> Zero for TriPolynomial<C> {
    fn zero() -> Self {
        Self::zero_poly()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<C: Ring> One for TriPolynomial<C> {
    fn one() -> Self {
        Self::constant(C::one())
    }
}

impl<C: Ring> Ring for TriPolynomial<C> {
    fn from_i64(v: i64) -> Self {
        Self::constant(C::from_i64(v))
    }
}

impl<C: Ring + fmt::Display> fmt::Display for TriPolynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let names = ["c", "q", "z"];
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            for (i, &x) in e.iter().enumerate() {
                match x {
                    0 => {}
                    1 => write!(f, "*{}", names[i])?,
                    _ => write!(f, "*{}^{}", names[i], x)?,
                }
            }
        }
        Ok(())
    }
}
