use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_traits::{One, Zero};

use super::terms::{self, Terms};
use super::{Monomial, Rational, Ring, Var};
use crate::error::{Error, Result};

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Terms are kept in a map from [`Monomial`] (nonnegative exponents only) to
/// nonzero coefficient. Equality compares term maps; the ring declaration
/// only governs how products are truncated.
#[derive(Clone, Debug, Default)]
pub struct Polynomial {
    terms: Terms,
    ring: Ring,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl Polynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(Monomial::one(), c)
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(Rational::from_integer(c.into()))
    }

    pub fn var(v: Var) -> Self {
        Self::monomial(Monomial::var(v), Rational::one())
    }

    /// `c * m`. Panics on negative exponents in `m`.
    pub fn monomial(m: Monomial, c: Rational) -> Self {
        assert!(m.is_nonnegative(), "negative exponent in polynomial monomial {m}");
        let mut t = Terms::new();
        terms::add_term(&mut t, m, c);
        Polynomial {
            terms: t,
            ring: Ring::new(),
        }
    }

    pub fn from_terms<I>(terms: I, ring: &Ring) -> Result<Self>
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut t = Terms::new();
        for (m, c) in terms {
            if let Some(v) = m.first_negative() {
                return Err(Error::NegativeExponent(v));
            }
            if !ring.vanishes(&m) {
                terms::add_term(&mut t, m, c);
            }
        }
        Ok(Polynomial {
            terms: t,
            ring: ring.clone(),
        })
    }

    pub(crate) fn from_raw(terms: Terms, ring: Ring) -> Self {
        debug_assert!(terms.keys().all(Monomial::is_nonnegative));
        Polynomial {
            terms: terms::reduce(terms, &ring),
            ring,
        }
    }

    pub(crate) fn raw(&self) -> &Terms {
        &self.terms
    }

    /// Re-declares the polynomial over `ring`, dropping vanishing terms.
    pub fn in_ring(self, ring: &Ring) -> Self {
        Self::from_raw(self.terms, ring.clone())
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    /// Terms in ascending canonical (graded lexicographic) order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// The value of a constant polynomial.
    pub fn as_constant(&self) -> Option<Rational> {
        if self.is_constant() {
            Some(self.constant_term())
        } else {
            None
        }
    }

    pub fn constant_term(&self) -> Rational {
        self.coefficient(&Monomial::one())
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.last_key_value()
    }

    pub fn total_degree(&self) -> Option<i64> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms
            .keys()
            .map(|m| m.exponent(v) as u32)
            .max()
            .unwrap_or(0)
    }

    pub fn variables(&self) -> BTreeSet<Var> {
        self.terms.keys().flat_map(|m| m.iter().map(|p| p.0)).collect()
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Polynomial {
                terms: Terms::new(),
                ring: self.ring.clone(),
            };
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
            ring: self.ring.clone(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        assert!(m.is_nonnegative());
        Self::from_raw(
            self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect(),
            self.ring.clone(),
        )
    }

    pub fn pow(&self, k: u32) -> Self {
        Polynomial {
            terms: terms::pow(&self.terms, k, &self.ring),
            ring: self.ring.clone(),
        }
    }

    /// Keeps only the terms whose monomial satisfies `keep`.
    pub fn filter(&self, keep: impl Fn(&Monomial) -> bool) -> Self {
        Polynomial {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
            ring: self.ring.clone(),
        }
    }

    /// Groups terms by the power of `v`: `self = sum_e coeffs[e] * v^e`.
    pub fn coefficients_in(&self, v: Var) -> BTreeMap<u32, Polynomial> {
        let mut out: BTreeMap<u32, Terms> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (e, rest) = m.split(v);
            terms::add_term(out.entry(e as u32).or_default(), rest, c.clone());
        }
        out.into_iter()
            .map(|(e, t)| (e, Polynomial { terms: t, ring: self.ring.clone() }))
            .collect()
    }

    /// Substitutes exact values for some variables; the rest stay symbolic.
    pub fn evaluate(&self, assignment: &BTreeMap<Var, Rational>) -> Self {
        let mut out = Terms::new();
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut rest = Vec::new();
            for (v, e) in m.iter() {
                match assignment.get(&v) {
                    Some(x) => coeff *= num_traits::pow(x.clone(), e as usize),
                    None => rest.push((v, e)),
                }
            }
            terms::add_term(&mut out, Monomial::from_pairs(rest), coeff);
        }
        Self::from_raw(out, self.ring.clone())
    }

    /// Substitutes polynomials for variables.
    pub fn substitute(&self, map: &BTreeMap<Var, Polynomial>) -> Self {
        let ring = map
            .values()
            .fold(self.ring.clone(), |r, p| r.join(&p.ring));
        let mut powers: BTreeMap<(Var, i32), Polynomial> = BTreeMap::new();
        let mut out = Polynomial {
            terms: Terms::new(),
            ring: ring.clone(),
        };
        for (m, c) in &self.terms {
            let mut term = Polynomial::constant(c.clone()).in_ring(&ring);
            let mut rest = Vec::new();
            for (v, e) in m.iter() {
                match map.get(&v) {
                    Some(p) => {
                        let pw = powers.entry((v, e)).or_insert_with(|| p.pow(e as u32));
                        term = &term * &*pw;
                    }
                    None => rest.push((v, e)),
                }
            }
            out += term.mul_monomial(&Monomial::from_pairs(rest));
        }
        out
    }

    /// Exact quotient `self / den`, or [`Error::NotDivisible`].
    ///
    /// Division by leading terms in the graded lexicographic order; since
    /// the order is multiplicative, an exact quotient exists iff every
    /// leading-term division step succeeds and the remainder reaches zero.
    pub fn exact_divide(&self, den: &Polynomial) -> Result<Polynomial> {
        let (lead_m, lead_c) = match den.leading_term() {
            Some((m, c)) => (m.clone(), c.clone()),
            None => return Err(Error::InvalidArgument("division by zero polynomial".into())),
        };
        let ring = self.ring.join(&den.ring);
        let mut remainder = self.clone();
        let mut quotient = Terms::new();
        while let Some((m, c)) = remainder.leading_term() {
            if !lead_m.divides(m) {
                return Err(Error::NotDivisible);
            }
            let qm = m.div(&lead_m);
            let qc = c / &lead_c;
            let step = Polynomial::monomial(qm.clone(), qc.clone());
            remainder -= &step * den;
            terms::add_term(&mut quotient, qm, qc);
        }
        Ok(Polynomial::from_raw(quotient, ring))
    }
}

impl From<Rational> for Polynomial {
    fn from(c: Rational) -> Self {
        Polynomial::constant(c)
    }
}

impl From<i64> for Polynomial {
    fn from(c: i64) -> Self {
        Polynomial::from_int(c)
    }
}

impl From<Var> for Polynomial {
    fn from(v: Var) -> Self {
        Polynomial::var(v)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        terms::fmt_terms(&self.terms, f)
    }
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let ring = self.ring.join(&rhs.ring);
        Polynomial {
            terms: terms::mul(&self.terms, &rhs.terms, &ring),
            ring,
        }
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
            ring: self.ring.clone(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl AddAssign<&Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: &Polynomial) {
        let ring = self.ring.join(&rhs.ring);
        if ring != self.ring {
            self.terms = terms::reduce(core::mem::take(&mut self.terms), &ring);
            self.ring = ring;
        }
        terms::add_scaled(&mut self.terms, &rhs.terms, &Rational::one());
        if !rhs.ring.is_plain() || !self.ring.is_plain() {
            self.terms = terms::reduce(core::mem::take(&mut self.terms), &self.ring);
        }
    }
}

impl SubAssign<&Polynomial> for Polynomial {
    fn sub_assign(&mut self, rhs: &Polynomial) {
        *self += &-rhs;
    }
}

impl MulAssign<&Polynomial> for Polynomial {
    fn mul_assign(&mut self, rhs: &Polynomial) {
        *self = &*self * rhs;
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident, $assign:ident, $assign_method:ident) => {
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                (&self).$method(rhs)
            }
        }
        impl $tr<Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                self.$method(&rhs)
            }
        }
        impl $assign for Polynomial {
            fn $assign_method(&mut self, rhs: Polynomial) {
                self.$assign_method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add, AddAssign, add_assign);
forward_owned!(Sub, sub, SubAssign, sub_assign);
forward_owned!(Mul, mul, MulAssign, mul_assign);

impl core::iter::Sum for Polynomial {
    fn sum<I: Iterator<Item = Polynomial>>(iter: I) -> Self {
        iter.fold(Polynomial::zero(), |a, b| a + b)
    }
}

impl core::iter::Product for Polynomial {
    fn product<I: Iterator<Item = Polynomial>>(iter: I) -> Self {
        iter.fold(Polynomial::one(), |a, b| a * b)
    }
}
