use alloc::collections::BTreeMap;
use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;

use num_traits::Zero;

use crate::algebra::{LaurentSeries, Monomial, Polynomial, Rational, Ring, Var};
use crate::error::{Error, Result};

/// A denominator factor `sum_l a_l z_l + c`, with `c` free of residue variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineForm {
    linear: BTreeMap<Var, Rational>,
    constant: Polynomial,
}

impl AffineForm {
    pub fn new(linear: BTreeMap<Var, Rational>, constant: Polynomial) -> Result<Self> {
        if let Some(v) = linear.keys().find(|v| !v.is_residue()) {
            return Err(Error::NotAffine(alloc::format!("linear part on parameter {v}")));
        }
        if let Some(v) = constant.variables().into_iter().find(Var::is_residue) {
            return Err(Error::NotAffine(alloc::format!("constant part contains {v}")));
        }
        let linear = linear.into_iter().filter(|(_, a)| !a.is_zero()).collect();
        Ok(AffineForm { linear, constant })
    }

    /// Splits a polynomial of degree at most one in the residue variables.
    pub fn from_polynomial(p: &Polynomial) -> Result<Self> {
        let mut linear = BTreeMap::new();
        let mut constant = Vec::new();
        for (m, c) in p.terms() {
            let zdeg = m.degree_where(|v| v.is_residue());
            match zdeg {
                0 => constant.push((m.clone(), c.clone())),
                1 if m.iter().count() == 1 => {
                    let (v, _) = m.iter().next().expect("one factor");
                    linear.insert(v, c.clone());
                }
                _ => return Err(Error::NotAffine(p.to_string())),
            }
        }
        let constant = Polynomial::from_terms(constant, p.ring())?;
        Self::new(linear, constant)
    }

    pub fn linear(&self) -> &BTreeMap<Var, Rational> {
        &self.linear
    }

    pub fn coefficient(&self, z: Var) -> Rational {
        self.linear.get(&z).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant(&self) -> &Polynomial {
        &self.constant
    }

    /// True for a bare `a * z` with no other part.
    pub fn is_monomial(&self) -> bool {
        self.linear.len() == 1 && self.constant.is_zero()
    }

    /// The residue variable of highest rank in `order` (least to most
    /// dominant) with nonzero coefficient.
    pub fn dominant(&self, order: &[Var]) -> Result<Var> {
        if self.linear.is_empty() {
            return Err(Error::NoDominantVariable(self.to_string()));
        }
        let mut best: Option<(usize, Var)> = None;
        for &v in self.linear.keys() {
            let rank = order
                .iter()
                .position(|&o| o == v)
                .ok_or(Error::UnorderedVariable(v))?;
            if best.is_none_or(|(r, _)| rank > r) {
                best = Some((rank, v));
            }
        }
        Ok(best.expect("nonempty linear part").1)
    }

    pub fn to_polynomial(&self) -> Polynomial {
        let mut p = self.constant.clone();
        for (&v, a) in &self.linear {
            p += Polynomial::monomial(Monomial::var(v), a.clone());
        }
        p
    }
}

impl fmt::Display for AffineForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_polynomial())
    }
}

impl core::str::FromStr for AffineForm {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::from_polynomial(&crate::algebra::parse_polynomial(s)?)
    }
}

/// The integrand of an iterated residue.
///
/// `numerator * prod_l local(z_l) / prod_j denominator_j^{power_j}`, with
/// `order` listing the residue variables from least to most dominant.
/// Local factors are Laurent polynomials in a single residue variable and
/// parameters; keeping them apart from the numerator keeps products small.
#[derive(Clone, Debug)]
pub struct ResidueForm {
    pub(crate) numerator: LaurentSeries,
    pub(crate) local: BTreeMap<Var, LaurentSeries>,
    pub(crate) denominators: Vec<(AffineForm, u32)>,
    pub(crate) order: Vec<Var>,
}

impl ResidueForm {
    pub fn new(numerator: impl Into<LaurentSeries>, order: Vec<Var>) -> Self {
        ResidueForm {
            numerator: numerator.into(),
            local: BTreeMap::new(),
            denominators: Vec::new(),
            order,
        }
    }

    /// Adds `form^power` to the denominator.
    pub fn denominator(mut self, form: AffineForm, power: u32) -> Self {
        if power > 0 {
            self.denominators.push((form, power));
        }
        self
    }

    /// Multiplies the integrand by a Laurent polynomial in `z` alone.
    ///
    /// Panics if `factor` involves another residue variable.
    pub fn local_factor(mut self, z: Var, factor: LaurentSeries) -> Self {
        assert!(
            factor
                .terms()
                .all(|(m, _)| m.iter().all(|(v, _)| !v.is_residue() || v == z)),
            "local factor for {z} involves another residue variable"
        );
        let merged = match self.local.remove(&z) {
            Some(prev) => prev.mul(&factor),
            None => factor,
        };
        self.local.insert(z, merged);
        self
    }

    pub fn numerator(&self) -> &LaurentSeries {
        &self.numerator
    }

    pub fn denominators(&self) -> &[(AffineForm, u32)] {
        &self.denominators
    }

    pub fn order(&self) -> &[Var] {
        &self.order
    }

    pub fn local_factors(&self) -> &BTreeMap<Var, LaurentSeries> {
        &self.local
    }

    /// The ring shared by every part of the form.
    pub fn ring(&self) -> Ring {
        let mut ring = self.numerator.ring().clone();
        for l in self.local.values() {
            ring = ring.join(l.ring());
        }
        for (d, _) in &self.denominators {
            ring = ring.join(d.constant().ring());
        }
        ring
    }

    /// Checks the ordering covers every residue variable and every form
    /// has a dominant variable.
    pub fn validate(&self) -> Result<()> {
        for (i, v) in self.order.iter().enumerate() {
            if !v.is_residue() {
                return Err(Error::InvalidArgument(alloc::format!(
                    "{v} in the ordering is not a residue variable"
                )));
            }
            if self.order[..i].contains(v) {
                return Err(Error::InvalidArgument(alloc::format!("{v} repeated in the ordering")));
            }
        }
        let check = |m: &Monomial| -> Result<()> {
            match m.iter().find(|(v, _)| v.is_residue() && !self.order.contains(v)) {
                Some((v, _)) => Err(Error::UnorderedVariable(v)),
                None => Ok(()),
            }
        };
        for (m, _) in self.numerator.terms() {
            check(m)?;
        }
        for l in self.local.values() {
            for (m, _) in l.terms() {
                check(m)?;
            }
        }
        for (d, _) in &self.denominators {
            d.dominant(&self.order)?;
        }
        Ok(())
    }
}
