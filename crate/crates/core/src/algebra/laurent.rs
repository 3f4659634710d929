use alloc::collections::BTreeMap;
use core::fmt;

use num_traits::Zero;

use super::terms::{self, Terms};
use super::{Monomial, Polynomial, Rational, Ring, Var};
use crate::error::{Error, Result};

/// Inclusive exponent window `[lo, hi]` on one residue variable.
pub type Window = (i32, i32);

/// A truncated multivariate Laurent series.
///
/// Residue variables may carry negative exponents; all other variables are
/// polynomial. A residue variable with a window keeps only exponents inside
/// it. A variable without a window is untruncated, so a finite Laurent
/// polynomial has an empty window map.
#[derive(Clone, Debug, Default)]
pub struct LaurentSeries {
    terms: Terms,
    windows: BTreeMap<Var, Window>,
    ring: Ring,
}

impl PartialEq for LaurentSeries {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms && self.windows == other.windows
    }
}

impl Eq for LaurentSeries {}

impl LaurentSeries {
    pub fn zero() -> Self {
        Self::default()
    }

    /// Builds a series from terms, dropping everything outside `windows`.
    ///
    /// Fails on a negative exponent of a non-residue variable, or on a
    /// window declared for a non-residue variable.
    pub fn new<I>(terms: I, windows: BTreeMap<Var, Window>, ring: &Ring) -> Result<Self>
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        if let Some(v) = windows.keys().find(|v| !v.is_residue()) {
            return Err(Error::InvalidArgument(alloc::format!(
                "window declared on non-residue variable {v}"
            )));
        }
        let mut t = Terms::new();
        for (m, c) in terms {
            if let Some((v, _)) = m.iter().find(|&(v, e)| e < 0 && !v.is_residue()) {
                return Err(Error::NegativeExponent(v));
            }
            if !ring.vanishes(&m) && inside(&windows, &m) {
                terms::add_term(&mut t, m, c);
            }
        }
        Ok(LaurentSeries {
            terms: t,
            windows,
            ring: ring.clone(),
        })
    }

    /// The finite Laurent polynomial with the given terms.
    pub fn from_terms<I>(terms: I, ring: &Ring) -> Result<Self>
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        Self::new(terms, BTreeMap::new(), ring)
    }

    pub(crate) fn from_raw(terms: Terms, windows: BTreeMap<Var, Window>, ring: Ring) -> Self {
        let terms = terms
            .into_iter()
            .filter(|(m, _)| !ring.vanishes(m) && inside(&windows, m))
            .collect();
        LaurentSeries {
            terms,
            windows,
            ring,
        }
    }

    pub(crate) fn raw(&self) -> &Terms {
        &self.terms
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn window(&self, v: Var) -> Option<Window> {
        self.windows.get(&v).copied()
    }

    pub fn windows(&self) -> &BTreeMap<Var, Window> {
        &self.windows
    }

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

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Restricts to a smaller window on `v` (intersected with the current one).
    pub fn truncate(&self, v: Var, window: Window) -> Self {
        let mut windows = self.windows.clone();
        let w = match windows.get(&v) {
            Some(&(lo, hi)) => (lo.max(window.0), hi.min(window.1)),
            None => window,
        };
        windows.insert(v, w);
        Self::from_raw(self.terms.clone(), windows, self.ring.clone())
    }

    /// The polynomial this series equals, if no exponent is negative.
    pub fn to_polynomial(&self) -> Result<Polynomial> {
        Polynomial::from_terms(
            self.terms.iter().map(|(m, c)| (m.clone(), c.clone())),
            &self.ring,
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        let windows = intersect(&self.windows, &other.windows);
        let ring = self.ring.join(&other.ring);
        let mut t = self.terms.clone();
        terms::add_scaled(&mut t, &other.terms, &Rational::from_integer(1.into()));
        Self::from_raw(t, windows, ring)
    }

    pub fn neg(&self) -> Self {
        LaurentSeries {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
            windows: self.windows.clone(),
            ring: self.ring.clone(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let windows = intersect(&self.windows, &other.windows);
        let ring = self.ring.join(&other.ring);
        let (a, b) = if self.len() <= other.len() {
            (&self.terms, &other.terms)
        } else {
            (&other.terms, &self.terms)
        };
        let mut out = Terms::new();
        for (ma, ca) in a {
            for (mb, cb) in b {
                let m = ma.mul(mb);
                if ring.vanishes(&m) || !inside(&windows, &m) {
                    continue;
                }
                terms::add_term(&mut out, m, ca * cb);
            }
        }
        LaurentSeries {
            terms: out,
            windows,
            ring,
        }
    }
}

impl From<Polynomial> for LaurentSeries {
    fn from(p: Polynomial) -> Self {
        LaurentSeries {
            terms: p.raw().clone(),
            windows: BTreeMap::new(),
            ring: p.ring().clone(),
        }
    }
}

impl fmt::Display for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        terms::fmt_terms(&self.terms, f)
    }
}

fn inside(windows: &BTreeMap<Var, Window>, m: &Monomial) -> bool {
    windows.iter().all(|(&v, &(lo, hi))| {
        let e = m.exponent(v);
        lo <= e && e <= hi
    })
}

fn intersect(a: &BTreeMap<Var, Window>, b: &BTreeMap<Var, Window>) -> BTreeMap<Var, Window> {
    let mut out = a.clone();
    for (&v, &(lo, hi)) in b {
        out.entry(v)
            .and_modify(|w| *w = (w.0.max(lo), w.1.min(hi)))
            .or_insert((lo, hi));
    }
    out
}
