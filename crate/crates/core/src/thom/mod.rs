//! Thom polynomials of Morin singularities from the iterated residue formula.
//!
//! `Tp_k` in codimension `l` is the residue of
//! `prod_{i<j} (z_i - z_j) Q_k / prod_{i<=j, i+j<=m<=k} (z_i + z_j - z_m)`
//! times `prod_m c(1/z_m) z_m^l`, expanded with `z_k` most dominant.
//! The global sign is fixed so that `Tp_1 = c_{l+1}`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::algebra::{parse_polynomial, LaurentSeries, Monomial, Polynomial, Rational, Ring, Var};
use crate::error::{Error, Result};
use crate::residue::{coefficients, iterated_residue, AffineForm, ResidueForm, ResidueOptions};

/// An entry of the [`QTable`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QEntry {
    pub q: Polynomial,
    /// Built-in entries are verified; user entries are not.
    pub verified: bool,
}

/// The `Q_k` numerators of the residue formula.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QTable {
    entries: BTreeMap<u32, QEntry>,
}

impl Default for QTable {
    fn default() -> Self {
        Self::builtin()
    }
}

impl QTable {
    /// `Q_1 = Q_2 = Q_3 = 1`, `Q_4 = 2 z1 + z2 - z4`.
    pub fn builtin() -> Self {
        let mut entries = BTreeMap::new();
        for k in 1..=3 {
            entries.insert(k, QEntry { q: Polynomial::one(), verified: true });
        }
        let q4 = parse_polynomial("2*z1 + z2 - z4").expect("valid literal");
        entries.insert(4, QEntry { q: q4, verified: true });
        QTable { entries }
    }

    pub fn empty() -> Self {
        QTable { entries: BTreeMap::new() }
    }

    /// Adds or replaces `Q_k`; the entry is flagged unverified.
    pub fn insert(&mut self, k: u32, q: Polynomial) -> Result<()> {
        if let Some(v) = q
            .variables()
            .into_iter()
            .find(|v| !matches!(v, Var::Z(i) if (1..=k).contains(i)))
        {
            return Err(Error::InvalidArgument(alloc::format!("Q_{k} may only involve z1..z{k}, found {v}")));
        }
        self.entries.insert(k, QEntry { q, verified: false });
        Ok(())
    }

    pub fn get(&self, k: u32) -> Result<&QEntry> {
        self.entries.get(&k).ok_or(Error::MissingQ(k))
    }

    pub fn entries(&self) -> &BTreeMap<u32, QEntry> {
        &self.entries
    }
}

/// A computed Thom polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThomResult {
    pub k: u32,
    pub codim: u32,
    /// Polynomial in `c1..c_{k(codim+1)}`.
    pub polynomial: Polynomial,
    /// The global sign applied to the iterated residue.
    pub sign_calibration: i32,
    /// Whether `Q_k` came from the built-in table.
    pub q_verified: bool,
}

/// `(-1)^k`: with this sign the formula returns the raw coefficient of
/// `z_1^-1 ... z_k^-1`, which gives `Tp_1 = c_{l+1}`.
pub fn sign_calibration(k: u32) -> i32 {
    if k.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Denominator triples `(i, j, m)` with `1 <= i <= j`, `i + j <= m <= k`, in
/// lexicographic order.
pub fn denominator_triples(k: u32) -> Vec<(u32, u32, u32)> {
    let mut out = Vec::new();
    for i in 1..=k {
        for j in i..=k {
            for m in i + j..=k {
                out.push((i, j, m));
            }
        }
    }
    out
}

fn z(i: u32) -> Polynomial {
    Polynomial::var(Var::Z(i))
}

/// `prod_{i<j} (z_i - z_j)`.
pub fn vandermonde(k: u32) -> Polynomial {
    let mut v = Polynomial::one();
    for i in 1..=k {
        for j in i + 1..=k {
            v *= z(i) - z(j);
        }
    }
    v
}

/// `z_i + z_j - z_m` as an affine form.
pub fn triple_form(i: u32, j: u32, m: u32) -> AffineForm {
    AffineForm::from_polynomial(&(z(i) + z(j) - z(m))).expect("linear in z")
}

/// `prod_{i<j} (z_i - z_j) Q_k / prod_T (z_i + z_j - z_m)` with `z_k` most dominant,
/// optionally scaled by `extra` in the numerator.
pub fn generating_form(k: u32, q: &Polynomial, extra: Polynomial) -> ResidueForm {
    let numerator = vandermonde(k) * q * extra;
    let order = (1..=k).map(Var::Z).collect();
    denominator_triples(k)
        .into_iter()
        .fold(ResidueForm::new(numerator, order), |f, (i, j, m)| f.denominator(triple_form(i, j, m), 1))
}

/// `c(1/z) z^l` with `c` cut at `c_top`.
pub fn chern_local_factor(zv: Var, codim: u32, top: u32) -> LaurentSeries {
    let mut terms = vec![(Monomial::power(zv, codim as i32), Rational::one())];
    for i in 1..=top {
        let m = Monomial::from_pairs([(zv, codim as i32 - i as i32), (Var::Chern(i), 1)]);
        terms.push((m, Rational::one()));
    }
    LaurentSeries::from_terms(terms, &Ring::new()).expect("only residue exponents are negative")
}

/// The Thom polynomial of `A_k` in codimension `codim = m - n`.
pub fn thom_polynomial(k: u32, codim: i64, table: &QTable, opts: ResidueOptions) -> Result<ThomResult> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    let codim = u32::try_from(codim)
        .map_err(|_| Error::InvalidArgument(alloc::format!("codimension {codim} is negative")))?;
    let entry = table.get(k)?;
    let top = k * (codim + 1);
    let form = (1..=k).fold(generating_form(k, &entry.q, Polynomial::one()), |f, l| {
        f.local_factor(Var::Z(l), chern_local_factor(Var::Z(l), codim, top))
    });
    let sign = sign_calibration(k);
    let r = iterated_residue(&form, opts)?;
    let polynomial = if sign < 0 { -r } else { r };
    Ok(ThomResult { k, codim, polynomial, sign_calibration: sign, q_verified: entry.verified })
}

/// Weighted degree with `deg c_i = i`; `None` if a non-Chern variable occurs.
pub fn chern_weighted_degree(m: &Monomial) -> Option<i64> {
    m.iter()
        .map(|(v, e)| match v {
            Var::Chern(i) => Some(i as i64 * e as i64),
            _ => None,
        })
        .sum()
}

/// Result of the positivity check.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PositivityReport {
    /// Terms with a negative coefficient, in canonical order.
    pub negative: Vec<(Monomial, Rational)>,
    /// Terms whose coefficient is not an integer.
    pub non_integral: Vec<(Monomial, Rational)>,
}

impl PositivityReport {
    pub fn is_clean(&self) -> bool {
        self.negative.is_empty() && self.non_integral.is_empty()
    }
}

pub fn positivity_check(r: &ThomResult) -> PositivityReport {
    let mut report = PositivityReport::default();
    for (m, c) in r.polynomial.terms() {
        if c.is_negative() {
            report.negative.push((m.clone(), c.clone()));
        }
        if !c.is_integer() {
            report.non_integral.push((m.clone(), c.clone()));
        }
    }
    report
}

/// One neighbouring-coefficient ratio of the Thom generating function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NeighbourRatio {
    /// Exponent vector `i` of the numerator coefficient.
    pub exponent: Vec<i32>,
    /// `i + unit_l - unit_m` (1-based `l < m`), the denominator coefficient.
    pub neighbour: Vec<i32>,
    pub ratio: Rational,
}

/// Report of the ratio check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatioReport {
    pub k: u32,
    pub codim: u32,
    pub depth: u32,
    /// Nonzero coefficients of the generating function inside the depth.
    pub coefficients: Vec<(Vec<i32>, Rational)>,
    pub ratios: Vec<NeighbourRatio>,
    /// Neighbour pairs skipped because the denominator coefficient is zero.
    pub skipped: usize,
    /// Every reported ratio is below `k^2`.
    pub all_below_bound: bool,
}

/// Exponent vectors of length `k` with sum `total` and entries `>= -depth`.
fn exponent_vectors(k: usize, total: i64, depth: i32) -> Vec<Vec<i32>> {
    fn rec(k: usize, left: i64, depth: i32, cur: &mut Vec<i32>, out: &mut Vec<Vec<i32>>) {
        if cur.len() + 1 == k {
            if left >= -(depth as i64) {
                cur.push(left as i32);
                out.push(cur.clone());
                cur.pop();
            }
            return;
        }
        let rest = (k - cur.len() - 1) as i64;
        let hi = left + rest * depth as i64;
        for e in -(depth as i64)..=hi {
            cur.push(e as i32);
            rec(k, left - e, depth, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k > 0 {
        rec(k, total, depth, &mut Vec::new(), &mut out);
    }
    out
}

/// Checks `coeff_i / coeff_{i + e_l - e_m} < k^2` on the generating function
/// `prod (z_m - z_l) Q_k / prod (z_m + z_r - z_l)`, over all exponent
/// vectors of the right total degree with every entry at least `-depth`.
pub fn ratio_check(k: u32, codim: i64, table: &QTable, depth: u32, opts: ResidueOptions) -> Result<RatioReport> {
    let codim = u32::try_from(codim)
        .map_err(|_| Error::InvalidArgument(alloc::format!("codimension {codim} is negative")))?;
    let entry = table.get(k)?;
    let form = generating_form(k, &entry.q, Polynomial::one());
    let q_degree = entry.q.total_degree().unwrap_or(0);
    let total = (k as i64 * (k as i64 - 1)) / 2 + q_degree - denominator_triples(k).len() as i64;
    let targets = exponent_vectors(k as usize, total, depth as i32);
    let values = coefficients(&form, &targets, opts)?;
    let coeff: BTreeMap<Vec<i32>, Rational> = targets
        .iter()
        .cloned()
        .zip(values.into_iter().map(|p| p.constant_term()))
        .collect();
    let bound = Rational::from_integer((k as i64 * k as i64).into());
    let mut ratios = Vec::new();
    let mut skipped = 0;
    for (e, c) in &coeff {
        for l in 0..k as usize {
            for m in l + 1..k as usize {
                let mut nb = e.clone();
                nb[l] += 1;
                nb[m] -= 1;
                let Some(d) = coeff.get(&nb) else { continue };
                if d.is_zero() {
                    skipped += 1;
                    continue;
                }
                ratios.push(NeighbourRatio { exponent: e.clone(), neighbour: nb, ratio: c / d });
            }
        }
    }
    let all_below_bound = ratios.iter().all(|r| r.ratio < bound);
    let coefficients = coeff.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    Ok(RatioReport { k, codim, depth, coefficients, ratios, skipped, all_below_bound })
}
