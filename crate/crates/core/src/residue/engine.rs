use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::One;

use super::form::{AffineForm, ResidueForm};
use crate::algebra::terms::{self, Terms};
use crate::algebra::{LaurentSeries, Monomial, Polynomial, Rational, Ring, Var, Window};
use crate::error::{Error, Result};

/// Tuning for the residue engine.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ResidueOptions {
    /// Largest expansion order allowed in any single variable.
    pub cap: u32,
    /// Extra expansion orders computed beyond what the target needs.
    /// Never changes a result; exists to test exactly that.
    pub margin: u32,
}

impl Default for ResidueOptions {
    fn default() -> Self {
        ResidueOptions { cap: 256, margin: 0 }
    }
}

/// Expands `1/form` in its dominant variable, keeping `windows`.
///
/// The dominant variable must have a window: its exponents run from `-1`
/// downwards without bound.
pub fn expand_inverse(
    form: &AffineForm,
    order: &[Var],
    windows: &BTreeMap<Var, Window>,
    opts: ResidueOptions,
) -> Result<LaurentSeries> {
    let z = form.dominant(order)?;
    let (lo, _) = windows.get(&z).copied().ok_or_else(|| {
        Error::InvalidArgument(alloc::format!("expansion of 1/({form}) needs a window on {z}"))
    })?;
    let a = form.coefficient(z);
    let rest = &form.to_polynomial() - &Polynomial::monomial(Monomial::var(z), a.clone());
    let ring = rest.ring().clone();
    // 1/(a z + r) = sum_j (-1)^j r^j / (a z)^(j+1)
    let jmax = -(lo as i64) - 1;
    if jmax > opts.cap as i64 {
        return Err(Error::WindowOverflow { var: z, needed: jmax as u64, cap: opts.cap as u64 });
    }
    let inv_a = Rational::one() / &a;
    let mut out = Terms::new();
    let mut r_pow = terms::one();
    let mut scale = inv_a.clone();
    for j in 0..=jmax.max(-1) {
        let zpow = Monomial::power(z, -(j as i32) - 1);
        for (m, c) in &r_pow {
            terms::add_term(&mut out, m.mul(&zpow), c * &scale);
        }
        r_pow = terms::mul(&r_pow, rest.raw(), &ring);
        scale = -scale * &inv_a;
    }
    LaurentSeries::new(out, windows.clone(), &ring)
}

/// `(-1)^d` times the coefficient of `z_1^-1 ... z_d^-1`.
pub fn iterated_residue(form: &ResidueForm, opts: ResidueOptions) -> Result<Polynomial> {
    let d = form.order().len();
    let target = vec![-1; d];
    let mut c = coefficients(form, &[target], opts)?.pop().expect("one target");
    if d % 2 == 1 {
        c = -c;
    }
    Ok(c)
}

/// Coefficients of the expansion of `form` at the given exponent vectors.
///
/// Each target lists one exponent per variable of the ordering, in
/// ordering position. Every denominator is expanded in its dominant
/// variable.
pub fn coefficients(
    form: &ResidueForm,
    targets: &[Vec<i32>],
    opts: ResidueOptions,
) -> Result<Vec<Polynomial>> {
    form.validate()?;
    let order = form.order();
    if let Some(t) = targets.iter().find(|t| t.len() != order.len()) {
        return Err(Error::InvalidArgument(alloc::format!(
            "target has {} exponents for {} variables",
            t.len(),
            order.len()
        )));
    }
    let ring = form.ring();
    let mut numerator: Terms = form.numerator().raw().clone();
    let mut blocks: BTreeMap<Var, Block> = order.iter().map(|&z| (z, Block::default())).collect();
    for (f, power) in form.denominators() {
        let z = f.dominant(order)?;
        let a = f.coefficient(z);
        if f.is_monomial() {
            // 1/(a z)^k goes into the numerator
            let inv = num_traits::pow(Rational::one() / &a, *power as usize);
            let zk = Monomial::power(z, -(*power as i32));
            numerator = numerator.into_iter().map(|(m, c)| (m.mul(&zk), c * &inv)).collect();
            continue;
        }
        // a z + r = a (z - u) with u = -r/a
        let u = (&f.to_polynomial() - &Polynomial::monomial(Monomial::var(z), a.clone()))
            .scale(&(-Rational::one() / &a));
        let block = blocks.get_mut(&z).expect("ordered variable");
        for _ in 0..*power {
            block.scale *= Rational::one() / &a;
            block.roots.push(u.raw().clone());
        }
    }
    for (z, l) in form.local_factors() {
        blocks.get_mut(z).expect("ordered variable").local = Some(l.raw().clone());
    }
    let engine = Engine { order, blocks, ring, opts };
    let indexed: Vec<(&[i32], usize)> = targets.iter().map(|t| t.as_slice()).zip(0..).collect();
    let mut out = vec![Terms::new(); targets.len()];
    engine.extract(numerator, order.len(), &indexed, &mut out)?;
    out.into_iter()
        .map(|t| Polynomial::from_terms(t, &engine.ring))
        .collect()
}

struct Block {
    /// `prod 1/a_j` over the forms dominated by this variable.
    scale: Rational,
    /// The `u_j` with form `a_j (z - u_j)`, repeated by multiplicity.
    roots: Vec<Terms>,
    local: Option<Terms>,
}

impl Default for Block {
    fn default() -> Self {
        Block { scale: Rational::one(), roots: Vec::new(), local: None }
    }
}

struct Engine<'a> {
    order: &'a [Var],
    blocks: BTreeMap<Var, Block>,
    ring: Ring,
    opts: ResidueOptions,
}

impl Engine<'_> {
    /// Handles variable `order[level - 1]`, then recurses downwards.
    ///
    /// With `p` forms `a_j (z - u_j)` dominated by `z`,
    /// `prod_j 1/(a_j (z - u_j)) = prod_j a_j^-1 * sum_s h_s(u) z^(-p-s)`,
    /// so the `z^t` coefficient of `N(z)` times that is
    /// `prod_j a_j^-1 * sum_e N_e h_(e-p-t)(u)`.
    fn extract(
        &self,
        numerator: Terms,
        level: usize,
        targets: &[(&[i32], usize)],
        out: &mut [Terms],
    ) -> Result<()> {
        if numerator.is_empty() {
            return Ok(());
        }
        if level == 0 {
            for &(_, idx) in targets {
                out[idx] = numerator.clone();
            }
            return Ok(());
        }
        let z = self.order[level - 1];
        let block = &self.blocks[&z];
        let numerator = match &block.local {
            Some(l) => terms::mul(&numerator, l, &self.ring),
            None => numerator,
        };
        let mut by_power: BTreeMap<i32, Terms> = BTreeMap::new();
        for (m, c) in numerator {
            let (e, rest) = m.split(z);
            terms::add_term(by_power.entry(e).or_default(), rest, c);
        }
        let (Some(&emin), Some(&emax)) = (by_power.keys().next(), by_power.keys().next_back())
        else {
            return Ok(());
        };
        let p = block.roots.len() as i64;
        let mut groups: BTreeMap<i32, Vec<(&[i32], usize)>> = BTreeMap::new();
        for &(t, idx) in targets {
            groups.entry(t[level - 1]).or_default().push((t, idx));
        }
        let smax = groups
            .keys()
            .map(|&t| emax as i64 - p - t as i64)
            .max()
            .unwrap_or(-1);
        if smax > self.opts.cap as i64 {
            return Err(Error::WindowOverflow { var: z, needed: smax as u64, cap: self.opts.cap as u64 });
        }
        let h = if smax >= 0 {
            complete_homogeneous(&block.roots, smax as usize + self.opts.margin as usize, &self.ring)
        } else {
            Vec::new()
        };
        let scale = &block.scale;
        for (t, group) in groups {
            let mut next = Terms::new();
            for e in emin.max((p + t as i64) as i32)..=emax {
                let Some(ne) = by_power.get(&e) else { continue };
                let s = (e as i64 - p - t as i64) as usize;
                let prod = terms::mul(ne, &h[s], &self.ring);
                terms::add_scaled(&mut next, &prod, scale);
            }
            self.extract(next, level - 1, &group, out)?;
        }
        Ok(())
    }
}

/// `h_0..h_smax` of the given roots, each a polynomial.
fn complete_homogeneous(roots: &[Terms], smax: usize, ring: &Ring) -> Vec<Terms> {
    let mut h = vec![Terms::new(); smax + 1];
    h[0] = terms::one();
    for u in roots {
        // multiply the generating series by 1/(1 - u x)
        for s in 1..=smax {
            let shifted = terms::mul(&h[s - 1], u, ring);
            terms::add_scaled(&mut h[s], &shifted, &Rational::one());
        }
    }
    h
}
