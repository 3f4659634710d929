//! Brute-force expansion oracle, independent of the residue engine.
//!
//! Every denominator is expanded as a truncated geometric series in its
//! dominant variable (highest index), everything is multiplied out, and the
//! coefficient of `z_1^-1 ... z_k^-1` is read off. With weights `w_l = l`
//! each expansion term of order `m` has weighted degree at most `-m - w_j`,
//! so terms that fall below the target weighted degree can never come back
//! and are dropped. The series length is twice what that bound requires.
#![allow(dead_code)]

use std::collections::BTreeMap;

use equiloc_core::algebra::{rat, Monomial, Polynomial, Rational, Var};

pub type Exps = Vec<i32>;

#[derive(Clone, Debug, Default)]
pub struct Series {
    pub k: usize,
    pub terms: BTreeMap<Exps, Polynomial>,
}

fn weight(e: &[i32]) -> i64 {
    e.iter().enumerate().map(|(i, &x)| (i as i64 + 1) * x as i64).sum()
}

impl Series {
    pub fn one(k: usize) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(vec![0; k], Polynomial::one());
        Series { k, terms }
    }

    /// Splits `p` into its `z_1..z_k` exponents and the remaining coefficient.
    pub fn from_polynomial(p: &Polynomial, k: usize) -> Self {
        let mut terms: BTreeMap<Exps, Polynomial> = BTreeMap::new();
        for (m, c) in p.terms() {
            let mut e = vec![0; k];
            let mut rest = Vec::new();
            for (v, x) in m.iter() {
                match v {
                    Var::Z(i) => e[i as usize - 1] = x,
                    _ => rest.push((v, x)),
                }
            }
            let coeff = Polynomial::monomial(Monomial::from_pairs(rest), c.clone());
            let slot = terms.entry(e).or_default();
            *slot = &*slot + &coeff;
        }
        terms.retain(|_, c| !c.is_zero());
        Series { k, terms }
    }

    /// `z_l^shift * p`, for a local factor written in `1/z_l`.
    pub fn shifted(mut self, l: usize, shift: i32) -> Self {
        self.terms = self
            .terms
            .into_iter()
            .map(|(mut e, c)| {
                e[l] += shift;
                (e, c)
            })
            .collect();
        self
    }

    pub fn max_weight(&self) -> i64 {
        self.terms.keys().map(|e| weight(e)).max().unwrap_or(i64::MIN)
    }

    /// Product, dropping terms of weighted degree below `floor`.
    pub fn mul(&self, other: &Series, floor: Option<i64>) -> Series {
        let mut terms: BTreeMap<Exps, Polynomial> = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Exps = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                if floor.is_some_and(|f| weight(&e) < f) {
                    continue;
                }
                let slot = terms.entry(e).or_default();
                *slot = &*slot + &(c1 * c2);
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Series { k: self.k, terms }
    }

    pub fn coefficient(&self, e: &[i32]) -> Polynomial {
        self.terms.get(e).cloned().unwrap_or_default()
    }
}

/// `1 / (sum_l a_l z_l + c)` expanded in the highest-index variable with
/// nonzero coefficient, orders `0..=len`.
pub fn inverse(a: &[Rational], c: &Polynomial, len: usize) -> Series {
    let k = a.len();
    let j = (0..k).rev().find(|&l| a[l] != rat(0)).expect("form involves a residue variable");
    let mut rest = Series::from_polynomial(c, k);
    for l in 0..j {
        if a[l] != rat(0) {
            let mut e = vec![0; k];
            e[l] = 1;
            rest.terms.insert(e, Polynomial::constant(a[l].clone()));
        }
    }
    let inv = rat(1) / &a[j];
    let mut out = Series { k, terms: BTreeMap::new() };
    // (-rest)^m / (a_j z_j)^(m+1)
    let mut power = Series::one(k);
    let mut scale = inv.clone();
    for m in 0..=len {
        for (e, coeff) in &power.terms {
            let mut e = e.clone();
            e[j] -= m as i32 + 1;
            let c = coeff.scale(&if m % 2 == 0 { scale.clone() } else { -scale.clone() });
            let slot = out.terms.entry(e).or_default();
            *slot = &*slot + &c;
        }
        power = power.mul(&rest, None);
        scale = &scale * &inv;
    }
    out.terms.retain(|_, c| !c.is_zero());
    out
}

/// A denominator `(a, c)` meaning `sum_l a_l z_l + c`.
pub type Denominator = (Vec<Rational>, Polynomial);

/// Raw coefficient of `z_1^-1 ... z_k^-1` in `numerator / prod denominators`.
/// The numerator may already carry negative exponents.
pub fn raw_residue(numerator: &Series, denominators: &[Denominator]) -> Polynomial {
    let k = numerator.k;
    let target = -((k * (k + 1) / 2) as i64);
    if numerator.terms.is_empty() {
        return Polynomial::zero();
    }
    let bound = (numerator.max_weight() - target).max(0) as usize;
    let mut acc = numerator.clone();
    for (a, c) in denominators {
        let s = inverse(a, c, 2 * bound + 2);
        acc = acc.mul(&s, Some(target));
    }
    acc.coefficient(&vec![-1; k])
}

fn zp(i: u32) -> Polynomial {
    Polynomial::var(Var::Z(i))
}

/// The Thom integrand `prod_{i<j}(z_i - z_j) Q prod_l z_l^codim c(1/z_l) / prod_T (z_i + z_j - z_m)`,
/// built from scratch.
pub fn thom_oracle(k: u32, codim: u32, q: &Polynomial) -> Polynomial {
    let mut num = q.clone();
    for i in 1..=k {
        for j in i + 1..=k {
            num *= zp(i) - zp(j);
        }
    }
    let ku = k as usize;
    let mut series = Series::from_polynomial(&num, ku);
    let top = k * (codim + 1);
    for l in 0..ku {
        // z^codim * sum_i c_i z^-i
        let mut local = BTreeMap::new();
        for i in 0..=top {
            let mut e = vec![0; ku];
            e[l] = codim as i32 - i as i32;
            let c = if i == 0 { Polynomial::one() } else { Polynomial::var(Var::Chern(i)) };
            local.insert(e, c);
        }
        series = series.mul(&Series { k: ku, terms: local }, None);
    }
    let mut dens = Vec::new();
    for i in 1..=k {
        for j in i..=k {
            for m in i + j..=k {
                let mut a = vec![rat(0); ku];
                a[i as usize - 1] += rat(1);
                a[j as usize - 1] += rat(1);
                a[m as usize - 1] -= rat(1);
                dens.push((a, Polynomial::zero()));
            }
        }
    }
    raw_residue(&series, &dens)
}

/// `Td = (x/(1-e^-x))^{n+2} evaluated at h, divided by the same at d h`,
/// cut at `h^n`, by plain power series in `h`.
pub fn todd_oracle(n: u32) -> Polynomial {
    let n = n as usize;
    // (1 - e^-x)/x = sum_i (-1)^i x^i / (i+1)!
    let mut fact = rat(1);
    let mut b = Vec::new();
    for i in 0..=n {
        fact = &fact * rat(i as i64 + 1);
        let t = rat(1) / &fact;
        b.push(if i % 2 == 0 { t } else { -t });
    }
    // a = 1/b
    let mut a = vec![rat(0); n + 1];
    a[0] = rat(1);
    for i in 1..=n {
        let s: Rational = (1..=i).map(|j| &b[j] * &a[i - j]).sum();
        a[i] = -s;
    }
    let h = Polynomial::var(Var::H);
    let dh = &Polynomial::var(Var::D) * &h;
    let series = |coeffs: &[Rational], x: &Polynomial| -> Polynomial {
        let mut out = Polynomial::zero();
        let mut p = Polynomial::one();
        for c in coeffs {
            out += p.scale(c);
            p = &p * x;
        }
        out
    };
    let keep = |p: Polynomial| p.filter(|m| m.exponent(Var::H) <= n as i32);
    let mut td = Polynomial::one();
    let ah = series(&a, &h);
    for _ in 0..n + 2 {
        td = keep(&td * &ah);
    }
    keep(td * series(&b, &dh))
}
