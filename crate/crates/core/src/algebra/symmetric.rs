use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::{Monomial, Polynomial, Var};
use crate::error::{Error, Result};

/// The `i`-th elementary symmetric polynomial in the weights `l1..ln`.
pub fn elementary(i: u32, n: u32) -> Polynomial {
    // coefficients of prod_j (1 + l_j t), built up one weight at a time
    let mut e = alloc::vec![Polynomial::one()];
    for j in 1..=n {
        let l = Polynomial::var(Var::Weight(j));
        let mut next = e.clone();
        next.push(Polynomial::zero());
        for s in 1..next.len() {
            next[s] += &e[s - 1] * &l;
        }
        e = next;
    }
    e.get(i as usize).cloned().unwrap_or_default()
}

/// Swaps weights `l_i` and `l_j` in `p`.
pub fn swap_weights(p: &Polynomial, i: u32, j: u32) -> Polynomial {
    let terms = p.terms().map(|(m, c)| {
        let pairs = m.iter().map(|(v, e)| {
            let v = match v {
                Var::Weight(x) if x == i => Var::Weight(j),
                Var::Weight(x) if x == j => Var::Weight(i),
                v => v,
            };
            (v, e)
        });
        (Monomial::from_pairs(pairs), c.clone())
    });
    Polynomial::from_terms(terms, p.ring()).expect("swap keeps exponents nonnegative")
}

/// Rewrites a polynomial symmetric in `l1..ln` in the elementary symbols `e1..en`.
///
/// Other variables are carried along as coefficients.
pub fn symmetric_reduce(p: &Polynomial, n: u32) -> Result<Polynomial> {
    if let Some(v) = p
        .variables()
        .into_iter()
        .find(|v| matches!(v, Var::Weight(j) if *j == 0 || *j > n))
    {
        return Err(Error::InvalidArgument(alloc::format!(
            "{v} is not among the weights l1..l{n}"
        )));
    }
    for i in 1..n {
        if swap_weights(p, i, i + 1) != *p {
            return Err(Error::NotSymmetric(i, i + 1));
        }
    }
    let elementary: Vec<Polynomial> = (0..=n).map(|i| elementary(i, n)).collect();
    let mut powers: BTreeMap<(u32, u32), Polynomial> = BTreeMap::new();
    let mut rest = p.clone();
    let mut out = Polynomial::zero().in_ring(p.ring());
    while let Some((m, c)) = rest.leading_term() {
        let (m, c) = (m.clone(), c.clone());
        let a: Vec<i32> = (1..=n).map(|j| m.exponent(Var::Weight(j))).collect();
        let other = m.restrict(|v| !matches!(v, Var::Weight(_)));
        let mut expansion = Polynomial::monomial(other.clone(), c.clone());
        let mut symbols = Vec::new();
        for i in 1..=n as usize {
            let next = a.get(i).copied().unwrap_or(0);
            let k = a[i - 1] - next;
            // symmetric input has a nonincreasing leading exponent vector
            debug_assert!(k >= 0);
            if k > 0 {
                let pw = powers
                    .entry((i as u32, k as u32))
                    .or_insert_with(|| elementary[i].pow(k as u32));
                expansion = &expansion * &*pw;
                symbols.push((Var::Elem(i as u32), k));
            }
        }
        rest -= &expansion;
        out += Polynomial::monomial(other.mul(&Monomial::from_pairs(symbols)), c);
    }
    Ok(out)
}

/// Substitutes `e_i := elementary(i, n)`; the inverse of [`symmetric_reduce`].
pub fn expand_elementary(p: &Polynomial, n: u32) -> Polynomial {
    let map = (1..=n)
        .map(|i| (Var::Elem(i), elementary(i, n)))
        .collect();
    p.substitute(&map)
}
