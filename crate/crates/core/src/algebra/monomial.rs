use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use super::Var;

/// A power product of variables, stored sparsely and sorted by variable.
///
/// Zero exponents are never stored. Negative exponents are representable so
/// the same type serves Laurent series; [`Polynomial`](super::Polynomial)
/// rejects them.
///
/// `Ord` is graded lexicographic: total degree first, then the exponent of
/// the first variable (in [`Var`] order) where the two monomials differ.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<(Var, i32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: Var) -> Self {
        Monomial(alloc::vec![(v, 1)])
    }

    pub fn power(v: Var, e: i32) -> Self {
        if e == 0 {
            Self::one()
        } else {
            Monomial(alloc::vec![(v, e)])
        }
    }

    /// Builds a monomial from arbitrary `(var, exponent)` pairs, merging repeats.
    pub fn from_pairs<I: IntoIterator<Item = (Var, i32)>>(pairs: I) -> Self {
        let mut v: Vec<(Var, i32)> = pairs.into_iter().collect();
        v.sort_by_key(|p| p.0);
        let mut out: Vec<(Var, i32)> = Vec::with_capacity(v.len());
        for (var, e) in v {
            match out.last_mut() {
                Some(last) if last.0 == var => last.1 += e,
                _ => out.push((var, e)),
            }
        }
        out.retain(|p| p.1 != 0);
        Monomial(out)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Var, i32)> + '_ {
        self.0.iter().copied()
    }

    pub fn exponent(&self, v: Var) -> i32 {
        match self.0.binary_search_by_key(&v, |p| p.0) {
            Ok(i) => self.0[i].1,
            Err(_) => 0,
        }
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().map(|p| p.1 as i64).sum()
    }

    /// Total degree counted only over variables accepted by `keep`.
    pub fn degree_where(&self, keep: impl Fn(Var) -> bool) -> i64 {
        self.0.iter().filter(|p| keep(p.0)).map(|p| p.1 as i64).sum()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|p| p.1 > 0)
    }

    /// First variable carrying a negative exponent, if any.
    pub fn first_negative(&self) -> Option<Var> {
        self.0.iter().find(|p| p.1 < 0).map(|p| p.0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        self.merge(other, 1)
    }

    /// Quotient with possibly negative exponents.
    pub fn div(&self, other: &Monomial) -> Monomial {
        self.merge(other, -1)
    }

    /// Whether `self` divides `other` in the polynomial sense.
    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().all(|&(v, e)| other.exponent(v) >= e)
    }

    pub fn pow(&self, k: u32) -> Monomial {
        if k == 0 {
            return Self::one();
        }
        Monomial(self.0.iter().map(|&(v, e)| (v, e * k as i32)).collect())
    }

    /// Splits off the exponent of `v`, returning it with the remaining monomial.
    pub fn split(&self, v: Var) -> (i32, Monomial) {
        match self.0.binary_search_by_key(&v, |p| p.0) {
            Ok(i) => {
                let mut rest = self.0.clone();
                let (_, e) = rest.remove(i);
                (e, Monomial(rest))
            }
            Err(_) => (0, self.clone()),
        }
    }

    /// Keeps only the variables accepted by `keep`.
    pub fn restrict(&self, keep: impl Fn(Var) -> bool) -> Monomial {
        Monomial(self.0.iter().copied().filter(|p| keep(p.0)).collect())
    }

    fn merge(&self, other: &Monomial, sign: i32) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push((b[j].0, sign * b[j].1));
                    j += 1;
                }
                Ordering::Equal => {
                    let e = a[i].1 + sign * b[j].1;
                    if e != 0 {
                        out.push((a[i].0, e));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend(b[j..].iter().map(|&(v, e)| (v, sign * e)));
        Monomial(out)
    }

    fn lex_cmp(&self, other: &Monomial) -> Ordering {
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j) = (0, 0);
        loop {
            match (a.get(i), b.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(&(_, e)), None) => return e.cmp(&0),
                (None, Some(&(_, e))) => return 0.cmp(&e),
                (Some(&(va, ea)), Some(&(vb, eb))) => match va.cmp(&vb) {
                    Ordering::Less => return ea.cmp(&0),
                    Ordering::Greater => return 0.cmp(&eb),
                    Ordering::Equal => {
                        if ea != eb {
                            return ea.cmp(&eb);
                        }
                        i += 1;
                        j += 1;
                    }
                },
            }
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.lex_cmp(other))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (i, (v, e)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(i: u32) -> Var {
        Var::Z(i)
    }

    #[test]
    fn grlex_orders_by_degree_then_lex() {
        let a = Monomial::from_pairs([(z(1), 2)]);
        let b = Monomial::from_pairs([(z(1), 1), (z(2), 1)]);
        let c = Monomial::from_pairs([(z(2), 2)]);
        let d = Monomial::from_pairs([(z(1), 1)]);
        assert!(a > b && b > c && c > d && d > Monomial::one());
        assert!(Monomial::var(Var::Chern(1)) > Monomial::var(Var::Chern(2)));
    }

    #[test]
    fn merge_cancels_and_splits() {
        let a = Monomial::from_pairs([(z(1), 2), (Var::H, 1)]);
        let b = Monomial::from_pairs([(z(1), -2), (z(3), 1)]);
        let p = a.mul(&b);
        assert_eq!(p, Monomial::from_pairs([(Var::H, 1), (z(3), 1)]));
        assert_eq!(p.div(&b), a);
        assert_eq!(a.split(z(1)), (2, Monomial::var(Var::H)));
        assert!(Monomial::var(z(1)).divides(&a));
        assert!(!a.divides(&Monomial::var(z(1))));
    }
}
