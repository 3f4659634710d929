//! Sparse term maps shared by [`Polynomial`](super::Polynomial) and
//! [`LaurentSeries`](super::LaurentSeries).

use alloc::collections::btree_map::{BTreeMap, Entry};
use core::fmt;

use num_traits::{One, Signed, Zero};

use super::{Monomial, Rational, Ring};

pub(crate) type Terms = BTreeMap<Monomial, Rational>;

pub(crate) fn add_term(t: &mut Terms, m: Monomial, c: Rational) {
    if c.is_zero() {
        return;
    }
    match t.entry(m) {
        Entry::Vacant(e) => {
            e.insert(c);
        }
        Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

pub(crate) fn add_scaled(t: &mut Terms, other: &Terms, scale: &Rational) {
    if scale.is_zero() {
        return;
    }
    for (m, c) in other {
        add_term(t, m.clone(), c * scale);
    }
}

pub(crate) fn mul(a: &Terms, b: &Terms, ring: &Ring) -> Terms {
    let (a, b) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    let mut out = Terms::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            let m = ma.mul(mb);
            if ring.vanishes(&m) {
                continue;
            }
            add_term(&mut out, m, ca * cb);
        }
    }
    out
}

pub(crate) fn reduce(t: Terms, ring: &Ring) -> Terms {
    if ring.is_plain() {
        return t;
    }
    t.into_iter().filter(|(m, _)| !ring.vanishes(m)).collect()
}

pub(crate) fn pow(a: &Terms, k: u32, ring: &Ring) -> Terms {
    let mut result = one();
    let mut base = a.clone();
    let mut k = k;
    while k > 0 {
        if k & 1 == 1 {
            result = mul(&result, &base, ring);
        }
        k >>= 1;
        if k > 0 {
            base = mul(&base, &base, ring);
        }
    }
    result
}

pub(crate) fn one() -> Terms {
    let mut t = Terms::new();
    t.insert(Monomial::one(), Rational::one());
    t
}

pub(crate) fn fmt_rational(q: &Rational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if q.denom().is_one() {
        write!(f, "{}", q.numer())
    } else {
        write!(f, "{}/{}", q.numer(), q.denom())
    }
}

/// Writes terms in descending canonical order, e.g. `c1^2 + 3*c1*c2 - 1/2`.
pub(crate) fn fmt_terms(t: &Terms, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if t.is_empty() {
        return f.write_str("0");
    }
    for (i, (m, c)) in t.iter().rev().enumerate() {
        let negative = c.is_negative();
        match (i, negative) {
            (0, true) => f.write_str("-")?,
            (0, false) => {}
            (_, true) => f.write_str(" - ")?,
            (_, false) => f.write_str(" + ")?,
        }
        let magnitude = c.abs();
        if m.is_one() {
            fmt_rational(&magnitude, f)?;
        } else {
            if !magnitude.is_one() {
                fmt_rational(&magnitude, f)?;
                f.write_str("*")?;
            }
            write!(f, "{m}")?;
        }
    }
    Ok(())
}
