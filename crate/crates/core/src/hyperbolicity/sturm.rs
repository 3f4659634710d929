//! Univariate sign analysis over the rationals. Coefficients are stored
//! lowest degree first.

use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::algebra::Rational;

fn trim(mut p: Vec<Rational>) -> Vec<Rational> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

pub fn eval(p: &[Rational], x: &Rational) -> Rational {
    p.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
}

fn derivative(p: &[Rational]) -> Vec<Rational> {
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * Rational::from_integer((i as i64).into()))
        .collect()
}

fn remainder(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut r = a.to_vec();
    let lead = b.last().expect("nonzero divisor");
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let q = r.last().unwrap() / lead;
        for (i, c) in b.iter().enumerate() {
            r[shift + i] = &r[shift + i] - &q * c;
        }
        r.pop();
        r = trim(r);
    }
    r
}

/// The Sturm sequence `p, p', -rem(p, p'), ...`.
pub fn sturm_sequence(p: &[Rational]) -> Vec<Vec<Rational>> {
    let mut seq = alloc::vec![trim(p.to_vec())];
    let d = trim(derivative(p));
    if d.is_empty() {
        return seq;
    }
    seq.push(d);
    loop {
        let n = seq.len();
        let r = remainder(&seq[n - 2], &seq[n - 1]);
        if r.is_empty() {
            return seq;
        }
        seq.push(r.into_iter().map(|c| -c).collect());
    }
}

fn sign_changes(signs: impl Iterator<Item = i8>) -> usize {
    let mut last = 0i8;
    let mut count = 0;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

fn sign(x: &Rational) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

/// Number of distinct real roots in `(x, infinity)`; `x` must not be a root.
pub fn roots_above(seq: &[Vec<Rational>], x: &Rational) -> usize {
    let at_x = sign_changes(seq.iter().map(|q| sign(&eval(q, x))));
    let at_inf = sign_changes(seq.iter().map(|q| q.last().map_or(0, sign)));
    at_x - at_inf
}
