//! Truncated univariate power series with rational coefficients.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::algebra::Rational;

/// Coefficients `[a_0, ..., a_len-1]`.
pub(crate) type Series = Vec<Rational>;

fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

pub(crate) fn mul(a: &[Rational], b: &[Rational], len: usize) -> Series {
    let mut out = vec![Rational::zero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// `1/a`, for `a_0 != 0`.
pub(crate) fn reciprocal(a: &[Rational], len: usize) -> Series {
    let mut out = vec![Rational::zero(); len];
    let inv0 = Rational::one() / &a[0];
    for k in 0..len {
        let mut s = if k == 0 { Rational::one() } else { Rational::zero() };
        for j in 1..=k.min(a.len() - 1) {
            s -= &a[j] * &out[k - j];
        }
        out[k] = s * &inv0;
    }
    out
}

/// `log a`, for `a_0 = 1`, via `(log a)' = a'/a`.
pub(crate) fn log(a: &[Rational], len: usize) -> Series {
    debug_assert!(a[0].is_one());
    let deriv: Series = (1..a.len()).map(|i| &a[i] * int(i as i64)).collect();
    let q = mul(&deriv, &reciprocal(a, len), len);
    let mut out = vec![Rational::zero(); len];
    for i in 1..len {
        out[i] = &q[i - 1] / int(i as i64);
    }
    out
}

/// Coefficients of `x / (1 - e^-x)`.
pub(crate) fn todd_generator(len: usize) -> Series {
    // (1 - e^-x)/x = sum_i (-1)^i x^i / (i+1)!
    let mut fact = Rational::one();
    let mut a = Vec::with_capacity(len);
    for i in 0..len {
        fact *= int(i as i64 + 1);
        let term = Rational::one() / &fact;
        a.push(if i % 2 == 0 { term } else { -term });
    }
    reciprocal(&a, len)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ratio;

    #[test]
    fn todd_generator_coefficients() {
        let t = todd_generator(5);
        assert_eq!(t, vec![int(1), ratio(1, 2), ratio(1, 12), int(0), ratio(-1, 720)]);
    }

    #[test]
    fn log_of_todd_generator() {
        let l = log(&todd_generator(5), 5);
        assert_eq!(l, vec![int(0), ratio(1, 2), ratio(-1, 24), int(0), ratio(1, 2880)]);
    }
}
