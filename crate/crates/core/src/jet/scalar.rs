use core::fmt::Debug;

use num_traits::{One, Zero};

use crate::algebra::{Polynomial, Rational};

/// The coefficient ring of jet computations: exact rationals for numeric
/// jets, polynomials for symbolic ones.
pub trait Scalar: Clone + PartialEq + Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn scale(&self, c: &Rational) -> Self;
}

impl Scalar for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn scale(&self, c: &Rational) -> Self {
        self * c
    }
}

impl Scalar for Polynomial {
    fn zero() -> Self {
        Polynomial::zero()
    }
    fn one() -> Self {
        Polynomial::one()
    }
    fn is_zero(&self) -> bool {
        Polynomial::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn scale(&self, c: &Rational) -> Self {
        Polynomial::scale(self, c)
    }
}

/// Determinant by Laplace expansion along the first row.
pub fn determinant<T: Scalar>(m: &[&[T]]) -> T {
    let k = m.len();
    match k {
        0 => T::one(),
        1 => m[0][0].clone(),
        2 => m[0][0].mul(&m[1][1]).sub(&m[0][1].mul(&m[1][0])),
        _ => {
            let mut total = T::zero();
            let mut minor_rows: alloc::vec::Vec<alloc::vec::Vec<T>> = alloc::vec::Vec::new();
            for col in 0..k {
                if m[0][col].is_zero() {
                    continue;
                }
                minor_rows.clear();
                for row in &m[1..] {
                    minor_rows.push(
                        row.iter()
                            .enumerate()
                            .filter(|&(c, _)| c != col)
                            .map(|(_, x)| x.clone())
                            .collect(),
                    );
                }
                let refs: alloc::vec::Vec<&[T]> = minor_rows.iter().map(|r| r.as_slice()).collect();
                let term = m[0][col].mul(&determinant(&refs));
                total = if col % 2 == 0 { total.add(&term) } else { total.sub(&term) };
            }
            total
        }
    }
}
