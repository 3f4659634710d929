//! Jets of curves, the reparametrisation group and the invariant minors.
//!
//! A `k`-jet `gamma(t) = v_1 t + ... + v_k t^k` in `C^n` is stored as its
//! coefficient vectors `v_i = f^(i) / i!`. Reparametrisations act on the
//! right: `gamma o phi` has coefficient matrix `V G(phi)`.

mod scalar;

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::{Polynomial, Rational, Var};
use crate::error::{Error, Result};

pub use scalar::{determinant, Scalar};

fn factorial(i: u32) -> Rational {
    (1..=i as i64).fold(Rational::from_integer(1.into()), |acc, x| acc * Rational::from_integer(x.into()))
}

/// The `k`-jet of a curve germ `(C, 0) -> (C^n, 0)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JetCurve<T> {
    pub n: usize,
    /// `v[i-1]` is `v_i`, a vector of length `n`.
    pub v: Vec<Vec<T>>,
}

impl<T: Scalar> JetCurve<T> {
    pub fn new(n: usize, v: Vec<Vec<T>>) -> Result<Self> {
        if v.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidArgument(alloc::format!("every jet vector must have length {n}")));
        }
        Ok(JetCurve { n, v })
    }

    /// From derivative coordinates: `f[i-1] = f^(i)`, so `v_i = f^(i) / i!`.
    pub fn from_derivatives(n: usize, f: Vec<Vec<T>>) -> Result<Self> {
        let v = f
            .into_iter()
            .enumerate()
            .map(|(i, row)| {
                let inv = Rational::from_integer(1.into()) / factorial(i as u32 + 1);
                row.iter().map(|x| x.scale(&inv)).collect()
            })
            .collect();
        Self::new(n, v)
    }

    /// Back to derivative coordinates `f^(i) = i! v_i`.
    pub fn derivatives(&self) -> Vec<Vec<T>> {
        self.v
            .iter()
            .enumerate()
            .map(|(i, row)| {
                let f = factorial(i as u32 + 1);
                row.iter().map(|x| x.scale(&f)).collect()
            })
            .collect()
    }

    pub fn k(&self) -> usize {
        self.v.len()
    }

    /// `v_1 != 0`.
    pub fn is_regular(&self) -> bool {
        self.v.first().is_some_and(|v1| v1.iter().any(|x| !x.is_zero()))
    }
}

impl JetCurve<Polynomial> {
    /// The generic jet with `v_i = f_c^(i) / i!` in the variables `f<c>_<i>`.
    pub fn symbolic(n: usize, k: usize) -> Self {
        let f = (1..=k as u32)
            .map(|i| {
                (1..=n as u32)
                    .map(|c| Polynomial::var(Var::Jet { coord: c, order: i }))
                    .collect()
            })
            .collect();
        Self::from_derivatives(n, f).expect("rows have length n")
    }
}

/// A `k`-jet of a reparametrisation `phi(t) = a_1 t + ... + a_k t^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReparamJet<T> {
    pub alpha: Vec<T>,
}

impl<T: Scalar> ReparamJet<T> {
    pub fn new(alpha: Vec<T>) -> Result<Self> {
        match alpha.first() {
            Some(a1) if !a1.is_zero() => Ok(ReparamJet { alpha }),
            _ => Err(Error::SingularLinearPart),
        }
    }

    pub fn identity(k: usize) -> Self {
        let mut alpha = vec![T::zero(); k];
        if k > 0 {
            alpha[0] = T::one();
        }
        ReparamJet { alpha }
    }

    pub fn k(&self) -> usize {
        self.alpha.len()
    }

    /// `a_1 = 1`: an element of the unipotent subgroup.
    pub fn is_unipotent(&self) -> bool {
        self.alpha.first() == Some(&T::one())
    }
}

/// Coefficients of `t^1..t^k` of the product of two series without constant term.
fn series_mul<T: Scalar>(a: &[T], b: &[T], k: usize) -> Vec<T> {
    let mut out = vec![T::zero(); k];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        // t^(i+1) * t^(j+1) = t^(i+j+2)
        for (j, y) in b.iter().enumerate() {
            let deg = i + j + 2;
            if deg > k {
                break;
            }
            out[deg - 1] = out[deg - 1].add(&x.mul(y));
        }
    }
    out
}

/// The `k x k` matrix with `(i, j)` entry `sum_{a_1+...+a_i=j} a_{a_1} ... a_{a_i}`,
/// the coefficient of `t^j` in `phi(t)^i`.
pub fn gk_matrix<T: Scalar>(phi: &ReparamJet<T>) -> Result<Vec<Vec<T>>> {
    if phi.alpha.first().is_none_or(|a| a.is_zero()) {
        return Err(Error::SingularLinearPart);
    }
    let k = phi.k();
    let mut rows = Vec::with_capacity(k);
    let mut power = phi.alpha.clone();
    for _ in 0..k {
        rows.push(power.clone());
        power = series_mul(&power, &phi.alpha, k);
    }
    Ok(rows)
}

/// `gamma o phi`, with coefficient matrix `V G(phi)`.
pub fn compose<T: Scalar>(gamma: &JetCurve<T>, phi: &ReparamJet<T>) -> Result<JetCurve<T>> {
    if gamma.k() != phi.k() {
        return Err(Error::InvalidArgument(alloc::format!(
            "jet order {} does not match reparametrisation order {}",
            gamma.k(),
            phi.k()
        )));
    }
    let g = gk_matrix(phi)?;
    let k = gamma.k();
    let v = (0..k)
        .map(|j| {
            (0..gamma.n)
                .map(|c| {
                    (0..k).fold(T::zero(), |acc, i| acc.add(&gamma.v[i][c].mul(&g[i][j])))
                })
                .collect()
        })
        .collect();
    JetCurve::new(gamma.n, v)
}

/// `phi1 o phi2` by substitution, truncated at order `k`.
pub fn compose_reparam<T: Scalar>(phi1: &ReparamJet<T>, phi2: &ReparamJet<T>) -> Result<ReparamJet<T>> {
    if phi1.k() != phi2.k() {
        return Err(Error::InvalidArgument("reparametrisation orders differ".into()));
    }
    let g = gk_matrix(phi2)?;
    let k = phi1.k();
    let alpha = (0..k)
        .map(|j| (0..k).fold(T::zero(), |acc, i| acc.add(&phi1.alpha[i].mul(&g[i][j]))))
        .collect();
    ReparamJet::new(alpha)
}

/// Monomial basis of `Sym^{<=k} C^n` as exponent vectors: degree-major,
/// and lexicographic within a degree (`e1^2, e1 e2, e2^2, e1^3, ...`).
pub fn sym_basis(n: usize, k: usize) -> Vec<Vec<u32>> {
    fn rec(n: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() + 1 == n {
            cur.push(left);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for e in (0..=left).rev() {
            cur.push(e);
            rec(n, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    for deg in 1..=k as u32 {
        rec(n, deg, &mut Vec::new(), &mut out);
    }
    out
}

/// `dim Sym^{<=k} C^n` without the constants: `C(n+k, k) - 1`.
pub fn sym_dimension(n: usize, k: usize) -> usize {
    let mut c: u128 = 1;
    for i in 0..k as u128 {
        c = c * (n as u128 + k as u128 - i) / (i + 1);
    }
    c as usize - 1
}

/// The `k x dim Sym^{<=k}` matrix whose row `j` is the `t^j` coefficient
/// of `sum_i gamma(t)^i`, with powers taken in the symmetric algebra.
pub fn rho<T: Scalar>(gamma: &JetCurve<T>) -> Vec<Vec<T>> {
    let (n, k) = (gamma.n, gamma.k());
    let basis = sym_basis(n, k);
    let index: BTreeMap<&[u32], usize> = basis.iter().enumerate().map(|(i, b)| (b.as_slice(), i)).collect();
    let mut rows = vec![vec![T::zero(); basis.len()]; k];
    // current power gamma(t)^i as (t-degree, exponent vector) -> coefficient
    let mut linear: BTreeMap<(usize, Vec<u32>), T> = BTreeMap::new();
    for (a, va) in gamma.v.iter().enumerate() {
        for (c, x) in va.iter().enumerate() {
            if !x.is_zero() {
                let mut e = vec![0u32; n];
                e[c] = 1;
                linear.insert((a + 1, e), x.clone());
            }
        }
    }
    let mut power = linear.clone();
    for _ in 1..=k {
        for ((deg, e), x) in &power {
            rows[deg - 1][index[e.as_slice()]] = rows[deg - 1][index[e.as_slice()]].add(x);
        }
        let mut next: BTreeMap<(usize, Vec<u32>), T> = BTreeMap::new();
        for ((d1, e1), x1) in &power {
            for ((d2, e2), x2) in &linear {
                if d1 + d2 > k {
                    continue;
                }
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                let slot = next.entry((d1 + d2, e)).or_insert_with(T::zero);
                *slot = slot.add(&x1.mul(x2));
            }
        }
        power = next;
    }
    rows
}

/// Column subsets of size `k` out of `dim`, in lexicographic order.
pub fn column_subsets(dim: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(dim: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for c in start..dim {
            if dim - c < k - cur.len() {
                break;
            }
            cur.push(c);
            rec(dim, k, c + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(dim, k, 0, &mut Vec::new(), &mut out);
    out
}

/// All `k x k` minors of `rho(gamma)`, over column subsets in lexicographic order.
pub fn invariant_minors<T: Scalar>(gamma: &JetCurve<T>) -> Result<Vec<T>> {
    let m = rho(gamma);
    let k = gamma.k();
    let dim = m.first().map_or(0, Vec::len);
    if dim < k {
        return Err(Error::TooFewColumns { needed: k, available: dim });
    }
    let mut out = Vec::new();
    let mut sub: Vec<Vec<T>> = vec![Vec::with_capacity(k); k];
    for cols in column_subsets(dim, k) {
        for (r, row) in sub.iter_mut().enumerate() {
            row.clear();
            row.extend(cols.iter().map(|&c| m[r][c].clone()));
        }
        let refs: Vec<&[T]> = sub.iter().map(|r| r.as_slice()).collect();
        out.push(determinant(&refs));
    }
    Ok(out)
}
