//! Intersection numbers on the Demailly jet tower of a hypersurface.
//!
//! `X` is a smooth hypersurface of degree `d` in `P^{n+1}`, `h` the
//! hyperplane class (nilpotent of order `n`), and `int_X h^n = d`. All
//! residues here use the Thom ordering (`z_n` most dominant) and take the
//! raw coefficient of `z_1^-1 ... z_n^-1`.

mod series;
mod sturm;

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::algebra::{LaurentSeries, Monomial, Polynomial, Rational, Ring, Var};
use crate::error::{Error, Result};
use crate::residue::{coefficients, ResidueForm, ResidueOptions};
use crate::thom::{generating_form, QTable};

fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn binomial(n: i64, k: i64) -> Rational {
    if k < 0 || k > n {
        return Rational::zero();
    }
    let mut r = Rational::one();
    for i in 0..k {
        r = r * int(n - i) / int(i + 1);
    }
    r
}

fn factorial(n: u32) -> Rational {
    (1..=n as i64).fold(Rational::one(), |acc, i| acc * int(i))
}

/// `h` nilpotent of order `n`.
pub fn ring(n: u32) -> Ring {
    Ring::new().with_nilpotent(Var::H, n)
}

fn h() -> Polynomial {
    Polynomial::var(Var::H)
}

/// `z_1 + ... + z_n`.
fn z_sum(n: u32) -> Polynomial {
    (1..=n).map(|l| Polynomial::var(Var::Z(l))).sum()
}

/// `z^-n (1 + d h/z) (1 + h/z)^-(n+2)`, cut at `h^n`.
fn tower_local_factor(n: u32, z: Var, d: &Polynomial) -> LaurentSeries {
    let r = ring(n);
    let mut alternating = Vec::new();
    for i in 0..=n as i64 {
        let c = binomial(n as i64 + 1 + i, i);
        let c = if i % 2 == 0 { c } else { -c };
        let m = Monomial::from_pairs([(z, -(n as i32) - i as i32), (Var::H, i as i32)]);
        alternating.push((m, c));
    }
    let alternating = LaurentSeries::from_terms(alternating, &r).expect("residue exponents only");
    let mut twist = vec![(Monomial::one(), Rational::one())];
    for (m, c) in d.terms() {
        twist.push((m.mul(&Monomial::from_pairs([(z, -1), (Var::H, 1)])), c.clone()));
    }
    let twist = LaurentSeries::from_terms(twist, &r).expect("residue exponents only");
    alternating.mul(&twist)
}

/// Raw coefficient of `z_1^-1 ... z_n^-1` in `V Q core / T` times the
/// given per-variable local factors.
fn raw_coefficient(
    n: u32,
    core: Polynomial,
    local: impl Fn(Var) -> LaurentSeries,
    table: &QTable,
    opts: ResidueOptions,
) -> Result<Polynomial> {
    let q = &table.get(n)?.q;
    let mut form: ResidueForm = generating_form(n, q, core);
    for l in 1..=n {
        form = form.local_factor(Var::Z(l), local(Var::Z(l)));
    }
    let mut c = coefficients(&form, &[vec![-1; n as usize]], opts)?;
    Ok(c.pop().expect("one target"))
}

fn check_n(n: u32) -> Result<()> {
    if n == 0 {
        Err(Error::InvalidArgument("n must be at least 1".into()))
    } else {
        Ok(())
    }
}

/// The constant term of `Q prod_{i<j}(z_i - z_j) (z_1+...+z_n)^{n^2} / (T (z_1...z_n)^n)`.
pub fn theta(n: u32, table: &QTable, opts: ResidueOptions) -> Result<Rational> {
    check_n(n)?;
    let core = z_sum(n).pow(n * n);
    let local = |z: Var| {
        LaurentSeries::from_terms([(Monomial::power(z, -(n as i32) - 1), Rational::one())], &Ring::new())
            .expect("residue exponent")
    };
    Ok(raw_coefficient(n, core, local, table, opts)?.constant_term())
}

/// The Green-Griffiths intersection polynomial and its leading data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GGResult {
    pub n: u32,
    /// `p(n, d, delta)`, the coefficient of `h^n` of the residue.
    pub polynomial: Polynomial,
    /// `I = d * p`, the intersection number after integrating over `X`.
    pub intersection: Polynomial,
    pub theta: Rational,
    /// Coefficient of `d^n` in `p`, a polynomial in `delta`.
    pub leading: Polynomial,
}

impl GGResult {
    /// `(1 - n^2 C(n+1, 2) delta) Theta(n)`.
    pub fn expected_leading(&self) -> Polynomial {
        expected_leading(self.n, &self.theta)
    }

    /// The root in `delta` of the leading coefficient, if it is linear.
    pub fn leading_root(&self) -> Option<Rational> {
        linear_root(&self.leading, Var::Delta)
    }

    /// `p` at a fixed `delta`, as a polynomial in `d`.
    pub fn at_delta(&self, delta: &Rational) -> Polynomial {
        self.polynomial.evaluate(&[(Var::Delta, delta.clone())].into())
    }
}

/// `(1 - n^2 C(n+1, 2) delta) theta`.
pub fn expected_leading(n: u32, theta: &Rational) -> Polynomial {
    let c = int(n as i64 * n as i64) * binomial(n as i64 + 1, 2);
    (Polynomial::one() - Polynomial::var(Var::Delta).scale(&c)).scale(theta)
}

/// `2 / (n^3 (n+1))`.
pub fn critical_delta(n: u32) -> Rational {
    Rational::new(2.into(), ((n as i64).pow(3) * (n as i64 + 1)).into())
}

fn linear_root(p: &Polynomial, v: Var) -> Option<Rational> {
    let c = p.coefficients_in(v);
    if c.keys().any(|&e| e > 1) {
        return None;
    }
    let a1 = c.get(&1)?.as_constant()?;
    let a0 = c.get(&0).map_or(Some(Rational::zero()), Polynomial::as_constant)?;
    Some(-a0 / a1)
}

/// `p(n, d, delta)` from the residue formula, with `F = z_1 + ... + z_n + 2n^2 h`
/// and `R = F^{n^2} - n^2 F^{n^2-1} (2n^2 h + delta C(n+1,2) (d-n-2) h)`.
pub fn gg_polynomial(n: u32, table: &QTable, opts: ResidueOptions) -> Result<GGResult> {
    check_n(n)?;
    let r = ring(n);
    let nn = n * n;
    let two_n2 = int(2 * nn as i64);
    let f = (z_sum(n) + h().scale(&two_n2)).in_ring(&r);
    let d = Polynomial::var(Var::D);
    let kx = &d - &Polynomial::from_int(n as i64 + 2);
    let g = h().scale(&two_n2) + Polynomial::var(Var::Delta).scale(&binomial(n as i64 + 1, 2)) * kx * h();
    let big_r = f.pow(nn) - (f.pow(nn - 1) * g).scale(&int(nn as i64));
    let raw = raw_coefficient(n, big_r, |z| tower_local_factor(n, z, &d), table, opts)?;
    let polynomial = raw.coefficients_in(Var::H).remove(&n).unwrap_or_default().in_ring(&Ring::new());
    let intersection = &polynomial * &d;
    let leading = polynomial.coefficients_in(Var::D).remove(&n).unwrap_or_default();
    let theta = theta(n, table, opts)?;
    Ok(GGResult { n, polynomial, intersection, theta, leading })
}

/// The degree-`<= n` Todd class of `X`, a polynomial in `h` and `d`.
///
/// `c(T_X) = (1+h)^{n+2} / (1+dh)`; power sums of the Chern roots come from
/// Newton's identities and `log Td = sum_j a_j p_j` with `a_j` the Taylor
/// coefficients of `log(x / (1 - e^-x))`.
pub fn todd_class(n: u32, d: &Polynomial) -> Polynomial {
    let r = ring(n);
    let one = Polynomial::one().in_ring(&r);
    // c(T_X) = (1+h)^{n+2} * sum_b (-dh)^b
    let mut inverse = one.clone();
    let mut dh_pow = one.clone();
    let dh = (d * &h()).in_ring(&r);
    for b in 1..=n {
        dh_pow = &dh_pow * &dh;
        inverse += if b % 2 == 0 { dh_pow.clone() } else { -&dh_pow };
    }
    let total = (&one + &h()).pow(n + 2) * inverse;
    let hmap = total.coefficients_in(Var::H);
    let c: Vec<Polynomial> = (0..=n)
        .map(|i| {
            hmap.get(&i)
                .cloned()
                .unwrap_or_default()
                .mul_monomial(&Monomial::power(Var::H, i as i32))
                .in_ring(&r)
        })
        .collect();
    // Newton: p_j = (-1)^{j-1} j c_j + sum_{i=1}^{j-1} (-1)^{i-1} c_i p_{j-i}
    let mut p = vec![Polynomial::zero(); n as usize + 1];
    for j in 1..=n as usize {
        let mut s = c[j].scale(&int(j as i64));
        if j % 2 == 0 {
            s = -s;
        }
        for i in 1..j {
            let t = &c[i] * &p[j - i];
            s += if i % 2 == 1 { t } else { -t };
        }
        p[j] = s;
    }
    let a = series::log(&series::todd_generator(n as usize + 1), n as usize + 1);
    let log_td: Polynomial = (1..=n as usize).map(|j| p[j].scale(&a[j])).sum();
    // exp, cut by nilpotency
    let mut td = one.clone();
    let mut pow = one;
    for i in 1..=n {
        pow = &pow * &log_td;
        td += pow.scale(&(Rational::one() / factorial(i)));
    }
    td
}

/// Euler characteristic of the Demailly bundle as a polynomial in `m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerResult {
    pub n: u32,
    /// The degree, or `None` when symbolic.
    pub d: Option<Rational>,
    /// `chi` in `m` (and `d` when symbolic).
    pub chi: Polynomial,
}

fn degree_poly(d: Option<&Rational>) -> Polynomial {
    match d {
        Some(x) => Polynomial::constant(x.clone()),
        None => Polynomial::var(Var::D),
    }
}

/// `chi(X, E_{n,m})` via the residue formula with `Ch = e^{m(z_1+...+z_n)}`.
///
/// Only the total `(z, h)`-degree `n^2` part of `Ch * Td` can contribute,
/// since the rest of the integrand has degree `-n^2` apart from `h^n`.
pub fn euler_characteristic(
    n: u32,
    d: Option<Rational>,
    table: &QTable,
    opts: ResidueOptions,
) -> Result<EulerResult> {
    check_n(n)?;
    let r = ring(n);
    let nn = n * n;
    let dp = degree_poly(d.as_ref());
    let td = todd_class(n, &dp).coefficients_in(Var::H);
    let ms = (Polynomial::var(Var::M) * z_sum(n)).in_ring(&r);
    let mut core = Polynomial::zero().in_ring(&r);
    for i in 0..=n.min(nn) {
        let Some(t) = td.get(&i) else { continue };
        let t = t.mul_monomial(&Monomial::power(Var::H, i as i32)).in_ring(&r);
        let j = nn - i;
        core += (ms.pow(j) * t).scale(&(Rational::one() / factorial(j)));
    }
    let raw = raw_coefficient(n, core, |z| tower_local_factor(n, z, &dp), table, opts)?;
    let top = raw.coefficients_in(Var::H).remove(&n).unwrap_or_default().in_ring(&Ring::new());
    Ok(EulerResult { n, d, chi: top * dp })
}

/// `d` times the `h^n` coefficient of the residue with `R = (z_1+...+z_n)^{n^2}`.
pub fn top_self_intersection(n: u32, d: Option<Rational>, table: &QTable, opts: ResidueOptions) -> Result<Polynomial> {
    check_n(n)?;
    let r = ring(n);
    let dp = degree_poly(d.as_ref());
    let core = z_sum(n).pow(n * n).in_ring(&r);
    let raw = raw_coefficient(n, core, |z| tower_local_factor(n, z, &dp), table, opts)?;
    let top = raw.coefficients_in(Var::H).remove(&n).unwrap_or_default().in_ring(&Ring::new());
    Ok(top * dp)
}

/// An explicit positivity threshold for a polynomial in `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Threshold {
    /// `p(d) > 0` for every real `d >= d0`.
    pub d0: BigInt,
    /// Cauchy bound on the real roots.
    pub cauchy_bound: Rational,
}

/// Smallest integer `d0 >= 1` with `p > 0` on the whole half-line `[d0, inf)`.
/// The Cauchy bound gives a starting point; a binary search with Sturm root
/// counts then narrows it down. `None` when the leading coefficient is not
/// positive.
pub fn positivity_threshold(p: &Polynomial) -> Result<Option<Threshold>> {
    let coeffs = p.coefficients_in(Var::D);
    let deg = coeffs.keys().next_back().copied().unwrap_or(0) as usize;
    let mut a = vec![Rational::zero(); deg + 1];
    for (e, c) in coeffs {
        a[e as usize] = c.as_constant().ok_or_else(|| {
            Error::InvalidArgument(alloc::format!("threshold needs a polynomial in d alone, got {p}"))
        })?;
    }
    let lead = a[deg].clone();
    if !lead.is_positive() {
        return Ok(None);
    }
    let max_ratio = a[..deg].iter().map(|c| (c / &lead).abs()).max().unwrap_or_else(Rational::zero);
    let cauchy_bound = Rational::one() + max_ratio;
    let seq = sturm::sturm_sequence(&a);
    let holds = |x: &BigInt| {
        let x = Rational::from_integer(x.clone());
        sturm::eval(&a, &x).is_positive() && sturm::roots_above(&seq, &x) == 0
    };
    // every real root lies strictly inside the Cauchy bound, so `hi` holds
    let mut hi = cauchy_bound.floor().to_integer() + BigInt::one();
    let mut lo = BigInt::one();
    if holds(&lo) {
        hi = lo.clone();
    }
    // invariant: holds(hi), and lo == 1 fails or lo == hi
    while &hi - &lo > BigInt::one() {
        let mid: BigInt = (&lo + &hi) / 2;
        if holds(&mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(Some(Threshold { d0: hi, cauchy_bound }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_polynomial, ratio};

    fn p(s: &str) -> Polynomial {
        parse_polynomial(s).unwrap()
    }

    #[test]
    fn theta_one() {
        assert_eq!(theta(1, &QTable::builtin(), ResidueOptions::default()).unwrap(), int(1));
    }

    #[test]
    fn curve_case() {
        let r = gg_polynomial(1, &QTable::builtin(), ResidueOptions::default()).unwrap();
        // (1 - delta) deg K_X on a plane curve, K_X = (d-3)h
        assert_eq!(r.polynomial, p("(1 - delta)*(d - 3)"));
        assert_eq!(r.intersection, p("(1 - delta)*(d - 3)*d"));
        assert_eq!(r.leading, r.expected_leading());
        assert_eq!(r.leading_root(), Some(int(1)));
    }

    #[test]
    fn euler_curve() {
        let e = euler_characteristic(1, None, &QTable::builtin(), ResidueOptions::default()).unwrap();
        assert_eq!(e.chi, p("d*(d-3)*m - 1/2*d*(d-3)"));
        let e = euler_characteristic(1, Some(int(5)), &QTable::builtin(), ResidueOptions::default()).unwrap();
        assert_eq!(e.chi, p("10*m - 5"));
    }

    #[test]
    fn todd_low_degree() {
        // Td = 1 + c1/2 + (c1^2 + c2)/12 with c1 = (4-d)h, c2 = (6 - 4d + d^2)h^2
        let td = todd_class(2, &Polynomial::var(Var::D));
        let c1 = p("(4-d)*h");
        let c2 = p("(6 - 4*d + d^2)*h^2");
        let expected = Polynomial::one() + c1.scale(&ratio(1, 2)) + (&c1 * &c1 + c2).scale(&ratio(1, 12));
        assert_eq!(td, expected.in_ring(&ring(2)));
    }

    #[test]
    fn threshold_scan() {
        let t = positivity_threshold(&p("d^2 - 10*d + 16")).unwrap().unwrap();
        assert_eq!(t.d0, BigInt::from(9));
        assert_eq!(t.cauchy_bound, int(17));
        assert_eq!(positivity_threshold(&p("-d^2 + 1")).unwrap(), None);
        let t = positivity_threshold(&p("d + 5")).unwrap().unwrap();
        assert_eq!(t.d0, BigInt::from(1));
        // negative only on (2.5, 2.6), strictly between integers
        let t = positivity_threshold(&p("100*d^2 - 510*d + 650")).unwrap().unwrap();
        assert_eq!(t.d0, BigInt::from(3));
    }

    #[test]
    fn critical_delta_values() {
        assert_eq!(critical_delta(1), int(1));
        assert_eq!(critical_delta(2), ratio(1, 12));
        let t = int(3);
        let lead = expected_leading(2, &t);
        assert_eq!(linear_root(&lead, Var::Delta), Some(critical_delta(2)));
    }
}
