//! Torus fixed-point integration on Grassmannians and flag manifolds.
//!
//! Fixed-point sums are rational functions of the weights that collapse to
//! constants (or polynomials). They are evaluated either at seeded random
//! integer weights, where agreement of several draws certifies the value,
//! or symbolically over the Vandermonde common denominator.

mod fixed;

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{elementary, Monomial, Polynomial, Rational, Var};
use crate::error::{Error, Result};
use crate::residue::{iterated_residue, AffineForm, ResidueForm, ResidueOptions};

pub use fixed::{flag_fixed_points, grass_fixed_points, FlagFixedPoint, GrassFixedPoint};

/// Weight draws are integers in `[-WEIGHT_RANGE, WEIGHT_RANGE]`.
pub const WEIGHT_RANGE: i64 = 1_000_000;

/// How a fixed-point sum is made exact.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exactness {
    /// Evaluate at `count` seeded random weight vectors; all must agree.
    Draws { seed: u64, count: usize },
    /// Sum over the common Vandermonde denominator and divide exactly.
    Symbolic,
}

impl Default for Exactness {
    fn default() -> Self {
        Exactness::Draws { seed: 0, count: 3 }
    }
}

/// Torus weights `l1..ln`: symbolic, or fixed rational values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Weights {
    Symbolic,
    Values(Vec<Rational>),
}

/// `n` distinct integer weights from a seeded generator.
pub fn draw_weights<R: Rng>(rng: &mut R, n: u32) -> Vec<Rational> {
    let mut out: Vec<i64> = Vec::with_capacity(n as usize);
    while out.len() < n as usize {
        let x = rng.random_range(-WEIGHT_RANGE..=WEIGHT_RANGE);
        if !out.contains(&x) {
            out.push(x);
        }
    }
    out.into_iter().map(|x| Rational::from_integer(x.into())).collect()
}

fn check_distinct(values: &[Rational]) -> Result<()> {
    for j in 0..values.len() {
        for i in 0..j {
            if values[i] == values[j] {
                return Err(Error::RepeatedWeights(i as u32 + 1, j as u32 + 1));
            }
        }
    }
    Ok(())
}

fn check_weight_count(n: u32, values: &[Rational]) -> Result<()> {
    if values.len() != n as usize {
        return Err(Error::InvalidArgument(alloc::format!(
            "{} weights given for n = {n}",
            values.len()
        )));
    }
    check_distinct(values)
}

/// Weighted degree of a class in `c1, c2, ...` with `deg c_i = i`.
fn chern_degree(class: &Polynomial) -> Result<Option<i64>> {
    let mut degree = None;
    for (m, _) in class.terms() {
        let mut d = 0i64;
        for (v, e) in m.iter() {
            match v {
                Var::Chern(i) => d += i as i64 * e as i64,
                _ => {
                    return Err(Error::InvalidArgument(alloc::format!(
                        "class may only involve Chern symbols, found {v}"
                    )))
                }
            }
        }
        match degree {
            None => degree = Some(d),
            Some(prev) if prev != d => return Err(Error::DegreeMismatch { expected: prev, found: d }),
            _ => {}
        }
    }
    Ok(degree)
}

fn vandermonde_weights(n: u32) -> Polynomial {
    let mut v = Polynomial::one();
    for j in 1..=n {
        for i in 1..j {
            v *= Polynomial::var(Var::Weight(j)) - Polynomial::var(Var::Weight(i));
        }
    }
    v
}

fn grass_check(n: u32, k: u32, class: &Polynomial) -> Result<()> {
    if k > n {
        return Err(Error::InvalidArgument(alloc::format!("k = {k} exceeds n = {n}")));
    }
    let expected = k as i64 * (n - k) as i64;
    match chern_degree(class)? {
        Some(found) if found != expected => Err(Error::DegreeMismatch { expected, found }),
        _ => Ok(()),
    }
}

/// `int_{Gr(k,n)} class(c(tau))` at one weight vector.
pub fn grass_integrate_at(n: u32, k: u32, class: &Polynomial, weights: &[Rational]) -> Result<Rational> {
    grass_check(n, k, class)?;
    check_weight_count(n, weights)?;
    let mut total = Rational::zero();
    for p in grass_fixed_points(n, k) {
        // e_i of the tautological weights: coefficients of prod (1 + w t)
        let mut e = alloc::vec![Rational::one()];
        for &i in &p.subset {
            let w = &weights[i as usize - 1];
            e.push(Rational::zero());
            for s in (1..e.len()).rev() {
                let add = &e[s - 1] * w;
                e[s] += add;
            }
        }
        let assignment: BTreeMap<Var, Rational> = class
            .variables()
            .into_iter()
            .map(|v| match v {
                Var::Chern(i) => (v, e.get(i as usize).cloned().unwrap_or_else(Rational::zero)),
                _ => unreachable!("checked by grass_check"),
            })
            .collect();
        let num = class.evaluate(&assignment).constant_term();
        let mut den = Rational::one();
        for s in (1..=n).filter(|s| !p.subset.contains(s)) {
            for &i in &p.subset {
                den *= &weights[s as usize - 1] - &weights[i as usize - 1];
            }
        }
        total += num / den;
    }
    Ok(total)
}

/// The fixed-point sum over `Gr(k,n)` as an exact polynomial in the weights.
pub fn grass_integrate_symbolic(n: u32, k: u32, class: &Polynomial) -> Result<Polynomial> {
    grass_check(n, k, class)?;
    let delta = vandermonde_weights(n);
    let mut numerator = Polynomial::zero();
    for p in grass_fixed_points(n, k) {
        let taut = p.tautological_weights();
        let sub: BTreeMap<Var, Polynomial> = class
            .variables()
            .into_iter()
            .map(|v| match v {
                Var::Chern(i) if i as usize <= taut.len() => (v, elementary_of(&taut, i)),
                _ => (v, Polynomial::zero()),
            })
            .collect();
        let den: Polynomial = p.tangent_weights().into_iter().product();
        let cofactor = delta.exact_divide(&den)?;
        numerator += class.substitute(&sub) * cofactor;
    }
    numerator.exact_divide(&delta)
}

fn elementary_of(values: &[Polynomial], i: u32) -> Polynomial {
    let map = (1..=values.len() as u32)
        .map(|j| (Var::Weight(j), values[j as usize - 1].clone()))
        .collect();
    elementary(i, values.len() as u32).substitute(&map)
}

/// `int_{Gr(k,n)} class(c1(tau), ..., ck(tau))` with `deg c_i = i`.
pub fn grass_integrate(n: u32, k: u32, class: &Polynomial, how: Exactness) -> Result<Rational> {
    match how {
        Exactness::Symbolic => {
            let p = grass_integrate_symbolic(n, k, class)?;
            p.as_constant().ok_or(Error::InconsistentDraws)
        }
        Exactness::Draws { seed, count } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut value: Option<Rational> = None;
            for _ in 0..count.max(1) {
                let w = draw_weights(&mut rng, n);
                let v = grass_integrate_at(n, k, class, &w)?;
                match &value {
                    Some(prev) if *prev != v => return Err(Error::InconsistentDraws),
                    Some(_) => {}
                    None => value = Some(v),
                }
            }
            Ok(value.expect("at least one draw"))
        }
    }
}

fn check_flag_q(n: u32, d: u32, q: &Polynomial) -> Result<()> {
    if d == 0 || d > n {
        return Err(Error::InvalidArgument(alloc::format!("need 1 <= d <= n, got d = {d}, n = {n}")));
    }
    match q.variables().into_iter().find(|v| matches!(v, Var::Z(i) if *i == 0 || *i > d)) {
        Some(v) => Err(Error::InvalidArgument(alloc::format!("{v} is not among z1..z{d}"))),
        None => Ok(()),
    }
}

fn weight_value(weights: &Weights, i: u32) -> Polynomial {
    match weights {
        Weights::Symbolic => Polynomial::var(Var::Weight(i)),
        Weights::Values(v) => Polynomial::constant(v[i as usize - 1].clone()),
    }
}

/// `sum_sigma Q(l_sigma1, ..., l_sigmad) / prod_m prod_{j not in sigma_1..m} (l_j - l_sigma_m)`.
pub fn flag_fixed_sum(n: u32, d: u32, q: &Polynomial, weights: &Weights) -> Result<Polynomial> {
    check_flag_q(n, d, q)?;
    let points = flag_fixed_points(n, d);
    let substituted = |p: &FlagFixedPoint| {
        let map: BTreeMap<Var, Polynomial> = p
            .sequence
            .iter()
            .enumerate()
            .map(|(m, &s)| (Var::Z(m as u32 + 1), weight_value(weights, s)))
            .collect();
        q.substitute(&map)
    };
    match weights {
        Weights::Values(values) => {
            check_weight_count(n, values)?;
            let mut total = Polynomial::zero();
            for p in &points {
                let mut den = Rational::one();
                for (m, &s) in p.sequence.iter().enumerate() {
                    let used = &p.sequence[..=m];
                    for j in (1..=n).filter(|j| !used.contains(j)) {
                        den *= &values[j as usize - 1] - &values[s as usize - 1];
                    }
                }
                total += substituted(p).scale(&(Rational::one() / den));
            }
            Ok(total)
        }
        Weights::Symbolic => {
            let delta = vandermonde_weights(n);
            let mut numerator = Polynomial::zero();
            for p in &points {
                let den: Polynomial = p.tangent_weights().into_iter().product();
                numerator += substituted(p) * delta.exact_divide(&den)?;
            }
            numerator.exact_divide(&delta)
        }
    }
}

/// The residue form `prod_{m<l} (z_m - z_l) Q(z) / prod_l prod_i (l_i - z_l)`,
/// with `z_d` most dominant.
pub fn flag_residue_form(n: u32, d: u32, q: &Polynomial, weights: &Weights) -> Result<ResidueForm> {
    check_flag_q(n, d, q)?;
    if let Weights::Values(v) = weights {
        check_weight_count(n, v)?;
    }
    let z = |i: u32| Polynomial::var(Var::Z(i));
    let mut numerator = q.clone();
    for l in 1..=d {
        for m in 1..l {
            numerator *= z(m) - z(l);
        }
    }
    let order = (1..=d).map(Var::Z).collect();
    let mut form = ResidueForm::new(numerator, order);
    for l in 1..=d {
        for i in 1..=n {
            let linear = [(Var::Z(l), -Rational::one())].into();
            form = form.denominator(AffineForm::new(linear, weight_value(weights, i))?, 1);
        }
    }
    Ok(form)
}

/// The residue side of the flag identity.
pub fn flag_residue(
    n: u32,
    d: u32,
    q: &Polynomial,
    weights: &Weights,
    opts: ResidueOptions,
) -> Result<Polynomial> {
    iterated_residue(&flag_residue_form(n, d, q, weights)?, opts)
}

/// Dimension `dn - d(d+1)/2` of the `d`-step flag manifold.
pub fn flag_dimension(n: u32, d: u32) -> u32 {
    d * n - d * (d + 1) / 2
}

/// A random polynomial in `z1..zd`, homogeneous of the given degree, with a
/// handful of small integer coefficients.
pub fn random_flag_q<R: Rng>(rng: &mut R, d: u32, degree: u32) -> Polynomial {
    let terms = rng.random_range(1..=4);
    let mut q = Polynomial::zero();
    for _ in 0..terms {
        let mut exps = alloc::vec![0i32; d as usize];
        for _ in 0..degree {
            exps[rng.random_range(0..d as usize)] += 1;
        }
        let m = Monomial::from_pairs(exps.iter().enumerate().map(|(i, &e)| (Var::Z(i as u32 + 1), e)));
        let c = loop {
            let c: i64 = rng.random_range(-5..=5);
            if c != 0 {
                break c;
            }
        };
        q += Polynomial::monomial(m, Rational::from_integer(c.into()));
    }
    q
}

/// One instance of the flag identity check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlagTrial {
    pub n: u32,
    pub d: u32,
    pub q: Polynomial,
    /// Fixed-point sum at each weight draw.
    pub fixed: Vec<Rational>,
    /// Residue at each weight draw.
    pub residue: Vec<Rational>,
}

impl FlagTrial {
    /// Both sides agree at every draw, and all draws give the same value.
    pub fn agrees(&self) -> bool {
        self.fixed == self.residue && self.fixed.windows(2).all(|w| w[0] == w[1])
    }
}

/// Runs one trial of the flag identity with a random degree-correct `Q`.
pub fn flag_trial<R: Rng>(
    rng: &mut R,
    n: u32,
    d: u32,
    draws: usize,
    opts: ResidueOptions,
) -> Result<FlagTrial> {
    let q = random_flag_q(rng, d, flag_dimension(n, d));
    let mut fixed = Vec::new();
    let mut residue = Vec::new();
    for _ in 0..draws {
        let w = Weights::Values(draw_weights(rng, n));
        let constant = |p: Polynomial| p.as_constant().ok_or(Error::InconsistentDraws);
        fixed.push(constant(flag_fixed_sum(n, d, &q, &w)?)?);
        residue.push(constant(flag_residue(n, d, &q, &w, opts)?)?);
    }
    Ok(FlagTrial { n, d, q, fixed, residue })
}

/// `trials` instances of the flag identity at fixed `(n, d)`.
pub fn flag_check(n: u32, d: u32, trials: usize, seed: u64, opts: ResidueOptions) -> Result<Vec<FlagTrial>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..trials).map(|_| flag_trial(&mut rng, n, d, 3, opts)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_polynomial, rat};
    use alloc::vec;

    fn p(s: &str) -> Polynomial {
        parse_polynomial(s).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn grassmannian_values() {
        let how = Exactness::default();
        // one line meets two general lines and passes through a general point
        assert_eq!(grass_integrate(4, 2, &p("c1^2*c2"), how).unwrap(), rat(1));
        assert_eq!(grass_integrate(3, 1, &p("c1^2"), how).unwrap(), rat(1));
        assert_eq!(grass_integrate(2, 1, &p("c1"), how).unwrap(), rat(-1));
        assert_eq!(grass_integrate(4, 2, &p("c1^4"), how).unwrap(), rat(2));
        assert_eq!(grass_integrate(4, 2, &p("c2^2"), how).unwrap(), rat(1));
        assert_eq!(grass_integrate(3, 1, &p("c1^2"), Exactness::Symbolic).unwrap(), rat(1));
        assert_eq!(grass_integrate(4, 2, &p("c1^2*c2"), Exactness::Symbolic).unwrap(), rat(1));
    }

    #[test]
    fn hand_sums() {
        assert_eq!(grass_integrate_at(3, 1, &p("c1^2"), &ints(&[0, 1, 2])).unwrap(), rat(1));
        // 9/2 - 16 + 25/2 from the subsets {2,3}, {2,4}, {3,4}
        assert_eq!(grass_integrate_at(4, 2, &p("c1^2*c2"), &ints(&[0, 1, 2, 3])).unwrap(), rat(1));
        assert_eq!(
            grass_integrate_at(2, 1, &p("c1"), &ints(&[0, 1, 1])),
            Err(Error::InvalidArgument("3 weights given for n = 2".into()))
        );
        assert_eq!(
            grass_integrate_at(3, 1, &p("c1^2"), &ints(&[0, 1, 1])),
            Err(Error::RepeatedWeights(2, 3))
        );
    }

    #[test]
    fn degree_mismatch() {
        assert_eq!(
            grass_integrate(4, 2, &p("c1^3"), Exactness::default()),
            Err(Error::DegreeMismatch { expected: 4, found: 3 })
        );
        assert!(matches!(
            grass_integrate(4, 2, &p("c1^4 + c1"), Exactness::default()),
            Err(Error::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn flag_examples() {
        assert_eq!(flag_fixed_sum(2, 1, &p("z1"), &Weights::Symbolic).unwrap(), rat(-1).into());
        let w = Weights::Values(ints(&[0, 1, 2]));
        assert_eq!(flag_fixed_sum(3, 1, &p("z1^2"), &w).unwrap(), Polynomial::one());
        assert_eq!(flag_residue(3, 1, &p("z1^2"), &w, ResidueOptions::default()).unwrap(), Polynomial::one());
        let w2 = Weights::Values(ints(&[3, -7]));
        assert!(flag_fixed_sum(2, 2, &p("1"), &w2).unwrap().is_zero());
        assert!(flag_residue(2, 2, &p("1"), &w2, ResidueOptions::default()).unwrap().is_zero());
        assert_eq!(
            flag_residue(2, 1, &p("z1"), &Weights::Symbolic, ResidueOptions::default()).unwrap(),
            rat(-1).into()
        );
    }

    #[test]
    fn flag_identity_symbolic() {
        let q = p("z1*z2*(z1+z2)^2");
        let opts = ResidueOptions::default();
        let lhs = flag_fixed_sum(4, 2, &q, &Weights::Symbolic).unwrap();
        let rhs = flag_residue(4, 2, &q, &Weights::Symbolic, opts).unwrap();
        assert_eq!(lhs, rhs);
        // off-degree Q: both sides are the same polynomial in the weights
        let q = p("z1^3*z2^2 + 2*z2^4");
        let lhs = flag_fixed_sum(3, 2, &q, &Weights::Symbolic).unwrap();
        assert_eq!(lhs, flag_residue(3, 2, &q, &Weights::Symbolic, opts).unwrap());
        assert!(!lhs.is_constant());
    }

    #[test]
    fn flag_check_agrees() {
        for (n, d) in [(3, 1), (3, 2), (4, 2), (4, 3)] {
            for t in flag_check(n, d, 3, 11, ResidueOptions::default()).unwrap() {
                assert!(t.agrees(), "{t:?}");
            }
        }
    }

    #[test]
    fn draws_are_seeded() {
        let a = draw_weights(&mut ChaCha8Rng::seed_from_u64(5), 6);
        let b = draw_weights(&mut ChaCha8Rng::seed_from_u64(5), 6);
        assert_eq!(a, b);
        assert!(check_distinct(&a).is_ok());
        assert_eq!(vec![a.len()], vec![6]);
    }
}
