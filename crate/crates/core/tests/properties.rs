use std::collections::BTreeMap;

use equiloc_core::algebra::{
    expand_elementary, rat, symmetric_reduce, Monomial, Polynomial, Rational, Ring, Var,
};
use equiloc_core::jet::{compose, invariant_minors, rho, JetCurve, ReparamJet};
use equiloc_core::localization::{grass_integrate_at, Exactness};
use equiloc_core::residue::{iterated_residue, AffineForm, ResidueForm, ResidueOptions};
use equiloc_core::thom::{chern_weighted_degree, thom_polynomial, QTable};
use proptest::prelude::*;

fn poly_from(terms: &[(i8, Vec<u8>)], vars: &[Var]) -> Polynomial {
    terms
        .iter()
        .map(|(c, exps)| {
            let m = Monomial::from_pairs(vars.iter().zip(exps).map(|(&v, &e)| (v, e as i32)));
            Polynomial::monomial(m, rat(*c as i64))
        })
        .sum()
}

fn poly_strategy(vars: Vec<Var>, max_exp: u8) -> impl Strategy<Value = Polynomial> {
    let n = vars.len();
    prop::collection::vec((-5i8..=5, prop::collection::vec(0..=max_exp, n)), 0..5)
        .prop_map(move |terms| poly_from(&terms, &vars))
}

fn mixed() -> impl Strategy<Value = Polynomial> {
    poly_strategy(vec![Var::Z(1), Var::Z(2), Var::Chern(1), Var::H], 2)
}

fn rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=6).prop_map(|(a, b)| Rational::new(a.into(), b.into()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_laws(a in mixed(), b in mixed(), c in mixed()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn exact_division_recovers_factor(a in mixed(), b in mixed()) {
        prop_assume!(!b.is_zero());
        prop_assert_eq!((&a * &b).exact_divide(&b).unwrap(), a);
    }

    #[test]
    fn symmetric_round_trip(
        f in poly_strategy(vec![Var::Elem(1), Var::Elem(2), Var::Elem(3), Var::Chern(1)], 2)
    ) {
        let expanded = expand_elementary(&f, 3);
        prop_assert_eq!(symmetric_reduce(&expanded, 3).unwrap(), f);
    }

    #[test]
    fn nilpotent_products_vanish(a in mixed(), t in 1u32..4) {
        let r = Ring::new().with_nilpotent(Var::H, t);
        let p = (&a * &Polynomial::var(Var::H).pow(t + 1)).in_ring(&r);
        prop_assert!(p.is_zero());
        let q = a.in_ring(&r);
        prop_assert!(q.terms().all(|(m, _)| m.exponent(Var::H) <= t as i32));
    }
}

fn z(i: u32) -> Polynomial {
    Polynomial::var(Var::Z(i))
}

/// A random affine form in `z1..zk` plus a parameter constant, never pure parameter.
fn form_strategy(k: u32) -> impl Strategy<Value = AffineForm> {
    (prop::collection::vec(-2i64..=2, k as usize), -2i64..=2, 0usize..3).prop_map(move |(mut a, c, which)| {
        if a.iter().all(|&x| x == 0) {
            a[0] = 1;
        }
        let linear: BTreeMap<Var, Rational> = a
            .iter()
            .enumerate()
            .filter(|(_, &x)| x != 0)
            .map(|(i, &x)| (Var::Z(i as u32 + 1), rat(x)))
            .collect();
        let constant = match which {
            0 => Polynomial::zero(),
            1 => Polynomial::from_int(c),
            _ => Polynomial::var(Var::Weight(1)).scale(&rat(c)),
        };
        AffineForm::new(linear, constant).unwrap()
    })
}

fn z_poly(k: u32) -> impl Strategy<Value = Polynomial> {
    poly_strategy((1..=k).map(Var::Z).chain([Var::Weight(1)]).collect(), 2)
}

fn homogeneous_monomials(k: u32, deg: u32) -> Vec<Monomial> {
    if k == 1 {
        return vec![Monomial::power(Var::Z(1), deg as i32)];
    }
    (0..=deg)
        .flat_map(|e| {
            homogeneous_monomials(k - 1, deg - e)
                .into_iter()
                .map(move |m| m.mul(&Monomial::power(Var::Z(k), e as i32)))
        })
        .collect()
}

fn build(numerator: Polynomial, k: u32, dens: &[(AffineForm, u32)]) -> ResidueForm {
    let order = (1..=k).map(Var::Z).collect();
    dens.iter().fold(ResidueForm::new(numerator, order), |f, (a, p)| f.denominator(a.clone(), *p))
}

fn residue_case() -> impl Strategy<Value = (u32, Polynomial, Polynomial, Vec<(AffineForm, u32)>)> {
    (1u32..=3).prop_flat_map(|k| {
        (
            Just(k),
            z_poly(k),
            z_poly(k),
            prop::collection::vec((form_strategy(k), 1u32..=2), k as usize..=k as usize + 2),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn residue_is_linear((k, a, b, dens) in residue_case(), s in rational()) {
        let opts = ResidueOptions::default();
        let ra = iterated_residue(&build(a.clone(), k, &dens), opts).unwrap();
        let rb = iterated_residue(&build(b.clone(), k, &dens), opts).unwrap();
        let sum = iterated_residue(&build(&a.scale(&s) + &b, k, &dens), opts).unwrap();
        prop_assert_eq!(sum, &ra.scale(&s) + &rb);
    }

    #[test]
    fn enlarging_windows_is_harmless((k, a, _b, dens) in residue_case(), margin in 1u32..6) {
        let form = build(a, k, &dens);
        let base = iterated_residue(&form, ResidueOptions::default()).unwrap();
        let wide = iterated_residue(&form, ResidueOptions { margin, ..ResidueOptions::default() }).unwrap();
        prop_assert_eq!(base, wide);
    }

    #[test]
    fn grading_forces_zero(
        k in 1u32..=3,
        deg in 0u32..5,
        coeffs in prop::collection::vec(-3i64..=3, 12),
        forms in prop::collection::vec(prop::collection::vec(-2i64..=2, 3), 1..6),
    ) {
        // homogeneous numerator of degree `deg` in z1..zk
        let num: Polynomial = homogeneous_monomials(k, deg)
            .into_iter()
            .zip(coeffs.iter().cycle())
            .map(|(m, c)| Polynomial::monomial(m, rat(*c)))
            .sum();
        let dens: Vec<(AffineForm, u32)> = forms
            .iter()
            .map(|a| {
                let mut lin = BTreeMap::new();
                for (l, &x) in a.iter().take(k as usize).enumerate() {
                    if x != 0 {
                        lin.insert(Var::Z(l as u32 + 1), rat(x));
                    }
                }
                if lin.is_empty() {
                    lin.insert(Var::Z(1), rat(1));
                }
                (AffineForm::new(lin, Polynomial::zero()).unwrap(), 1)
            })
            .collect();
        let r = iterated_residue(&build(num, k, &dens), ResidueOptions::default()).unwrap();
        if deg as i64 != dens.len() as i64 - k as i64 {
            prop_assert!(r.is_zero());
        }
    }
}

#[test]
fn orientation_of_coordinate_product() {
    for d in 1..=3u32 {
        let dens: Vec<(AffineForm, u32)> =
            (1..=d).map(|l| (AffineForm::from_polynomial(&z(l)).unwrap(), 1)).collect();
        let r = iterated_residue(&build(Polynomial::one(), d, &dens), ResidueOptions::default()).unwrap();
        assert_eq!(r, Polynomial::from_int(if d % 2 == 0 { 1 } else { -1 }));
    }
}

fn gr24_class() -> impl Strategy<Value = Polynomial> {
    (-4i64..=4, -4i64..=4, -4i64..=4).prop_map(|(a, b, c)| {
        let c1 = Polynomial::var(Var::Chern(1));
        let c2 = Polynomial::var(Var::Chern(2));
        c1.pow(4).scale(&rat(a)) + (c1.pow(2) * &c2).scale(&rat(b)) + c2.pow(2).scale(&rat(c))
    })
}

fn distinct_weights(n: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::btree_set(-1000i64..1000, n)
        .prop_map(|s| s.into_iter().map(rat).collect::<Vec<_>>())
        .prop_shuffle()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn grassmannian_sum_is_weight_free(class in gr24_class(), w1 in distinct_weights(4), w2 in distinct_weights(4)) {
        let a = grass_integrate_at(4, 2, &class, &w1).unwrap();
        let b = grass_integrate_at(4, 2, &class, &w2).unwrap();
        prop_assert_eq!(&a, &b);
        prop_assert!(a.is_integer());
    }

    #[test]
    fn weyl_antisymmetry(class in gr24_class(), w in distinct_weights(4), i in 0usize..4, j in 0usize..4) {
        prop_assume!(i != j);
        let mut swapped = w.clone();
        swapped.swap(i, j);
        prop_assert_eq!(
            grass_integrate_at(4, 2, &class, &w).unwrap(),
            grass_integrate_at(4, 2, &class, &swapped).unwrap()
        );
    }
}

#[test]
fn symbolic_and_drawn_integration_agree() {
    use equiloc_core::localization::grass_integrate;
    let c = |s: &str| s.parse::<Polynomial>().unwrap();
    for class in ["c1^4", "c1^2*c2", "c2^2"] {
        let drawn = grass_integrate(4, 2, &c(class), Exactness::default()).unwrap();
        let symbolic = grass_integrate(4, 2, &c(class), Exactness::Symbolic).unwrap();
        assert_eq!(drawn, symbolic, "{class}");
    }
}

#[test]
fn porteous_family() {
    for l in 0..=6 {
        let r = thom_polynomial(1, l, &QTable::builtin(), ResidueOptions::default()).unwrap();
        assert_eq!(r.polynomial, Polynomial::var(Var::Chern(l as u32 + 1)), "l={l}");
    }
}

#[test]
fn thom_degree_invariant() {
    for k in 1..=4u32 {
        for l in 0..=2i64 {
            let r = thom_polynomial(k, l, &QTable::builtin(), ResidueOptions::default()).unwrap();
            for (m, _) in r.polynomial.terms() {
                assert_eq!(chern_weighted_degree(m), Some(k as i64 * (l + 1)), "k={k} l={l} {m}");
            }
        }
    }
}

fn jet_strategy(n: usize, k: usize) -> impl Strategy<Value = JetCurve<Rational>> {
    prop::collection::vec(prop::collection::vec(rational(), n), k)
        .prop_map(move |v| JetCurve::new(n, v).unwrap())
}

fn unipotent(k: usize) -> impl Strategy<Value = ReparamJet<Rational>> {
    prop::collection::vec(rational(), k - 1).prop_map(|rest| {
        let mut alpha = vec![rat(1)];
        alpha.extend(rest);
        ReparamJet::new(alpha).unwrap()
    })
}

fn jet_case() -> impl Strategy<Value = (JetCurve<Rational>, ReparamJet<Rational>)> {
    prop_oneof![Just((2usize, 3usize)), Just((2, 4)), Just((3, 3))]
        .prop_flat_map(|(n, k)| (jet_strategy(n, k), unipotent(k)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn minors_are_unipotent_invariant((gamma, phi) in jet_case()) {
        let moved = compose(&gamma, &phi).unwrap();
        prop_assert_eq!(invariant_minors(&moved).unwrap(), invariant_minors(&gamma).unwrap());
    }

    #[test]
    fn rho_first_row_is_linear_part(gamma in jet_strategy(3, 3)) {
        let r = rho(&gamma);
        prop_assert_eq!(&r[0][..3], &gamma.v[0][..]);
        prop_assert!(r[0][3..].iter().all(|x| *x == rat(0)));
    }
}
