//! Iterated residues at infinity of rational forms with affine denominators.
//!
//! Each denominator is expanded as a geometric series in its dominant
//! variable (the most dominant residue variable it involves). The residue
//! is `(-1)^d` times the coefficient of `z_1^-1 ... z_d^-1` of the product,
//! so that `1/(z_1 ... z_d)` has residue `(-1)^d`.

mod engine;
mod form;

pub use engine::{coefficients, expand_inverse, iterated_residue, ResidueOptions};
pub use form::{AffineForm, ResidueForm};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_laurent, parse_polynomial, rat, Monomial, Polynomial, Var, Window};
    use crate::error::Error;
    use alloc::collections::BTreeMap;
    use alloc::string::ToString;
    use alloc::vec;
    use alloc::vec::Vec;

    fn z(i: u32) -> Var {
        Var::Z(i)
    }

    fn form(s: &str) -> AffineForm {
        s.parse().unwrap()
    }

    fn residue(num: &str, dens: &[&str], order: &[u32]) -> crate::Result<Polynomial> {
        let order: Vec<Var> = order.iter().map(|&i| z(i)).collect();
        let f = dens.iter().fold(
            ResidueForm::new(parse_laurent(num).unwrap(), order),
            |f, d| f.denominator(form(d), 1),
        );
        iterated_residue(&f, ResidueOptions::default())
    }

    #[test]
    fn orientation() {
        assert_eq!(residue("1", &["z1"], &[1]).unwrap(), Polynomial::from_int(-1));
        assert_eq!(residue("1", &["z1", "z2"], &[1, 2]).unwrap(), Polynomial::from_int(1));
        assert_eq!(residue("1", &["z1", "z2", "z3"], &[1, 2, 3]).unwrap(), Polynomial::from_int(-1));
    }

    #[test]
    fn spec_examples() {
        // {z1, z1 + z2} is the form whose expansion the worked example displays
        assert_eq!(residue("1", &["z1", "z1+z2"], &[1, 2]).unwrap(), Polynomial::one());
        assert_eq!(residue("1", &["z1", "z1-z2"], &[1, 2]).unwrap(), Polynomial::from_int(-1));
        assert_eq!(residue("z1^2", &["l1-z1", "l2-z1", "l3-z1"], &[1]).unwrap(), Polynomial::one());
        assert!(residue("1", &["z1", "z1", "z2"], &[1, 2]).unwrap().is_zero());
        assert!(residue("z1^-1", &["z1", "z2"], &[1, 2]).unwrap().is_zero());
    }

    #[test]
    fn single_variable_fixed_point_sum() {
        // the fixed-point sum of l_i^3 is the complete symmetric h_1
        let r = residue("z1^3", &["l1-z1", "l2-z1", "l3-z1"], &[1]).unwrap();
        assert_eq!(r, parse_polynomial("l1 + l2 + l3").unwrap());
    }

    #[test]
    fn pure_parameter_denominator_rejected() {
        let f = ResidueForm::new(Polynomial::one(), vec![z(1)])
            .denominator(form("z1"), 1)
            .denominator(form("l1 - l2"), 1);
        assert!(matches!(
            iterated_residue(&f, ResidueOptions::default()),
            Err(Error::NoDominantVariable(_))
        ));
    }

    #[test]
    fn unordered_variable_rejected() {
        assert_eq!(residue("z3", &["z1"], &[1]), Err(Error::UnorderedVariable(z(3))));
        assert_eq!(residue("1", &["z1+z2"], &[1]), Err(Error::UnorderedVariable(z(2))));
    }

    #[test]
    fn cap_is_enforced() {
        let f = ResidueForm::new(parse_polynomial("z1^40").unwrap(), vec![z(1)])
            .denominator(form("z1 - l1"), 1);
        let opts = ResidueOptions { cap: 16, margin: 0 };
        assert!(matches!(iterated_residue(&f, opts), Err(Error::WindowOverflow { .. })));
        assert_eq!(
            iterated_residue(&f, ResidueOptions::default()).unwrap(),
            parse_polynomial("-l1^40").unwrap()
        );
    }

    #[test]
    fn expand_inverse_examples() {
        let w = |lo: i32| -> BTreeMap<Var, Window> { [(z(2), (lo, -1))].into() };
        let order = [z(1), z(2)];
        let opts = ResidueOptions::default();
        let s = expand_inverse(&form("z1 - z2"), &order, &w(-4), opts).unwrap();
        for i in 0..4 {
            let m = Monomial::from_pairs([(z(1), i), (z(2), -i - 1)]);
            assert_eq!(s.coefficient(&m), rat(-1));
        }
        assert_eq!(s.len(), 4);
        let s = expand_inverse(&form("2*z1 - z2"), &order, &w(-3), opts).unwrap();
        for (i, c) in [(0, -1), (1, -2), (2, -4)] {
            let m = Monomial::from_pairs([(z(1), i), (z(2), -i - 1)]);
            assert_eq!(s.coefficient(&m), rat(c));
        }
        let s = expand_inverse(&form("l1 - z1"), &[z(1)], &[(z(1), (-3, -1))].into(), opts).unwrap();
        assert_eq!(s.to_string(), "-z1^-1 - z1^-2*l1 - z1^-3*l1^2");
        assert!(matches!(
            expand_inverse(&form("l1 - l2 + 0*z1"), &order, &w(-3), opts),
            Err(Error::NoDominantVariable(_))
        ));
    }

    #[test]
    fn coefficients_of_several_targets() {
        let f = ResidueForm::new(Polynomial::one(), vec![z(1), z(2)]).denominator(form("z2 - z1"), 1);
        let c = coefficients(&f, &[vec![0, -1], vec![3, -4], vec![1, -1]], ResidueOptions::default())
            .unwrap();
        assert_eq!(c, vec![Polynomial::one(), Polynomial::one(), Polynomial::zero()]);
    }
}
