use alloc::vec::Vec;

use super::{Monomial, Var};

/// A ring declaration: which scalar variables are nilpotent, and of what order.
///
/// A variable declared with order `t` satisfies `v^(t+1) = 0`; every
/// polynomial built in the ring drops such monomials at construction.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Ring {
    nilpotent: Vec<(Var, u32)>,
}

impl Ring {
    pub fn new() -> Self {
        Self::default()
    }

    /// Declares `var^(order+1) = 0`.
    ///
    /// Panics if `var` is a residue variable: those carry negative exponents,
    /// where nilpotency is meaningless.
    pub fn with_nilpotent(mut self, var: Var, order: u32) -> Self {
        assert!(!var.is_residue(), "residue variable {var} cannot be nilpotent");
        self.nilpotent.retain(|p| p.0 != var);
        self.nilpotent.push((var, order));
        self.nilpotent.sort();
        self
    }

    pub fn nilpotency(&self, var: Var) -> Option<u32> {
        self.nilpotent.iter().find(|p| p.0 == var).map(|p| p.1)
    }

    pub fn is_plain(&self) -> bool {
        self.nilpotent.is_empty()
    }

    pub(crate) fn vanishes(&self, m: &Monomial) -> bool {
        self.nilpotent
            .iter()
            .any(|&(v, t)| m.exponent(v) > t as i32)
    }

    /// The ring two operands share. A plain ring adopts the other's
    /// declaration; two distinct non-plain declarations are a caller bug.
    pub(crate) fn join(&self, other: &Ring) -> Ring {
        if self.is_plain() || self == other {
            other.clone()
        } else if other.is_plain() {
            self.clone()
        } else {
            panic!("operands declared over different rings: {self:?} vs {other:?}")
        }
    }
}
