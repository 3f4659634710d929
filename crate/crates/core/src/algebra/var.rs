use core::fmt;

/// The alphabet a variable belongs to. Alphabets are disjoint by construction:
/// a [`Var`] variant determines its alphabet.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Alphabet {
    /// Residue variables `z1, z2, ...`; the only ones that may carry negative exponents.
    Residue,
    /// Torus weights `l1, l2, ...`.
    Weight,
    /// Elementary symmetric symbols `e1, e2, ...` (output of symmetric reduction).
    Symmetric,
    /// Chern symbols `c1, c2, ...`.
    Chern,
    /// Geometric scalars: `h`, `d`, `delta`, `m`, reparametrisation coefficients `a1, ...`
    /// and jet coordinates `f<coord>_<order>`.
    Scalar,
}

/// A polynomial variable.
///
/// The derived `Ord` is the fixed total variable order used for canonical
/// monomial ordering: residue variables first, then weights, symmetric
/// symbols, Chern symbols, and scalars.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    Z(u32),
    Weight(u32),
    Elem(u32),
    Chern(u32),
    H,
    D,
    Delta,
    M,
    Alpha(u32),
    /// `f_coord^{(order)}`, a derivative coordinate of a jet curve.
    Jet { coord: u32, order: u32 },
}

impl Var {
    pub fn alphabet(&self) -> Alphabet {
        match self {
            Var::Z(_) => Alphabet::Residue,
            Var::Weight(_) => Alphabet::Weight,
            Var::Elem(_) => Alphabet::Symmetric,
            Var::Chern(_) => Alphabet::Chern,
            _ => Alphabet::Scalar,
        }
    }

    pub fn is_residue(&self) -> bool {
        matches!(self, Var::Z(_))
    }

    /// Parse a variable name of the text grammar (`z3`, `l2`, `c10`, `delta`, `f1_2`, ...).
    pub fn from_name(name: &str) -> Option<Var> {
        match name {
            "h" => return Some(Var::H),
            "d" => return Some(Var::D),
            "delta" => return Some(Var::Delta),
            "m" => return Some(Var::M),
            _ => {}
        }
        let (head, tail) = name.split_at(1.min(name.len()));
        if head == "f" {
            let (coord, order) = tail.split_once('_')?;
            return Some(Var::Jet {
                coord: positive_index(coord)?,
                order: positive_index(order)?,
            });
        }
        let index = positive_index(tail)?;
        match head {
            "z" => Some(Var::Z(index)),
            "l" => Some(Var::Weight(index)),
            "e" => Some(Var::Elem(index)),
            "c" => Some(Var::Chern(index)),
            "a" => Some(Var::Alpha(index)),
            _ => None,
        }
    }
}

fn positive_index(s: &str) -> Option<u32> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) || s.starts_with('0') {
        return None;
    }
    s.parse().ok()
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::Z(i) => write!(f, "z{i}"),
            Var::Weight(i) => write!(f, "l{i}"),
            Var::Elem(i) => write!(f, "e{i}"),
            Var::Chern(i) => write!(f, "c{i}"),
            Var::H => f.write_str("h"),
            Var::D => f.write_str("d"),
            Var::Delta => f.write_str("delta"),
            Var::M => f.write_str("m"),
            Var::Alpha(i) => write!(f, "a{i}"),
            Var::Jet { coord, order } => write!(f, "f{coord}_{order}"),
        }
    }
}
