//! Text grammar for polynomials and Laurent polynomials.
//!
//! ```text
//! expr   := ['+' | '-'] term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := '-' factor | atom ['^' ['-'] int]
//! atom   := int ['/' int] | name | '(' expr ')'
//! ```
//!
//! Names are those accepted by [`Var::from_name`]. Whitespace is ignored.
//! A negative exponent is only accepted by [`parse_laurent`], and only on a
//! bare residue-variable monomial.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::terms::{self, Terms};
use super::{LaurentSeries, Monomial, Polynomial, Rational, Ring, Var};
use crate::error::{Error, Result};

pub fn parse_polynomial(s: &str) -> Result<Polynomial> {
    parse_polynomial_in(s, &Ring::new())
}

pub fn parse_polynomial_in(s: &str, ring: &Ring) -> Result<Polynomial> {
    let t = Parser::new(s, false, ring).run()?;
    Ok(Polynomial::from_raw(t, ring.clone()))
}

pub fn parse_laurent(s: &str) -> Result<LaurentSeries> {
    parse_laurent_in(s, &Ring::new())
}

pub fn parse_laurent_in(s: &str, ring: &Ring) -> Result<LaurentSeries> {
    let t = Parser::new(s, true, ring).run()?;
    LaurentSeries::from_terms(t, ring)
}

impl core::str::FromStr for Polynomial {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_polynomial(s)
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Name(String),
    Sym(u8),
}

struct Parser<'a> {
    src: &'a str,
    toks: Vec<(usize, Tok)>,
    pos: usize,
    laurent: bool,
    ring: &'a Ring,
}

fn err(position: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        position,
        message: message.into(),
    }
}

fn lex(s: &str) -> Result<Vec<(usize, Tok)>> {
    let b = s.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < b.len() {
        let c = b[i];
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < b.len() && b[i].is_ascii_digit() {
                i += 1;
            }
            let n: BigInt = s[start..i].parse().map_err(|_| err(start, "bad integer"))?;
            out.push((start, Tok::Int(n)));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < b.len() && (b[i].is_ascii_alphanumeric() || b[i] == b'_') {
                i += 1;
            }
            out.push((start, Tok::Name(s[start..i].to_string())));
        } else if b"+-*/^()".contains(&c) {
            out.push((i, Tok::Sym(c)));
            i += 1;
        } else {
            let ch = s[i..].chars().next().unwrap_or('?');
            return Err(err(i, alloc::format!("unexpected character '{ch}'")));
        }
    }
    Ok(out)
}

impl<'a> Parser<'a> {
    fn new(src: &'a str, laurent: bool, ring: &'a Ring) -> Self {
        Parser {
            src,
            toks: Vec::new(),
            pos: 0,
            laurent,
            ring,
        }
    }

    fn run(mut self) -> Result<Terms> {
        self.toks = lex(self.src)?;
        if self.toks.is_empty() {
            return Err(err(0, "empty expression"));
        }
        let t = self.expr()?;
        if let Some((p, _)) = self.toks.get(self.pos) {
            return Err(err(*p, "unexpected trailing input"));
        }
        Ok(t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.src.len(), |t| t.0)
    }

    fn peek_sym(&self) -> Option<u8> {
        match self.toks.get(self.pos) {
            Some((_, Tok::Sym(c))) => Some(*c),
            _ => None,
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek_sym() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Terms> {
        let mut negate = false;
        if self.eat(b'-') {
            negate = true;
        } else {
            self.eat(b'+');
        }
        let mut acc = Terms::new();
        loop {
            let t = self.term()?;
            let sign = if negate { -Rational::one() } else { Rational::one() };
            terms::add_scaled(&mut acc, &t, &sign);
            if self.eat(b'+') {
                negate = false;
            } else if self.eat(b'-') {
                negate = true;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Terms> {
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            let f = self.factor()?;
            acc = terms::mul(&acc, &f, self.ring);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Terms> {
        if self.eat(b'-') {
            let f = self.factor()?;
            return Ok(f.into_iter().map(|(m, c)| (m, -c)).collect());
        }
        let start = self.here();
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let negative = self.eat(b'-');
        let at = self.here();
        let e = match self.toks.get(self.pos) {
            Some((_, Tok::Int(n))) => {
                u32::try_from(n).map_err(|_| err(at, "exponent too large"))?
            }
            _ => return Err(err(at, "expected integer exponent")),
        };
        self.pos += 1;
        if !negative {
            return Ok(terms::pow(&base, e, self.ring));
        }
        if !self.laurent {
            return Err(err(at, "negative exponent outside a Laurent expression"));
        }
        // only z-monomials with unit coefficient may be inverted
        let mut it = base.iter();
        match (it.next(), it.next()) {
            (Some((m, c)), None) if c.is_one() && !m.is_one() && m.iter().all(|(v, _)| v.is_residue()) => {
                let inv = Monomial::one().div(m).pow(e);
                let mut t = Terms::new();
                t.insert(inv, Rational::one());
                Ok(t)
            }
            _ => Err(err(start, "negative exponent requires a residue-variable monomial")),
        }
    }

    fn atom(&mut self) -> Result<Terms> {
        let at = self.here();
        let tok = self.toks.get(self.pos).cloned();
        match tok {
            Some((_, Tok::Int(n))) => {
                self.pos += 1;
                let mut q = Rational::from_integer(n);
                if self.eat(b'/') {
                    let dat = self.here();
                    match self.toks.get(self.pos) {
                        Some((_, Tok::Int(d))) if !d.is_zero() => {
                            q /= Rational::from_integer(d.clone());
                            self.pos += 1;
                        }
                        Some((_, Tok::Int(_))) => return Err(err(dat, "zero denominator")),
                        _ => return Err(err(dat, "expected integer denominator")),
                    }
                }
                let mut t = Terms::new();
                terms::add_term(&mut t, Monomial::one(), q);
                Ok(t)
            }
            Some((_, Tok::Name(name))) => {
                self.pos += 1;
                let v = Var::from_name(&name)
                    .ok_or_else(|| err(at, alloc::format!("unknown variable '{name}'")))?;
                let mut t = Terms::new();
                let m = Monomial::var(v);
                if !self.ring.vanishes(&m) {
                    t.insert(m, Rational::one());
                }
                Ok(t)
            }
            Some((_, Tok::Sym(b'('))) => {
                self.pos += 1;
                let t = self.expr()?;
                if !self.eat(b')') {
                    return Err(err(self.here(), "expected ')'"));
                }
                Ok(t)
            }
            Some(_) => Err(err(at, "expected a number, variable or '('")),
            None => Err(err(at, "unexpected end of input")),
        }
    }
}
