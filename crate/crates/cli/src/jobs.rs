//! JSON input files: residue jobs, Q tables and jets.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use equiloc_core::algebra::{parse_laurent, parse_polynomial, Polynomial, Rational, Var};
use equiloc_core::jet::JetCurve;
use equiloc_core::residue::{AffineForm, ResidueForm};
use equiloc_core::thom::QTable;
use serde::de::DeserializeOwned;
use serde::Deserialize;

use crate::error::CliError;

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io { path: path.into(), source })?;
    serde_json::from_str(&text).map_err(|source| CliError::Json { path: path.into(), source })
}

pub fn rational(s: &str) -> Result<Rational, CliError> {
    parse_polynomial(s)?
        .as_constant()
        .ok_or_else(|| CliError::Input(format!("expected a rational number, got {s:?}")))
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum DenominatorSpec {
    Form(String),
    Power { form: String, power: u32 },
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResidueJob {
    pub numerator: String,
    pub denominators: Vec<DenominatorSpec>,
    /// Least to most dominant.
    pub order: Vec<String>,
}

/// Reads `"z1^2"` as the form `z1` with power 2, anything else as an affine form.
fn denominator(s: &str) -> Result<(AffineForm, u32), CliError> {
    let p = parse_polynomial(s)?;
    if let [(m, c)] = p.terms().collect::<Vec<_>>()[..] {
        if let [(v @ Var::Z(_), e)] = m.iter().collect::<Vec<_>>()[..] {
            if e > 1 {
                let base = Polynomial::var(v).scale(c);
                return Ok((AffineForm::from_polynomial(&base)?, e as u32));
            }
        }
    }
    Ok((AffineForm::from_polynomial(&p)?, 1))
}

impl ResidueJob {
    pub fn to_form(&self) -> Result<ResidueForm, CliError> {
        let order = self
            .order
            .iter()
            .map(|name| match Var::from_name(name) {
                Some(v @ Var::Z(_)) => Ok(v),
                _ => Err(CliError::Input(format!("order entry {name:?} is not a residue variable"))),
            })
            .collect::<Result<Vec<_>, _>>()?;
        let mut form = ResidueForm::new(parse_laurent(&self.numerator)?, order);
        for d in &self.denominators {
            let (affine, power) = match d {
                DenominatorSpec::Form(s) => denominator(s)?,
                DenominatorSpec::Power { form, power } => {
                    (AffineForm::from_polynomial(&parse_polynomial(form)?)?, *power)
                }
            };
            form = form.denominator(affine, power);
        }
        form.validate()?;
        Ok(form)
    }
}

/// `{"5": "<polynomial in z1..z5>", ...}` on top of the built-in table.
pub fn q_table(path: Option<&Path>) -> Result<QTable, CliError> {
    let mut table = QTable::builtin();
    if let Some(path) = path {
        let entries: BTreeMap<String, String> = read_json(path)?;
        for (k, q) in entries {
            let k: u32 = k
                .parse()
                .map_err(|_| CliError::Input(format!("Q table key {k:?} is not a positive integer")))?;
            table.insert(k, parse_polynomial(&q)?)?;
        }
    }
    Ok(table)
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum Number {
    Int(i64),
    Text(String),
}

impl Number {
    fn value(&self) -> Result<Rational, CliError> {
        match self {
            Number::Int(i) => Ok(Rational::from_integer((*i).into())),
            Number::Text(s) => rational(s),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum Coordinates {
    /// Taylor coefficients `v_i`.
    #[default]
    Taylor,
    /// Derivatives `f^(i) = i! v_i`.
    Derivatives,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JetFile {
    pub n: usize,
    pub k: usize,
    #[serde(default)]
    pub coordinates: Coordinates,
    /// `k` rows of `n` entries each.
    pub v: Vec<Vec<Number>>,
}

impl JetFile {
    pub fn to_jet(&self, n: usize, k: usize) -> Result<JetCurve<Rational>, CliError> {
        if (self.n, self.k) != (n, k) {
            return Err(CliError::Input(format!(
                "jet file has n={}, k={} but n={n}, k={k} was requested",
                self.n, self.k
            )));
        }
        if self.v.len() != k {
            return Err(CliError::Input(format!("jet file has {} rows, expected {k}", self.v.len())));
        }
        let rows = self
            .v
            .iter()
            .map(|row| row.iter().map(Number::value).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        let jet = match self.coordinates {
            Coordinates::Taylor => JetCurve::new(n, rows),
            Coordinates::Derivatives => JetCurve::from_derivatives(n, rows),
        };
        jet.map_err(|e| CliError::Input(e.to_string()))
    }
}
