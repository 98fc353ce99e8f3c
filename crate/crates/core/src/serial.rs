//! JSON encoding of forms and decompositions.
//!
//! A cyclotomic number is `{"order": N, "coeffs": ["p/q", …]}` with exactly
//! `φ(N)` coefficients; a decomposition is
//! `{"degree": d, "variables": […], "terms": [{"gamma", "linear", "block", "point"}]}`
//! with every linear form aligned to `variables`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::decompose::{PowerSumDecomposition, PowerSumTerm};
use crate::exact::{euler_phi, CyclotomicNumber, Rational};
use crate::forms::{CoprimeForm, Monomial, Variable};

/// Largest field order accepted from untrusted input.
pub const MAX_FIELD_ORDER: u32 = 100_000;

#[derive(Debug, Error)]
pub enum SerialError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid value: {0}")]
    Invalid(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclotomicJson {
    pub order: u32,
    pub coeffs: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub gamma: CyclotomicJson,
    pub linear: Vec<CyclotomicJson>,
    pub block: usize,
    #[serde(default)]
    pub point: Vec<CyclotomicJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionJson {
    pub degree: u32,
    pub variables: Vec<String>,
    pub terms: Vec<TermJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorJson {
    pub variable: String,
    pub exponent: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormTermJson {
    pub coefficient: String,
    pub factors: Vec<FactorJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormJson {
    pub degree: u32,
    pub variables: Vec<String>,
    pub terms: Vec<FormTermJson>,
}

pub fn cyclotomic_to_json(c: &CyclotomicNumber) -> CyclotomicJson {
    CyclotomicJson {
        order: c.order(),
        coeffs: c.coeffs().iter().map(ToString::to_string).collect(),
    }
}

fn parse_rational(s: &str) -> Result<Rational, SerialError> {
    s.trim()
        .parse::<Rational>()
        .map_err(|_| SerialError::Invalid(format!("'{s}' is not a rational number")))
}

pub fn cyclotomic_from_json(j: &CyclotomicJson) -> Result<CyclotomicNumber, SerialError> {
    if j.order == 0 || j.order > MAX_FIELD_ORDER {
        return Err(SerialError::Invalid(format!("field order {} out of range", j.order)));
    }
    let phi = euler_phi(j.order) as usize;
    if j.coeffs.len() != phi {
        return Err(SerialError::Invalid(format!(
            "order {} needs {phi} coefficients, got {}",
            j.order,
            j.coeffs.len()
        )));
    }
    let coeffs = j
        .coeffs
        .iter()
        .map(|s| parse_rational(s))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(CyclotomicNumber::from_coeffs(j.order, coeffs))
}

fn parse_variable(s: &str) -> Result<Variable, SerialError> {
    s.parse()
        .map_err(|_| SerialError::Invalid(format!("'{s}' is not a variable name")))
}

pub fn decomposition_to_json(d: &PowerSumDecomposition) -> DecompositionJson {
    DecompositionJson {
        degree: d.degree,
        variables: d.variables.iter().map(ToString::to_string).collect(),
        terms: d
            .terms
            .iter()
            .map(|t| TermJson {
                gamma: cyclotomic_to_json(&t.gamma),
                linear: t.linear.iter().map(cyclotomic_to_json).collect(),
                block: t.block,
                point: t.point.iter().map(cyclotomic_to_json).collect(),
            })
            .collect(),
    }
}

pub fn decomposition_from_json(j: &DecompositionJson) -> Result<PowerSumDecomposition, SerialError> {
    let variables = j
        .variables
        .iter()
        .map(|s| parse_variable(s))
        .collect::<Result<Vec<_>, _>>()?;
    let mut sorted = variables.clone();
    sorted.sort();
    sorted.dedup();
    if sorted.len() != variables.len() {
        return Err(SerialError::Invalid("duplicate variable names".into()));
    }
    let terms = j
        .terms
        .iter()
        .enumerate()
        .map(|(i, t)| {
            if t.linear.len() != variables.len() {
                return Err(SerialError::Invalid(format!(
                    "term {i} has {} linear coefficients for {} variables",
                    t.linear.len(),
                    variables.len()
                )));
            }
            Ok(PowerSumTerm {
                gamma: cyclotomic_from_json(&t.gamma)?,
                linear: t.linear.iter().map(cyclotomic_from_json).collect::<Result<_, _>>()?,
                block: t.block,
                point: t.point.iter().map(cyclotomic_from_json).collect::<Result<_, _>>()?,
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(PowerSumDecomposition {
        degree: j.degree,
        variables,
        terms,
    })
}

pub fn form_to_json(f: &CoprimeForm) -> FormJson {
    FormJson {
        degree: f.degree(),
        variables: f.variables().iter().map(ToString::to_string).collect(),
        terms: f
            .monomials()
            .iter()
            .zip(f.coefficients())
            .map(|(m, c)| FormTermJson {
                coefficient: c.to_string(),
                factors: m
                    .factors()
                    .iter()
                    .map(|(v, e)| FactorJson {
                        variable: v.to_string(),
                        exponent: *e,
                    })
                    .collect(),
            })
            .collect(),
    }
}

pub fn form_from_json(j: &FormJson) -> Result<CoprimeForm, SerialError> {
    let terms = j
        .terms
        .iter()
        .map(|t| {
            let factors = t
                .factors
                .iter()
                .map(|f| Ok((parse_variable(&f.variable)?, f.exponent)))
                .collect::<Result<Vec<_>, SerialError>>()?;
            let m = Monomial::new(factors)
                .ok_or_else(|| SerialError::Invalid("constant term".into()))?;
            Ok((parse_rational(&t.coefficient)?, m))
        })
        .collect::<Result<Vec<_>, SerialError>>()?;
    let form = CoprimeForm::new(terms).map_err(|e| SerialError::Invalid(e.to_string()))?;
    if form.degree() != j.degree {
        return Err(SerialError::Invalid(format!(
            "declared degree {} but monomials have degree {}",
            j.degree,
            form.degree()
        )));
    }
    let extra = j
        .variables
        .iter()
        .map(|s| parse_variable(s))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(form.with_extra_variables(extra))
}

/// Pretty-printed JSON text; output is deterministic for equal inputs.
pub fn to_json_string<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("JSON encoding of plain data cannot fail")
}

pub fn decomposition_from_str(text: &str) -> Result<PowerSumDecomposition, SerialError> {
    decomposition_from_json(&serde_json::from_str(text)?)
}

pub fn form_from_str(text: &str) -> Result<CoprimeForm, SerialError> {
    form_from_json(&serde_json::from_str(text)?)
}
