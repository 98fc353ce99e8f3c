//! Monomials, validated sums of pairwise coprime monomials, the
//! differentiation action of the dual ring, and perp-ideal generators.

mod ideal;
mod parse;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub use ideal::MonomialIdeal;

use crate::exact::{Exponents, Field, Polynomial, Rational};

/// A variable name: `x<k>` or a single ASCII letter.
///
/// Indexed variables sort before letters, and by index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Variable {
    Indexed(u32),
    Letter(char),
}

impl Variable {
    pub fn x(index: u32) -> Self {
        Variable::Indexed(index)
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Variable::Indexed(i) => write!(f, "x{i}"),
            Variable::Letter(c) => write!(f, "{c}"),
        }
    }
}

impl std::str::FromStr for Variable {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ParseError::Syntax {
            position: 0,
            message: format!("'{s}' is not a variable name"),
        };
        let mut chars = s.chars();
        match (chars.next(), chars.as_str()) {
            (Some('x'), rest) if !rest.is_empty() => {
                if !rest.chars().all(|c| c.is_ascii_digit()) {
                    return Err(bad());
                }
                rest.parse().map(Variable::Indexed).map_err(|_| bad())
            }
            (Some(c), "") if c.is_ascii_alphabetic() => Ok(Variable::Letter(c)),
            _ => Err(bad()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("monomials {first} and {second} are not coprime: both involve {variable}")]
    NonCoprime {
        variable: String,
        first: String,
        second: String,
    },
    #[error("mixed degrees: {first} and {second}")]
    MixedDegree { first: u32, second: u32 },
    #[error("zero coefficient on term at position {position}")]
    ZeroCoefficient { position: usize },
    #[error("term at position {position} is a constant; forms need at least one variable")]
    Constant { position: usize },
    #[error("the form is identically zero")]
    ZeroForm,
}

/// A monic monomial `x_1^{a_1}·…·x_n^{a_n}` with every `a_j ≥ 1`.
///
/// Factors keep their input order; repeated variables are merged at the
/// position of their first occurrence.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    factors: Vec<(Variable, u32)>,
}

impl Monomial {
    /// Builds a monomial, merging repeated variables and dropping zero
    /// exponents. Returns `None` when nothing is left (a constant).
    pub fn new(factors: impl IntoIterator<Item = (Variable, u32)>) -> Option<Self> {
        let mut merged: Vec<(Variable, u32)> = Vec::new();
        for (v, e) in factors {
            match merged.iter_mut().find(|(w, _)| *w == v) {
                Some((_, acc)) => *acc += e,
                None => merged.push((v, e)),
            }
        }
        merged.retain(|&(_, e)| e > 0);
        (!merged.is_empty()).then_some(Self { factors: merged })
    }

    /// `x1^{e_1}·x2^{e_2}·…`, skipping zero exponents.
    pub fn from_exponents(exponents: &[u32]) -> Option<Self> {
        Self::new(
            exponents
                .iter()
                .enumerate()
                .map(|(i, &e)| (Variable::x(i as u32 + 1), e)),
        )
    }

    pub fn factors(&self) -> &[(Variable, u32)] {
        &self.factors
    }

    pub fn num_vars(&self) -> usize {
        self.factors.len()
    }

    pub fn degree(&self) -> u32 {
        self.factors.iter().map(|&(_, e)| e).sum()
    }

    pub fn variables(&self) -> impl Iterator<Item = Variable> + '_ {
        self.factors.iter().map(|&(v, _)| v)
    }

    pub fn exponents(&self) -> Vec<u32> {
        self.factors.iter().map(|&(_, e)| e).collect()
    }

    pub fn exponent_of(&self, var: Variable) -> u32 {
        self.factors
            .iter()
            .find(|&&(v, _)| v == var)
            .map_or(0, |&(_, e)| e)
    }

    /// Factor positions ordered by ascending exponent; ties keep input order.
    pub fn sorted_positions(&self) -> Vec<usize> {
        let mut idx: Vec<usize> = (0..self.factors.len()).collect();
        idx.sort_by_key(|&i| self.factors[i].1);
        idx
    }

    /// Factors in ascending exponent order (the `a_1 ≤ … ≤ a_n` view).
    pub fn sorted_view(&self) -> Vec<(Variable, u32)> {
        self.sorted_positions()
            .into_iter()
            .map(|i| self.factors[i])
            .collect()
    }

    /// The designated variable carrying the least exponent; among ties, the
    /// first in input order.
    pub fn least_variable(&self) -> Variable {
        self.sorted_view()[0].0
    }

    pub fn min_exponent(&self) -> u32 {
        self.sorted_view()[0].1
    }

    pub fn is_coprime_to(&self, other: &Monomial) -> bool {
        self.shared_variable(other).is_none()
    }

    fn shared_variable(&self, other: &Monomial) -> Option<Variable> {
        self.variables().find(|v| other.variables().any(|w| w == *v))
    }

    /// The monomial as a polynomial over its own variables (input order).
    pub fn to_polynomial<C: Field>(&self) -> Polynomial<C> {
        Polynomial::monomial(self.exponents(), C::one())
    }

    fn exponents_in(&self, namespace: &[Variable]) -> Exponents {
        namespace.iter().map(|&v| self.exponent_of(v)).collect()
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (v, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Writes `coefficient * body` as a summand, `first` controlling the sign style.
fn write_summand(
    f: &mut fmt::Formatter<'_>,
    coefficient: &Rational,
    body: &dyn fmt::Display,
    first: bool,
) -> fmt::Result {
    let negative = coefficient.is_negative();
    match (first, negative) {
        (true, true) => write!(f, "-")?,
        (true, false) => {}
        (false, true) => write!(f, " - ")?,
        (false, false) => write!(f, " + ")?,
    }
    let mag = coefficient.abs();
    if mag.is_one() {
        write!(f, "{body}")
    } else {
        write!(f, "{mag}*{body}")
    }
}

/// Homogeneous form with rational coefficients over a named namespace.
///
/// Accepted by the lower-bound commands; its monomials need not be coprime.
#[derive(Debug, Clone, PartialEq)]
pub struct Form {
    variables: Vec<Variable>,
    terms: Vec<(Rational, Monomial)>,
    degree: u32,
}

impl Form {
    pub fn variables(&self) -> &[Variable] {
        &self.variables
    }

    pub fn terms(&self) -> &[(Rational, Monomial)] {
        &self.terms
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Whether the monomials are pairwise coprime.
    pub fn is_coprime(&self) -> bool {
        self.terms.iter().enumerate().all(|(i, (_, a))| {
            self.terms[i + 1..]
                .iter()
                .all(|(_, b)| a.is_coprime_to(b))
        })
    }

    pub fn to_polynomial(&self) -> Polynomial<Rational> {
        Polynomial::from_terms(
            self.variables.len(),
            self.terms
                .iter()
                .map(|(c, m)| (m.exponents_in(&self.variables), c.clone())),
        )
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (c, m)) in self.terms.iter().enumerate() {
            write_summand(f, c, m, i == 0)?;
        }
        Ok(())
    }
}

/// `F = c_1 M_1 + … + c_r M_r` with pairwise coprime monomials of a common
/// degree and nonzero rational coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct CoprimeForm {
    variables: Vec<Variable>,
    monomials: Vec<Monomial>,
    coefficients: Vec<Rational>,
    degree: u32,
}

impl CoprimeForm {
    /// Validates the parts and puts them in canonical order: monomials
    /// sorted by their smallest variable, namespace equal to the support.
    pub fn new(terms: Vec<(Rational, Monomial)>) -> Result<Self, ParseError> {
        let positioned = terms.into_iter().map(|(c, m)| (0, c, m)).collect();
        Self::validate(positioned)
    }

    fn validate(terms: Vec<(usize, Rational, Monomial)>) -> Result<Self, ParseError> {
        let first_degree = terms.first().ok_or(ParseError::ZeroForm)?.2.degree();
        for (pos, c, m) in &terms {
            if c.is_zero() {
                return Err(ParseError::ZeroCoefficient { position: *pos });
            }
            if m.degree() != first_degree {
                return Err(ParseError::MixedDegree {
                    first: first_degree,
                    second: m.degree(),
                });
            }
        }
        for (i, (_, _, a)) in terms.iter().enumerate() {
            for (_, _, b) in &terms[i + 1..] {
                if let Some(v) = a.shared_variable(b) {
                    return Err(ParseError::NonCoprime {
                        variable: v.to_string(),
                        first: a.to_string(),
                        second: b.to_string(),
                    });
                }
            }
        }
        let mut pairs: Vec<(Rational, Monomial)> =
            terms.into_iter().map(|(_, c, m)| (c, m)).collect();
        pairs.sort_by_key(|(_, m)| m.variables().min());
        let mut variables: Vec<Variable> = pairs.iter().flat_map(|(_, m)| m.variables()).collect();
        variables.sort();
        let (coefficients, monomials) = pairs.into_iter().unzip();
        Ok(Self {
            variables,
            monomials,
            coefficients,
            degree: first_degree,
        })
    }

    pub fn variables(&self) -> &[Variable] {
        &self.variables
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coefficients
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Number of coprime summands `r`.
    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn var_index(&self, var: Variable) -> Option<usize> {
        self.variables.iter().position(|&v| v == var)
    }

    /// The same form viewed over a larger namespace. Variables already in
    /// the namespace are ignored; the namespace stays sorted.
    pub fn with_extra_variables(&self, extra: impl IntoIterator<Item = Variable>) -> Self {
        let mut out = self.clone();
        for v in extra {
            if !out.variables.contains(&v) {
                out.variables.push(v);
            }
        }
        out.variables.sort();
        out
    }

    pub fn to_polynomial(&self) -> Polynomial<Rational> {
        Polynomial::from_terms(
            self.variables.len(),
            self.monomials
                .iter()
                .zip(&self.coefficients)
                .map(|(m, c)| (m.exponents_in(&self.variables), c.clone())),
        )
    }

    pub fn to_form(&self) -> Form {
        Form {
            variables: self.variables.clone(),
            terms: self
                .coefficients
                .iter()
                .cloned()
                .zip(self.monomials.iter().cloned())
                .collect(),
            degree: self.degree,
        }
    }
}

impl fmt::Display for CoprimeForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (c, m)) in self.coefficients.iter().zip(&self.monomials).enumerate() {
            write_summand(f, c, m, i == 0)?;
        }
        Ok(())
    }
}

fn raw_monomials(text: &str) -> Result<Vec<(usize, Rational, Monomial)>, ParseError> {
    parse::parse_terms(text)?
        .into_iter()
        .map(|t| {
            let m = Monomial::new(t.factors).ok_or(ParseError::Constant {
                position: t.position,
            })?;
            Ok((t.position, t.coefficient, m))
        })
        .collect()
}

/// Parses and validates a sum of pairwise coprime monomials.
pub fn parse_form(text: &str) -> Result<CoprimeForm, ParseError> {
    CoprimeForm::validate(raw_monomials(text)?)
}

/// Parses any homogeneous form with rational coefficients, combining like
/// terms. Coprimality is not required.
pub fn parse_general_form(text: &str) -> Result<Form, ParseError> {
    let raw = raw_monomials(text)?;
    let first_degree = raw[0].2.degree();
    for (pos, c, m) in &raw {
        if c.is_zero() {
            return Err(ParseError::ZeroCoefficient { position: *pos });
        }
        if m.degree() != first_degree {
            return Err(ParseError::MixedDegree {
                first: first_degree,
                second: m.degree(),
            });
        }
    }
    let mut variables: Vec<Variable> = raw.iter().flat_map(|(_, _, m)| m.variables()).collect();
    variables.sort();
    variables.dedup();
    // Combine like terms, keyed by the exponent vector in the namespace.
    let mut combined: BTreeMap<Exponents, (Rational, Monomial)> = BTreeMap::new();
    let mut order: Vec<Exponents> = Vec::new();
    for (_, c, m) in raw {
        let key = m.exponents_in(&variables);
        match combined.get_mut(&key) {
            Some((acc, _)) => *acc += c,
            None => {
                order.push(key.clone());
                combined.insert(key, (c, m));
            }
        }
    }
    let terms: Vec<(Rational, Monomial)> = order
        .into_iter()
        .filter_map(|k| combined.remove(&k))
        .filter(|(c, _)| !c.is_zero())
        .collect();
    if terms.is_empty() {
        return Err(ParseError::ZeroForm);
    }
    Ok(Form {
        variables,
        terms,
        degree: first_degree,
    })
}

/// The same form over the minimal namespace: exactly the variables that
/// occur in some monomial.
pub fn drop_unused_variables(form: &CoprimeForm) -> CoprimeForm {
    let mut out = form.clone();
    let mut support: Vec<Variable> = form.monomials.iter().flat_map(|m| m.variables()).collect();
    support.sort();
    out.variables = support;
    out
}

/// `m! / (m - k)!`, the factor produced by `∂^k/∂x^k` on `x^m`.
fn falling_factorial(m: u32, k: u32) -> BigInt {
    ((m - k + 1)..=m).fold(BigInt::one(), |acc, v| acc * v)
}

/// Lets the dual variable `X_j` act as `∂/∂x_j`. Bilinear in both arguments.
pub fn apply_differential<C: Field>(operator: &Polynomial<C>, target: &Polynomial<C>) -> Polynomial<C> {
    assert_eq!(
        operator.num_vars(),
        target.num_vars(),
        "operator and target must share a namespace"
    );
    let mut out = Polynomial::zero(target.num_vars());
    for (op_exps, op_coeff) in operator.terms() {
        for (exps, coeff) in target.terms() {
            if op_exps.iter().zip(exps).any(|(k, m)| k > m) {
                continue;
            }
            let mut factor = BigInt::one();
            let mut result = Vec::with_capacity(exps.len());
            for (&k, &m) in op_exps.iter().zip(exps) {
                factor *= falling_factorial(m, k);
                result.push(m - k);
            }
            let c = op_coeff.times(coeff).times(&C::from_integer(&factor));
            out.add_term(result, &c);
        }
    }
    out
}

/// `M^⊥ = (X_1^{a_1+1}, …, X_n^{a_n+1})`, over the monomial's own variables
/// in input order.
pub fn perp_generators(monomial: &Monomial) -> MonomialIdeal {
    let n = monomial.num_vars();
    MonomialIdeal::new(
        n,
        monomial
            .exponents()
            .into_iter()
            .enumerate()
            .map(|(j, a)| ideal::unit_vector(n, j, a + 1)),
    )
}

/// The binomials `X_j^{a_j+1} - X_1^{a_j+1}`, `j = 2…n` in the sorted view,
/// cutting out the roots-of-unity grid of apolar points. Over the
/// monomial's own variables in input order; empty for a pure power.
pub fn ci_point_ideal(monomial: &Monomial) -> Vec<Polynomial<Rational>> {
    let n = monomial.num_vars();
    let positions = monomial.sorted_positions();
    let least = positions[0];
    positions[1..]
        .iter()
        .map(|&j| {
            let k = monomial.factors[j].1 + 1;
            let mut p = Polynomial::zero(n);
            p.add_term(ideal::unit_vector(n, j, k), &Rational::one());
            p.add_term(ideal::unit_vector(n, least, k), &-Rational::one());
            p
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn mono(s: &str) -> Monomial {
        parse_form(s).unwrap().monomials()[0].clone()
    }

    #[test]
    fn parse_valid_form() {
        let f = parse_form("x1^2*x2 + x3^3").unwrap();
        assert_eq!(f.len(), 2);
        assert_eq!(f.degree(), 3);
        assert_eq!(f.variables(), &[Variable::x(1), Variable::x(2), Variable::x(3)]);
    }

    #[test]
    fn parse_rejects_shared_variable() {
        let err = parse_form("x1*x2 + x2*x3").unwrap_err();
        assert_eq!(
            err,
            ParseError::NonCoprime {
                variable: "x2".into(),
                first: "x1*x2".into(),
                second: "x2*x3".into()
            }
        );
    }

    #[test]
    fn parse_rejects_mixed_degree() {
        assert_eq!(
            parse_form("x1^2 + x2^3").unwrap_err(),
            ParseError::MixedDegree { first: 2, second: 3 }
        );
    }

    #[test]
    fn parse_rejects_zero_coefficient_and_constants() {
        assert_eq!(
            parse_form("x1 + 0*x2").unwrap_err(),
            ParseError::ZeroCoefficient { position: 5 }
        );
        assert_eq!(
            parse_form("x1^0").unwrap_err(),
            ParseError::Constant { position: 0 }
        );
    }

    #[test]
    fn zero_exponents_dropped_and_repeats_merged() {
        let f = parse_form("x1^2*x5^0*x1").unwrap();
        assert_eq!(f.monomials()[0].factors(), &[(Variable::x(1), 3)]);
        assert_eq!(f.variables(), &[Variable::x(1)]);
    }

    #[test]
    fn canonical_monomial_order() {
        let f = parse_form("x3^3 + 2*x1^2*x2").unwrap();
        assert_eq!(f.to_string(), "2*x1^2*x2 + x3^3");
    }

    #[test]
    fn render_round_trip() {
        for text in ["x1^2*x2 + x3^3", "3/2*x*y*z", "a^2*b - 5*c^3", "-x1*x2 - 1/3*x4^2"] {
            let f = parse_form(text).unwrap();
            assert_eq!(parse_form(&f.to_string()).unwrap(), f);
        }
    }

    #[test]
    fn general_forms_combine_like_terms() {
        let f = parse_general_form("x*y + x*y + y*x - x^2").unwrap();
        assert!(!f.is_coprime());
        assert_eq!(f.terms().len(), 2);
        assert_eq!(f.terms()[0].0, rat(3, 1));
        assert_eq!(parse_general_form("x*y - y*x").unwrap_err(), ParseError::ZeroForm);
    }

    #[test]
    fn differentiation_examples() {
        let op = Polynomial::monomial(vec![2], rat(1, 1));
        let target = Polynomial::monomial(vec![3], rat(1, 1));
        assert_eq!(
            apply_differential(&op, &target),
            Polynomial::monomial(vec![1], rat(6, 1))
        );
        let op = Polynomial::monomial(vec![1, 1], rat(1, 1));
        let target = Polynomial::monomial(vec![2, 2], rat(1, 1));
        assert_eq!(
            apply_differential(&op, &target),
            Polynomial::monomial(vec![1, 1], rat(4, 1))
        );
    }

    #[test]
    fn perp_generator_examples() {
        let m = mono("x1*x2*x3");
        assert_eq!(
            perp_generators(&m).generators(),
            &[vec![2, 0, 0], vec![0, 2, 0], vec![0, 0, 2]]
        );
        assert_eq!(perp_generators(&mono("x^5")).generators(), &[vec![6]]);
        let m = mono("x1*x2^3");
        let target: Polynomial<Rational> = m.to_polynomial();
        for g in perp_generators(&m).generators() {
            let op = Polynomial::monomial(g.clone(), rat(1, 1));
            assert!(apply_differential(&op, &target).is_zero());
        }
    }

    #[test]
    fn ci_ideal_examples() {
        let gens = ci_point_ideal(&mono("x1*x2"));
        assert_eq!(gens.len(), 1);
        assert_eq!(gens[0].coeff(&[0, 2]), rat(1, 1));
        assert_eq!(gens[0].coeff(&[2, 0]), rat(-1, 1));

        let m = mono("x1^2*x2^2*x3^3");
        let gens = ci_point_ideal(&m);
        assert_eq!(gens[0].coeff(&[0, 3, 0]), rat(1, 1));
        assert_eq!(gens[0].coeff(&[3, 0, 0]), rat(-1, 1));
        assert_eq!(gens[1].coeff(&[0, 0, 4]), rat(1, 1));
        assert_eq!(gens[1].coeff(&[4, 0, 0]), rat(-1, 1));
        let target: Polynomial<Rational> = m.to_polynomial();
        for g in &gens {
            assert!(apply_differential(g, &target).is_zero());
        }
        assert!(ci_point_ideal(&mono("x^4")).is_empty());
    }

    #[test]
    fn least_variable_ties_use_input_order() {
        let m = mono("x3*x2^2*x1");
        assert_eq!(m.least_variable(), Variable::x(3));
        assert_eq!(m.sorted_view()[1], (Variable::x(1), 1));
    }

    #[test]
    fn dropping_unused_variables() {
        let f = parse_form("x1^3").unwrap();
        let wide = f.with_extra_variables((2..=5).map(Variable::x));
        assert_eq!(wide.variables().len(), 5);
        let narrow = drop_unused_variables(&wide);
        assert_eq!(narrow, f);
        assert_eq!(drop_unused_variables(&narrow), narrow);
    }
}
