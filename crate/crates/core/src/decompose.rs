//! Minimal power-sum decompositions of coprime-monomial forms.
//!
//! For `M = x_1^{a_1}·…·x_n^{a_n}` (exponents ascending) the apolar points
//! are `[1 : ε_2 : … : ε_n]` with `ε_i^{a_i+1} = 1`; the scalars `γ` come
//! from an exact linear solve over `ℚ(ζ_N)`, `N = lcm(a_i + 1)`.

use std::fmt;

use num_integer::Integer;
use num_traits::Signed;

use crate::exact::{
    cyclotomic_embed, monomials_of_degree, poly_pow_linear, solve_exact, CyclotomicNumber,
    Exponents, Field, LinearSystem, Polynomial, Rational,
};
use crate::forms::{CoprimeForm, Monomial, Variable};
use crate::rank::rank_coprime_sum;
use crate::Error;

/// One summand `γ · L^d`.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerSumTerm {
    pub gamma: CyclotomicNumber,
    /// Coefficients of `L`, aligned with the decomposition's variables.
    pub linear: Vec<CyclotomicNumber>,
    /// Index of the source monomial.
    pub block: usize,
    /// Point coordinates `[1 : ε_2 : … : ε_n]` in ascending-exponent order.
    pub point: Vec<CyclotomicNumber>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PowerSumDecomposition {
    pub degree: u32,
    pub variables: Vec<Variable>,
    pub terms: Vec<PowerSumTerm>,
}

impl PowerSumDecomposition {
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `Σ γ_j L_j^d`, expanded exactly.
    pub fn expand(&self) -> Polynomial<CyclotomicNumber> {
        let mut acc = Polynomial::zero(self.variables.len());
        for term in &self.terms {
            let power = poly_pow_linear(&term.linear, self.degree);
            for (e, c) in power.terms() {
                acc.add_term(e.clone(), &c.times(&term.gamma));
            }
        }
        acc
    }
}

/// An apolar point of a monomial.
#[derive(Debug, Clone, PartialEq)]
pub struct DecompositionPoint {
    /// `k_i` with `ε_i = ζ_{a_i+1}^{k_i}`, for `i = 2…n` in the sorted view.
    pub root_exponents: Vec<u32>,
    /// Coordinates in the sorted view; the first is 1.
    pub sorted_coords: Vec<CyclotomicNumber>,
    /// The same coordinates aligned with the monomial's input order.
    pub coords: Vec<CyclotomicNumber>,
}

/// `lcm(a_i + 1)` over the non-minimal exponents; 1 for a pure power.
pub fn field_order(monomial: &Monomial) -> u32 {
    monomial.sorted_view()[1..]
        .iter()
        .fold(1u32, |acc, &(_, a)| acc.lcm(&(a + 1)))
}

/// All `Π_{i≥2}(a_i + 1)` points, lexicographic in the root exponents.
pub fn decomposition_points(monomial: &Monomial) -> Vec<DecompositionPoint> {
    let order = field_order(monomial);
    let positions = monomial.sorted_positions();
    let sorted = monomial.sorted_view();
    let radices: Vec<u32> = sorted[1..].iter().map(|&(_, a)| a + 1).collect();
    let mut out = Vec::new();
    let mut ks = vec![0u32; radices.len()];
    loop {
        let mut sorted_coords = vec![CyclotomicNumber::one_in(order)];
        for (&k, &radix) in ks.iter().zip(&radices) {
            sorted_coords.push(
                cyclotomic_embed(radix, k as i64, order).expect("radix divides the field order"),
            );
        }
        let mut coords = vec![CyclotomicNumber::zero_in(order); positions.len()];
        for (s, &p) in positions.iter().enumerate() {
            coords[p] = sorted_coords[s].clone();
        }
        out.push(DecompositionPoint {
            root_exponents: ks.clone(),
            sorted_coords,
            coords,
        });
        // odometer, last digit fastest
        let mut i = ks.len();
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            ks[i] += 1;
            if ks[i] < radices[i] {
                break;
            }
            ks[i] = 0;
        }
    }
}

/// Solves for the scalars of `coefficient · M` over the monomial's own
/// variables (input order).
pub fn solve_gammas(monomial: &Monomial, coefficient: &Rational) -> Result<PowerSumDecomposition, Error> {
    let order = field_order(monomial);
    let n = monomial.num_vars();
    let d = monomial.degree();
    let points = decomposition_points(monomial);
    let columns: Vec<Polynomial<CyclotomicNumber>> =
        points.iter().map(|p| poly_pow_linear(&p.coords, d)).collect();
    let target: Exponents = monomial.exponents();
    let rows = monomials_of_degree(n, d);
    let zero = CyclotomicNumber::zero_in(order);
    let matrix: Vec<Vec<CyclotomicNumber>> = rows
        .iter()
        .map(|row| {
            columns
                .iter()
                .map(|col| col.coeff(row).lift_to(order))
                .collect()
        })
        .collect();
    let rhs: Vec<CyclotomicNumber> = rows
        .iter()
        .map(|row| {
            if *row == target {
                CyclotomicNumber::from_rational(coefficient.clone(), order)
            } else {
                zero.clone()
            }
        })
        .collect();
    let system = LinearSystem::new(matrix, rhs)?;
    let gammas = solve_exact(&system)?;
    let terms = gammas
        .into_iter()
        .zip(points)
        .map(|(gamma, p)| PowerSumTerm {
            gamma,
            linear: p.coords,
            block: 0,
            point: p.sorted_coords,
        })
        .collect();
    Ok(PowerSumDecomposition {
        degree: d,
        variables: monomial.variables().collect(),
        terms,
    })
}

/// A minimal decomposition of a coprime form: one block per monomial.
pub fn decompose_form(form: &CoprimeForm) -> Result<PowerSumDecomposition, Error> {
    let variables = form.variables().to_vec();
    let n = variables.len();
    if form.degree() == 1 {
        // A linear form is its own first power.
        let mut linear = vec![CyclotomicNumber::zero_in(1); n];
        for (m, c) in form.monomials().iter().zip(form.coefficients()) {
            let v = m.least_variable();
            linear[form.var_index(v).expect("variable in namespace")] = c.clone().into();
        }
        return Ok(PowerSumDecomposition {
            degree: 1,
            variables,
            terms: vec![PowerSumTerm {
                gamma: CyclotomicNumber::one_in(1),
                point: linear.clone(),
                linear,
                block: 0,
            }],
        });
    }
    let mut terms = Vec::new();
    for (block, (m, c)) in form.monomials().iter().zip(form.coefficients()).enumerate() {
        let local = solve_gammas(m, c)?;
        let order = field_order(m);
        let slots: Vec<usize> = local
            .variables
            .iter()
            .map(|&v| form.var_index(v).expect("variable in namespace"))
            .collect();
        for term in local.terms {
            let mut linear = vec![CyclotomicNumber::zero_in(order); n];
            for (&slot, coeff) in slots.iter().zip(term.linear) {
                linear[slot] = coeff;
            }
            terms.push(PowerSumTerm {
                linear,
                block,
                ..term
            });
        }
    }
    Ok(PowerSumDecomposition {
        degree: form.degree(),
        variables,
        terms,
    })
}

fn render_exponents(variables: &[Variable], exps: &[u32]) -> String {
    Monomial::new(variables.iter().copied().zip(exps.iter().copied()))
        .map_or_else(|| "1".to_string(), |m| m.to_string())
}

#[derive(Debug, Clone, PartialEq)]
pub struct Mismatch {
    pub monomial: String,
    pub expected: CyclotomicNumber,
    pub found: CyclotomicNumber,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub degree_matches: bool,
    /// Variables of the form missing from the decomposition's namespace.
    pub missing_variables: Vec<Variable>,
    /// Number of monomials where expansion and form differ.
    pub residual_terms: usize,
    pub first_mismatch: Option<Mismatch>,
    /// Pairs of terms in the same block with proportional linear forms.
    pub dependent_pairs: Vec<(usize, usize)>,
    pub term_count: usize,
    pub expected_rank: u64,
}

impl VerificationReport {
    pub fn expansion_exact(&self) -> bool {
        self.degree_matches && self.missing_variables.is_empty() && self.residual_terms == 0
    }

    pub fn minimal(&self) -> bool {
        self.term_count as u64 == self.expected_rank
    }

    pub fn passed(&self) -> bool {
        self.expansion_exact() && self.dependent_pairs.is_empty() && self.minimal()
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mark = |ok: bool| if ok { "ok" } else { "FAIL" };
        writeln!(f, "degree:        {}", mark(self.degree_matches))?;
        if !self.missing_variables.is_empty() {
            let names: Vec<String> = self.missing_variables.iter().map(|v| v.to_string()).collect();
            writeln!(f, "namespace:     FAIL (missing {})", names.join(", "))?;
        }
        match &self.first_mismatch {
            None => writeln!(f, "expansion:     {}", mark(self.expansion_exact()))?,
            Some(m) => writeln!(
                f,
                "expansion:     FAIL ({} mismatching monomials; first {}: expected {}, found {})",
                self.residual_terms, m.monomial, m.expected, m.found
            )?,
        }
        if self.dependent_pairs.is_empty() {
            writeln!(f, "independence:  ok")?;
        } else {
            writeln!(f, "independence:  FAIL (dependent pairs {:?})", self.dependent_pairs)?;
        }
        write!(
            f,
            "length:        {} ({} terms, rank {})",
            mark(self.minimal()),
            self.term_count,
            self.expected_rank
        )
    }
}

fn proportional(a: &[CyclotomicNumber], b: &[CyclotomicNumber]) -> bool {
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            let minor = a[i].times(&b[j]).minus(&a[j].times(&b[i]));
            if !minor.is_zero() {
                return false;
            }
        }
    }
    true
}

/// Expands `Σ γ_j L_j^d` exactly and compares it with `F` monomial by
/// monomial; also checks pairwise independence within blocks and the
/// length against the closed-form rank.
pub fn verify_decomposition(form: &CoprimeForm, decomposition: &PowerSumDecomposition) -> VerificationReport {
    let missing_variables: Vec<Variable> = form
        .variables()
        .iter()
        .filter(|v| !decomposition.variables.contains(v))
        .copied()
        .collect();
    let degree_matches = form.degree() == decomposition.degree;
    let mut residual_terms = 0;
    let mut first_mismatch = None;
    if missing_variables.is_empty() && degree_matches {
        let wide = form.with_extra_variables(decomposition.variables.iter().copied());
        // `wide` is sorted; reorder into the decomposition's namespace.
        let perm: Vec<usize> = decomposition
            .variables
            .iter()
            .map(|v| wide.var_index(*v).expect("namespace covers the decomposition"))
            .collect();
        let mut target: Polynomial<CyclotomicNumber> = Polynomial::zero(perm.len());
        for (e, c) in wide.to_polynomial().terms() {
            let reordered: Exponents = perm.iter().map(|&p| e[p]).collect();
            target.add_term(reordered, &c.clone().into());
        }
        let residual = decomposition.expand().sub(&target);
        residual_terms = residual.len();
        first_mismatch = residual.terms().next().map(|(e, _)| Mismatch {
            monomial: render_exponents(&decomposition.variables, e),
            expected: target.coeff(e),
            found: target.coeff(e).plus(&residual.coeff(e)),
        });
    }
    let mut dependent_pairs = Vec::new();
    for (i, a) in decomposition.terms.iter().enumerate() {
        for (j, b) in decomposition.terms.iter().enumerate().skip(i + 1) {
            if a.block == b.block && proportional(&a.linear, &b.linear) {
                dependent_pairs.push((i, j));
            }
        }
    }
    VerificationReport {
        degree_matches,
        missing_variables,
        residual_terms,
        first_mismatch,
        dependent_pairs,
        term_count: decomposition.len(),
        expected_rank: rank_coprime_sum(form),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermCheck {
    pub term: usize,
    pub block: usize,
    /// Least-exponent variable of the block's monomial, if the block exists.
    pub variable: Option<Variable>,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeastVariableReport {
    pub length_matches_rank: bool,
    pub terms: Vec<TermCheck>,
}

impl LeastVariableReport {
    pub fn passed(&self) -> bool {
        self.length_matches_rank && self.terms.iter().all(|t| t.passed)
    }
}

/// Checks that every linear form of a minimal decomposition has a nonzero
/// coefficient on the least-exponent variable of its block's monomial.
pub fn least_variable_check(form: &CoprimeForm, decomposition: &PowerSumDecomposition) -> LeastVariableReport {
    let terms = decomposition
        .terms
        .iter()
        .enumerate()
        .map(|(i, term)| {
            let variable = form.monomials().get(term.block).map(Monomial::least_variable);
            let passed = variable
                .and_then(|v| decomposition.variables.iter().position(|&w| w == v))
                .is_some_and(|slot| term.linear.get(slot).is_some_and(|c| !c.is_zero()));
            TermCheck {
                term: i,
                block: term.block,
                variable,
                passed,
            }
        })
        .collect();
    LeastVariableReport {
        length_matches_rank: decomposition.len() as u64 == rank_coprime_sum(form),
        terms,
    }
}

fn coefficient_token(c: &CyclotomicNumber) -> (bool, String) {
    match c.as_scaled_root() {
        Some((r, _)) => {
            let s = c.to_string();
            if r.is_negative() {
                (true, s[1..].to_string())
            } else {
                (false, s)
            }
        }
        None => (false, format!("({c})")),
    }
}

fn render_linear(variables: &[Variable], linear: &[CyclotomicNumber]) -> String {
    let mut out = String::new();
    for (v, c) in variables.iter().zip(linear) {
        if c.is_zero() {
            continue;
        }
        let (negative, mag) = coefficient_token(c);
        let body = if mag == "1" { v.to_string() } else { format!("{mag}*{v}") };
        match (out.is_empty(), negative) {
            (true, true) => out.push('-'),
            (true, false) => {}
            (false, true) => out.push_str(" - "),
            (false, false) => out.push_str(" + "),
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Display for PowerSumDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, term) in self.terms.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let (negative, mag) = coefficient_token(&term.gamma);
            let sign = match (i, negative) {
                (0, false) => "  ",
                (_, true) => "- ",
                (_, false) => "+ ",
            };
            write!(
                f,
                "{sign}{mag} * ({})^{}    [block {}]",
                render_linear(&self.variables, &term.linear),
                self.degree,
                term.block
            )?;
        }
        Ok(())
    }
}
