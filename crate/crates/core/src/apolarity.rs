//! Catalecticant matrices, Hilbert functions of monomial-ideal quotients and
//! the Hilbert-function additivity identity for ideals meeting pairwise in
//! the maximal ideal.

use num_traits::Zero;

use crate::exact::{self, monomials_of_degree, Exponents, Polynomial, Rational};
use crate::forms::{self, apply_differential, CoprimeForm, MonomialIdeal};
use crate::Error;

/// Matrix of the pairing `T_t × S_{d-t}` induced by differentiating `F`.
///
/// Column `c` holds the coefficients of `X^{cols[c]} F` on the basis `rows`.
#[derive(Debug, Clone, PartialEq)]
pub struct CatalecticantMatrix {
    pub t: u32,
    pub rows: Vec<Exponents>,
    pub cols: Vec<Exponents>,
    pub entries: Vec<Vec<Rational>>,
}

impl CatalecticantMatrix {
    /// Panics if `form` is not homogeneous of degree at least `t`.
    pub fn new(form: &Polynomial<Rational>, t: u32) -> Self {
        let d = form
            .homogeneous_degree()
            .expect("catalecticant needs a nonzero homogeneous form");
        assert!(t <= d, "differentiation degree {t} exceeds form degree {d}");
        let n = form.num_vars();
        let rows = monomials_of_degree(n, d - t);
        let cols = monomials_of_degree(n, t);
        let mut entries = vec![vec![Rational::zero(); cols.len()]; rows.len()];
        for (c, op_exps) in cols.iter().enumerate() {
            let op = Polynomial::monomial(op_exps.clone(), exact::rat(1, 1));
            let image = apply_differential(&op, form);
            for (r, row_exps) in rows.iter().enumerate() {
                entries[r][c] = image.coeff(row_exps);
            }
        }
        Self {
            t,
            rows,
            cols,
            entries,
        }
    }

    /// Rank over ℚ; equals `HF(T/F^⊥, t)`.
    pub fn rank(&self) -> usize {
        exact::rank(&self.entries)
    }

    /// Basis of the degree-`t` part of `F^⊥`, as coefficient vectors over `cols`.
    pub fn kernel(&self) -> Vec<Vec<Rational>> {
        exact::nullspace(&self.entries, self.cols.len())
    }
}

/// `max_{1 ≤ t ≤ t_max} rank Cat_t(F)`, a lower bound for the Waring rank.
/// `t_max` is clamped to the degree.
pub fn catalecticant_lower_bound(form: &Polynomial<Rational>, t_max: u32) -> u64 {
    let Some(d) = form.homogeneous_degree() else {
        return 0;
    };
    (1..=t_max.min(d))
        .map(|t| CatalecticantMatrix::new(form, t).rank() as u64)
        .max()
        .unwrap_or(1)
}

/// Exact Waring rank of a binary form by Sylvester's algorithm.
///
/// Finds the least degree `r` where `F^⊥` is nonzero; if its generator is
/// squarefree the rank is `r`, otherwise `d + 2 - r`. Independent of the
/// monomial rank formula, so it serves as an oracle for two-variable cases.
pub fn binary_rank_sylvester(form: &Polynomial<Rational>) -> Result<u64, Error> {
    let d = form
        .homogeneous_degree()
        .ok_or_else(|| Error::Precondition("binary rank needs a nonzero homogeneous form".into()))?;
    match form.num_vars() {
        1 => return Ok(1),
        2 => {}
        n => {
            return Err(Error::Precondition(format!(
                "binary rank needs two variables, got {n}"
            )))
        }
    }
    for r in 1..=d {
        let cat = CatalecticantMatrix::new(form, r);
        let kernel = cat.kernel();
        match kernel.len() {
            0 => continue,
            1 => {
                // cols are X^{r-i} Y^i; dehomogenize at Y = 1
                let mut univariate = vec![Rational::zero(); r as usize + 1];
                for (c, e) in cat.cols.iter().enumerate() {
                    univariate[e[0] as usize] = kernel[0][c].clone();
                }
                let finite_degree = exact::upoly::degree(&univariate).expect("kernel vector is nonzero");
                let at_infinity = r as usize - finite_degree;
                let squarefree = at_infinity <= 1 && exact::upoly::is_squarefree(&univariate);
                return Ok(if squarefree { r as u64 } else { (d + 2 - r) as u64 });
            }
            _ => return Ok(r as u64),
        }
    }
    // Only reached for degree 0 inputs or when every Cat_t up to d is injective.
    Ok(d as u64 + 1)
}

/// Counts standard monomials (those outside `ideal`) of each degree up to
/// `t_max`. Walks the staircase one variable at a time; once a partial
/// exponent vector lies in the ideal, so does every extension of it.
fn standard_monomial_counts(ideal: &MonomialIdeal, t_max: u32) -> Vec<u64> {
    fn walk(ideal: &MonomialIdeal, var: usize, exps: &mut Vec<u32>, deg: u32, t_max: u32, counts: &mut [u64]) {
        if var == exps.len() {
            counts[deg as usize] += 1;
            return;
        }
        for e in 0..=t_max - deg {
            exps[var] = e;
            if ideal.contains(exps) {
                break;
            }
            walk(ideal, var + 1, exps, deg + e, t_max, counts);
        }
        exps[var] = 0;
    }
    let mut counts = vec![0; t_max as usize + 1];
    let mut exps = vec![0; ideal.num_vars()];
    if !ideal.contains(&exps) {
        walk(ideal, 0, &mut exps, 0, t_max, &mut counts);
    }
    counts
}

/// Number of standard monomials of degree `t`: `HF(T/J, t)`.
pub fn hf_monomial_quotient(ideal: &MonomialIdeal, t: u32) -> u64 {
    standard_monomial_counts(ideal, t)[t as usize]
}

/// Hilbert function values `HF(0..=t_max)` with running partial sums.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertFunctionTable {
    pub values: Vec<u64>,
    pub partial_sums: Vec<u64>,
}

impl HilbertFunctionTable {
    pub fn new(ideal: &MonomialIdeal, t_max: u32) -> Self {
        let values = standard_monomial_counts(ideal, t_max);
        let partial_sums = values
            .iter()
            .scan(0u64, |acc, v| {
                *acc += v;
                Some(*acc)
            })
            .collect();
        Self {
            values,
            partial_sums,
        }
    }

    pub fn total(&self) -> u64 {
        self.partial_sums.last().copied().unwrap_or(0)
    }

    /// Whether the last tabulated value is zero; for a monomial ideal every
    /// later value is then zero too.
    pub fn tail_vanishes(&self) -> bool {
        self.values.last() == Some(&0)
    }
}

/// `Σ_t HF(T/(X_1^{a_1+1}, …, X_n^{a_n+1}), t) = Π (a_i + 1)`.
///
/// The closed form is cross-checked against standard-monomial counting up
/// to the top degree `Σ a_i`; a mismatch panics.
pub fn hf_sum_complete_intersection(exponents: &[u32]) -> u64 {
    let closed: u64 = exponents.iter().map(|&a| a as u64 + 1).product();
    let n = exponents.len();
    let ideal = MonomialIdeal::new(
        n,
        exponents.iter().enumerate().map(|(j, &a)| {
            let mut e = vec![0; n];
            e[j] = a + 1;
            e
        }),
    );
    let top: u32 = exponents.iter().sum();
    let table = HilbertFunctionTable::new(&ideal, top + 1);
    assert!(table.tail_vanishes());
    assert_eq!(table.total(), closed, "enumeration disagrees with Π(a_i+1)");
    closed
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClaimReport {
    pub t_max: u32,
    /// `Σ_t HF(T/J_1 ∩ … ∩ J_r, t)`.
    pub intersection_sum: u64,
    /// `Σ_t HF(T/J_i, t)` for each ideal.
    pub individual_sums: Vec<u64>,
    /// `Σ_i Σ_t HF(T/J_i, t) - r + 1`.
    pub corrected_sum: u64,
    pub tails_vanish: bool,
}

impl ClaimReport {
    pub fn passed(&self) -> bool {
        self.tails_vanish && self.intersection_sum == self.corrected_sum
    }
}

/// Checks `Σ HF(T/∩J_i) = Σ_i Σ HF(T/J_i) - r + 1` for monomial ideals whose
/// pairwise sums are the maximal ideal.
///
/// With `t_max = None` the summation bound is one past the largest possible
/// socle degree of the intersection, so every tail is zero.
pub fn verify_claim_identity(ideals: &[MonomialIdeal], t_max: Option<u32>) -> Result<ClaimReport, Error> {
    let first = ideals
        .first()
        .ok_or_else(|| Error::Precondition("need at least one ideal".into()))?;
    let n = first.num_vars();
    for (i, j) in ideals.iter().enumerate() {
        if j.num_vars() != n {
            return Err(Error::Precondition(format!(
                "ideal {i} lives in {} variables, expected {n}",
                j.num_vars()
            )));
        }
        if !j.is_artinian() {
            return Err(Error::Precondition(format!(
                "ideal {i} contains no pure power of some variable"
            )));
        }
    }
    for (i, a) in ideals.iter().enumerate() {
        for (j, b) in ideals.iter().enumerate().skip(i + 1) {
            if let Some(v) = (0..n).find(|&v| !a.contains_variable(v) && !b.contains_variable(v)) {
                return Err(Error::Precondition(format!(
                    "J_{} + J_{} is not the maximal ideal: variable {v} is missing",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    let intersection = ideals[1..]
        .iter()
        .fold(first.clone(), |acc, j| acc.intersect(j));
    let t_max = t_max.unwrap_or_else(|| intersection.top_degree_bound().expect("artinian") + 1);
    let inter_table = HilbertFunctionTable::new(&intersection, t_max);
    let tables: Vec<HilbertFunctionTable> = ideals
        .iter()
        .map(|j| HilbertFunctionTable::new(j, t_max))
        .collect();
    let tails_vanish = inter_table.tail_vanishes() && tables.iter().all(|t| t.tail_vanishes());
    let individual_sums: Vec<u64> = tables.iter().map(HilbertFunctionTable::total).collect();
    let corrected_sum = individual_sums.iter().sum::<u64>() + 1 - ideals.len() as u64;
    Ok(ClaimReport {
        t_max,
        intersection_sum: inter_table.total(),
        individual_sums,
        corrected_sum,
        tails_vanish,
    })
}

/// Builds the ideals `J_1, …, J_r` for blocks of variables laid out one
/// after another. Each block lists its exponents; the block's first variable
/// enters linearly, the others as `X^{a+1}`, and every variable outside the
/// block is a generator.
pub fn claim_ideals(blocks: &[Vec<u32>]) -> Vec<MonomialIdeal> {
    let n: usize = blocks.iter().map(Vec::len).sum();
    let mut offset = 0;
    blocks
        .iter()
        .map(|block| {
            let start = offset;
            offset += block.len();
            let gens = (0..n).map(|v| {
                let mut e = vec![0; n];
                e[v] = if v > start && v < start + block.len() {
                    block[v - start] + 1
                } else {
                    1
                };
                e
            });
            MonomialIdeal::new(n, gens)
        })
        .collect()
}

/// The ideals `J_i` for a coprime form, over the form's namespace, with each
/// monomial's least-exponent variable as the linear generator.
pub fn claim_ideals_for_form(form: &CoprimeForm) -> Vec<MonomialIdeal> {
    let vars = form.variables();
    let n = vars.len();
    form.monomials()
        .iter()
        .map(|m| {
            let least = m.least_variable();
            let gens = vars.iter().enumerate().map(|(j, &v)| {
                let a = m.exponent_of(v);
                let mut e = vec![0; n];
                e[j] = if a == 0 || v == least { 1 } else { a + 1 };
                e
            });
            MonomialIdeal::new(n, gens.collect::<Vec<_>>())
        })
        .collect()
}

/// Whether `operator` annihilates `F` under the differentiation action.
pub fn annihilator_membership(operator: &Polynomial<Rational>, form: &CoprimeForm) -> bool {
    apply_differential(operator, &form.to_polynomial()).is_zero()
}

/// `annihilator_membership` for every binomial of the complete-intersection
/// point ideal of a monomial, against that monomial.
pub fn ci_ideal_is_apolar(monomial: &forms::Monomial) -> bool {
    let target: Polynomial<Rational> = monomial.to_polynomial();
    forms::ci_point_ideal(monomial)
        .iter()
        .all(|g| apply_differential(g, &target).is_zero())
}
