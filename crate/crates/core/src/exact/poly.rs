use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;

use super::{CyclotomicNumber, Field};

/// Exponent vector of a monomial; position `j` is the exponent of variable `j`.
pub type Exponents = Vec<u32>;

/// Sparse multivariate polynomial over an exact field.
///
/// Terms are keyed by exponent vector; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial<C = CyclotomicNumber> {
    num_vars: usize,
    terms: BTreeMap<Exponents, C>,
}

impl<C: Field> Polynomial<C> {
    pub fn zero(num_vars: usize) -> Self {
        Self {
            num_vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms(num_vars: usize, terms: impl IntoIterator<Item = (Exponents, C)>) -> Self {
        let mut p = Self::zero(num_vars);
        for (e, c) in terms {
            p.add_term(e, &c);
        }
        p
    }

    /// The single term `coeff · x^exps`.
    pub fn monomial(exps: Exponents, coeff: C) -> Self {
        let num_vars = exps.len();
        Self::from_terms(num_vars, [(exps, coeff)])
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[u32]) -> C {
        self.terms.get(exps).cloned().unwrap_or_else(C::zero)
    }

    pub fn add_term(&mut self, exps: Exponents, coeff: &C) {
        assert_eq!(exps.len(), self.num_vars, "exponent vector length mismatch");
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().plus(coeff);
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    /// The common total degree of all terms, or `None` if the polynomial is
    /// zero or not homogeneous.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degrees = self.terms.keys().map(|e| e.iter().sum::<u32>());
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), &c.negated());
        }
        out
    }

    pub fn scale(&self, factor: &C) -> Self {
        Self::from_terms(
            self.num_vars,
            self.terms.iter().map(|(e, c)| (e.clone(), c.times(factor))),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.num_vars, other.num_vars);
        let mut out = Self::zero(self.num_vars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, &ca.times(cb));
            }
        }
        out
    }

    pub fn eval(&self, point: &[C]) -> C {
        assert_eq!(point.len(), self.num_vars);
        let mut acc = C::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (x, &k) in point.iter().zip(e) {
                for _ in 0..k {
                    term = term.times(x);
                }
            }
            acc = acc.plus(&term);
        }
        acc
    }

    pub fn map_coeffs<D: Field>(&self, f: impl Fn(&C) -> D) -> Polynomial<D> {
        Polynomial::from_terms(self.num_vars, self.terms.iter().map(|(e, c)| (e.clone(), f(c))))
    }
}

/// All exponent vectors of total degree `degree` in `num_vars` variables,
/// in lexicographically decreasing order (`x_1^d` first).
pub fn monomials_of_degree(num_vars: usize, degree: u32) -> Vec<Exponents> {
    fn fill(prefix: &mut Exponents, remaining: u32, slots: usize, out: &mut Vec<Exponents>) {
        if slots == 1 {
            prefix.push(remaining);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for k in (0..=remaining).rev() {
            prefix.push(k);
            fill(prefix, remaining - k, slots - 1, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if num_vars == 0 {
        if degree == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    fill(&mut Vec::with_capacity(num_vars), degree, num_vars, &mut out);
    out
}

/// The multinomial coefficient `(Σ k_j)! / Π k_j!`.
pub fn multinomial(parts: &[u32]) -> BigInt {
    let mut acc = BigInt::one();
    let mut total: u32 = 0;
    for &k in parts {
        // acc *= C(total + k, k), built up one factor at a time
        for i in 1..=k {
            total += 1;
            acc *= total;
            acc /= i;
        }
    }
    acc
}

/// Expands `(Σ_j c_j x_j)^d` by the multinomial theorem.
pub fn poly_pow_linear<C: Field>(linear: &[C], degree: u32) -> Polynomial<C> {
    let n = linear.len();
    // powers[j][k] = c_j^k
    let powers: Vec<Vec<C>> = linear
        .iter()
        .map(|c| {
            let mut row = Vec::with_capacity(degree as usize + 1);
            row.push(C::one());
            for k in 1..=degree as usize {
                let next = row[k - 1].times(c);
                row.push(next);
            }
            row
        })
        .collect();
    let support: Vec<usize> = (0..n).filter(|&j| !linear[j].is_zero()).collect();
    let mut out = Polynomial::zero(n);
    if support.is_empty() {
        if degree == 0 {
            out.add_term(vec![0; n], &C::one());
        }
        return out;
    }
    for sub in monomials_of_degree(support.len(), degree) {
        let mut coeff = C::from_integer(&multinomial(&sub));
        let mut exps = vec![0; n];
        for (&j, &k) in support.iter().zip(&sub) {
            exps[j] = k;
            if k > 0 {
                coeff = coeff.times(&powers[j][k as usize]);
            }
        }
        out.add_term(exps, &coeff);
    }
    out
}
