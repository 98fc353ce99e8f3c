//! Exact arithmetic: rationals, cyclotomic fields, sparse multivariate
//! polynomials and Gaussian elimination over any exact field.

mod cyclotomic;
mod linalg;
mod poly;
pub(crate) mod upoly;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub use cyclotomic::{cyclotomic_embed, cyclotomic_polynomial, euler_phi, CyclotomicNumber};
pub use linalg::{nullspace, rank, row_echelon, solve_exact, LinearSystem, SolveError};
pub use poly::{monomials_of_degree, multinomial, poly_pow_linear, Exponents, Polynomial};

/// Arbitrary-precision fraction, always in lowest terms with a positive denominator.
pub type Rational = num_rational::BigRational;

/// Builds the rational `num/den`. Panics if `den` is zero.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Arithmetic needed by the generic elimination and polynomial code.
///
/// Operations take references so big-number coefficients are never moved
/// or cloned unnecessarily.
pub trait Field: Clone + PartialEq + fmt::Debug + Zero + One {
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
    /// Multiplicative inverse, `None` for zero.
    fn inverse(&self) -> Option<Self>;
    /// Embeds an integer.
    fn from_integer(n: &BigInt) -> Self;
}

impl Field for Rational {
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn inverse(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn from_integer(n: &BigInt) -> Self {
        Rational::from_integer(n.clone())
    }
}
