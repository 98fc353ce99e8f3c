//! Waring rank of monomials and of sums of pairwise coprime monomials.
//!
//! The crate computes ranks in closed form, builds explicit minimal
//! sums-of-powers decompositions over cyclotomic fields, and checks every
//! result by exact expansion and by apolarity-based lower bounds.
//!
//! ```
//! use waring_core::{decompose, forms, rank};
//!
//! let form = forms::parse_form("x0*x1*x2").unwrap();
//! assert_eq!(rank::rank_coprime_sum(&form), 4);
//! let decomposition = decompose::decompose_form(&form).unwrap();
//! assert!(decompose::verify_decomposition(&form, &decomposition).passed());
//! ```

pub mod apolarity;
pub mod decompose;
pub mod exact;
pub mod forms;
pub mod rank;
pub mod serial;

use thiserror::Error;

pub use exact::{CyclotomicNumber, Polynomial, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("root order {root_order} does not divide field order {field_order}")]
    Divisibility { root_order: u32, field_order: u32 },
    #[error(transparent)]
    Parse(#[from] forms::ParseError),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("enumeration of {count} exponent vectors exceeds the cap of {cap}")]
    ResourceBound { count: u128, cap: u128 },
    #[error("internal contradiction while solving for scalars: {0}")]
    InternalContradiction(#[from] exact::SolveError),
    #[error("precondition violated: {0}")]
    Precondition(String),
}
