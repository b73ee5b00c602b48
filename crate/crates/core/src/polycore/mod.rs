//! Exact scalar and sparse multivariate polynomial arithmetic.

mod monomial;
mod poly;
mod ratfunc;
mod series;

pub use monomial::Monomial;
pub use poly::{SparsePolynomial, VarTable};
pub use ratfunc::{rf_equal, RationalFunctionPair};
pub use series::{series_mul, TruncatedSeries};

pub(crate) use poly::render_terms;

/// Arbitrary-precision rational, always in lowest terms with a positive
/// denominator.
pub type ExactRational = num_rational::BigRational;

use crate::error::Result;

pub fn poly_add(a: &SparsePolynomial, b: &SparsePolynomial) -> Result<SparsePolynomial> {
    a.checked_add(b)
}

pub fn poly_mul(a: &SparsePolynomial, b: &SparsePolynomial) -> Result<SparsePolynomial> {
    a.checked_mul(b)
}

pub fn evaluate(
    p: &SparsePolynomial,
    assignment: &std::collections::HashMap<String, ExactRational>,
) -> Result<ExactRational> {
    p.evaluate(assignment)
}

pub fn rational(n: i64) -> ExactRational {
    ExactRational::from_integer(n.into())
}
