//! Exact symmetric linear algebra over the rationals: inertia by congruence
//! elimination, determinants, and symbolic determinants of generic weight
//! matrices.

mod inertia;
mod matrix;
mod poly;
mod symbolic;

use thiserror::Error;

pub use inertia::{congruence_inertia, determinant, inertia, inertia_bound, Inertia};
pub(crate) use inertia::integer_rows_inertia;
pub use matrix::{parse_rational, MatrixJson, SymMatrix, WeightMatrix};
pub use poly::{EdgePolynomial, Exponents, Monomial};
pub use symbolic::{symbolic_determinant, LEIBNIZ_MAX_ORDER};

#[doc(hidden)]
pub use symbolic::{bareiss_determinant, leibniz_determinant};

pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("matrix is not square")]
    NotSquare,
    #[error("matrix is not symmetric at ({0}, {1})")]
    NotSymmetric(usize, usize),
    #[error("index {index} out of range for order {n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("duplicate index {0}")]
    DuplicateIndex(usize),
    #[error("duplicate entry ({0}, {1})")]
    DuplicateEntry(usize, usize),
    #[error("nonzero diagonal entry at {0}")]
    DiagonalEntry(usize),
    #[error("weight on non-edge ({0}, {1})")]
    SupportViolation(usize, usize),
    #[error("matrix order {matrix} does not match graph order {graph}")]
    OrderMismatch { matrix: usize, graph: usize },
    #[error("invalid matrix description: {0}")]
    Json(String),
}
