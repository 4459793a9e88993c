//! Exact arithmetic: Gaussian rationals, multivariate polynomials, rational
//! functions, and the scalar-expression mini-language.

mod expr;
mod gaussian;
mod poly;
mod ratfunc;
mod vars;

pub use expr::{param_set, parse_expr, parse_scalar, ExprError, ScalarExpr};
pub use gaussian::GaussianRational;
pub use poly::{Monomial, Polynomial};
pub use ratfunc::{Scalar, ScalarError};
pub use vars::Var;
