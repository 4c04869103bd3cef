//! Exact arithmetic kernel: prime fields, monomials, polynomials, free-module
//! vectors and Gröbner bases.

pub mod field;
pub mod groebner;
pub mod monomial;
pub mod order;
pub mod parse;
pub mod poly;
pub mod vector;

pub use field::{Coeff, PrimeField};
pub use groebner::{apply_columns, buchberger, kernel, mingens, normal_form, syzygy_matrix, GbLimits, GroebnerBasis};
pub use monomial::{Monomial, MAX_VARS};
pub use order::TermOrder;
pub use parse::parse_polynomial;
pub use poly::Polynomial;
pub use vector::{FreeVector, Term};
