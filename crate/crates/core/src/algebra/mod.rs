//! Exact scalars and polynomials in `z, w, z̄, w̄`.

pub mod gaussian;
pub mod polynomial;
pub mod rational;
pub mod text;

pub use gaussian::GaussianRational;
pub use polynomial::{Monomial, Polynomial, Var};
pub use rational::Rational;
