//! Exact spectral computations for the Kohn Laplacian and the CR Paneitz
//! operator on the standard CR 3-sphere and the Rossi spheres `S³_t`.
//!
//! Everything up to determinants and ranks is exact rational arithmetic over
//! `ℚ(i)`; floating point enters only in the final generalized eigensolve.

#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod cli;
pub mod crops;
pub mod error;
pub mod exec;
pub mod harmonics;
pub mod linalg;
pub mod spectral;

pub use error::{CrError, Result};
