//! Invariant subspaces, matrix pairs and spectra.

pub mod eigen;
pub mod kohn;
pub mod matrix;
pub mod sphere;
pub mod sweep;
pub mod vk;

pub use eigen::{generalized_eigenvalues, SpectrumReport, DEFAULT_PRECISION};
pub use kohn::{degree_basis, kohn_block, kohn_block_with, kohn_min_positive, kohn_spectrum, KohnCutoff};
pub use matrix::{assemble_on_basis, assemble_paneitz_matrix, det_sign, k1_closed_form, operator_pair, MatrixPair};
pub use sphere::{standard_sphere_report, SphereBlock, SphereReport};
pub use sweep::{negative_spectrum_sweep, SweepRow};
pub use vk::{build_vk, c_k, norm_ratio, vk_bidegree, SeedChoice, VkBasis};
