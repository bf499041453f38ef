//! Degree blocks of the Kohn Laplacian `□_b(t)` on `⊕_{p+q=n} ℋ_{p,q}`.

use serde::Serialize;

use crate::algebra::Rational;
use crate::crops::{connection_data, kohn_laplacian, RossiGeometry};
use crate::error::{CrError, Result};
use crate::exec::Execution;
use crate::harmonics::{harmonic_basis, SphereFunction};

use super::eigen::{generalized_eigenvalues, SpectrumReport};
use super::matrix::{operator_pair, MatrixPair};

/// Concatenated harmonic bases of `ℋ_{n,0}, ℋ_{n−1,1}, …, ℋ_{0,n}`.
pub fn degree_basis(n: u32) -> Vec<SphereFunction> {
    (0..=n)
        .rev()
        .flat_map(|p| {
            let q = n - p;
            harmonic_basis(p, q)
                .basis
                .iter()
                .map(move |e| SphereFunction::harmonic(p, q, e.clone()))
                .collect::<Vec<_>>()
        })
        .collect()
}

pub fn kohn_block_with(geom: &RossiGeometry, n: u32, exec: Execution) -> Result<MatrixPair> {
    operator_pair(&degree_basis(n), exec, |f| Ok(kohn_laplacian(geom, f)))
}

/// `A_ij = ⟨□_b(t) e_j, e_i⟩`, `G_ij = ⟨e_j, e_i⟩` on the degree-`n` basis.
pub fn kohn_block(t: &Rational, n: u32) -> Result<MatrixPair> {
    kohn_block_with(&connection_data(t)?, n, Execution::default())
}

/// Smallest positive eigenvalue over all blocks of degree `≤ degree`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct KohnCutoff {
    pub degree: u32,
    pub min_positive: f64,
}

fn block_spectrum(geom: &RossiGeometry, n: u32, precision: usize, exec: Execution) -> Result<SpectrumReport> {
    let report = generalized_eigenvalues(&kohn_block_with(geom, n, exec)?, precision)?;
    if report.negative_count > 0 {
        return Err(CrError::Inconsistency(format!(
            "Kohn Laplacian block {n} at t = {} has negative eigenvalues",
            geom.t()
        )));
    }
    Ok(report)
}

/// One entry per cutoff `N = 1..=max_degree`. Zero eigenvalues are
/// identified by the exact kernel dimension of each block.
pub fn kohn_min_positive(t: &Rational, max_degree: u32, precision: usize, exec: Execution) -> Result<Vec<KohnCutoff>> {
    let geom = connection_data(t)?;
    let degrees: Vec<u32> = (1..=max_degree).collect();
    let blocks: Vec<Result<SpectrumReport>> = exec.map(&degrees, |n| block_spectrum(&geom, *n, precision, exec));
    let mut out = Vec::with_capacity(degrees.len());
    let mut running = f64::INFINITY;
    for (n, block) in degrees.iter().zip(blocks) {
        let block = block?;
        if let Some(v) = block.eigenvalues.get(block.kernel_dim) {
            running = running.min(*v);
        }
        out.push(KohnCutoff {
            degree: *n,
            min_positive: running,
        });
    }
    Ok(out)
}

/// Spectrum of the degree-`n` block.
pub fn kohn_spectrum(t: &Rational, n: u32, precision: usize) -> Result<SpectrumReport> {
    block_spectrum(&connection_data(t)?, n, precision, Execution::default())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::ratio;

    #[test]
    fn standard_sphere_blocks() {
        let r = kohn_spectrum(&ratio(0, 1), 0, 128).unwrap();
        assert_eq!(r.eigenvalues, vec![0.0]);
        let r = kohn_spectrum(&ratio(0, 1), 1, 128).unwrap();
        assert_eq!(r.eigenvalues, vec![0.0, 0.0, 1.0, 1.0]);
        assert_eq!(r.kernel_dim, 2);
        let r = kohn_spectrum(&ratio(0, 1), 2, 128).unwrap();
        assert_eq!(r.eigenvalues, vec![0.0, 0.0, 0.0, 2.0, 2.0, 2.0, 2.0, 2.0, 2.0]);
    }

    #[test]
    fn rossi_block_one() {
        let r = kohn_spectrum(&ratio(1, 2), 1, 128).unwrap();
        let expect = [1.0 / 3.0, 1.0 / 3.0, 4.0 / 3.0, 4.0 / 3.0];
        for (x, y) in r.eigenvalues.iter().zip(expect) {
            assert!((x - y).abs() < 1e-15);
        }
    }

    #[test]
    fn standard_sphere_min_positive_is_one() {
        let seq = kohn_min_positive(&ratio(0, 1), 4, 128, Execution::default()).unwrap();
        assert!(seq.iter().all(|c| c.min_positive == 1.0));
    }
}
