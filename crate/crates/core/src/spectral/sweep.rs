//! Negative Paneitz eigenvalues across `k` and `t`.

use crate::algebra::Rational;
use crate::crops::connection_data;
use crate::error::{CrError, Result};
use crate::exec::Execution;

use super::eigen::{generalized_eigenvalues, SpectrumReport};
use super::matrix::{assemble_on_basis, MatrixPair};
use super::vk::{build_vk, SeedChoice};

#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub k: usize,
    pub t: Rational,
    /// Total degree `2k − 1` of the functions in `V_k`.
    pub degree: u32,
    pub spectrum: SpectrumReport,
    pub pair: MatrixPair,
}

impl SweepRow {
    pub fn most_negative(&self) -> Option<f64> {
        self.spectrum.eigenvalues.first().copied().filter(|x| *x < 0.0)
    }

    /// `det < 0` and exactly one negative eigenvalue.
    pub fn reproduces(&self) -> bool {
        self.spectrum.det_sign == -1 && self.spectrum.negative_count == 1
    }
}

/// Rows ordered by `t` (input order), then `k = 1..=k_max`.
pub fn negative_spectrum_sweep(
    ts: &[Rational],
    k_max: usize,
    precision: usize,
    seed: &SeedChoice,
    exec: Execution,
) -> Result<Vec<SweepRow>> {
    if k_max == 0 {
        return Err(CrError::InvalidParameter("kmax must be at least 1".into()));
    }
    let mut geoms = Vec::with_capacity(ts.len());
    for t in ts {
        if t.is_zero() {
            return Err(CrError::InvalidParameter(
                "t = 0 is the standard sphere, not a Rossi sphere".into(),
            ));
        }
        geoms.push(connection_data(t)?);
    }
    let bases = (1..=k_max).map(|k| build_vk(k, seed)).collect::<Result<Vec<_>>>()?;
    let jobs: Vec<(usize, usize)> = (0..geoms.len())
        .flat_map(|ti| (0..k_max).map(move |ki| (ti, ki)))
        .collect();
    exec.map(&jobs, |(ti, ki)| {
        let geom = &geoms[*ti];
        let vk = &bases[*ki];
        let pair = assemble_on_basis(vk, geom, exec)?;
        let spectrum = generalized_eigenvalues(&pair, precision)?;
        Ok(SweepRow {
            k: vk.k,
            t: geom.t().clone(),
            degree: (2 * vk.k - 1) as u32,
            spectrum,
            pair,
        })
    })
    .into_iter()
    .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::ratio;

    #[test]
    fn k1_closed_form() {
        let rows = negative_spectrum_sweep(&[ratio(1, 3)], 1, 128, &SeedChoice::Default, Execution::default()).unwrap();
        assert!((rows[0].spectrum.eigenvalues[0] + 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(rows[0].spectrum.exact_det, "-1/3");
    }

    #[test]
    fn small_sweep_reproduces() {
        let rows = negative_spectrum_sweep(&[ratio(1, 2)], 4, 128, &SeedChoice::Default, Execution::default()).unwrap();
        assert_eq!(rows.len(), 4);
        assert!(rows.iter().all(SweepRow::reproduces));
        assert_eq!(rows.iter().map(|r| r.degree).collect::<Vec<_>>(), vec![1, 3, 5, 7]);
    }

    #[test]
    fn rejects_standard_sphere() {
        let r = negative_spectrum_sweep(&[ratio(0, 1)], 2, 128, &SeedChoice::Default, Execution::default());
        assert!(matches!(r, Err(CrError::InvalidParameter(_))));
    }
}
