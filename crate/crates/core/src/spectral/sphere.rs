//! Exact eigenvalue laws on the standard sphere `t = 0`.

use dashu_ratio::RBig;
use serde::Serialize;

use crate::algebra::rational::to_ratio_string;
use crate::algebra::{GaussianRational, Rational};
use crate::crops::{connection_data, kohn_laplacian, paneitz};
use crate::error::Result;
use crate::exec::Execution;
use crate::harmonics::{harmonic_basis, SphereFunction};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SphereBlock {
    pub p: u32,
    pub q: u32,
    pub dim: usize,
    /// Eigenvalue of `P(0)` on `ℋ_{p,q}`; absent if `P(0)` is not scalar there.
    pub paneitz_eigenvalue: Option<String>,
    pub kohn_eigenvalue: Option<String>,
    /// `P(0) = pq(p+1)(q+1)` on `ℋ_{p,q}`.
    pub paneitz_law: bool,
    /// `□_b = q(p+1)` on `ℋ_{p,q}`.
    pub kohn_law: bool,
    pub in_kernel: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SphereReport {
    pub max_degree: u32,
    pub blocks: Vec<SphereBlock>,
    pub nonnegative: bool,
    /// The kernel of `P(0)` is exactly `⊕ ℋ_{p,q}` with `pq = 0`.
    pub kernel_is_pluriharmonic: bool,
    pub kohn_min_positive: Option<String>,
    /// `Scal/2`.
    pub kohn_bound: String,
    pub passed: bool,
}

/// The scalar `λ` with `op(e) = λe` for every basis element, if there is one.
fn scalar_on(basis: &[SphereFunction], images: &[SphereFunction]) -> Option<GaussianRational> {
    let mut value: Option<GaussianRational> = None;
    for (e, img) in basis.iter().zip(images) {
        let lambda = img.inner_product(e).checked_div(&e.inner_product(e)).ok()?;
        if *img != e.scale(&lambda) || value.as_ref().is_some_and(|v| *v != lambda) {
            return None;
        }
        value = Some(lambda);
    }
    value
}

fn block(p: u32, q: u32) -> Result<(SphereBlock, Option<Rational>)> {
    let geom = connection_data(&RBig::ZERO)?;
    let basis: Vec<SphereFunction> = harmonic_basis(p, q)
        .basis
        .iter()
        .map(|e| SphereFunction::harmonic(p, q, e.clone()))
        .collect();
    let pimg = basis.iter().map(|e| paneitz(&geom, e)).collect::<Result<Vec<_>>>()?;
    let kimg: Vec<_> = basis.iter().map(|e| kohn_laplacian(&geom, e)).collect();
    let pl = scalar_on(&basis, &pimg).and_then(|x| x.to_real().ok());
    let kl = scalar_on(&basis, &kimg).and_then(|x| x.to_real().ok());
    let (pp, qq) = (p as i64, q as i64);
    let p_law = RBig::from(pp * qq * (pp + 1) * (qq + 1));
    let k_law = RBig::from(qq * (pp + 1));
    let block = SphereBlock {
        p,
        q,
        dim: basis.len(),
        paneitz_eigenvalue: pl.as_ref().map(to_ratio_string),
        kohn_eigenvalue: kl.as_ref().map(to_ratio_string),
        paneitz_law: pl.as_ref() == Some(&p_law),
        kohn_law: kl.as_ref() == Some(&k_law),
        in_kernel: pl.as_ref().is_some_and(|x| x.is_zero()),
    };
    Ok((block, pl.zip(kl).map(|(_, k)| k)))
}

/// Checks the `t = 0` laws on every `ℋ_{p,q}` with `p + q ≤ max_degree`.
pub fn standard_sphere_report(max_degree: u32, exec: Execution) -> Result<SphereReport> {
    let keys: Vec<(u32, u32)> = (0..=max_degree)
        .flat_map(|n| (0..=n).map(move |p| (p, n - p)))
        .collect();
    let results = exec
        .map(&keys, |(p, q)| block(*p, *q))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let mut blocks = Vec::with_capacity(results.len());
    let mut kohn_min: Option<Rational> = None;
    for (b, kohn) in results {
        if let Some(k) = kohn.filter(|k| !k.is_zero()) {
            if kohn_min.as_ref().is_none_or(|m| k < *m) {
                kohn_min = Some(k);
            }
        }
        blocks.push(b);
    }
    let nonnegative = blocks
        .iter()
        .all(|b| b.paneitz_law && !b.paneitz_eigenvalue.as_deref().unwrap_or("-").starts_with('-'));
    let kernel_is_pluriharmonic = blocks.iter().all(|b| b.in_kernel == (b.p * b.q == 0));
    let bound = connection_data(&RBig::ZERO)?.scal() / RBig::from(2);
    let passed = nonnegative
        && kernel_is_pluriharmonic
        && blocks.iter().all(|b| b.kohn_law)
        && (max_degree == 0 || kohn_min.as_ref() == Some(&bound));
    Ok(SphereReport {
        max_degree,
        blocks,
        nonnegative,
        kernel_is_pluriharmonic,
        kohn_min_positive: kohn_min.as_ref().map(to_ratio_string),
        kohn_bound: to_ratio_string(&bound),
        passed,
    })
}
