//! Operator/Gram matrix pairs and exact determinant data.

use dashu_ratio::RBig;

use crate::algebra::rational::{self, to_ratio_string};
use crate::algebra::{GaussianRational, Rational};
use crate::crops::{connection_data, paneitz, RossiGeometry};
use crate::error::{CrError, Result};
use crate::exec::Execution;
use crate::harmonics::{gram_matrix, SphereFunction};
use crate::linalg::Matrix;

use super::vk::{build_vk, SeedChoice, VkBasis};

/// Hermitian operator matrix `A` and Gram matrix `G` for one basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixPair {
    pub a: Matrix,
    pub g: Matrix,
}

impl MatrixPair {
    pub fn dim(&self) -> usize {
        self.a.rows()
    }

    /// Both matrices scaled by `s`, as from rescaling the measure.
    pub fn scaled(&self, s: &Rational) -> MatrixPair {
        let s = GaussianRational::real(s.clone());
        MatrixPair {
            a: self.a.scale(&s),
            g: self.g.scale(&s),
        }
    }

    /// Basis reordered so that new index `i` is old index `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> MatrixPair {
        MatrixPair {
            a: self.a.submatrix(perm, perm),
            g: self.g.submatrix(perm, perm),
        }
    }

    /// Exact `det(A)/det(G)`.
    pub fn exact_det(&self) -> Result<Rational> {
        let det_g = self.g.determinant();
        if det_g.is_zero() {
            return Err(CrError::NotPositiveDefinite("Gram matrix is singular".into()));
        }
        let ratio = self.a.determinant().checked_div(&det_g)?;
        ratio
            .to_real()
            .map_err(|_| CrError::Inconsistency(format!("non-real determinant ratio {ratio}")))
    }
}

/// Exact sign of `det(A)/det(G)`.
pub fn det_sign(pair: &MatrixPair) -> Result<i32> {
    Ok(rational::sign(&pair.exact_det()?))
}

/// Matrix of `(1 − t²)² P(t)` on a `V_k` basis. Every image `P(t)u_j` is
/// re-expanded in the `u_i`; a nonzero remainder is an invariance violation.
pub fn assemble_on_basis(vk: &VkBasis, geom: &RossiGeometry, exec: Execution) -> Result<MatrixPair> {
    let funcs = vk.functions();
    let gram = gram_matrix(&vk.vectors);
    let l2 = geom.l() * geom.l();
    let columns: Vec<Result<Vec<GaussianRational>>> = exec.map(&funcs, |u| {
        let image = paneitz(geom, u)?.scale_rational(&l2);
        let mut column = Vec::with_capacity(funcs.len());
        let mut residual = image.clone();
        for (i, ui) in funcs.iter().enumerate() {
            let entry = image.inner_product(ui);
            let coeff = entry.checked_div(&gram.get(i, i).clone())?;
            residual = residual.sub(&ui.scale(&coeff));
            column.push(entry);
        }
        if !residual.is_zero() {
            return Err(CrError::InvarianceViolation {
                k: vk.k,
                t: geom.t().clone(),
                residual: residual.to_string(),
            });
        }
        Ok(column)
    });
    let columns: Vec<Vec<GaussianRational>> = columns.into_iter().collect::<Result<_>>()?;
    let n = funcs.len();
    let a = Matrix::from_fn(n, n, |i, j| columns[j][i].clone());
    if !a.is_hermitian() {
        return Err(CrError::Inconsistency(format!(
            "matrix of P on V_{} at t = {} is not Hermitian",
            vk.k,
            to_ratio_string(geom.t())
        )));
    }
    Ok(MatrixPair { a, g: gram })
}

/// `assemble_on_basis` with the default seed `z^{2k−1}`.
pub fn assemble_paneitz_matrix(k: usize, t: &Rational) -> Result<MatrixPair> {
    let geom = connection_data(t)?;
    let vk = build_vk(k, &SeedChoice::Default)?;
    assemble_on_basis(&vk, &geom, Execution::default())
}

/// `P(t)` restricted to functions of one degree, as a matrix pair on a list
/// of basis functions. Used by tests and the Kohn blocks.
pub fn operator_pair(
    basis: &[SphereFunction],
    exec: Execution,
    op: impl Fn(&SphereFunction) -> Result<SphereFunction> + Sync + Send,
) -> Result<MatrixPair> {
    let images: Vec<SphereFunction> = exec.map(basis, &op).into_iter().collect::<Result<_>>()?;
    let n = basis.len();
    let rows: Vec<Vec<GaussianRational>> =
        exec.map_range(n, |i| (0..n).map(|j| images[j].inner_product(&basis[i])).collect());
    let grams: Vec<Vec<GaussianRational>> =
        exec.map_range(n, |i| (0..n).map(|j| basis[j].inner_product(&basis[i])).collect());
    Ok(MatrixPair {
        a: Matrix::from_rows(rows),
        g: Matrix::from_rows(grams),
    })
}

/// `det(A)/det(G)` as a `p/q` string.
pub fn exact_det_string(pair: &MatrixPair) -> Result<String> {
    Ok(to_ratio_string(&pair.exact_det()?))
}

/// `−3t²`, the closed form of the `k = 1` eigenvalue.
pub fn k1_closed_form(t: &Rational) -> Rational {
    RBig::from(-3) * t * t
}
