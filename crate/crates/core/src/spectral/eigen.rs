//! Generalized Hermitian eigenvalues of `(A, G)` in binary floating point of
//! configurable precision.
//!
//! `G = LLᵀ` by Cholesky, `H = L⁻¹AL⁻ᵀ`, then cyclic Jacobi on `H`. A complex
//! Hermitian pair is replaced by its real symmetric embedding
//! `[[X, −Y], [Y, X]]`, whose eigenvalues are those of the pair, doubled.
//! Pairs that decouple into independent blocks are solved block by block.

use dashu_base::SquareRoot;
use dashu_float::round::mode::HalfEven;
use dashu_float::FBig;
use serde::Serialize;

use crate::algebra::rational::{self, to_ratio_string};
use crate::algebra::{GaussianRational, Rational};
use crate::error::{CrError, Result};
use crate::linalg::Matrix;

use super::matrix::MatrixPair;

type F = FBig<HalfEven, 2>;

pub const DEFAULT_PRECISION: usize = 128;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectrumReport {
    /// Generalized eigenvalues, ascending.
    pub eigenvalues: Vec<f64>,
    /// Eigenvalues below `−ε`, `ε = 2^{−precision/2} · max|H_ij|`.
    pub negative_count: usize,
    /// Exact sign of `det(A)/det(G)`.
    pub det_sign: i32,
    /// `dim − rank(A)`, exact.
    pub kernel_dim: usize,
    /// Exact `det(A)/det(G)` as `p/q`.
    pub exact_det: String,
    /// Number of negative eigenvalues from the signs of leading principal
    /// minors, when none of them vanishes.
    pub exact_negative_count: Option<usize>,
}

fn fzero(prec: usize) -> F {
    F::from(0u8).with_precision(prec).value()
}

fn to_float(r: &Rational, prec: usize) -> F {
    let num = F::from(r.numerator().clone()).with_precision(prec).value();
    let den = F::from(r.denominator().clone()).with_precision(prec).value();
    num / den
}

fn abs(x: &F) -> F {
    if x.sign() == dashu_base::Sign::Negative {
        -x.clone()
    } else {
        x.clone()
    }
}

fn to_f64(x: &F) -> f64 {
    x.to_f64().value()
}

/// Real symmetric matrix of the pair, embedding the complex case.
fn real_form(m: &Matrix, complex: bool, prec: usize) -> Vec<Vec<F>> {
    let n = m.rows();
    let size = if complex { 2 * n } else { n };
    let mut out = vec![vec![fzero(prec); size]; size];
    for i in 0..n {
        for j in 0..n {
            let e = m.get(i, j);
            let x = to_float(&e.re, prec);
            out[i][j] = x.clone();
            if complex {
                let y = to_float(&e.im, prec);
                out[i + n][j + n] = x;
                out[i][j + n] = -y.clone();
                out[i + n][j] = y;
            }
        }
    }
    out
}

fn cholesky(g: &[Vec<F>], prec: usize) -> Result<Vec<Vec<F>>> {
    let n = g.len();
    let mut l = vec![vec![fzero(prec); n]; n];
    for j in 0..n {
        let mut d = g[j][j].clone();
        for k in 0..j {
            d -= &l[j][k] * &l[j][k];
        }
        if d.sign() == dashu_base::Sign::Negative || d == fzero(prec) {
            return Err(CrError::NotPositiveDefinite("Cholesky pivot is not positive".into()));
        }
        let d = d.sqrt();
        for i in (j + 1)..n {
            let mut s = g[i][j].clone();
            for k in 0..j {
                s -= &l[i][k] * &l[j][k];
            }
            l[i][j] = s / &d;
        }
        l[j][j] = d;
    }
    Ok(l)
}

/// `L⁻¹ M` by forward substitution.
fn forward_solve(l: &[Vec<F>], m: &[Vec<F>]) -> Vec<Vec<F>> {
    let n = l.len();
    let cols = m[0].len();
    let mut x = m.to_vec();
    for c in 0..cols {
        for i in 0..n {
            let mut s = x[i][c].clone();
            for k in 0..i {
                s -= &l[i][k] * &x[k][c];
            }
            x[i][c] = s / &l[i][i];
        }
    }
    x
}

fn transpose(m: &[Vec<F>]) -> Vec<Vec<F>> {
    let (r, c) = (m.len(), m[0].len());
    (0..c).map(|j| (0..r).map(|i| m[i][j].clone()).collect()).collect()
}

/// Eigenvalues of a real symmetric matrix by cyclic Jacobi rotations.
fn jacobi(mut a: Vec<Vec<F>>, prec: usize) -> Vec<F> {
    let n = a.len();
    let tiny = F::from_parts(1.into(), -(prec as isize));
    let one = F::from(1u8).with_precision(prec).value();
    let two = F::from(2u8).with_precision(prec).value();
    let mut scale = fzero(prec);
    for row in &a {
        for x in row {
            scale += x * x;
        }
    }
    let tol = &tiny * &tiny * &scale;
    for _sweep in 0..100 {
        let mut off = fzero(prec);
        for p in 0..n {
            for q in (p + 1)..n {
                off += &a[p][q] * &a[p][q];
            }
        }
        if off <= tol {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p][q].clone();
                if abs(&apq) <= &tiny * &abs(&a[p][p]).max(abs(&a[q][q])) || apq == fzero(prec) {
                    a[p][q] = fzero(prec);
                    a[q][p] = fzero(prec);
                    continue;
                }
                let theta = (&a[q][q] - &a[p][p]) / (&two * &apq);
                let root = (&theta * &theta + &one).sqrt();
                let t = if theta.sign() == dashu_base::Sign::Negative {
                    -(&one / (abs(&theta) + root))
                } else {
                    &one / (abs(&theta) + root)
                };
                let c = &one / (&t * &t + &one).sqrt();
                let s = &t * &c;
                a[p][p] = &a[p][p] - &t * &apq;
                a[q][q] = &a[q][q] + &t * &apq;
                a[p][q] = fzero(prec);
                a[q][p] = fzero(prec);
                for r in 0..n {
                    if r == p || r == q {
                        continue;
                    }
                    let g = a[r][p].clone();
                    let h = a[r][q].clone();
                    let rp = &c * &g - &s * &h;
                    let rq = &s * &g + &c * &h;
                    a[p][r] = rp.clone();
                    a[r][p] = rp;
                    a[q][r] = rq.clone();
                    a[r][q] = rq;
                }
            }
        }
    }
    let mut eig: Vec<F> = (0..n).map(|i| a[i][i].clone()).collect();
    eig.sort_by(|x, y| x.partial_cmp(y).unwrap());
    eig
}

/// Index sets of the blocks into which `(A, G)` decouples.
fn components(pair: &MatrixPair) -> Vec<Vec<usize>> {
    let n = pair.dim();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        parent[x] = r;
        r
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if !pair.a.get(i, j).is_zero() || !pair.g.get(i, j).is_zero() {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                parent[ri.max(rj)] = ri.min(rj);
            }
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for i in 0..n {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(i);
    }
    groups.into_values().collect()
}

struct BlockResult {
    eigenvalues: Vec<F>,
    max_entry: F,
    rank: usize,
    det_a: GaussianRational,
    det_g: GaussianRational,
    inertia: Option<usize>,
}

fn solve_block(pair: &MatrixPair, prec: usize) -> Result<BlockResult> {
    if !pair.g.is_positive_definite() {
        return Err(CrError::NotPositiveDefinite(
            "leading principal minor of G is not positive".into(),
        ));
    }
    if !pair.a.is_hermitian() {
        return Err(CrError::InvalidParameter("operator matrix is not Hermitian".into()));
    }
    let complex = !(pair.a.is_real() && pair.g.is_real());
    let a = real_form(&pair.a, complex, prec);
    let g = real_form(&pair.g, complex, prec);
    let l = cholesky(&g, prec)?;
    let m = forward_solve(&l, &a);
    let h = forward_solve(&l, &transpose(&m));
    let n = h.len();
    let mut sym = vec![vec![fzero(prec); n]; n];
    let mut max_entry = fzero(prec);
    for i in 0..n {
        for j in 0..n {
            let v = (&h[i][j] + &h[j][i]) / F::from(2u8);
            max_entry = max_entry.max(abs(&v));
            sym[i][j] = v;
        }
    }
    let mut eigenvalues = jacobi(sym, prec);
    if complex {
        eigenvalues = eigenvalues.into_iter().step_by(2).collect();
    }
    Ok(BlockResult {
        eigenvalues,
        max_entry,
        rank: pair.a.rank(),
        det_a: pair.a.determinant(),
        det_g: pair.g.determinant(),
        inertia: pair.a.negative_inertia(),
    })
}

/// Spectrum of `G⁻¹A` at `precision` bits, with exact determinant and rank.
pub fn generalized_eigenvalues(pair: &MatrixPair, precision: usize) -> Result<SpectrumReport> {
    if precision < 64 {
        return Err(CrError::InvalidParameter(format!("precision {precision} < 64 bits")));
    }
    let n = pair.dim();
    let mut eigenvalues = Vec::with_capacity(n);
    let mut max_entry = fzero(precision);
    let mut rank = 0;
    let mut det_a = GaussianRational::one();
    let mut det_g = GaussianRational::one();
    let mut inertia = Some(0);
    for block in components(pair) {
        let sub = pair.permuted(&block);
        let r = solve_block(&sub, precision)?;
        eigenvalues.extend(r.eigenvalues);
        max_entry = max_entry.max(r.max_entry);
        rank += r.rank;
        det_a = &det_a * &r.det_a;
        det_g = &det_g * &r.det_g;
        inertia = inertia.zip(r.inertia).map(|(x, y)| x + y);
    }
    eigenvalues.sort_by(|x, y| x.partial_cmp(y).unwrap());
    let eps = F::from_parts(1.into(), -((precision / 2) as isize)) * &max_entry;
    let negative_count = eigenvalues.iter().filter(|x| **x < -eps.clone()).count();
    let ratio = det_a.checked_div(&det_g)?;
    let exact_det = ratio
        .to_real()
        .map_err(|_| CrError::Inconsistency(format!("non-real determinant ratio {ratio}")))?;
    Ok(SpectrumReport {
        eigenvalues: eigenvalues.iter().map(to_f64).collect(),
        negative_count,
        det_sign: rational::sign(&exact_det),
        kernel_dim: n - rank,
        exact_det: to_ratio_string(&exact_det),
        exact_negative_count: inertia,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair(a: &[&[i64]], g: &[&[i64]]) -> MatrixPair {
        let m = |rows: &[&[i64]]| {
            Matrix::from_rows(
                rows.iter()
                    .map(|r| r.iter().map(|x| GaussianRational::from_int(*x)).collect())
                    .collect(),
            )
        };
        MatrixPair { a: m(a), g: m(g) }
    }

    #[test]
    fn diagonal_pair() {
        let p = pair(&[&[3, 0], &[0, -4]], &[&[1, 0], &[0, 2]]);
        let r = generalized_eigenvalues(&p, 128).unwrap();
        assert_eq!(r.eigenvalues, vec![-2.0, 3.0]);
        assert_eq!(r.negative_count, 1);
        assert_eq!(r.det_sign, -1);
        assert_eq!(r.exact_det, "-6/1");
        assert_eq!(r.exact_negative_count, Some(1));
    }

    #[test]
    fn dense_symmetric() {
        // Eigenvalues of [[2,1],[1,2]] are 1 and 3.
        let p = pair(&[&[2, 1], &[1, 2]], &[&[1, 0], &[0, 1]]);
        let r = generalized_eigenvalues(&p, 128).unwrap();
        assert!((r.eigenvalues[0] - 1.0).abs() < 1e-15 && (r.eigenvalues[1] - 3.0).abs() < 1e-15);
        // 3x3 with a kernel: rank-1 all-ones matrix.
        let p = pair(
            &[&[1, 1, 1], &[1, 1, 1], &[1, 1, 1]],
            &[&[2, 1, 0], &[1, 2, 1], &[0, 1, 2]],
        );
        let r = generalized_eigenvalues(&p, 128).unwrap();
        assert_eq!(r.kernel_dim, 2);
        assert_eq!(r.negative_count, 0);
        assert!(r.eigenvalues[0].abs() < 1e-30 && r.eigenvalues[1].abs() < 1e-30);
        // Generalized eigenvalue 1ᵀG⁻¹1 = 1 (G⁻¹ = [[3,-2,1],[-2,4,-2],[1,-2,3]]/4).
        assert!((r.eigenvalues[2] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn complex_hermitian() {
        // [[2, i], [-i, 2]] has eigenvalues 1 and 3.
        let a = Matrix::from_rows(vec![
            vec![GaussianRational::from_int(2), GaussianRational::i()],
            vec![-GaussianRational::i(), GaussianRational::from_int(2)],
        ]);
        let p = MatrixPair {
            a,
            g: Matrix::identity(2),
        };
        let r = generalized_eigenvalues(&p, 128).unwrap();
        assert_eq!(r.eigenvalues.len(), 2);
        assert!((r.eigenvalues[0] - 1.0).abs() < 1e-15 && (r.eigenvalues[1] - 3.0).abs() < 1e-15);
        assert_eq!(r.exact_det, "3/1");
    }

    #[test]
    fn rejects_indefinite_gram() {
        let p = pair(&[&[1, 0], &[0, 1]], &[&[1, 2], &[2, 1]]);
        assert!(matches!(
            generalized_eigenvalues(&p, 128),
            Err(CrError::NotPositiveDefinite(_))
        ));
        assert!(generalized_eigenvalues(&p, 32).is_err());
    }
}
