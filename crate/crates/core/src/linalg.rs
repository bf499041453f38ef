//! Dense exact matrices over `ℚ(i)` with fraction-free elimination.
//!
//! Rows are scaled to Gaussian integers and reduced with Bareiss' algorithm,
//! so every intermediate entry is a minor of the scaled matrix and every
//! division is exact.

use std::fmt;

use dashu_base::{Gcd, UnsignedAbs};
use dashu_int::{IBig, UBig};
use dashu_ratio::RBig;

use crate::algebra::{GaussianRational, Rational};

/// Gaussian integer `re + im·i`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct GaussInt {
    re: IBig,
    im: IBig,
}

impl GaussInt {
    fn zero() -> Self {
        Self {
            re: IBig::ZERO,
            im: IBig::ZERO,
        }
    }

    fn one() -> Self {
        Self {
            re: IBig::ONE,
            im: IBig::ZERO,
        }
    }

    fn is_zero(&self) -> bool {
        self.re == IBig::ZERO && self.im == IBig::ZERO
    }

    fn mul(&self, o: &GaussInt) -> GaussInt {
        GaussInt {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }

    fn sub(&self, o: &GaussInt) -> GaussInt {
        GaussInt {
            re: &self.re - &o.re,
            im: &self.im - &o.im,
        }
    }

    /// Division known to be exact in `ℤ[i]`.
    fn exact_div(&self, d: &GaussInt) -> GaussInt {
        if d.im == IBig::ZERO {
            debug_assert!(&self.re % &d.re == IBig::ZERO && &self.im % &d.re == IBig::ZERO);
            return GaussInt {
                re: &self.re / &d.re,
                im: &self.im / &d.re,
            };
        }
        let norm = &d.re * &d.re + &d.im * &d.im;
        let re = &self.re * &d.re + &self.im * &d.im;
        let im = &self.im * &d.re - &self.re * &d.im;
        debug_assert!(&re % &norm == IBig::ZERO && &im % &norm == IBig::ZERO);
        GaussInt {
            re: re / &norm,
            im: im / norm,
        }
    }

    fn to_gaussian(&self) -> GaussianRational {
        GaussianRational::new(RBig::from(self.re.clone()), RBig::from(self.im.clone()))
    }
}

fn gcd(a: &UBig, b: &UBig) -> UBig {
    if *a == UBig::ZERO {
        b.clone()
    } else if *b == UBig::ZERO {
        a.clone()
    } else {
        a.gcd(b)
    }
}

fn lcm(a: &UBig, b: &UBig) -> UBig {
    let g = a.gcd(b);
    a / g * b
}

/// Result of fraction-free forward elimination.
struct Echelon {
    rows: Vec<Vec<GaussInt>>,
    /// Row `i` of the original matrix was multiplied by `scales[i]` (> 0).
    scales: Vec<UBig>,
    pivot_cols: Vec<usize>,
    swaps: usize,
}

/// Dense row-major matrix with Gaussian-rational entries.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<GaussianRational>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![GaussianRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| {
            if i == j {
                GaussianRational::one()
            } else {
                GaussianRational::zero()
            }
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> GaussianRational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<GaussianRational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &GaussianRational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: GaussianRational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[GaussianRational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[GaussianRational] {
        &self.data
    }

    pub fn conj_transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    pub fn is_hermitian(&self) -> bool {
        self.is_square() && *self == self.conj_transpose()
    }

    pub fn is_real(&self) -> bool {
        self.data.iter().all(GaussianRational::is_real)
    }

    pub fn scale(&self, factor: &GaussianRational) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * factor).collect(),
        }
    }

    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        Matrix::from_fn(self.rows, rhs.cols, |i, j| {
            let mut acc = GaussianRational::zero();
            for k in 0..self.cols {
                let a = self.get(i, k);
                if !a.is_zero() {
                    acc += &(a * rhs.get(k, j));
                }
            }
            acc
        })
    }

    /// Keeps the listed rows and columns, in the given order.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        Matrix::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }

    fn scaled_integer_rows(&self) -> (Vec<Vec<GaussInt>>, Vec<UBig>) {
        let mut rows = Vec::with_capacity(self.rows);
        let mut scales = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let row = self.row(i);
            let mut den = UBig::ONE;
            for x in row {
                den = lcm(&den, x.re.denominator());
                den = lcm(&den, x.im.denominator());
            }
            let scale = RBig::from(den.clone());
            let ints = row
                .iter()
                .map(|x| {
                    let re = (&x.re * &scale).numerator().clone();
                    let im = (&x.im * &scale).numerator().clone();
                    GaussInt { re, im }
                })
                .collect();
            rows.push(ints);
            scales.push(den);
        }
        (rows, scales)
    }

    /// Bareiss elimination. With `pivoting = false` it stops at the first zero
    /// pivot on the diagonal, which is what the leading-minor routines need.
    fn echelon(&self, pivoting: bool) -> Echelon {
        let (mut m, scales) = self.scaled_integer_rows();
        let mut prev = GaussInt::one();
        let mut pivot_cols = Vec::new();
        let mut swaps = 0;
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let pivot = if pivoting {
                (r..self.rows).find(|&i| !m[i][c].is_zero())
            } else if !m[r][c].is_zero() && c == r {
                Some(r)
            } else {
                None
            };
            let Some(p) = pivot else {
                if pivoting {
                    continue;
                }
                break;
            };
            if p != r {
                m.swap(p, r);
                swaps += 1;
            }
            let (upper, lower) = m.split_at_mut(r + 1);
            let prow = &upper[r];
            for row in lower.iter_mut() {
                let factor = row[c].clone();
                for j in c + 1..self.cols {
                    let v = prow[c].mul(&row[j]).sub(&factor.mul(&prow[j]));
                    row[j] = v.exact_div(&prev);
                }
                row[c] = GaussInt::zero();
            }
            prev = m[r][c].clone();
            pivot_cols.push(c);
            r += 1;
        }
        Echelon {
            rows: m,
            scales,
            pivot_cols,
            swaps,
        }
    }

    pub fn rank(&self) -> usize {
        self.echelon(true).pivot_cols.len()
    }

    /// Exact determinant via fraction-free elimination.
    pub fn determinant(&self) -> GaussianRational {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return GaussianRational::one();
        }
        let e = self.echelon(true);
        if e.pivot_cols.len() < n {
            return GaussianRational::zero();
        }
        let mut det = e.rows[n - 1][n - 1].to_gaussian();
        if e.swaps % 2 == 1 {
            det = -det;
        }
        let scale: UBig = e.scales.iter().fold(UBig::ONE, |acc, s| acc * s);
        det.scale(&RBig::from_parts(IBig::ONE, scale))
    }

    /// Leading principal minors `Δ_1, …, Δ_m` up to the first vanishing one
    /// (inclusive of none: a zero minor truncates the list).
    pub fn leading_principal_minors(&self) -> Vec<GaussianRational> {
        assert!(self.is_square());
        let e = self.echelon(false);
        let mut out = Vec::with_capacity(e.pivot_cols.len());
        let mut scale = UBig::ONE;
        for (k, _) in e.pivot_cols.iter().enumerate() {
            scale *= &e.scales[k];
            let minor = e.rows[k][k].to_gaussian();
            out.push(minor.scale(&RBig::from_parts(IBig::ONE, scale.clone())));
        }
        out
    }

    /// Exact Hermitian positive-definiteness via Sylvester's criterion.
    pub fn is_positive_definite(&self) -> bool {
        if !self.is_hermitian() {
            return false;
        }
        let minors = self.leading_principal_minors();
        minors.len() == self.rows
            && minors
                .iter()
                .all(|m| m.is_real() && crate::algebra::rational::is_positive(&m.re))
    }

    /// Number of negative eigenvalues of a Hermitian matrix by Jacobi's rule
    /// (sign changes in `1, Δ_1, …, Δ_n`). `None` when some leading minor
    /// vanishes, where the rule does not apply.
    pub fn negative_inertia(&self) -> Option<usize> {
        if !self.is_hermitian() {
            return None;
        }
        let minors = self.leading_principal_minors();
        if minors.len() < self.rows {
            return None;
        }
        let mut prev = 1;
        let mut changes = 0;
        for m in &minors {
            let s = crate::algebra::rational::sign(&m.re);
            if s != prev {
                changes += 1;
            }
            prev = s;
        }
        Some(changes)
    }

    /// Basis of the right kernel, one vector per free column (free entry = 1).
    pub fn nullspace(&self) -> Vec<Vec<GaussianRational>> {
        let e = self.echelon(true);
        let pivots = &e.pivot_cols;
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Vec::with_capacity(free.len());
        for &f in &free {
            let mut x = vec![GaussianRational::zero(); self.cols];
            x[f] = GaussianRational::one();
            for (i, &pc) in pivots.iter().enumerate().rev() {
                let mut acc = GaussianRational::zero();
                for j in pc + 1..self.cols {
                    if !x[j].is_zero() && !e.rows[i][j].is_zero() {
                        acc += &(&e.rows[i][j].to_gaussian() * &x[j]);
                    }
                }
                let pivot = e.rows[i][pc].to_gaussian();
                x[pc] = (-acc).checked_div(&pivot).expect("nonzero pivot");
            }
            basis.push(x);
        }
        basis
    }

    pub fn apply(&self, v: &[GaussianRational]) -> Vec<GaussianRational> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = GaussianRational::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    acc += &(a * b);
                }
                acc
            })
            .collect()
    }
}

/// Scales a real rational vector to a primitive integer vector whose first
/// nonzero entry is positive. Non-real vectors are returned unchanged.
pub fn primitive_integer_vector(v: &[GaussianRational]) -> Vec<GaussianRational> {
    if !v.iter().all(GaussianRational::is_real) {
        return v.to_vec();
    }
    let den = v.iter().fold(UBig::ONE, |acc, x| lcm(&acc, x.re.denominator()));
    let scaled: Vec<Rational> = v.iter().map(|x| &x.re * RBig::from(den.clone())).collect();
    let g = scaled
        .iter()
        .fold(UBig::ZERO, |acc, x| gcd(&acc, &x.numerator().unsigned_abs()));
    if g == UBig::ZERO {
        return v.to_vec();
    }
    let mut factor = RBig::from_parts(IBig::ONE, g);
    if let Some(first) = scaled.iter().find(|x| !x.is_zero()) {
        if crate::algebra::rational::is_negative(first) {
            factor = -factor;
        }
    }
    scaled.iter().map(|x| GaussianRational::real(x * &factor)).collect()
}
