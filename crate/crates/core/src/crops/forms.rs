//! Polynomial 1- and 2-forms on ℂ² in the coframe `dz, dw, dz̄, dw̄`, used to
//! check the pseudo-Hermitian structure equations of `S³_t` directly.

use crate::algebra::{GaussianRational, Polynomial, Var};

use super::frame::VectorField;

/// `Σ α_v dv`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct OneForm {
    coeffs: [Polynomial; 4],
}

/// `Σ_{i<j} β_{ij} dx_i ∧ dx_j`, stored as a full antisymmetric table.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct TwoForm {
    coeffs: [[Polynomial; 4]; 4],
}

impl OneForm {
    pub fn new(coeffs: [Polynomial; 4]) -> Self {
        Self { coeffs }
    }

    pub fn coeff(&self, v: Var) -> &Polynomial {
        &self.coeffs[v.index()]
    }

    /// `θ = (i/2)(z dz̄ + w dw̄ − z̄ dz − w̄ dw)`.
    pub fn contact() -> Self {
        let h = GaussianRational::imag(crate::algebra::rational::ratio(1, 2));
        let mh = -&h;
        Self::new([
            Polynomial::var(Var::Zb).scale(&mh),
            Polynomial::var(Var::Wb).scale(&mh),
            Polynomial::var(Var::Z).scale(&h),
            Polynomial::var(Var::W).scale(&h),
        ])
    }

    /// `θ¹ = w dz − z dw` of the standard sphere.
    pub fn standard_theta1() -> Self {
        Self::new([
            Polynomial::var(Var::W),
            -Polynomial::var(Var::Z),
            Polynomial::zero(),
            Polynomial::zero(),
        ])
    }

    pub fn conjugate(&self) -> Self {
        let mut coeffs: [Polynomial; 4] = Default::default();
        for v in Var::ALL {
            coeffs[v.conj().index()] = self.coeffs[v.index()].conjugate();
        }
        Self::new(coeffs)
    }

    pub fn add(&self, other: &OneForm) -> Self {
        Self::new(std::array::from_fn(|i| &self.coeffs[i] + &other.coeffs[i]))
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        Self::new(std::array::from_fn(|i| self.coeffs[i].scale(c)))
    }

    pub fn times(&self, f: &Polynomial) -> Self {
        Self::new(std::array::from_fn(|i| &self.coeffs[i] * f))
    }

    pub fn eval(&self, x: &VectorField) -> Polynomial {
        let mut out = Polynomial::zero();
        for v in Var::ALL {
            out = out + &self.coeffs[v.index()] * x.coeff(v);
        }
        out
    }

    pub fn wedge(&self, other: &OneForm) -> TwoForm {
        TwoForm::from_fn(|i, j| &self.coeffs[i] * &other.coeffs[j] - &self.coeffs[j] * &other.coeffs[i])
    }

    /// Exterior derivative, treating `z, w, z̄, w̄` as independent coordinates.
    pub fn d(&self) -> TwoForm {
        TwoForm::from_fn(|i, j| self.coeffs[j].derive(Var::ALL[i]) - self.coeffs[i].derive(Var::ALL[j]))
    }
}

impl TwoForm {
    fn from_fn(f: impl Fn(usize, usize) -> Polynomial) -> Self {
        let mut coeffs: [[Polynomial; 4]; 4] = Default::default();
        for i in 0..4 {
            for j in (i + 1)..4 {
                let c = f(i, j);
                coeffs[j][i] = -&c;
                coeffs[i][j] = c;
            }
        }
        Self { coeffs }
    }

    pub fn add(&self, other: &TwoForm) -> Self {
        Self::from_fn(|i, j| &self.coeffs[i][j] + &other.coeffs[i][j])
    }

    pub fn sub(&self, other: &TwoForm) -> Self {
        Self::from_fn(|i, j| &self.coeffs[i][j] - &other.coeffs[i][j])
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        Self::from_fn(|i, j| self.coeffs[i][j].scale(c))
    }

    /// `β(X, Y) = Σ_{i<j} β_{ij}(X_i Y_j − X_j Y_i)`.
    pub fn eval(&self, x: &VectorField, y: &VectorField) -> Polynomial {
        let (xc, yc) = (x.coeffs(), y.coeffs());
        let mut out = Polynomial::zero();
        for i in 0..4 {
            for j in (i + 1)..4 {
                let b = &self.coeffs[i][j];
                if b.is_zero() {
                    continue;
                }
                let cross = &xc[i] * &yc[j] - &xc[j] * &yc[i];
                out = out + b * &cross;
            }
        }
        out
    }
}
