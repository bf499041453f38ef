//! Vector fields on ℂ² with polynomial coefficients, and the admissible
//! frame `Z₁(t), Z₁̄(t), T` of the Rossi sphere.

use crate::algebra::{GaussianRational, Polynomial, Var};
use crate::harmonics::SphereFunction;

use super::geometry::RossiGeometry;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FrameTag {
    /// `Z₁(t) = Z₁ + t Z₁̄`.
    Z1t,
    /// `Z₁̄(t) = Z₁̄ + t Z₁`, the conjugate of `Z₁(t)`.
    Z1bart,
    /// The Reeb field `T`.
    Reeb,
}

impl FrameTag {
    pub const ALL: [FrameTag; 3] = [FrameTag::Z1t, FrameTag::Z1bart, FrameTag::Reeb];
}

/// `Σ c_v ∂_v` over `v ∈ {z, w, z̄, w̄}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorField {
    coeffs: [Polynomial; 4],
}

impl VectorField {
    pub fn new(coeffs: [Polynomial; 4]) -> Self {
        Self { coeffs }
    }

    pub fn coeff(&self, v: Var) -> &Polynomial {
        &self.coeffs[v.index()]
    }

    pub fn coeffs(&self) -> &[Polynomial; 4] {
        &self.coeffs
    }

    /// `Z₁ = w̄ ∂_z − z̄ ∂_w`.
    pub fn z1() -> Self {
        Self::new([
            Polynomial::var(Var::Wb),
            -Polynomial::var(Var::Zb),
            Polynomial::zero(),
            Polynomial::zero(),
        ])
    }

    /// `Z₁̄ = w ∂_z̄ − z ∂_w̄`.
    pub fn z1bar() -> Self {
        Self::z1().conjugate()
    }

    /// `T = i(z ∂_z + w ∂_w − z̄ ∂_z̄ − w̄ ∂_w̄)`.
    pub fn reeb() -> Self {
        let i = GaussianRational::i();
        let mi = -&i;
        Self::new([
            Polynomial::var(Var::Z).scale(&i),
            Polynomial::var(Var::W).scale(&i),
            Polynomial::var(Var::Zb).scale(&mi),
            Polynomial::var(Var::Wb).scale(&mi),
        ])
    }

    pub fn frame(geom: &RossiGeometry, tag: FrameTag) -> Self {
        let t = GaussianRational::real(geom.t().clone());
        match tag {
            FrameTag::Z1t => Self::z1().add(&Self::z1bar().scale(&t)),
            FrameTag::Z1bart => Self::z1bar().add(&Self::z1().scale(&t)),
            FrameTag::Reeb => Self::reeb(),
        }
    }

    /// The conjugate field `X̄ f = conj(X conj(f))`.
    pub fn conjugate(&self) -> Self {
        let mut coeffs: [Polynomial; 4] = Default::default();
        for v in Var::ALL {
            coeffs[v.conj().index()] = self.coeffs[v.index()].conjugate();
        }
        Self::new(coeffs)
    }

    pub fn add(&self, other: &VectorField) -> Self {
        Self::new(std::array::from_fn(|i| &self.coeffs[i] + &other.coeffs[i]))
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        Self::new(std::array::from_fn(|i| self.coeffs[i].scale(c)))
    }

    pub fn apply(&self, f: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for v in Var::ALL {
            let c = &self.coeffs[v.index()];
            if !c.is_zero() {
                out = out + c * &f.derive(v);
            }
        }
        out
    }
}

/// Applies a frame field to a function on `S³` and canonicalizes. Every
/// frame field annihilates `zz̄ + ww̄`, so the result is independent of the
/// ℂ² representative.
pub fn frame_apply(geom: &RossiGeometry, tag: FrameTag, f: &SphereFunction) -> SphereFunction {
    let x = VectorField::frame(geom, tag);
    f.map_linear(|p| x.apply(p))
}
