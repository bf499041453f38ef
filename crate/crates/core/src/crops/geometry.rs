//! Pseudo-Hermitian data of the Rossi sphere `S³_t`.
//!
//! The admissible coframe is `θ¹(t) = (θ¹ − t θ^1̄)/(1 − t²)` with
//! `θ¹ = w dz − z dw`. Solving the structure equations against it gives
//!
//! ```text
//! l₁₁̄     = 1 − t²
//! ω₁¹     = −2i(1 + t²)/(1 − t²) · θ
//! A¹_1̄    = 4it/(1 − t²)
//! A₁₁     = −4it
//! A^{1̄1̄}  = −4it/(1 − t²)²
//! Scal    = 2(1 + t²)/(1 − t²)
//! ```
//!
//! These closed forms are checked against the structure equations, as
//! polynomial identities on the sphere, before a geometry is handed out.

use std::collections::HashSet;
use std::sync::{Mutex, OnceLock};

use dashu_ratio::RBig;
use serde::Serialize;

use crate::algebra::rational::{self, to_ratio_string};
use crate::algebra::{GaussianRational, Polynomial, Rational};
use crate::error::{CrError, Result};
use crate::harmonics::{canonicalize, radius_squared};

use super::forms::{OneForm, TwoForm};
use super::frame::{FrameTag, VectorField};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RossiGeometry {
    t: Rational,
    l: Rational,
    omega: GaussianRational,
    torsion_mixed: GaussianRational,
    torsion_a11: GaussianRational,
    torsion_aupbar: GaussianRational,
    scal: Rational,
}

impl RossiGeometry {
    pub fn t(&self) -> &Rational {
        &self.t
    }

    /// `l₁₁̄(t) = 1 − t²`.
    pub fn l(&self) -> &Rational {
        &self.l
    }

    /// Coefficient of `θ` in `ω₁¹(t)`.
    pub fn omega(&self) -> &GaussianRational {
        &self.omega
    }

    /// `A¹_1̄(t)`, the torsion as it appears in `dθ¹`.
    pub fn torsion_mixed(&self) -> &GaussianRational {
        &self.torsion_mixed
    }

    /// `A₁₁(t)`.
    pub fn torsion_a11(&self) -> &GaussianRational {
        &self.torsion_a11
    }

    /// `A^{1̄1̄}(t)`.
    pub fn torsion_aupbar(&self) -> &GaussianRational {
        &self.torsion_aupbar
    }

    /// Tanaka–Webster scalar curvature.
    pub fn scal(&self) -> &Rational {
        &self.scal
    }

    pub fn is_standard(&self) -> bool {
        self.t.is_zero()
    }

    /// A copy with a different connection coefficient. The result is not
    /// validated; it exists for negative controls.
    pub fn with_omega(&self, omega: GaussianRational) -> RossiGeometry {
        RossiGeometry { omega, ..self.clone() }
    }

    /// `ω_α^α(X)` for `α ∈ {1, 1̄}` and a frame field `X`. The connection form
    /// is a multiple of `θ`, so it vanishes on `Z₁(t)` and `Z₁̄(t)`.
    pub fn connection(&self, barred: bool, direction: FrameTag) -> GaussianRational {
        match direction {
            FrameTag::Reeb if barred => self.omega.conj(),
            FrameTag::Reeb => self.omega.clone(),
            _ => GaussianRational::zero(),
        }
    }

    /// `θ¹(t)`.
    pub fn theta1(&self) -> OneForm {
        let inv_l = GaussianRational::real(RBig::ONE / &self.l);
        let t = GaussianRational::real(self.t.clone());
        let base = OneForm::standard_theta1();
        base.add(&base.conjugate().scale(&-t)).scale(&inv_l)
    }

    /// Residuals of the structure equations, each evaluated on the frame.
    pub fn structure_checks(&self) -> Vec<StructureCheck> {
        structure_checks(self)
    }
}

/// Outcome of one structure-equation check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructureCheck {
    pub name: &'static str,
    pub passed: bool,
}

fn vanishes_on_sphere(p: &Polynomial) -> bool {
    canonicalize(p).is_zero()
}

fn structure_checks(g: &RossiGeometry) -> Vec<StructureCheck> {
    let frame: Vec<VectorField> = FrameTag::ALL.iter().map(|tag| VectorField::frame(g, *tag)).collect();
    let (z, zb, reeb) = (&frame[0], &frame[1], &frame[2]);
    let pairs = [(z, zb), (z, reeb), (zb, reeb)];
    let one = Polynomial::one();

    let theta = OneForm::contact();
    let th1 = g.theta1();
    let th1b = th1.conjugate();
    let l = GaussianRational::real(g.l.clone());
    let i = GaussianRational::i();
    let omega_form = theta.scale(&g.omega);
    let all_pairs = |form: &TwoForm| pairs.iter().all(|(x, y)| vanishes_on_sphere(&form.eval(x, y)));

    let levi = theta.d().sub(&th1.wedge(&th1b).scale(&(&i * &l)));
    let first = th1
        .d()
        .sub(&th1.wedge(&omega_form))
        .sub(&theta.wedge(&th1b).scale(&g.torsion_mixed));
    let curvature = omega_form
        .d()
        .sub(&th1.wedge(&th1b).scale(&GaussianRational::real(&g.scal * &g.l)));
    let lowered = &g.torsion_mixed * &l;

    let checks = [
        (
            "frame_tangent",
            frame.iter().all(|x| x.apply(&radius_squared()).is_zero()),
        ),
        ("contact_on_reeb", vanishes_on_sphere(&(theta.eval(reeb) - &one))),
        (
            "contact_annihilates_frame",
            [z, zb].iter().all(|x| vanishes_on_sphere(&theta.eval(x))),
        ),
        (
            "reeb_in_kernel_of_dtheta",
            [z, zb].iter().all(|x| vanishes_on_sphere(&theta.d().eval(reeb, x))),
        ),
        (
            "coframe_duality",
            vanishes_on_sphere(&(th1.eval(z) - &one))
                && vanishes_on_sphere(&th1.eval(zb))
                && vanishes_on_sphere(&th1.eval(reeb)),
        ),
        ("levi_form", all_pairs(&levi)),
        ("first_structure_equation", all_pairs(&first)),
        ("connection_skew", (&g.omega + &g.omega.conj()).is_zero()),
        ("curvature", vanishes_on_sphere(&curvature.eval(z, zb))),
        (
            "torsion_indices",
            g.torsion_a11 == lowered.conj() && g.torsion_aupbar == g.torsion_a11.scale(&(RBig::ONE / (&g.l * &g.l))),
        ),
    ];
    checks
        .into_iter()
        .map(|(name, passed)| StructureCheck { name, passed })
        .collect()
}

fn validated() -> &'static Mutex<HashSet<Rational>> {
    static SEEN: OnceLock<Mutex<HashSet<Rational>>> = OnceLock::new();
    SEEN.get_or_init(Default::default)
}

/// Derived connection data at `t`, validated against the structure
/// equations once per process and per `t`.
pub fn connection_data(t: &Rational) -> Result<RossiGeometry> {
    let l = RBig::ONE - t * t;
    if !rational::is_positive(&l) {
        return Err(CrError::NotPseudoconvex(t.clone()));
    }
    let one_plus = RBig::ONE + t * t;
    let omega = GaussianRational::imag(RBig::from(-2) * &one_plus / &l);
    let four_t = RBig::from(4) * t;
    let geom = RossiGeometry {
        t: t.clone(),
        omega,
        torsion_mixed: GaussianRational::imag(&four_t / &l),
        torsion_a11: GaussianRational::imag(-four_t.clone()),
        torsion_aupbar: GaussianRational::imag(-four_t / (&l * &l)),
        scal: RBig::from(2) * one_plus / &l,
        l,
    };
    if validated().lock().unwrap().contains(t) {
        return Ok(geom);
    }
    if let Some(bad) = geom.structure_checks().into_iter().find(|c| !c.passed) {
        return Err(CrError::Inconsistency(format!(
            "structure equation `{}` fails at t = {}",
            bad.name,
            to_ratio_string(t)
        )));
    }
    validated().lock().unwrap().insert(t.clone());
    Ok(geom)
}
