//! Covariant derivatives and the Kohn, sub-Laplacian and Paneitz operators
//! on `S³_t`, acting exactly on [`SphereFunction`] values.

use dashu_ratio::RBig;

use crate::algebra::GaussianRational;
use crate::error::{CrError, Result};
use crate::harmonics::SphereFunction;

use super::frame::{frame_apply, FrameTag};
use super::geometry::RossiGeometry;

/// Frame index `1`, `1̄` or `0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Idx {
    One,
    OneBar,
    Zero,
}

impl Idx {
    fn tag(self) -> FrameTag {
        match self {
            Idx::One => FrameTag::Z1t,
            Idx::OneBar => FrameTag::Z1bart,
            Idx::Zero => FrameTag::Reeb,
        }
    }
}

fn z1(g: &RossiGeometry, f: &SphereFunction) -> SphereFunction {
    frame_apply(g, FrameTag::Z1t, f)
}

fn z1b(g: &RossiGeometry, f: &SphereFunction) -> SphereFunction {
    frame_apply(g, FrameTag::Z1bart, f)
}

fn inv_l(g: &RossiGeometry) -> RBig {
    RBig::ONE / g.l()
}

/// First covariant derivative `f_α`.
pub fn covariant_first(g: &RossiGeometry, f: &SphereFunction, a: Idx) -> SphereFunction {
    frame_apply(g, a.tag(), f)
}

/// Second covariant derivative `f_{αβ} = Z_β f_α − ω_α^α(Z_β) f_α`.
/// The second index is the later derivative.
pub fn covariant_second(g: &RossiGeometry, f: &SphereFunction, first: Idx, second: Idx) -> SphereFunction {
    let fa = covariant_first(g, f, first);
    let out = frame_apply(g, second.tag(), &fa);
    let conn = match first {
        Idx::One => g.connection(false, second.tag()),
        Idx::OneBar => g.connection(true, second.tag()),
        Idx::Zero => GaussianRational::zero(),
    };
    out.sub(&fa.scale(&conn))
}

/// `T f`.
pub fn reeb(g: &RossiGeometry, f: &SphereFunction) -> SphereFunction {
    frame_apply(g, FrameTag::Reeb, f)
}

/// `□_b f = −f_{1̄}^{ 1̄} = −(1/l) f_{1̄1}`.
pub fn kohn_laplacian(g: &RossiGeometry, f: &SphereFunction) -> SphereFunction {
    covariant_second(g, f, Idx::OneBar, Idx::One).scale_rational(&-inv_l(g))
}

/// `□̄_b`, computed as `conj ∘ □_b ∘ conj` and as `□_b − iT`.
pub fn kohn_laplacian_bar(g: &RossiGeometry, f: &SphereFunction) -> Result<SphereFunction> {
    let conjugated = kohn_laplacian(g, &f.conjugate()).conjugate();
    let shifted = kohn_laplacian(g, f).sub(&reeb(g, f).scale(&GaussianRational::i()));
    if conjugated != shifted {
        return Err(CrError::Inconsistency(format!(
            "conjugate Kohn Laplacian routes disagree on {f} at t = {}",
            g.t()
        )));
    }
    Ok(conjugated)
}

/// `Δ_b = □_b + □̄_b`.
pub fn sub_laplacian(g: &RossiGeometry, f: &SphereFunction) -> SphereFunction {
    kohn_laplacian(g, f).add(&kohn_laplacian(g, &f.conjugate()).conjugate())
}

/// `(A^{1̄1̄})_{,1̄} = Z₁̄(t) A^{1̄1̄} + 2 ω_1̄^1̄(Z₁̄(t)) A^{1̄1̄}`. The torsion is
/// frame-constant and `ω(Z₁̄(t)) = 0`, so this vanishes on the Rossi family;
/// it is computed rather than assumed.
pub fn torsion_derivative(g: &RossiGeometry) -> SphereFunction {
    let a = SphereFunction::constant(g.torsion_aupbar().clone());
    let conn = g.connection(true, FrameTag::Z1bart).scale(&RBig::from(2));
    frame_apply(g, FrameTag::Z1bart, &a).add(&a.scale(&conn))
}

/// `𝒬f = i (A^{1̄1̄} f_{1̄})_{,1̄} = i((A^{1̄1̄})_{,1̄} f_{1̄} + A^{1̄1̄} f_{1̄1̄})`.
pub fn q_op(g: &RossiGeometry, f: &SphereFunction) -> SphereFunction {
    let dt = torsion_derivative(g)
        .as_constant()
        .expect("derivative of a constant tensor is constant");
    debug_assert!(dt.is_zero());
    let f1b = covariant_first(g, f, Idx::OneBar);
    let f1b1b = covariant_second(g, f, Idx::OneBar, Idx::OneBar);
    f1b.scale(&dt)
        .add(&f1b1b.scale(g.torsion_aupbar()))
        .scale(&GaussianRational::i())
}

/// `𝒬̄ = conj ∘ 𝒬 ∘ conj`.
pub fn q_bar(g: &RossiGeometry, f: &SphereFunction) -> SphereFunction {
    q_op(g, &f.conjugate()).conjugate()
}

/// `P = □̄_b □_b + 𝒬`.
pub fn paneitz_route_a(g: &RossiGeometry, f: &SphereFunction) -> Result<SphereFunction> {
    Ok(kohn_laplacian_bar(g, &kohn_laplacian(g, f))?.add(&q_op(g, f)))
}

/// `P = ½(□_b □̄_b + □̄_b □_b + 𝒬 + 𝒬̄)`.
pub fn paneitz_route_b(g: &RossiGeometry, f: &SphereFunction) -> Result<SphereFunction> {
    let bb = kohn_laplacian(g, &kohn_laplacian_bar(g, f)?);
    let bb2 = kohn_laplacian_bar(g, &kohn_laplacian(g, f))?;
    let sum = bb.add(&bb2).add(&q_op(g, f)).add(&q_bar(g, f));
    Ok(sum.scale_rational(&RBig::from_parts(1.into(), 2u8.into())))
}

/// `P = ½((P₁u)_{,}^{1} + (P_1̄u)_{,}^{1̄})`, from the one-form components.
pub fn paneitz_from_components(g: &RossiGeometry, u: &SphereFunction) -> SphereFunction {
    let half_inv_l = inv_l(g) / RBig::from(2);
    z1b(g, &p1(g, u)).add(&z1(g, &p1bar(g, u))).scale_rational(&half_inv_l)
}

/// CR Paneitz operator. Routes A and B must agree exactly.
pub fn paneitz(g: &RossiGeometry, f: &SphereFunction) -> Result<SphereFunction> {
    let a = paneitz_route_a(g, f)?;
    let b = paneitz_route_b(g, f)?;
    if a != b {
        return Err(CrError::Inconsistency(format!(
            "Paneitz routes disagree on {f} at t = {}",
            g.t()
        )));
    }
    Ok(a)
}

/// `P₁u = u_{1̄}^{ 1̄}_{,1} + i A₁₁ u¹ = −(□_b u)_{,1} + i A₁₁ u_{1̄}/l`.
pub fn p1(g: &RossiGeometry, u: &SphereFunction) -> SphereFunction {
    let coef = (&GaussianRational::i() * g.torsion_a11()).scale(&inv_l(g));
    z1(g, &kohn_laplacian(g, u))
        .neg()
        .add(&covariant_first(g, u, Idx::OneBar).scale(&coef))
}

/// `P_1̄u`, the conjugate component.
pub fn p1bar(g: &RossiGeometry, u: &SphereFunction) -> SphereFunction {
    p1(g, &u.conjugate()).conjugate()
}

/// Frame components of `d^c_CR u`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DcComponents {
    /// Coefficient of `θ^1̄`: `(i/2) u_{1̄}`.
    pub theta1bar: SphereFunction,
    /// Coefficient of `θ¹`: `−(i/2) u_1`.
    pub theta1: SphereFunction,
    /// Coefficient of `θ`: `½ Δ_b u`.
    pub theta: SphereFunction,
}

pub fn dc_cr_components(g: &RossiGeometry, u: &SphereFunction) -> Result<DcComponents> {
    if !u.is_real() {
        return Err(CrError::NonReal(u.to_string()));
    }
    let half_i = GaussianRational::imag(RBig::from_parts(1.into(), 2u8.into()));
    Ok(DcComponents {
        theta1bar: covariant_first(g, u, Idx::OneBar).scale(&half_i),
        theta1: covariant_first(g, u, Idx::One).scale(&-half_i),
        theta: sub_laplacian(g, u).scale_rational(&RBig::from_parts(1.into(), 2u8.into())),
    })
}

/// Coefficients of `θ∧θ¹`, `θ∧θ^1̄` and `θ¹∧θ^1̄` in `d(d^c_CR u)`, from the
/// structure equations.
pub fn ddc_components(g: &RossiGeometry, dc: &DcComponents) -> [SphereFunction; 3] {
    let (e0, e1, e1b) = (&dc.theta, &dc.theta1, &dc.theta1bar);
    let a = g.omega();
    let l = GaussianRational::real(g.l().clone());
    let i = GaussianRational::i();
    let c1 = z1(g, e0)
        .neg()
        .add(&reeb(g, e1))
        .sub(&e1.scale(a))
        .add(&e1b.scale(&g.torsion_mixed().conj()));
    let c1b = z1b(g, e0)
        .neg()
        .add(&reeb(g, e1b))
        .sub(&e1b.scale(&a.conj()))
        .add(&e1.scale(g.torsion_mixed()));
    let c11b = z1(g, e1b).sub(&z1b(g, e1)).add(&e0.scale(&(&i * &l)));
    [c1, c1b, c11b]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::ratio;
    use crate::crops::geometry::connection_data;
    use crate::harmonics::{canonicalize, harmonic_basis};

    fn sf(s: &str) -> SphereFunction {
        canonicalize(&s.parse().unwrap())
    }

    fn geom(n: i64, d: i64) -> RossiGeometry {
        connection_data(&ratio(n, d)).unwrap()
    }

    #[test]
    fn covariant_examples() {
        let g0 = geom(0, 1);
        assert!(covariant_second(&g0, &sf("zb"), Idx::OneBar, Idx::OneBar).is_zero());
        let g = geom(1, 3);
        let f = sf("z*wb");
        let lhs = covariant_second(&g, &f, Idx::One, Idx::OneBar).sub(&covariant_second(&g, &f, Idx::OneBar, Idx::One));
        let rhs = reeb(&g, &f).scale(&GaussianRational::imag(ratio(8, 9)));
        assert_eq!(lhs, rhs);
        let c = SphereFunction::constant(GaussianRational::from_int(5));
        for a in [Idx::One, Idx::OneBar, Idx::Zero] {
            for b in [Idx::One, Idx::OneBar, Idx::Zero] {
                assert!(covariant_second(&g, &c, a, b).is_zero());
            }
        }
    }

    #[test]
    fn kohn_at_standard_sphere() {
        let g = geom(0, 1);
        assert_eq!(kohn_laplacian(&g, &sf("zb")), sf("zb"));
        assert_eq!(kohn_laplacian_bar(&g, &sf("z")).unwrap(), sf("z"));
        assert_eq!(sub_laplacian(&g, &sf("z")), sf("z"));
        assert_eq!(sub_laplacian(&g, &sf("z*zb - w*wb")), sf("4*z*zb - 4*w*wb"));
        for p in 0..=4u32 {
            for q in 0..=4u32 {
                for e in &harmonic_basis(p, q).basis {
                    let f = SphereFunction::harmonic(p, q, e.clone());
                    let k = GaussianRational::from_int((q * (p + 1)) as i64);
                    let kb = GaussianRational::from_int((p * (q + 1)) as i64);
                    assert_eq!(kohn_laplacian(&g, &f), f.scale(&k));
                    assert_eq!(kohn_laplacian_bar(&g, &f).unwrap(), f.scale(&kb));
                }
            }
        }
    }

    #[test]
    fn constants_are_killed() {
        let c = SphereFunction::constant(GaussianRational::one());
        for g in [geom(0, 1), geom(1, 2)] {
            assert!(kohn_laplacian(&g, &c).is_zero());
            assert!(kohn_laplacian_bar(&g, &c).unwrap().is_zero());
            assert!(sub_laplacian(&g, &c).is_zero());
            assert!(q_op(&g, &c).is_zero());
            assert!(paneitz(&g, &c).unwrap().is_zero());
        }
    }

    #[test]
    fn q_examples() {
        let g = geom(1, 2);
        assert_eq!(q_op(&g, &sf("z")), sf("-16/9*z"));
        assert!(q_op(&geom(0, 1), &sf("z^2*wb + w")).is_zero());
        assert!(torsion_derivative(&g).is_zero());
    }

    #[test]
    fn paneitz_examples() {
        let g0 = geom(0, 1);
        assert!(paneitz(&g0, &sf("z")).unwrap().is_zero());
        let f = sf("z*zb - w*wb");
        assert_eq!(paneitz(&g0, &f).unwrap(), f.scale(&GaussianRational::from_int(4)));
        for (n, d) in [(1, 2), (-1, 3), (2, 7), (9, 10)] {
            let g = geom(n, d);
            let t = ratio(n, d);
            let l2 = g.l() * g.l();
            let lhs = paneitz(&g, &sf("z")).unwrap().scale_rational(&l2);
            assert_eq!(lhs, sf("z").scale_rational(&(RBig::from(-3) * &t * &t)));
        }
    }

    #[test]
    fn paneitz_lemma_route() {
        for g in [geom(0, 1), geom(1, 2)] {
            for s in ["z^2*wb + 3*zb*w", "z*zb - w*wb + z^3"] {
                let f = sf(s);
                assert_eq!(paneitz_from_components(&g, &f), paneitz(&g, &f).unwrap());
            }
        }
    }

    #[test]
    fn dc_examples() {
        let g0 = geom(0, 1);
        let one = SphereFunction::constant(GaussianRational::one());
        let dc = dc_cr_components(&g0, &one).unwrap();
        assert!(dc.theta.is_zero() && dc.theta1.is_zero() && dc.theta1bar.is_zero());
        let dc = dc_cr_components(&g0, &sf("z + zb")).unwrap();
        assert_eq!(dc.theta, sf("1/2*z + 1/2*zb"));
        assert!(dc_cr_components(&g0, &sf("z")).is_err());
        for g in [g0, geom(1, 2), geom(-1, 3)] {
            let u = sf("z*zb - w*wb + z^2*wb + zb^2*w");
            let [c1, c1b, c11b] = ddc_components(&g, &dc_cr_components(&g, &u).unwrap());
            assert_eq!(c1, p1(&g, &u));
            assert_eq!(c1b, p1bar(&g, &u));
            assert!(c11b.is_zero());
        }
    }
}
