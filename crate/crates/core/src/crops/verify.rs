//! The exact identity suite for a given `S³_t`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::rational::to_ratio_string;
use crate::algebra::{GaussianRational, Monomial, Polynomial};
use crate::error::{CrError, Result};
use crate::exec::Execution;
use crate::harmonics::{canonicalize, harmonic_basis, SphereFunction};

use super::forms::OneForm;
use super::frame::{FrameTag, VectorField};
use super::geometry::{RossiGeometry, StructureCheck};
use super::operators::*;

#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    /// Seed of the sample generator.
    pub seed: u64,
    /// Number of random sample polynomials.
    pub samples: usize,
    /// Maximal total degree of a sample.
    pub max_degree: u32,
    /// Self-adjointness and degree preservation are checked on all harmonic
    /// basis elements with `p + q` up to this degree.
    pub basis_degree: u32,
    pub execution: Execution,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            seed: 20,
            samples: 20,
            max_degree: 6,
            basis_degree: 6,
            execution: Execution::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityResult {
    pub identity: &'static str,
    pub passed: bool,
    pub cases: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub t: String,
    pub seed: u64,
    pub samples: usize,
    pub max_degree: u32,
    pub structure_equations: Vec<StructureCheck>,
    pub identities: Vec<IdentityResult>,
    pub passed: bool,
}

impl VerifyReport {
    /// The first failing identity as an error, naming its witness.
    pub fn to_result(&self, t: &crate::algebra::Rational) -> Result<()> {
        if let Some(s) = self.structure_equations.iter().find(|c| !c.passed) {
            return Err(CrError::IdentityFailure {
                identity: s.name.to_string(),
                t: t.clone(),
                witness: "frame".into(),
            });
        }
        match self.identities.iter().find(|r| !r.passed) {
            Some(r) => Err(CrError::IdentityFailure {
                identity: r.identity.to_string(),
                t: t.clone(),
                witness: r.witness.clone().unwrap_or_default(),
            }),
            None => Ok(()),
        }
    }
}

fn random_coefficient(rng: &mut ChaCha8Rng) -> GaussianRational {
    let part = |rng: &mut ChaCha8Rng| {
        let n: i64 = rng.gen_range(-100..=100);
        let d: i64 = rng.gen_range(1..=100);
        crate::algebra::rational::ratio(n, d)
    };
    let re = part(rng);
    let im = if rng.gen_bool(0.5) {
        part(rng)
    } else {
        Default::default()
    };
    GaussianRational::new(re, im)
}

/// Deterministic pseudo-random polynomials of total degree `≤ max_degree`
/// with coefficients `n/d`, `|n|, d ≤ 100`.
pub fn sample_polynomials(seed: u64, count: usize, max_degree: u32) -> Vec<Polynomial> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let terms = rng.gen_range(1..=6);
            let mut f = Polynomial::zero();
            for _ in 0..terms {
                let deg = rng.gen_range(0..=max_degree);
                let mut e = [0u32; 4];
                for _ in 0..deg {
                    e[rng.gen_range(0..4)] += 1;
                }
                f.add_term(Monomial::new(e[0], e[1], e[2], e[3]), &random_coefficient(&mut rng));
            }
            f
        })
        .collect()
}

type Check = fn(&RossiGeometry, &SphereFunction) -> Result<bool>;

fn commutator_1_1bar(g: &RossiGeometry, f: &SphereFunction) -> Result<bool> {
    let lhs = covariant_second(g, f, Idx::One, Idx::OneBar).sub(&covariant_second(g, f, Idx::OneBar, Idx::One));
    let il = GaussianRational::imag(g.l().clone());
    Ok(lhs == covariant_first(g, f, Idx::Zero).scale(&il))
}

fn commutator_0_1(g: &RossiGeometry, f: &SphereFunction) -> Result<bool> {
    let lhs = covariant_second(g, f, Idx::Zero, Idx::One).sub(&covariant_second(g, f, Idx::One, Idx::Zero));
    let raised = covariant_first(g, f, Idx::OneBar).scale_rational(&(dashu_ratio::RBig::ONE / g.l()));
    Ok(lhs == raised.scale(g.torsion_a11()))
}

fn conjugate_kohn(g: &RossiGeometry, f: &SphereFunction) -> Result<bool> {
    let conjugated = kohn_laplacian(g, &f.conjugate()).conjugate();
    let shifted = kohn_laplacian(g, f).sub(&reeb(g, f).scale(&GaussianRational::i()));
    Ok(conjugated == shifted)
}

fn kohn_bracket(g: &RossiGeometry, f: &SphereFunction) -> Result<bool> {
    let lhs = kohn_laplacian(g, &kohn_laplacian_bar(g, f)?).sub(&kohn_laplacian_bar(g, &kohn_laplacian(g, f))?);
    Ok(lhs == q_op(g, f).sub(&q_bar(g, f)))
}

fn paneitz_routes(g: &RossiGeometry, f: &SphereFunction) -> Result<bool> {
    Ok(paneitz_route_a(g, f)? == paneitz_route_b(g, f)?)
}

fn paneitz_components(g: &RossiGeometry, f: &SphereFunction) -> Result<bool> {
    Ok(paneitz_from_components(g, f) == paneitz_route_a(g, f)?)
}

fn paneitz_reality(g: &RossiGeometry, f: &SphereFunction) -> Result<bool> {
    Ok(paneitz(g, &f.conjugate())? == paneitz(g, f)?.conjugate())
}

fn real_part(f: &SphereFunction) -> SphereFunction {
    f.add(&f.conjugate())
}

/// `dd^c_CR u` through the frame formula of [`ddc_components`].
fn ddc_frame(g: &RossiGeometry, f: &SphereFunction) -> Result<bool> {
    let u = real_part(f);
    let [c1, c1b, c11b] = ddc_components(g, &dc_cr_components(g, &u)?);
    Ok(c1 == p1(g, &u) && c1b == p1bar(g, &u) && c11b.is_zero())
}

/// `dd^c_CR u` by exterior differentiation of the ℂ² one-form, evaluated on
/// the frame.
fn ddc_forms(g: &RossiGeometry, f: &SphereFunction) -> Result<bool> {
    let u = real_part(f);
    let dc = dc_cr_components(g, &u)?;
    let th1 = g.theta1();
    let eta = OneForm::contact()
        .times(&dc.theta.to_polynomial())
        .add(&th1.times(&dc.theta1.to_polynomial()))
        .add(&th1.conjugate().times(&dc.theta1bar.to_polynomial()));
    let d = eta.d();
    let frame = |tag| VectorField::frame(g, tag);
    let (z, zb, reeb) = (frame(FrameTag::Z1t), frame(FrameTag::Z1bart), frame(FrameTag::Reeb));
    Ok(canonicalize(&d.eval(&reeb, &z)) == p1(g, &u)
        && canonicalize(&d.eval(&reeb, &zb)) == p1bar(g, &u)
        && canonicalize(&d.eval(&z, &zb)).is_zero())
}

const SAMPLE_CHECKS: [(&str, Check); 9] = [
    ("commutator_11bar", commutator_1_1bar),
    ("commutator_01", commutator_0_1),
    ("conjugate_kohn", conjugate_kohn),
    ("kohn_bracket", kohn_bracket),
    ("paneitz_routes", paneitz_routes),
    ("paneitz_components", paneitz_components),
    ("paneitz_reality", paneitz_reality),
    ("ddc_frame", ddc_frame),
    ("ddc_forms", ddc_forms),
];

fn basis_functions(max_degree: u32) -> Vec<(u32, SphereFunction)> {
    let mut out = Vec::new();
    for n in 0..=max_degree {
        for p in 0..=n {
            for e in &harmonic_basis(p, n - p).basis {
                out.push((n, SphereFunction::harmonic(p, n - p, e.clone())));
            }
        }
    }
    out
}

fn basis_checks(g: &RossiGeometry, opts: &VerifyOptions) -> Vec<IdentityResult> {
    let basis = basis_functions(opts.basis_degree);
    let images: Vec<Result<(SphereFunction, SphereFunction)>> = opts
        .execution
        .map(&basis, |(_, f)| Ok((paneitz(g, f)?, kohn_laplacian(g, f))));
    let mut adjoint_witness = None;
    let mut degree_witness = None;
    let mut pairs = 0;
    for (i, (n, f)) in basis.iter().enumerate() {
        let (pf, kf) = match &images[i] {
            Ok(v) => v,
            Err(_) => {
                degree_witness.get_or_insert_with(|| f.to_string());
                adjoint_witness.get_or_insert_with(|| f.to_string());
                continue;
            }
        };
        if pf.degrees().iter().chain(kf.degrees().iter()).any(|d| d != n) {
            degree_witness.get_or_insert_with(|| f.to_string());
        }
        for (j, (_, h)) in basis.iter().enumerate() {
            let Ok((ph, _)) = &images[j] else { continue };
            pairs += 1;
            if pf.inner_product(h) != f.inner_product(ph) {
                adjoint_witness.get_or_insert_with(|| format!("{f} ; {h}"));
            }
        }
    }
    vec![
        IdentityResult {
            identity: "self_adjoint",
            passed: adjoint_witness.is_none(),
            cases: pairs,
            witness: adjoint_witness,
        },
        IdentityResult {
            identity: "degree_preservation",
            passed: degree_witness.is_none(),
            cases: basis.len(),
            witness: degree_witness,
        },
    ]
}

/// Runs the structure-equation checks and the full identity suite. Samples
/// are fixed witnesses followed by `opts.samples` seeded random polynomials.
pub fn verify_structure_equations(g: &RossiGeometry, opts: &VerifyOptions) -> VerifyReport {
    let mut polys: Vec<Polynomial> = ["z*zb", "z^2*wb"].iter().map(|s| s.parse().unwrap()).collect();
    polys.extend(sample_polynomials(opts.seed, opts.samples, opts.max_degree));
    let samples: Vec<SphereFunction> = polys.iter().map(canonicalize).collect();

    let outcomes: Vec<Vec<bool>> = opts.execution.map(&samples, |f| {
        SAMPLE_CHECKS
            .iter()
            .map(|(_, check)| check(g, f).unwrap_or(false))
            .collect()
    });
    let mut identities: Vec<IdentityResult> = SAMPLE_CHECKS
        .iter()
        .enumerate()
        .map(|(k, (name, _))| {
            let witness = outcomes.iter().position(|o| !o[k]).map(|i| polys[i].to_string());
            IdentityResult {
                identity: name,
                passed: witness.is_none(),
                cases: samples.len(),
                witness,
            }
        })
        .collect();
    identities.extend(basis_checks(g, opts));

    let structure_equations = g.structure_checks();
    let passed = structure_equations.iter().all(|c| c.passed) && identities.iter().all(|r| r.passed);
    VerifyReport {
        t: to_ratio_string(g.t()),
        seed: opts.seed,
        samples: samples.len(),
        max_degree: opts.max_degree,
        structure_equations,
        identities,
        passed,
    }
}
