//! The `P(t)`-invariant subspaces `V_k = span{Z₁^{2i−2} v : i = 1..k}` with
//! `v ∈ ℋ_{2k−1,0}`.

use dashu_ratio::RBig;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{GaussianRational, Monomial, Polynomial, Rational};
use crate::crops::VectorField;
use crate::error::{CrError, Result};
use crate::harmonics::{inner_product, SphereFunction};

/// How `v_{k,1}` is chosen.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub enum SeedChoice {
    /// `z^{2k−1}`.
    #[default]
    Default,
    /// Caller-supplied seeds; the one of bidegree `(2k−1, 0)` is used for
    /// `V_k`. With no such entry the first one is tried, and rejected.
    Explicit(Vec<Polynomial>),
    /// Small random Gaussian-integer combination of the monomials of `ℋ_{2k−1,0}`.
    Random(u64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VkBasis {
    pub k: usize,
    pub seed: Polynomial,
    /// `u_i = Z₁^{2i−2} seed ∈ ℋ_{2k−2i+1, 2i−2}`, `i = 1..k`.
    pub vectors: Vec<Polynomial>,
    pub norm_squares: Vec<Rational>,
}

/// `c_k(l) = (l − 2)(2k − l + 2)`.
pub fn c_k(k: usize, l: usize) -> i64 {
    (l as i64 - 2) * (2 * k as i64 - l as i64 + 2)
}

/// `∏_{l=1}^{i−1} c_k(2l+1) c_k(2l+2)`, the expected `‖u_i‖² / ‖u_1‖²`.
pub fn norm_ratio(k: usize, i: usize) -> Rational {
    (1..i).fold(RBig::ONE, |acc, l| {
        acc * RBig::from(c_k(k, 2 * l + 1) * c_k(k, 2 * l + 2))
    })
}

/// Bidegree of `u_i` (1-based).
pub fn vk_bidegree(k: usize, i: usize) -> (u32, u32) {
    ((2 * k - 2 * i + 1) as u32, (2 * i - 2) as u32)
}

fn random_seed(k: usize, seed: u64) -> Polynomial {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = (2 * k - 1) as u32;
    loop {
        let mut f = Polynomial::zero();
        for a in 0..=n {
            let c = GaussianRational::new(
                RBig::from(rng.gen_range(-9i64..=9)),
                RBig::from(rng.gen_range(-9i64..=9)),
            );
            f.add_term(Monomial::new(a, n - a, 0, 0), &c);
        }
        if !f.is_zero() {
            return f;
        }
    }
}

pub fn build_vk(k: usize, choice: &SeedChoice) -> Result<VkBasis> {
    if k == 0 {
        return Err(CrError::InvalidParameter("k must be at least 1".into()));
    }
    let top = (2 * k - 1) as u32;
    let seed = match choice {
        SeedChoice::Default => Polynomial::monomial(top, 0, 0, 0),
        SeedChoice::Explicit(list) => list
            .iter()
            .find(|f| !f.is_zero() && f.is_homogeneous_of(top, 0))
            .or_else(|| list.first())
            .cloned()
            .unwrap_or_default(),
        SeedChoice::Random(s) => random_seed(k, *s),
    };
    if seed.is_zero() {
        return Err(CrError::SeedRejected("seed is zero".into()));
    }
    if !seed.is_homogeneous_of(top, 0) {
        return Err(CrError::SeedRejected(format!("{seed} is not of bidegree ({top},0)")));
    }
    let z1 = VectorField::z1();
    let mut vectors = vec![seed.clone()];
    for i in 2..=k {
        let next = z1.apply(&z1.apply(&vectors[i - 2]));
        if next.is_zero() {
            return Err(CrError::SeedRejected(format!(
                "Z1^{} annihilates the seed {seed} before i = k = {k}",
                2 * i - 2
            )));
        }
        vectors.push(next);
    }
    let norm_squares: Vec<Rational> = vectors
        .iter()
        .map(|u| inner_product(u, u).to_real())
        .collect::<Result<_>>()?;
    for (i, n) in norm_squares.iter().enumerate() {
        if n / &norm_squares[0] != norm_ratio(k, i + 1) {
            return Err(CrError::Inconsistency(format!(
                "norm ratio of u_{} in V_{k} is {}, expected {}",
                i + 1,
                n / &norm_squares[0],
                norm_ratio(k, i + 1)
            )));
        }
    }
    Ok(VkBasis {
        k,
        seed,
        vectors,
        norm_squares,
    })
}

impl VkBasis {
    pub fn functions(&self) -> Vec<SphereFunction> {
        self.vectors
            .iter()
            .enumerate()
            .map(|(i, u)| {
                let (p, q) = vk_bidegree(self.k, i + 1);
                SphereFunction::harmonic(p, q, u.clone())
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::ratio;
    use crate::harmonics::flat_laplacian;

    #[test]
    fn k1_default() {
        let v = build_vk(1, &SeedChoice::Default).unwrap();
        assert_eq!(v.vectors, vec!["z".parse::<Polynomial>().unwrap()]);
        assert_eq!(v.norm_squares, vec![ratio(1, 2)]);
    }

    #[test]
    fn k2_ratio() {
        assert_eq!(norm_ratio(2, 2), ratio(12, 1));
        let v = build_vk(2, &SeedChoice::Default).unwrap();
        assert_eq!(&v.norm_squares[1] / &v.norm_squares[0], ratio(12, 1));
    }

    #[test]
    fn bidegrees_and_harmonicity() {
        for k in 1..=6 {
            for choice in [SeedChoice::Default, SeedChoice::Random(k as u64)] {
                let v = build_vk(k, &choice).unwrap();
                for (i, u) in v.vectors.iter().enumerate() {
                    let (p, q) = vk_bidegree(k, i + 1);
                    assert!(u.is_homogeneous_of(p, q));
                    assert!(flat_laplacian(u).is_zero());
                }
            }
        }
    }

    #[test]
    fn rejects_bad_seeds() {
        let zero = SeedChoice::Explicit(vec![Polynomial::zero()]);
        assert!(matches!(build_vk(2, &zero), Err(CrError::SeedRejected(_))));
        let wrong = SeedChoice::Explicit(vec!["z^2*w".parse().unwrap()]);
        assert!(matches!(build_vk(1, &wrong), Err(CrError::SeedRejected(_))));
        let antiholomorphic = SeedChoice::Explicit(vec!["zb^3".parse().unwrap()]);
        assert!(build_vk(2, &antiholomorphic).is_err());
        assert!(build_vk(0, &SeedChoice::Default).is_err());
        let family = SeedChoice::Explicit(vec!["z - w".parse().unwrap(), "z^3 + 2*w^3".parse().unwrap()]);
        assert_eq!(build_vk(2, &family).unwrap().seed.to_string(), "2*w^3 + z^3");
    }
}
