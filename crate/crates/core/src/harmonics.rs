//! Bigraded spherical harmonics `ℋ_{p,q}(S³)` and the exact L² pairing.
//!
//! The measure on `S³` is normalized to total mass 1. Under it
//!
//! ```text
//! ∫ z^a w^b z̄^c w̄^d dσ = δ_{ac} δ_{bd} · a! b! / (a + b + 1)!
//! ```
//!
//! Functions on the sphere are stored in canonical form: one harmonic,
//! bidegree-homogeneous polynomial per `(p, q)`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock, RwLock};

use dashu_int::UBig;
use dashu_ratio::RBig;

use crate::algebra::{GaussianRational, Monomial, Polynomial, Rational, Var};
use crate::linalg::{primitive_integer_vector, Matrix};

fn factorial_cache() -> &'static RwLock<Vec<UBig>> {
    static CACHE: OnceLock<RwLock<Vec<UBig>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(vec![UBig::ONE]))
}

fn factorial(n: usize) -> UBig {
    if let Some(v) = factorial_cache().read().unwrap().get(n) {
        return v.clone();
    }
    let mut cache = factorial_cache().write().unwrap();
    while cache.len() <= n {
        let k = cache.len();
        let next = &cache[k - 1] * UBig::from(k);
        cache.push(next);
    }
    cache[n].clone()
}

/// `∫_{S³} z^a w^b z̄^c w̄^d dσ` with `∫ 1 dσ = 1`.
pub fn monomial_integral(a: u32, b: u32, c: u32, d: u32) -> Rational {
    if a != c || b != d {
        return RBig::ZERO;
    }
    let (a, b) = (a as usize, b as usize);
    let num = factorial(a) * factorial(b);
    RBig::from_parts(num.into(), factorial(a + b + 1))
}

/// Sesquilinear L² pairing `⟨f, g⟩ = ∫ f · conj(g) dσ`.
pub fn inner_product(f: &Polynomial, g: &Polynomial) -> GaussianRational {
    // Index g by (a - c, b - d): only matching keys survive the angular integral.
    let mut by_charge: HashMap<(i64, i64), Vec<(&Monomial, &GaussianRational)>> = HashMap::new();
    for (m, c) in g.terms() {
        let key = (m.a as i64 - m.c as i64, m.b as i64 - m.d as i64);
        by_charge.entry(key).or_default().push((m, c));
    }
    let mut acc = GaussianRational::zero();
    for (m1, c1) in f.terms() {
        let key = (m1.a as i64 - m1.c as i64, m1.b as i64 - m1.d as i64);
        let Some(partners) = by_charge.get(&key) else {
            continue;
        };
        for (m2, c2) in partners {
            // f-term times conj(g-term): exponents (a1 + c2, b1 + d2, c1 + a2, d1 + b2).
            let weight = monomial_integral(m1.a + m2.c, m1.b + m2.d, m1.c + m2.a, m1.d + m2.b);
            acc += &(c1 * &c2.conj()).scale(&weight);
        }
    }
    acc
}

/// Flat Laplacian on ℂ² = ℝ⁴: `Δ = 4(∂_z ∂_z̄ + ∂_w ∂_w̄)`.
pub fn flat_laplacian(f: &Polynomial) -> Polynomial {
    let s = f.derive(Var::Z).derive(Var::Zb) + f.derive(Var::W).derive(Var::Wb);
    s.scale(&GaussianRational::from_int(4))
}

/// `|ζ|² = z z̄ + w w̄`, identically 1 on the sphere.
pub fn radius_squared() -> Polynomial {
    Polynomial::monomial(1, 0, 1, 0) + Polynomial::monomial(0, 1, 0, 1)
}

/// Monomials of bidegree `(p, q)` in graded-lex order.
pub fn bihomogeneous_monomials(p: u32, q: u32) -> Vec<Monomial> {
    let mut out = Vec::with_capacity(((p + 1) * (q + 1)) as usize);
    for a in 0..=p {
        for c in 0..=q {
            out.push(Monomial::new(a, p - a, c, q - c));
        }
    }
    out.sort();
    out
}

/// Explicit exact basis of `ℋ_{p,q}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HarmonicSpace {
    pub p: u32,
    pub q: u32,
    pub basis: Vec<Polynomial>,
}

impl HarmonicSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn gram(&self) -> Matrix {
        gram_matrix(&self.basis)
    }
}

fn compute_harmonic_basis(p: u32, q: u32) -> HarmonicSpace {
    let source = bihomogeneous_monomials(p, q);
    if p == 0 || q == 0 {
        let basis = source
            .into_iter()
            .map(|m| Polynomial::term(m, GaussianRational::one()))
            .collect();
        return HarmonicSpace { p, q, basis };
    }
    let target = bihomogeneous_monomials(p - 1, q - 1);
    let row_of: HashMap<Monomial, usize> = target.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let mut lap = Matrix::zeros(target.len(), source.len());
    for (j, m) in source.iter().enumerate() {
        let image = flat_laplacian(&Polynomial::term(*m, GaussianRational::one()));
        for (tm, c) in image.terms() {
            lap.set(row_of[tm], j, c.clone());
        }
    }
    let basis = lap
        .nullspace()
        .into_iter()
        .map(|v| {
            let v = primitive_integer_vector(&v);
            Polynomial::from_terms(source.iter().copied().zip(v))
        })
        .collect();
    HarmonicSpace { p, q, basis }
}

type BasisCache = RwLock<HashMap<(u32, u32), Arc<HarmonicSpace>>>;

fn basis_cache() -> &'static BasisCache {
    static CACHE: OnceLock<BasisCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Basis of `ℋ_{p,q}` as the kernel of the flat Laplacian on `𝒫_{p,q}`.
///
/// Memoized. Concurrent first calls may both compute; the results are
/// identical, and the first one stored wins.
pub fn harmonic_basis(p: u32, q: u32) -> Arc<HarmonicSpace> {
    if let Some(space) = basis_cache().read().unwrap().get(&(p, q)) {
        return Arc::clone(space);
    }
    let space = Arc::new(compute_harmonic_basis(p, q));
    let mut cache = basis_cache().write().unwrap();
    Arc::clone(cache.entry((p, q)).or_insert(space))
}

/// Gram matrix `G_ij = ⟨e_j, e_i⟩`.
pub fn gram_matrix(basis: &[Polynomial]) -> Matrix {
    Matrix::from_fn(basis.len(), basis.len(), |i, j| inner_product(&basis[j], &basis[i]))
}

/// A function on `S³` as a sum of harmonic components `f_{p,q} ∈ ℋ_{p,q}`.
#[derive(Clone, Debug, PartialEq, Eq, Default, Hash)]
pub struct SphereFunction {
    components: BTreeMap<(u32, u32), Polynomial>,
}

impl SphereFunction {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::harmonic(0, 0, Polynomial::constant(c))
    }

    /// Wraps a polynomial already known to lie in `ℋ_{p,q}`.
    pub fn harmonic(p: u32, q: u32, f: Polynomial) -> Self {
        debug_assert!(f.is_homogeneous_of(p, q));
        debug_assert!(flat_laplacian(&f).is_zero());
        let mut components = BTreeMap::new();
        if !f.is_zero() {
            components.insert((p, q), f);
        }
        Self { components }
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    /// The value of a constant function; `None` if it is not constant.
    pub fn as_constant(&self) -> Option<GaussianRational> {
        match self.components.len() {
            0 => Some(GaussianRational::zero()),
            1 => self.component(0, 0).map(|f| f.coeff(&Monomial::ONE)),
            _ => None,
        }
    }

    pub fn components(&self) -> impl Iterator<Item = (&(u32, u32), &Polynomial)> {
        self.components.iter()
    }

    pub fn component(&self, p: u32, q: u32) -> Option<&Polynomial> {
        self.components.get(&(p, q))
    }

    pub fn bidegrees(&self) -> Vec<(u32, u32)> {
        self.components.keys().copied().collect()
    }

    /// Total degrees `p + q` that occur.
    pub fn degrees(&self) -> Vec<u32> {
        let mut d: Vec<u32> = self.components.keys().map(|(p, q)| p + q).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    /// The ℂ² representative `Σ f_{p,q}`.
    pub fn to_polynomial(&self) -> Polynomial {
        let mut out = Polynomial::zero();
        for f in self.components.values() {
            out = out + f;
        }
        out
    }

    fn insert_add(&mut self, key: (u32, u32), f: &Polynomial) {
        let entry = self.components.entry(key).or_default();
        *entry = &*entry + f;
        if entry.is_zero() {
            self.components.remove(&key);
        }
    }

    pub fn add(&self, other: &SphereFunction) -> SphereFunction {
        let mut out = self.clone();
        for (k, f) in other.components() {
            out.insert_add(*k, f);
        }
        out
    }

    pub fn sub(&self, other: &SphereFunction) -> SphereFunction {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> SphereFunction {
        self.scale(&GaussianRational::from_int(-1))
    }

    pub fn scale(&self, c: &GaussianRational) -> SphereFunction {
        if c.is_zero() {
            return SphereFunction::zero();
        }
        SphereFunction {
            components: self.components.iter().map(|(k, f)| (*k, f.scale(c))).collect(),
        }
    }

    pub fn scale_rational(&self, r: &Rational) -> SphereFunction {
        self.scale(&GaussianRational::real(r.clone()))
    }

    /// Pointwise complex conjugate; `ℋ_{p,q}` maps to `ℋ_{q,p}`.
    pub fn conjugate(&self) -> SphereFunction {
        SphereFunction {
            components: self
                .components
                .iter()
                .map(|((p, q), f)| ((*q, *p), f.conjugate()))
                .collect(),
        }
    }

    pub fn is_real(&self) -> bool {
        *self == self.conjugate()
    }

    /// L² pairing; distinct `(p, q)` components are orthogonal.
    pub fn inner_product(&self, other: &SphereFunction) -> GaussianRational {
        let mut acc = GaussianRational::zero();
        for (k, f) in self.components() {
            if let Some(g) = other.components.get(k) {
                acc += &inner_product(f, g);
            }
        }
        acc
    }

    /// Applies a linear map to each component's ℂ² representative and
    /// canonicalizes the sum.
    pub fn map_linear(&self, op: impl Fn(&Polynomial) -> Polynomial) -> SphereFunction {
        let mut out = Polynomial::zero();
        for f in self.components.values() {
            out = out + op(f);
        }
        canonicalize(&out)
    }

    /// Restricted to total degrees `≤ n`; used to compare truncations.
    pub fn degree_at_most(&self, n: u32) -> SphereFunction {
        SphereFunction {
            components: self
                .components
                .iter()
                .filter(|((p, q), _)| p + q <= n)
                .map(|(k, f)| (*k, f.clone()))
                .collect(),
        }
    }
}

impl std::fmt::Display for SphereFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .components
            .iter()
            .map(|((p, q), g)| format!("H({p},{q})[{g}]"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `Δ^j (|ζ|^{2j} h) = ∏_{i=1}^{j} 2i(2i + 2 + 2d) · h` for `h` harmonic of
/// total degree `d` on ℝ⁴.
fn laplacian_power_factor(j: u32, d: u32) -> Rational {
    let mut acc = RBig::ONE;
    for i in 1..=j {
        acc *= RBig::from(2 * i * (2 * i + 2 + 2 * d));
    }
    acc
}

fn radius_power(j: u32) -> Polynomial {
    let r2 = radius_squared();
    (0..j).fold(Polynomial::one(), |acc, _| &acc * &r2)
}

/// Harmonic decomposition of a bihomogeneous polynomial:
/// `f = Σ_j |ζ|^{2j} h_{p-j, q-j}`, lowest degree first.
fn decompose_bihomogeneous(p: u32, q: u32, f: &Polynomial) -> Vec<((u32, u32), Polynomial)> {
    if flat_laplacian(f).is_zero() {
        return vec![((p, q), f.clone())];
    }
    let top = p.min(q);
    let mut residual = f.clone();
    let mut out = Vec::new();
    for j in (0..=top).rev() {
        let mut lap = residual.clone();
        for _ in 0..j {
            lap = flat_laplacian(&lap);
        }
        let d = p + q - 2 * j;
        let factor = RBig::ONE / laplacian_power_factor(j, d);
        let h = lap.scale_rational(&factor);
        if !h.is_zero() {
            residual = &residual - &(&radius_power(j) * &h);
            out.push(((p - j, q - j), h));
        }
    }
    debug_assert!(residual.is_zero());
    out
}

/// Canonical representative on `S³` of a polynomial on ℂ².
pub fn canonicalize(f: &Polynomial) -> SphereFunction {
    let mut out = SphereFunction::zero();
    for ((p, q), part) in f.bidegree_split() {
        for (key, h) in decompose_bihomogeneous(p, q, &part) {
            out.insert_add(key, &h);
        }
    }
    out
}

/// The `(p, q)` component, or zero when absent.
pub fn harmonic_project(f: &SphereFunction, p: u32, q: u32) -> Polynomial {
    f.component(p, q).cloned().unwrap_or_default()
}

/// `true` iff `f` and `g` have the same pairing with every monomial of total
/// degree `≤ n`, i.e. they agree as functions on `S³` up to that degree.
pub fn agree_on_sphere(f: &Polynomial, g: &Polynomial, n: u32) -> bool {
    let diff = f - g;
    for total in 0..=n {
        for p in 0..=total {
            for m in bihomogeneous_monomials(p, total - p) {
                if !inner_product(&diff, &Polynomial::term(m, GaussianRational::one())).is_zero() {
                    return false;
                }
            }
        }
    }
    true
}
