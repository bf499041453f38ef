use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use super::gaussian::GaussianRational;
use super::rational::Rational;

/// One of the four coordinates `z, w, z̄, w̄` on ℂ².
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    Z,
    W,
    Zb,
    Wb,
}

impl Var {
    pub const ALL: [Var; 4] = [Var::Z, Var::W, Var::Zb, Var::Wb];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn conj(self) -> Var {
        match self {
            Var::Z => Var::Zb,
            Var::W => Var::Wb,
            Var::Zb => Var::Z,
            Var::Wb => Var::W,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::Z => "z",
            Var::W => "w",
            Var::Zb => "zb",
            Var::Wb => "wb",
        }
    }
}

/// `z^a w^b z̄^c w̄^d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    pub a: u32,
    pub b: u32,
    pub c: u32,
    pub d: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { a: 0, b: 0, c: 0, d: 0 };

    pub fn new(a: u32, b: u32, c: u32, d: u32) -> Self {
        Self { a, b, c, d }
    }

    pub fn var(v: Var) -> Self {
        let mut m = Self::ONE;
        m.set(v, 1);
        m
    }

    pub fn exponents(&self) -> [u32; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.exponents()[v.index()]
    }

    fn set(&mut self, v: Var, e: u32) {
        match v {
            Var::Z => self.a = e,
            Var::W => self.b = e,
            Var::Zb => self.c = e,
            Var::Wb => self.d = e,
        }
    }

    pub fn degree(&self) -> u32 {
        self.a + self.b + self.c + self.d
    }

    /// Holomorphic and antiholomorphic degrees `(a + b, c + d)`.
    pub fn bidegree(&self) -> (u32, u32) {
        (self.a + self.b, self.c + self.d)
    }

    pub fn conj(&self) -> Self {
        Self::new(self.c, self.d, self.a, self.b)
    }

    pub fn mul(&self, other: &Monomial) -> Self {
        Self::new(self.a + other.a, self.b + other.b, self.c + other.c, self.d + other.d)
    }

    pub fn times_var(&self, v: Var) -> Self {
        let mut m = *self;
        m.set(v, self.exponent(v) + 1);
        m
    }

    /// `∂m/∂v = e · m / v`, or `None` when the exponent of `v` is zero.
    pub fn derive(&self, v: Var) -> Option<(u32, Monomial)> {
        let e = self.exponent(v);
        if e == 0 {
            return None;
        }
        let mut m = *self;
        m.set(v, e - 1);
        Some((e, m))
    }
}

/// Graded lexicographic: total degree first, then `(a, b, c, d)`.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.exponents().cmp(&other.exponents()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Polynomial in `z, w, z̄, w̄` with Gaussian-rational coefficients.
///
/// Zero coefficients are never stored, so structural equality is equality of
/// polynomials.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, GaussianRational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(GaussianRational::one())
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::term(Monomial::ONE, c)
    }

    pub fn var(v: Var) -> Self {
        Self::term(Monomial::var(v), GaussianRational::one())
    }

    pub fn term(m: Monomial, c: GaussianRational) -> Self {
        let mut p = Self::zero();
        p.add_term(m, &c);
        p
    }

    pub fn monomial(a: u32, b: u32, c: u32, d: u32) -> Self {
        Self::term(Monomial::new(a, b, c, d), GaussianRational::one())
    }

    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, GaussianRational)>,
    {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, &c);
        }
        p
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> GaussianRational {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, m: Monomial, c: &GaussianRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Polynomial, factor: &GaussianRational) {
        if factor.is_zero() {
            return;
        }
        for (m, c) in other.terms() {
            self.add_term(*m, &(c * factor));
        }
    }

    pub fn scale(&self, factor: &GaussianRational) -> Polynomial {
        if factor.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (*m, c * factor)).collect(),
        }
    }

    pub fn scale_rational(&self, factor: &Rational) -> Polynomial {
        self.scale(&GaussianRational::real(factor.clone()))
    }

    /// Complex conjugation: `(a,b,c,d) → (c,d,a,b)` with conjugated coefficients.
    pub fn conjugate(&self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (m.conj(), c.conj())).collect(),
        }
    }

    pub fn is_real(&self) -> bool {
        *self == self.conjugate()
    }

    /// Formal partial derivative with respect to `v` (z and z̄ treated as independent).
    pub fn derive(&self, v: Var) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in self.terms() {
            if let Some((e, dm)) = m.derive(v) {
                out.add_term(dm, &c.scale(&Rational::from(e)));
            }
        }
        out
    }

    pub fn times_var(&self, v: Var) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (m.times_var(v), c.clone())).collect(),
        }
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Splits into bidegree-homogeneous parts, ordered by `(p, q)`.
    pub fn bidegree_split(&self) -> Vec<((u32, u32), Polynomial)> {
        let mut parts: BTreeMap<(u32, u32), Polynomial> = BTreeMap::new();
        for (m, c) in self.terms() {
            parts.entry(m.bidegree()).or_default().terms.insert(*m, c.clone());
        }
        parts.into_iter().collect()
    }

    pub fn bidegree(&self) -> Option<(u32, u32)> {
        let mut it = self.terms.keys().map(Monomial::bidegree);
        let first = it.next()?;
        it.all(|b| b == first).then_some(first)
    }

    pub fn is_homogeneous_of(&self, p: u32, q: u32) -> bool {
        self.terms.keys().all(|m| m.bidegree() == (p, q))
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl Add<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in rhs.terms() {
            out.add_term(*m, c);
        }
        out
    }
}

impl Sub<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in rhs.terms() {
            out.add_term(*m, &-c);
        }
        out
    }
}

impl Mul<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m1, c1) in self.terms() {
            for (m2, c2) in rhs.terms() {
                out.add_term(m1.mul(m2), &(c1 * c2));
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
