use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use dashu_ratio::RBig;

use super::rational::{self, Rational};
use crate::error::{CrError, Result};

/// Exact complex scalar `re + im·i` with rational parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        Self { re, im }
    }

    pub fn zero() -> Self {
        Self::new(RBig::ZERO, RBig::ZERO)
    }

    pub fn one() -> Self {
        Self::new(RBig::ONE, RBig::ZERO)
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Self::new(RBig::ZERO, RBig::ONE)
    }

    pub fn real(re: Rational) -> Self {
        Self::new(re, RBig::ZERO)
    }

    pub fn imag(im: Rational) -> Self {
        Self::new(RBig::ZERO, im)
    }

    pub fn from_int(n: i64) -> Self {
        Self::real(rational::integer(n))
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn is_imaginary(&self) -> bool {
        self.re.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    /// `|x|^2 = re^2 + im^2`.
    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self::new(&self.re * r, &self.im * r)
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(CrError::Inconsistency("division by zero".into()));
        }
        let n = self.norm_sqr();
        Ok(Self::new(&self.re / &n, -(&self.im / &n)))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    /// The real part, failing unless the imaginary part is exactly zero.
    pub fn to_real(&self) -> Result<Rational> {
        if self.is_real() {
            Ok(self.re.clone())
        } else {
            Err(CrError::Inconsistency(format!("expected a real value, got {self}")))
        }
    }
}

impl From<Rational> for GaussianRational {
    fn from(r: Rational) -> Self {
        Self::real(r)
    }
}

impl From<i64> for GaussianRational {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl fmt::Display for GaussianRational {
    /// Real values print as `p/q`; anything else as `(re)+(im)i`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_real() {
            write!(f, "{}", self.re)
        } else {
            write!(f, "({})+({})i", self.re, self.im)
        }
    }
}

impl Neg for GaussianRational {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.re, -self.im)
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-self.re.clone(), -self.im.clone())
    }
}

impl Add<&GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub<&GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul<&GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        if self.is_real() && rhs.is_real() {
            return GaussianRational::real(&self.re * &rhs.re);
        }
        GaussianRational::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Div<&GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    /// Panics on a zero divisor; use [`GaussianRational::checked_div`] when that can happen.
    fn div(self, rhs: &GaussianRational) -> GaussianRational {
        self.checked_div(rhs).expect("division by zero")
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: GaussianRational) -> GaussianRational {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: &GaussianRational) -> GaussianRational {
                (&self).$method(rhs)
            }
        }
        impl $tr<GaussianRational> for &GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: GaussianRational) -> GaussianRational {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&GaussianRational> for GaussianRational {
    fn add_assign(&mut self, rhs: &GaussianRational) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&GaussianRational> for GaussianRational {
    fn sub_assign(&mut self, rhs: &GaussianRational) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl MulAssign<&GaussianRational> for GaussianRational {
    fn mul_assign(&mut self, rhs: &GaussianRational) {
        *self = &*self * rhs;
    }
}
