use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_traits::{One, Zero};

use super::Rational;

/// Element of `Q(i)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussianRational { re, im }
    }

    pub fn from_real(re: Rational) -> Self {
        GaussianRational { re, im: Rational::zero() }
    }

    pub fn zero() -> Self {
        GaussianRational::from_real(Rational::zero())
    }

    pub fn one() -> Self {
        GaussianRational::from_real(Rational::one())
    }

    pub fn conj(&self) -> Self {
        GaussianRational { re: self.re.clone(), im: -&self.im }
    }

    pub fn norm_sq(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn on_unit_circle(&self) -> bool {
        self.norm_sq().is_one()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn inv(&self) -> Self {
        let n = self.norm_sq();
        assert!(!n.is_zero(), "inverting zero");
        GaussianRational { re: &self.re / &n, im: -&self.im / &n }
    }

    pub fn powi(&self, k: i64) -> Self {
        let base = if k < 0 { self.inv() } else { self.clone() };
        let mut acc = GaussianRational::one();
        for _ in 0..k.unsigned_abs() {
            acc = &acc * &base;
        }
        acc
    }

    /// `z + 1/z`, which is `2 Re z` on the circle.
    pub fn s_value(&self) -> Rational {
        let w = self.inv();
        &self.re + &w.re
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}i", self.re, self.im)
    }
}

impl<'a> Add<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn add(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational { re: &self.re + &o.re, im: &self.im + &o.im }
    }
}

impl<'a> Sub<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn sub(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational { re: &self.re - &o.re, im: &self.im - &o.im }
    }
}

impl<'a> Mul<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn mul(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
}
