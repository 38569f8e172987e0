//! Laurent polynomials over Q and the symmetric substitution `s = t + 1/t`.
//!
//! A palindromic Laurent polynomial `p(t) = p(1/t)` is the same thing as a
//! polynomial in `s`; on the unit circle `s = 2 cos θ` is real, so signs
//! and roots on the circle reduce to real questions in `s` on `[-2, 2]`.

mod gaussian;
pub(crate) mod parse;
mod poly;
mod ratfunc;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub use gaussian::GaussianRational;
pub use poly::{rat_to_f64, Poly};
pub(crate) use poly::{forward_owned, sign};
pub use ratfunc::RationalFunction;

pub type Rational = BigRational;

/// Polynomial in `s = t + 1/t`.
pub type SymmetricPoly = Poly;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Finite Laurent series `sum c_k t^k`, stored from the lowest exponent.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    low: i64,
    coeffs: Vec<Rational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { low: 0, coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        LaurentPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        LaurentPoly::new(0, vec![c])
    }

    pub fn from_int(c: i64) -> Self {
        LaurentPoly::constant(int(c))
    }

    pub fn monomial(c: Rational, k: i64) -> Self {
        LaurentPoly::new(k, vec![c])
    }

    /// The variable `t`.
    pub fn t() -> Self {
        LaurentPoly::monomial(Rational::one(), 1)
    }

    pub fn new(low: i64, coeffs: Vec<Rational>) -> Self {
        let mut l = LaurentPoly { low, coeffs };
        l.trim();
        l
    }

    pub fn from_i64s(low: i64, coeffs: &[i64]) -> Self {
        LaurentPoly::new(low, coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn from_poly(p: &Poly, shift: i64) -> Self {
        LaurentPoly::new(shift, p.coeffs().to_vec())
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().position(|c| !c.is_zero()).unwrap_or(self.coeffs.len());
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.low += lead as i64;
        }
        if self.coeffs.is_empty() {
            self.low = 0;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lowest exponent present (0 for the zero polynomial).
    pub fn low(&self) -> i64 {
        self.low
    }

    /// Highest exponent present (0 for the zero polynomial).
    pub fn high(&self) -> i64 {
        if self.is_zero() {
            0
        } else {
            self.low + self.coeffs.len() as i64 - 1
        }
    }

    pub fn span(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: i64) -> Rational {
        if k < self.low {
            return Rational::zero();
        }
        self.coeffs.get((k - self.low) as usize).cloned().unwrap_or_else(Rational::zero)
    }

    /// Nonzero `(exponent, coefficient)` pairs in ascending order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> {
        let low = self.low;
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(move |(k, c)| (low + k as i64, c))
    }

    /// `(p, k)` with `self = t^k * p(t)` and `p(0) != 0`.
    pub fn to_poly_shift(&self) -> (Poly, i64) {
        (Poly::from_coeffs(self.coeffs.clone()), self.low)
    }

    /// Units of `Q[t, 1/t]` are the nonzero monomials.
    pub fn is_unit(&self) -> bool {
        self.coeffs.len() == 1
    }

    pub fn is_constant(&self) -> bool {
        self.is_zero() || (self.coeffs.len() == 1 && self.low == 0)
    }

    pub fn scale(&self, c: &Rational) -> LaurentPoly {
        LaurentPoly::new(self.low, self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiply by `t^k`.
    pub fn shift(&self, k: i64) -> LaurentPoly {
        if self.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly { low: self.low + k, coeffs: self.coeffs.clone() }
    }

    /// `p(t) -> p(1/t)`
    pub fn involute(&self) -> LaurentPoly {
        if self.is_zero() {
            return LaurentPoly::zero();
        }
        let mut c = self.coeffs.clone();
        c.reverse();
        LaurentPoly { low: -self.high(), coeffs: c }
    }

    pub fn is_palindromic(&self) -> bool {
        *self == self.involute()
    }

    /// `(p + p(1/t)) / 2`
    pub fn symmetrize(&self) -> LaurentPoly {
        (self + &self.involute()).scale(&rat(1, 2))
    }

    /// Express a palindromic polynomial in `s = t + 1/t`.
    pub fn to_symmetric(&self) -> Result<SymmetricPoly> {
        if !self.is_palindromic() {
            return Err(Error::NotPalindromic(self.to_string()));
        }
        if self.is_zero() {
            return Ok(Poly::zero());
        }
        let n = self.high();
        // peel off the top term with (t + 1/t)^k
        let mut rest = self.clone();
        let mut out = vec![Rational::zero(); n as usize + 1];
        for k in (0..=n).rev() {
            let c = rest.coeff(k);
            if c.is_zero() {
                continue;
            }
            out[k as usize] = c.clone();
            rest = &rest - &s_power(k as usize).scale(&c);
        }
        debug_assert!(rest.is_zero());
        Ok(Poly::from_coeffs(out))
    }

    /// Substitute `s = t + 1/t`.
    pub fn from_symmetric(p: &SymmetricPoly) -> LaurentPoly {
        let mut acc = LaurentPoly::zero();
        for (k, c) in p.coeffs().iter().enumerate() {
            if !c.is_zero() {
                acc = &acc + &s_power(k).scale(c);
            }
        }
        acc
    }

    /// Evaluate at a nonzero rational `t`.
    pub fn eval(&self, t: &Rational) -> Rational {
        assert!(!t.is_zero() || self.low >= 0, "evaluating a Laurent polynomial at 0");
        let (p, k) = self.to_poly_shift();
        p.eval(t) * rat_pow(t, k)
    }

    pub fn eval_gaussian(&self, z: &GaussianRational) -> GaussianRational {
        let (p, k) = self.to_poly_shift();
        let mut acc = GaussianRational::zero();
        for c in p.coeffs().iter().rev() {
            acc = &(&acc * z) + &GaussianRational::from_real(c.clone());
        }
        &acc * &z.powi(k)
    }

    /// Evaluate at a rational point of the unit circle.
    pub fn eval_circle(&self, z: &GaussianRational) -> Result<GaussianRational> {
        if !z.on_unit_circle() {
            return Err(Error::NotOnCircle(z.to_string()));
        }
        Ok(self.eval_gaussian(z))
    }

    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * z + rat_to_f64(c);
        }
        acc * z.powi(self.low as i32)
    }

    /// Quotient when `d` divides `self` in `Q[t, 1/t]`.
    pub fn div_exact(&self, d: &LaurentPoly) -> Option<LaurentPoly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(LaurentPoly::zero());
        }
        let (a, ka) = self.to_poly_shift();
        let (b, kb) = d.to_poly_shift();
        let q = a.div_exact(&b)?;
        Some(LaurentPoly::from_poly(&q, ka - kb))
    }

    pub fn pow(&self, n: u32) -> LaurentPoly {
        let mut acc = LaurentPoly::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Associate with lowest exponent 0 and monic polynomial part.
    pub fn normalize_unit(&self) -> LaurentPoly {
        if self.is_zero() {
            return LaurentPoly::zero();
        }
        let lc = self.coeffs.last().unwrap().recip();
        LaurentPoly::new(0, self.coeffs.iter().map(|c| c * &lc).collect())
    }

    /// Palindromic associate `c t^k p` normalized to be positive at `t = 1`,
    /// when one exists.
    pub fn normalize_palindromic(&self) -> Option<LaurentPoly> {
        if self.is_zero() {
            return None;
        }
        let span = self.span() as i64;
        if span % 2 != 0 {
            return None;
        }
        let c = self.shift(-self.low - span / 2);
        if !c.is_palindromic() {
            return None;
        }
        let v = c.eval(&Rational::one());
        if v.is_zero() {
            return Some(c);
        }
        Some(if v < Rational::zero() { -&c } else { c })
    }

    /// `(g, x, y)` with `x*self + y*other = g`; `g` has lowest exponent 0
    /// and is monic.
    pub fn bezout(&self, other: &LaurentPoly) -> (LaurentPoly, LaurentPoly, LaurentPoly) {
        let (a, ka) = self.to_poly_shift();
        let (b, kb) = other.to_poly_shift();
        let (g, x, y) = a.ext_gcd(&b);
        // x a + y b = g with self = t^ka a
        (
            LaurentPoly::from_poly(&g, 0),
            LaurentPoly::from_poly(&x, -ka),
            LaurentPoly::from_poly(&y, -kb),
        )
    }

    pub fn gcd(&self, other: &LaurentPoly) -> LaurentPoly {
        let (a, _) = self.to_poly_shift();
        let (b, _) = other.to_poly_shift();
        LaurentPoly::from_poly(&a.gcd(&b), 0)
    }

    pub fn to_string_in(&self, var: &str) -> String {
        parse::format_terms(self.terms(), var)
    }

    pub fn parse_in(s: &str, var: char) -> Result<LaurentPoly> {
        parse::parse_laurent(s, var)
    }
}

fn rat_pow(t: &Rational, k: i64) -> Rational {
    let mut acc = Rational::one();
    let base = if k < 0 { t.recip() } else { t.clone() };
    for _ in 0..k.unsigned_abs() {
        acc *= &base;
    }
    acc
}

/// `(t + 1/t)^k`
fn s_power(k: usize) -> LaurentPoly {
    // binomial expansion, exponents -k, -k+2, ..., k
    let mut coeffs = vec![Rational::zero(); 2 * k + 1];
    let mut b = BigInt::one();
    for j in 0..=k {
        coeffs[2 * j] = Rational::from_integer(b.clone());
        b = b * BigInt::from(k - j) / BigInt::from(j + 1);
    }
    LaurentPoly::new(-(k as i64), coeffs)
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_in("t"))
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L({self})")
    }
}

impl FromStr for LaurentPoly {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse::parse_laurent(s, 't')
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let low = self.low.min(rhs.low);
        let high = self.high().max(rhs.high());
        let mut v = vec![Rational::zero(); (high - low + 1) as usize];
        for (k, c) in self.coeffs.iter().enumerate() {
            v[(self.low - low) as usize + k] += c;
        }
        for (k, c) in rhs.coeffs.iter().enumerate() {
            v[(rhs.low - low) as usize + k] += c;
        }
        LaurentPoly::new(low, v)
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let a = Poly::from_coeffs(self.coeffs.clone());
        let b = Poly::from_coeffs(rhs.coeffs.clone());
        LaurentPoly::from_poly(&(&a * &b), self.low + rhs.low)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { low: self.low, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

forward_owned!(LaurentPoly, Add, add);
forward_owned!(LaurentPoly, Sub, sub);
forward_owned!(LaurentPoly, Mul, mul);
