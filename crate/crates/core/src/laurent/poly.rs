//! Dense univariate polynomials over the rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Rational;

/// Polynomial with ascending rational coefficients and no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Poly::from_coeffs(vec![c])
    }

    /// `c * x^k`
    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut v = vec![Rational::zero(); k + 1];
        v[k] = c;
        Poly::from_coeffs(v)
    }

    pub fn x() -> Self {
        Poly::monomial(Rational::one(), 1)
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Poly::from_coeffs(coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Monic associate; zero stays zero.
    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let lc = self.leading().recip();
        self.scale(&lc)
    }

    /// Integer primitive associate with positive leading coefficient.
    pub fn primitive(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut den = BigInt::one();
        for c in &self.coeffs {
            den = den.lcm(c.denom());
        }
        let ints: Vec<BigInt> = self.coeffs.iter().map(|c| (c * &den).to_integer()).collect();
        let mut g = BigInt::zero();
        for v in &ints {
            g = g.gcd(v);
        }
        if ints.last().unwrap().is_negative() {
            g = -g;
        }
        Poly { coeffs: ints.into_iter().map(|v| Rational::from_integer(v / &g)).collect() }
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Sign of the value at a rational point.
    pub fn sign_at(&self, x: &Rational) -> i8 {
        sign(&self.eval(x))
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + rat_to_f64(c);
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        Poly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Rational::from_integer(BigInt::from(k)))
                .collect(),
        )
    }

    /// `p(-x)`
    pub fn reflect(&self) -> Poly {
        Poly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| if k % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    /// `x^deg * p(1/x)`
    pub fn reverse(&self) -> Poly {
        let mut v = self.coeffs.clone();
        v.reverse();
        Poly::from_coeffs(v)
    }

    /// Multiply by `x^k`.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![Rational::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        Poly { coeffs: v }
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn valuation(&self) -> usize {
        self.coeffs.iter().position(|c| !c.is_zero()).unwrap_or(0)
    }

    /// Drop the `x^valuation` factor.
    pub fn strip_x(&self) -> Poly {
        let v = self.valuation();
        Poly { coeffs: self.coeffs[v..].to_vec() }
    }

    pub fn pow(&self, n: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        if self.coeffs.len() < d.coeffs.len() {
            return (Poly::zero(), self.clone());
        }
        let dl = d.coeffs.len();
        let inv = d.leading().recip();
        let mut r = self.coeffs.clone();
        let mut q = vec![Rational::zero(); r.len() - dl + 1];
        for k in (0..q.len()).rev() {
            let c = &r[k + dl - 1] * &inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                let t = &c * dc;
                r[k + j] -= t;
            }
            q[k] = c;
        }
        r.truncate(dl - 1);
        (Poly::from_coeffs(q), Poly::from_coeffs(r))
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.div_rem(d).1
    }

    /// Quotient when `d` divides `self` exactly.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.primitive();
        let mut b = other.primitive();
        while !b.is_zero() {
            let r = a.rem(&b).primitive();
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns `(g, x, y)` with `x*self + y*other = g`, `g` monic.
    pub fn ext_gcd(&self, other: &Poly) -> (Poly, Poly, Poly) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), Poly::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = &s0 - &(&q * &s1);
            let t = &t0 - &(&q * &t1);
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
            t0 = t1;
            t1 = t;
        }
        if r0.is_zero() {
            return (Poly::zero(), Poly::zero(), Poly::zero());
        }
        let inv = r0.leading().recip();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    /// Inverse modulo `m`, if it exists.
    pub fn inverse_mod(&self, m: &Poly) -> Option<Poly> {
        let (g, x, _) = self.rem(m).ext_gcd(m);
        (g.degree() == Some(0)).then(|| x.rem(m))
    }

    pub fn squarefree_part(&self) -> Poly {
        if self.is_constant() {
            return Poly::one();
        }
        let g = self.gcd(&self.derivative());
        self.div_exact(&g).unwrap().monic()
    }

    /// Yun decomposition: monic squarefree pairwise coprime `(f_i, i)` with
    /// `self = lc * prod f_i^i`. Constant factors are omitted.
    pub fn squarefree_decomposition(&self) -> Vec<(Poly, usize)> {
        let mut out = Vec::new();
        if self.is_constant() {
            return out;
        }
        let f = self.monic();
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.div_exact(&a0).unwrap();
        let mut c = df.div_exact(&a0).unwrap();
        let mut d = &c - &b.derivative();
        let mut i = 1;
        while !b.is_constant() {
            let a = b.gcd(&d);
            if !a.is_constant() {
                out.push((a.monic(), i));
            }
            b = b.div_exact(&a).unwrap();
            c = d.div_exact(&a).unwrap();
            d = &c - &b.derivative();
            i += 1;
        }
        out
    }

    /// Cauchy bound: every root has absolute value below this.
    pub fn root_bound(&self) -> Rational {
        let lc = self.leading().abs();
        let mut m = Rational::zero();
        for c in &self.coeffs[..self.coeffs.len().saturating_sub(1)] {
            let r = c.abs() / &lc;
            if r > m {
                m = r;
            }
        }
        m + Rational::one()
    }

    /// Format in the variable `var`.
    pub fn to_string_in(&self, var: &str) -> String {
        super::parse::format_terms(
            self.coeffs.iter().enumerate().map(|(k, c)| (k as i64, c)),
            var,
        )
    }
}

pub(crate) fn sign(x: &Rational) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

pub fn rat_to_f64(x: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or_else(|| {
        let n = x.numer().bits() as i64;
        let d = x.denom().bits() as i64;
        let shift = (n - d) - 60;
        let scaled = if shift > 0 {
            Rational::new(x.numer().clone(), x.denom() << (shift as usize))
        } else {
            Rational::new(x.numer() << ((-shift) as usize), x.denom().clone())
        };
        scaled.to_f64().unwrap_or(0.0) * 2f64.powi(shift as i32)
    })
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({})", self.to_string_in("x"))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_in("s"))
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut v = Vec::with_capacity(n);
        for k in 0..n {
            let a = self.coeffs.get(k);
            let b = rhs.coeffs.get(k);
            v.push(match (a, b) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        Poly::from_coeffs(v)
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        Poly::from_coeffs(v)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

macro_rules! forward_owned {
    ($ty:ty, $tr:ident, $m:ident) => {
        impl $tr<$ty> for $ty {
            type Output = $ty;
            fn $m(self, rhs: $ty) -> $ty {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a $ty> for $ty {
            type Output = $ty;
            fn $m(self, rhs: &'a $ty) -> $ty {
                (&self).$m(rhs)
            }
        }
    };
}
pub(crate) use forward_owned;

forward_owned!(Poly, Add, add);
forward_owned!(Poly, Sub, sub);
forward_owned!(Poly, Mul, mul);
