use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use super::{forward_owned, LaurentPoly, Rational};

/// Quotient `num / den` in lowest terms, `den` monic with lowest exponent 0.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RationalFunction {
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return RationalFunction::zero();
        }
        let g = num.gcd(&den);
        let mut num = num.div_exact(&g).unwrap();
        let mut den = den.div_exact(&g).unwrap();
        // move the monomial part of den into num, then make den monic
        let k = den.low();
        num = num.shift(-k);
        den = den.shift(-k);
        let lc = den.coeff(den.high());
        let inv = lc.recip();
        RationalFunction { num: num.scale(&inv), den: den.scale(&inv) }
    }

    pub fn from_laurent(p: LaurentPoly) -> Self {
        RationalFunction { num: p, den: LaurentPoly::one() }
    }

    pub fn zero() -> Self {
        RationalFunction::from_laurent(LaurentPoly::zero())
    }

    pub fn one() -> Self {
        RationalFunction::from_laurent(LaurentPoly::one())
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn involute(&self) -> Self {
        RationalFunction::new(self.num.involute(), self.den.involute())
    }

    pub fn recip(&self) -> Self {
        RationalFunction::new(self.den.clone(), self.num.clone())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        RationalFunction::new(self.num.scale(c), self.den.clone())
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den)
    }
}

impl<'a> Add<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn add(self, o: &RationalFunction) -> RationalFunction {
        if self.den == o.den {
            return RationalFunction::new(&self.num + &o.num, self.den.clone());
        }
        RationalFunction::new(&(&self.num * &o.den) + &(&o.num * &self.den), &self.den * &o.den)
    }
}

impl<'a> Sub<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn sub(self, o: &RationalFunction) -> RationalFunction {
        self + &(-o)
    }
}

impl<'a> Mul<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn mul(self, o: &RationalFunction) -> RationalFunction {
        RationalFunction::new(&self.num * &o.num, &self.den * &o.den)
    }
}

impl<'a> Div<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn div(self, o: &RationalFunction) -> RationalFunction {
        assert!(!o.is_zero(), "division by zero rational function");
        RationalFunction::new(&self.num * &o.den, &self.den * &o.num)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }
}

forward_owned!(RationalFunction, Add, add);
forward_owned!(RationalFunction, Sub, sub);
forward_owned!(RationalFunction, Mul, mul);
forward_owned!(RationalFunction, Div, div);
