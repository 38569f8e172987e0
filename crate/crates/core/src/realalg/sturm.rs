use num_traits::{Signed, Zero};

use crate::laurent::{sign, Poly, Rational};

/// Sturm chain of a squarefree polynomial, each member scaled by a
/// positive constant to keep integer coefficients small.
#[derive(Clone, Debug)]
pub struct SturmChain {
    chain: Vec<Poly>,
}

fn positive_primitive(p: &Poly) -> Poly {
    let q = p.primitive();
    if q.leading().is_positive() == p.leading().is_positive() {
        q
    } else {
        -q
    }
}

impl SturmChain {
    pub fn new(p: &Poly) -> Self {
        let mut chain = Vec::new();
        if p.is_zero() {
            return SturmChain { chain };
        }
        let p0 = positive_primitive(p);
        let p1 = positive_primitive(&p0.derivative());
        chain.push(p0);
        if p1.is_zero() {
            return SturmChain { chain };
        }
        chain.push(p1);
        loop {
            let n = chain.len();
            let r = chain[n - 2].rem(&chain[n - 1]);
            if r.is_zero() {
                break;
            }
            chain.push(positive_primitive(&-r));
        }
        SturmChain { chain }
    }

    pub fn poly(&self) -> &Poly {
        &self.chain[0]
    }

    fn variations_of(signs: impl Iterator<Item = i8>) -> usize {
        let mut last = 0i8;
        let mut v = 0;
        for s in signs {
            if s == 0 {
                continue;
            }
            if last != 0 && s != last {
                v += 1;
            }
            last = s;
        }
        v
    }

    pub fn variations(&self, x: &Rational) -> usize {
        Self::variations_of(self.chain.iter().map(|p| p.sign_at(x)))
    }

    pub fn variations_at_pos_inf(&self) -> usize {
        Self::variations_of(self.chain.iter().map(|p| sign(&p.leading())))
    }

    pub fn variations_at_neg_inf(&self) -> usize {
        Self::variations_of(self.chain.iter().map(|p| {
            let s = sign(&p.leading());
            if p.deg() % 2 == 1 {
                -s
            } else {
                s
            }
        }))
    }

    /// Distinct roots in the half-open interval `(a, b]`.
    pub fn count_half_open(&self, a: &Rational, b: &Rational) -> usize {
        if self.chain.is_empty() || a >= b {
            return 0;
        }
        self.variations(a) - self.variations(b)
    }

    /// Distinct roots in the open interval `(a, b)`.
    pub fn count_open(&self, a: &Rational, b: &Rational) -> usize {
        let n = self.count_half_open(a, b);
        if n > 0 && self.poly().eval(b).is_zero() {
            n - 1
        } else {
            n
        }
    }

    /// Distinct real roots.
    pub fn count_all(&self) -> usize {
        if self.chain.is_empty() {
            return 0;
        }
        self.variations_at_neg_inf() - self.variations_at_pos_inf()
    }

    /// Distinct roots above `a` (exclusive).
    pub fn count_above(&self, a: &Rational) -> usize {
        if self.chain.is_empty() {
            return 0;
        }
        self.variations(a) - self.variations_at_pos_inf()
    }

    /// Distinct roots below `a` (exclusive).
    pub fn count_below(&self, a: &Rational) -> usize {
        if self.chain.is_empty() {
            return 0;
        }
        let n = self.variations_at_neg_inf() - self.variations(a);
        if n > 0 && self.poly().eval(a).is_zero() {
            n - 1
        } else {
            n
        }
    }
}
