//! Exact real algebraic numbers by isolating intervals.
//!
//! Roots on the unit circle are handled through `s = t + 1/t`: a root
//! `e^{iθ}` with `0 < θ < π` corresponds to the real root `2 cos θ` of the
//! symmetric lift in `(-2, 2)`. Ordering by `θ` is ordering by decreasing `s`.

mod sturm;

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::laurent::{int, rat, rat_to_f64, GaussianRational, LaurentPoly, Poly, Rational};

pub use sturm::SturmChain;

/// Open interval `(lo, hi)` containing exactly one root of the squarefree
/// polynomial `defpoly`, with neither endpoint a root.
#[derive(Clone)]
pub struct IsolatingInterval {
    lo: Rational,
    hi: Rational,
    defpoly: Arc<Poly>,
}

impl IsolatingInterval {
    /// Build and validate an interval.
    pub fn new(lo: Rational, hi: Rational, defpoly: Poly) -> Result<Self> {
        if lo >= hi {
            return Err(Error::Parse("isolating interval needs lo < hi".into()));
        }
        let sq = defpoly.squarefree_part();
        if sq != defpoly.monic() {
            return Err(Error::Parse("defining polynomial must be squarefree".into()));
        }
        let chain = SturmChain::new(&sq);
        if sq.eval(&lo).is_zero() || sq.eval(&hi).is_zero() || chain.count_open(&lo, &hi) != 1 {
            return Err(Error::Parse("interval does not isolate exactly one root".into()));
        }
        Ok(IsolatingInterval { lo, hi, defpoly: Arc::new(sq) })
    }

    pub(crate) fn new_unchecked(lo: Rational, hi: Rational, defpoly: Arc<Poly>) -> Self {
        IsolatingInterval { lo, hi, defpoly }
    }

    /// The rational point itself, as the root of `x - r`.
    pub fn rational(r: &Rational) -> Self {
        let defpoly = Poly::from_coeffs(vec![-r.clone(), Rational::one()]);
        IsolatingInterval { lo: r - Rational::one(), hi: r + Rational::one(), defpoly: Arc::new(defpoly) }
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn defpoly(&self) -> &Poly {
        &self.defpoly
    }

    /// The root, when it is rational.
    pub fn as_rational(&self) -> Option<Rational> {
        let d = self.defpoly.degree()?;
        if d == 1 {
            let c = self.defpoly.coeffs();
            return Some(-&c[0] / &c[1]);
        }
        None
    }

    /// The root when it is rational, whatever the degree of `defpoly`.
    ///
    /// A rational root of the primitive integer associate has denominator
    /// dividing its leading coefficient `L`, so it is a multiple of `1/L`.
    pub fn exact_value(&self) -> Option<Rational> {
        if let Some(r) = self.as_rational() {
            return Some(r);
        }
        let l = Rational::from_integer(self.defpoly.primitive().leading().to_integer());
        let mut iv = self.clone();
        iv.refine_until(&l.recip());
        let k = (&iv.lo * &l).floor() + Rational::one();
        let r = k / &l;
        (r < iv.hi && self.defpoly.eval(&r).is_zero()).then_some(r)
    }

    fn split_point(&self) -> Rational {
        let mid = (&self.lo + &self.hi) / int(2);
        if !self.defpoly.eval(&mid).is_zero() {
            return mid;
        }
        // the midpoint is the root; any other interior point works
        let w = &self.hi - &self.lo;
        let mut k = 3i64;
        loop {
            let p = &self.lo + &w * rat(1, k);
            if !self.defpoly.eval(&p).is_zero() {
                return p;
            }
            k += 1;
        }
    }

    /// Halve the interval.
    pub fn bisect(&mut self) {
        if let Some(r) = self.as_rational() {
            let w = (&self.hi - &self.lo) / int(4);
            self.lo = &r - &w;
            self.hi = &r + &w;
            return;
        }
        let m = self.split_point();
        let sl = self.defpoly.sign_at(&self.lo);
        let sm = self.defpoly.sign_at(&m);
        if sl == sm {
            self.lo = m;
        } else {
            self.hi = m;
        }
    }

    pub fn refine_until(&mut self, width: &Rational) {
        while &(&self.hi - &self.lo) > width {
            self.bisect();
        }
    }

    /// Double-precision approximation of the root.
    pub fn approx(&self) -> f64 {
        if let Some(r) = self.as_rational() {
            return rat_to_f64(&r);
        }
        let mut c = self.clone();
        let scale = rat_to_f64(&c.hi.abs().max(c.lo.abs())).max(1.0);
        let eps = scale * 1e-17;
        for _ in 0..200 {
            if rat_to_f64(&(&c.hi - &c.lo)) <= eps {
                break;
            }
            c.bisect();
        }
        rat_to_f64(&((&c.lo + &c.hi) / int(2)))
    }

    /// Compare the root with a rational number.
    pub fn cmp_rational(&self, x: &Rational) -> Ordering {
        if x <= &self.lo {
            return Ordering::Greater;
        }
        if x >= &self.hi {
            return Ordering::Less;
        }
        let v = self.defpoly.sign_at(x);
        if v == 0 {
            Ordering::Equal
        } else if v == self.defpoly.sign_at(&self.lo) {
            // root lies in (x, hi)
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }

    /// Compare two real algebraic numbers exactly.
    pub fn cmp_root(&self, other: &IsolatingInterval) -> Ordering {
        let mut a = self.clone();
        let mut b = other.clone();
        if let Some(r) = b.as_rational() {
            return a.cmp_rational(&r);
        }
        if let Some(r) = a.as_rational() {
            return b.cmp_rational(&r).reverse();
        }
        let g = a.defpoly.gcd(&b.defpoly);
        let gchain = (g.deg() >= 1).then(|| SturmChain::new(&g));
        loop {
            if a.hi <= b.lo {
                return Ordering::Less;
            }
            if b.hi <= a.lo {
                return Ordering::Greater;
            }
            if let Some(ch) = &gchain {
                let lo = if a.lo > b.lo { &a.lo } else { &b.lo };
                let hi = if a.hi < b.hi { &a.hi } else { &b.hi };
                if ch.count_open(lo, hi) > 0 {
                    return Ordering::Equal;
                }
            }
            a.bisect();
            b.bisect();
        }
    }

    /// Sign of `q` at the root: 0 exactly when `q` vanishes there.
    pub fn sign_at(&self, q: &Poly) -> i8 {
        if q.is_zero() {
            return 0;
        }
        if let Some(r) = self.as_rational() {
            return q.sign_at(&r);
        }
        let g = q.gcd(&self.defpoly);
        if g.deg() >= 1 && SturmChain::new(&g).count_open(&self.lo, &self.hi) > 0 {
            return 0;
        }
        let qs = q.squarefree_part();
        let chain = SturmChain::new(&qs);
        let mut c = self.clone();
        loop {
            if !qs.eval(&c.lo).is_zero() && !qs.eval(&c.hi).is_zero() && chain.count_open(&c.lo, &c.hi) == 0 {
                return q.sign_at(&c.lo);
            }
            c.bisect();
        }
    }
}

impl fmt::Debug for IsolatingInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Root({} in ({}, {}))", self.defpoly.to_string_in("s"), self.lo, self.hi)
    }
}

impl PartialEq for IsolatingInterval {
    fn eq(&self, other: &Self) -> bool {
        self.cmp_root(other) == Ordering::Equal
    }
}

/// Isolate the distinct real roots of `q` in the open interval `(lo, hi)`,
/// ascending.
pub fn sturm_isolate(q: &Poly, lo: &Rational, hi: &Rational) -> Vec<IsolatingInterval> {
    let mut out = Vec::new();
    if q.is_constant() {
        return out;
    }
    let p = q.squarefree_part();
    let chain = SturmChain::new(&p);
    let def = Arc::new(p);
    isolate_rec(&def, &chain, lo.clone(), hi.clone(), &mut out);
    out
}

fn isolate_rec(p: &Arc<Poly>, chain: &SturmChain, a: Rational, b: Rational, out: &mut Vec<IsolatingInterval>) {
    let n = chain.count_open(&a, &b);
    if n == 0 {
        return;
    }
    let pa = p.eval(&a);
    let pb = p.eval(&b);
    if n == 1 && !pa.is_zero() && !pb.is_zero() {
        out.push(IsolatingInterval::new_unchecked(a, b, p.clone()));
        return;
    }
    let m = (&a + &b) / int(2);
    if p.eval(&m).is_zero() {
        let mut d = (&b - &a) / int(4);
        loop {
            let l = &m - &d;
            let h = &m + &d;
            if !p.eval(&l).is_zero() && !p.eval(&h).is_zero() && chain.count_open(&l, &h) == 1 {
                isolate_rec(p, chain, a, l.clone(), out);
                out.push(IsolatingInterval::new_unchecked(l, h.clone(), p.clone()));
                isolate_rec(p, chain, h, b, out);
                return;
            }
            d /= int(2);
        }
    }
    isolate_rec(p, chain, a, m.clone(), out);
    isolate_rec(p, chain, m, b, out);
}

/// Roots of `q` in `(lo, hi)` with multiplicities, ascending.
pub fn isolate_with_multiplicity(q: &Poly, lo: &Rational, hi: &Rational) -> Vec<(IsolatingInterval, usize)> {
    let mut out = Vec::new();
    for (f, m) in q.squarefree_decomposition() {
        for iv in sturm_isolate(&f, lo, hi) {
            out.push((iv, m));
        }
    }
    out.sort_by(|a, b| a.0.cmp_root(&b.0));
    out
}

/// Distinct real roots of `q` anywhere, ascending.
pub fn real_roots(q: &Poly) -> Vec<IsolatingInterval> {
    if q.is_constant() {
        return Vec::new();
    }
    let b = q.root_bound();
    sturm_isolate(q, &-&b, &b)
}

/// A root `e^{iθ}`, `0 < θ < π`, of a palindromic Laurent polynomial,
/// stored by its abscissa `s = 2 cos θ`.
#[derive(Clone, Debug, PartialEq)]
pub struct CircleRoot {
    pub abscissa: IsolatingInterval,
    pub multiplicity: usize,
}

impl CircleRoot {
    /// `θ / 2π` in `(0, 1/2)`.
    pub fn theta_over_2pi(&self) -> f64 {
        let s = self.abscissa.approx().clamp(-2.0, 2.0);
        (s / 2.0).acos() / (2.0 * std::f64::consts::PI)
    }
}

/// Roots of a palindromic Laurent polynomial on the open upper half circle,
/// ordered by increasing `θ`.
pub fn circle_roots(p: &LaurentPoly) -> Result<Vec<CircleRoot>> {
    let q = p.to_symmetric()?;
    if q.is_zero() || q.eval(&int(2)).is_zero() || q.eval(&int(-2)).is_zero() {
        return Err(Error::RootAtPlusMinusOne);
    }
    Ok(circle_roots_of_lift(&q))
}

/// Circle roots of a symmetric lift, ignoring any roots at `s = ±2`.
pub fn circle_roots_of_lift(q: &Poly) -> Vec<CircleRoot> {
    let mut roots: Vec<CircleRoot> = isolate_with_multiplicity(q, &int(-2), &int(2))
        .into_iter()
        .map(|(abscissa, multiplicity)| CircleRoot { abscissa, multiplicity })
        .collect();
    roots.reverse();
    roots
}

/// Endpoint of an arc of the upper half circle.
#[derive(Clone, Copy, Debug)]
pub enum ArcEnd<'a> {
    One,
    MinusOne,
    Root(&'a IsolatingInterval),
}

impl ArcEnd<'_> {
    fn cmp(&self, other: &ArcEnd<'_>) -> Ordering {
        match (self, other) {
            (ArcEnd::One, ArcEnd::One) | (ArcEnd::MinusOne, ArcEnd::MinusOne) => Ordering::Equal,
            (ArcEnd::One, _) | (_, ArcEnd::MinusOne) => Ordering::Greater,
            (ArcEnd::MinusOne, _) | (_, ArcEnd::One) => Ordering::Less,
            (ArcEnd::Root(a), ArcEnd::Root(b)) => a.cmp_root(b),
        }
    }
}

/// A rational `s` strictly between two arc endpoints that is the abscissa
/// of a rational point of the circle.
pub fn rational_s_on_arc(a: ArcEnd<'_>, b: ArcEnd<'_>) -> Result<Rational> {
    Ok(rational_point_on_arc(a, b)?.s_value())
}

/// A point `z` with rational coordinates, `|z| = 1`, `Im z > 0`, strictly
/// inside the arc between the two endpoints.
pub fn rational_point_on_arc(a: ArcEnd<'_>, b: ArcEnd<'_>) -> Result<GaussianRational> {
    let (low, high) = match a.cmp(&b) {
        Ordering::Equal => return Err(Error::EmptyArc),
        Ordering::Less => (a, b),
        Ordering::Greater => (b, a),
    };
    // rational gap (g1, g2) in s
    let above = |x: &Rational| match high {
        ArcEnd::One => x < &int(2),
        ArcEnd::Root(h) => h.cmp_rational(x) == Ordering::Greater,
        ArcEnd::MinusOne => false,
    };
    let g1 = match low {
        ArcEnd::MinusOne => int(-2),
        ArcEnd::Root(l) => l.as_rational().unwrap_or_else(|| {
            let mut l = l.clone();
            while !above(&l.hi) {
                l.bisect();
            }
            l.hi.clone()
        }),
        ArcEnd::One => return Err(Error::EmptyArc),
    };
    let g2 = match high {
        ArcEnd::One => int(2),
        ArcEnd::Root(h) => h.as_rational().unwrap_or_else(|| {
            let mut h = h.clone();
            while h.lo <= g1 {
                h.bisect();
            }
            h.lo.clone()
        }),
        ArcEnd::MinusOne => return Err(Error::EmptyArc),
    };
    // s(u) = 2(1 - u^2)/(1 + u^2) is decreasing; s in (g1, g2) iff u^2 in (r(g2), r(g1))
    let s_of = |u: &Rational| {
        let u2 = u * u;
        int(2) * (Rational::one() - &u2) / (Rational::one() + &u2)
    };
    let u = simplest_positive(|u| {
        let s = s_of(u);
        if s >= g2 {
            Ordering::Less
        } else if s <= g1 {
            Ordering::Greater
        } else {
            Ordering::Equal
        }
    });
    let u2 = &u * &u;
    let d = Rational::one() + &u2;
    Ok(GaussianRational::new((Rational::one() - &u2) / &d, int(2) * &u / &d))
}

/// Simplest positive rational accepted by a monotone predicate that says
/// whether a candidate is too small (`Less`), too large (`Greater`) or fine.
pub(crate) fn simplest_positive(pred: impl Fn(&Rational) -> Ordering) -> Rational {
    use num_bigint::BigInt;
    // Stern-Brocot descent with galloping runs; fractions as (p, q)
    let frac = |p: &BigInt, q: &BigInt| Rational::new(p.clone(), q.clone());
    let (mut lp, mut lq) = (BigInt::zero(), BigInt::one());
    let (mut rp, mut rq) = (BigInt::one(), BigInt::zero());
    loop {
        let mp = &lp + &rp;
        let mq = &lq + &rq;
        let m = frac(&mp, &mq);
        match pred(&m) {
            Ordering::Equal => return m,
            Ordering::Less => {
                // advance left by k*right while still too small
                let mut k = BigInt::one();
                while pred(&frac(&(&lp + &(&rp * &k * 2u32)), &(&lq + &(&rq * &k * 2u32)))) == Ordering::Less {
                    k *= 2u32;
                }
                let (mut lo, mut hi) = (k.clone(), &k * 2u32);
                while &hi - &lo > BigInt::one() {
                    let mid = (&lo + &hi) / 2u32;
                    if pred(&frac(&(&lp + &(&rp * &mid)), &(&lq + &(&rq * &mid)))) == Ordering::Less {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                lp = &lp + &(&rp * &lo);
                lq = &lq + &(&rq * &lo);
            }
            Ordering::Greater => {
                let mut k = BigInt::one();
                while pred(&frac(&(&rp + &(&lp * &k * 2u32)), &(&rq + &(&lq * &k * 2u32)))) == Ordering::Greater {
                    k *= 2u32;
                }
                let (mut lo, mut hi) = (k.clone(), &k * 2u32);
                while &hi - &lo > BigInt::one() {
                    let mid = (&lo + &hi) / 2u32;
                    if pred(&frac(&(&rp + &(&lp * &mid)), &(&rq + &(&lq * &mid)))) == Ordering::Greater {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                rp = &rp + &(&lp * &lo);
                rq = &rq + &(&lq * &lo);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn trefoil_root() {
        let roots = circle_roots(&l("t^-1 - 1 + t")).unwrap();
        assert_eq!(roots.len(), 1);
        assert_eq!(roots[0].abscissa.as_rational(), Some(int(1)));
        assert!((roots[0].theta_over_2pi() - 1.0 / 6.0).abs() < 1e-12);
    }

    #[test]
    fn roots_at_unit_points_rejected() {
        assert_eq!(circle_roots(&l("t^-1 - 2 + t")).unwrap_err(), Error::RootAtPlusMinusOne);
        assert_eq!(circle_roots(&l("t^-1 + 2 + t")).unwrap_err(), Error::RootAtPlusMinusOne);
    }

    #[test]
    fn arc_points() {
        let one = IsolatingInterval::rational(&int(1));
        let z = rational_point_on_arc(ArcEnd::One, ArcEnd::Root(&one)).unwrap();
        assert_eq!(z, GaussianRational::new(rat(3, 5), rat(4, 5)));
        let z = rational_point_on_arc(ArcEnd::One, ArcEnd::MinusOne).unwrap();
        assert_eq!(z, GaussianRational::new(int(0), int(1)));
        let z = rational_point_on_arc(ArcEnd::MinusOne, ArcEnd::Root(&IsolatingInterval::rational(&int(-1)))).unwrap();
        assert_eq!(z, GaussianRational::new(rat(-3, 5), rat(4, 5)));
        assert!(z.on_unit_circle());
        assert_eq!(rational_point_on_arc(ArcEnd::One, ArcEnd::One).unwrap_err(), Error::EmptyArc);
    }

    #[test]
    fn close_irrational_roots_separate() {
        // s^2 - 2 and s - 1.41421 straddle each other closely
        let p = Poly::from_i64s(&[-2, 0, 1]);
        let r = sturm_isolate(&p, &int(0), &int(2));
        assert_eq!(r.len(), 1);
        let q = IsolatingInterval::rational(&rat(141421, 100000));
        assert_eq!(r[0].cmp_root(&q), Ordering::Greater);
        let z = rational_point_on_arc(ArcEnd::Root(&r[0]), ArcEnd::Root(&q)).unwrap();
        let s = z.s_value();
        assert!(s > rat(141421, 100000) && &s * &s < int(2));
    }

    #[test]
    fn sign_at_algebraic_point() {
        let r = &sturm_isolate(&Poly::from_i64s(&[-2, 0, 1]), &int(0), &int(2))[0];
        assert_eq!(r.sign_at(&Poly::from_i64s(&[-2, 0, 1])), 0);
        assert_eq!(r.sign_at(&Poly::from_i64s(&[-4, 0, 0, 0, 1])), 0);
        assert_eq!(r.sign_at(&Poly::from_i64s(&[-1, 1])), 1);
        assert_eq!(r.sign_at(&Poly::from_i64s(&[-3, 2])), -1);
        assert!(IsolatingInterval::new(int(1), int(2), Poly::from_i64s(&[-4, 0, 0, 0, 1])).is_ok());
        let two = IsolatingInterval::new(int(-2), int(2), Poly::from_i64s(&[-1, 0, 1])).unwrap_err();
        assert!(matches!(two, Error::Parse(_)));
    }

    #[test]
    fn multiplicities_reported() {
        // (s - 1)^2 (s + 1)
        let q = &Poly::from_i64s(&[-1, 1]).pow(2) * &Poly::from_i64s(&[1, 1]);
        let r = circle_roots_of_lift(&q);
        assert_eq!(r.len(), 2);
        assert_eq!(r[0].multiplicity, 2);
        assert_eq!(r[1].multiplicity, 1);
        assert!(r[0].theta_over_2pi() < r[1].theta_over_2pi());
    }
}
