//! Elementary factors and symbolic diagonal forms over the reals.
//!
//! An entry of a diagonal form is `ε · Π B_k^{n_k}` where each `B_k` is an
//! elementary palindromic polynomial. A circle factor is `S - s₀` for a
//! single real root `s₀ ∈ (-2, 2)` of its defining polynomial in
//! `S = t + 1/t`; an off-circle factor stands for the product over all roots
//! of its defining polynomial that are not on the circle. Off-circle factors
//! are positive on the whole circle, so only the sign and the circle factors
//! matter for signatures.

use std::cmp::Ordering;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::invariants::{arc_samples, RootValue, SignatureProfile};
use crate::laurent::{int, LaurentPoly, Poly, Rational};
use crate::realalg::{circle_roots_of_lift, CircleRoot, IsolatingInterval, SturmChain};
use crate::{Error, Result};

/// Where the roots of a factor lie.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Location {
    OnCircle,
    RealOffCircle,
    ComplexQuadruple,
    MixedOffCircle,
}

#[derive(Clone, Debug, PartialEq)]
pub enum ElementaryBase {
    /// `S - s₀` for one root of the interval's defining polynomial.
    Circle(IsolatingInterval),
    /// The off-circle part of a monic squarefree polynomial in `S`.
    Off(Poly),
}

#[derive(Clone, Debug, PartialEq)]
pub struct ElementaryFactor {
    pub base: ElementaryBase,
    pub mult: u32,
}

/// Number of roots of a squarefree `f` in `(-2, 2)`.
fn circle_count(f: &Poly) -> usize {
    SturmChain::new(f).count_open(&int(-2), &int(2))
}

pub(crate) fn has_off_roots(f: &Poly) -> bool {
    f.deg() > circle_count(f)
}

/// Off-circle part of `f` as a rational polynomial, normalized to leading
/// coefficient `±1` and positive at `S = 2`, when every circle root of `f`
/// is rational.
fn off_part(f: &Poly) -> Option<Poly> {
    let mut g = f.monic();
    for r in circle_roots_of_lift(f) {
        let r = r.abscissa.exact_value()?;
        g = g.div_exact(&Poly::from_coeffs(vec![-r, Rational::one()]))?;
    }
    Some(if g.sign_at(&int(2)) < 0 { -g } else { g })
}

impl ElementaryFactor {
    pub fn circle(root: IsolatingInterval, mult: u32) -> Self {
        let root = match root.exact_value() {
            Some(r) => IsolatingInterval::rational(&r),
            None => root,
        };
        ElementaryFactor { base: ElementaryBase::Circle(root), mult }
    }

    pub fn off(defpoly: Poly, mult: u32) -> Self {
        ElementaryFactor { base: ElementaryBase::Off(defpoly.monic()), mult }
    }

    /// All factors of `f^mult`, `f` squarefree with no roots at `±2`.
    pub fn split_squarefree(f: &Poly, mult: u32) -> Vec<ElementaryFactor> {
        let mut rest = f.clone();
        let mut out = Vec::new();
        for r in circle_roots_of_lift(f) {
            let c = ElementaryFactor::circle(r.abscissa, mult);
            // rational roots are divided out of the off-circle part
            if let Some(q) = c.root().unwrap().as_rational() {
                rest = rest.div_exact(&Poly::from_coeffs(vec![-q, Rational::one()])).unwrap();
            }
            out.push(c);
        }
        if has_off_roots(&rest) {
            out.push(ElementaryFactor::off(rest, mult));
        }
        out
    }

    pub fn defpoly(&self) -> &Poly {
        match &self.base {
            ElementaryBase::Circle(r) => r.defpoly(),
            ElementaryBase::Off(p) => p,
        }
    }

    pub fn root(&self) -> Option<&IsolatingInterval> {
        match &self.base {
            ElementaryBase::Circle(r) => Some(r),
            ElementaryBase::Off(_) => None,
        }
    }

    pub fn is_circle(&self) -> bool {
        matches!(self.base, ElementaryBase::Circle(_))
    }

    pub fn location(&self) -> Location {
        match &self.base {
            ElementaryBase::Circle(_) => Location::OnCircle,
            ElementaryBase::Off(p) => {
                let real = SturmChain::new(p).count_all();
                let off_real = real - circle_count(p);
                let complex = p.deg() - real;
                match (off_real > 0, complex > 0) {
                    (true, false) => Location::RealOffCircle,
                    (false, _) => Location::ComplexQuadruple,
                    (true, true) => Location::MixedOffCircle,
                }
            }
        }
    }

    pub fn sign_at_s(&self, s: &Rational) -> i8 {
        match &self.base {
            ElementaryBase::Circle(r) => pow_sign(
                match r.cmp_rational(s) {
                    Ordering::Less => 1,
                    Ordering::Equal => 0,
                    Ordering::Greater => -1,
                },
                self.mult,
            ),
            ElementaryBase::Off(_) => 1,
        }
    }

    pub fn sign_at_root(&self, x: &IsolatingInterval) -> i8 {
        match &self.base {
            ElementaryBase::Circle(r) => pow_sign(
                match x.cmp_root(r) {
                    Ordering::Greater => 1,
                    Ordering::Equal => 0,
                    Ordering::Less => -1,
                },
                self.mult,
            ),
            ElementaryBase::Off(_) => 1,
        }
    }

    /// Same root, or the same off-circle polynomial.
    pub fn same_base(&self, o: &ElementaryFactor) -> bool {
        match (&self.base, &o.base) {
            (ElementaryBase::Circle(a), ElementaryBase::Circle(b)) => a.cmp_root(b) == Ordering::Equal,
            (ElementaryBase::Off(a), ElementaryBase::Off(b)) => a == b,
            _ => false,
        }
    }

    /// Whether the two factors vanish at a common point of `C*`.
    pub fn shares_root(&self, o: &ElementaryFactor) -> bool {
        match (&self.base, &o.base) {
            (ElementaryBase::Circle(a), ElementaryBase::Circle(b)) => a.cmp_root(b) == Ordering::Equal,
            (ElementaryBase::Off(a), ElementaryBase::Off(b)) => {
                let g = a.gcd(b);
                g.deg() >= 1 && has_off_roots(&g)
            }
            _ => false,
        }
    }

    /// The base as a rational polynomial in `S`, when it is one.
    pub fn base_poly(&self) -> Option<Poly> {
        match &self.base {
            ElementaryBase::Circle(r) => {
                r.as_rational().map(|r| Poly::from_coeffs(vec![-r, Rational::one()]))
            }
            ElementaryBase::Off(p) => off_part(p),
        }
    }
}

fn pow_sign(s: i8, n: u32) -> i8 {
    if s < 0 && n % 2 == 0 {
        1
    } else {
        s
    }
}

/// `sign · Π factors`.
#[derive(Clone, Debug, PartialEq)]
pub struct DiagonalEntry {
    pub sign: i8,
    pub factors: Vec<ElementaryFactor>,
}

impl DiagonalEntry {
    pub fn new(sign: i8, factors: Vec<ElementaryFactor>) -> Self {
        DiagonalEntry { sign, factors }
    }

    /// Factor a palindromic entry, dropping its positive scalar.
    pub fn from_laurent(e: &LaurentPoly) -> Result<Self> {
        let q = e.to_symmetric()?;
        if q.is_zero() {
            return Err(Error::SingularMatrix);
        }
        if q.eval(&int(2)).is_zero() || q.eval(&int(-2)).is_zero() {
            return Err(Error::DegenerateAtUnitPoints);
        }
        let mut factors = Vec::new();
        for (f, m) in q.squarefree_decomposition() {
            if f.deg() >= 1 {
                factors.extend(ElementaryFactor::split_squarefree(&f, m as u32));
            }
        }
        Ok(DiagonalEntry { sign: q.sign_at(&int(2)), factors })
    }

    pub fn sign_at_s(&self, s: &Rational) -> i8 {
        self.factors.iter().fold(self.sign, |acc, f| acc * f.sign_at_s(s))
    }

    pub fn sign_at_root(&self, x: &IsolatingInterval) -> i8 {
        self.factors.iter().fold(self.sign, |acc, f| acc * f.sign_at_root(x))
    }

    pub fn is_elementary(&self) -> bool {
        self.factors.len() <= 1
    }

    pub fn circle_factors(&self) -> impl Iterator<Item = &ElementaryFactor> {
        self.factors.iter().filter(|f| f.is_circle())
    }

    /// The entry as an exact Laurent polynomial, when all roots involved are
    /// grouped into rational polynomials.
    pub fn expanded(&self) -> Option<LaurentPoly> {
        let mut acc = Poly::one();
        let mut used = vec![false; self.factors.len()];
        for i in 0..self.factors.len() {
            if used[i] {
                continue;
            }
            let def = self.factors[i].defpoly().monic();
            let group: Vec<usize> =
                (i..self.factors.len()).filter(|&j| !used[j] && self.factors[j].defpoly().monic() == def).collect();
            let m = self.factors[i].mult;
            let n_circle = group.iter().filter(|&&j| self.factors[j].is_circle()).count();
            let has_off = group.iter().any(|&j| !self.factors[j].is_circle());
            let whole = group.iter().all(|&j| self.factors[j].mult == m)
                && n_circle == circle_count(&def)
                && has_off == has_off_roots(&def);
            if whole {
                let d = if def.sign_at(&int(2)) < 0 { -def } else { def };
                acc = &acc * &d.pow(m);
                for j in group {
                    used[j] = true;
                }
            } else {
                let f = &self.factors[i];
                acc = &acc * &f.base_poly()?.pow(f.mult);
                used[i] = true;
            }
        }
        let e = LaurentPoly::from_symmetric(&acc);
        Some(if self.sign < 0 { -e } else { e })
    }
}

/// Diagonal hermitian form `diag(e₁, …, e_M)` over `R[t, 1/t]`.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct DiagonalForm {
    pub entries: Vec<DiagonalEntry>,
}

impl DiagonalForm {
    pub fn new(entries: Vec<DiagonalEntry>) -> Self {
        DiagonalForm { entries }
    }

    pub fn from_laurent(entries: &[LaurentPoly]) -> Result<Self> {
        Ok(DiagonalForm { entries: entries.iter().map(DiagonalEntry::from_laurent).collect::<Result<_>>()? })
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn is_elementary(&self) -> bool {
        self.entries.iter().all(DiagonalEntry::is_elementary)
    }

    /// Distinct circle roots, by increasing `θ`, with total multiplicity.
    pub fn circle_roots(&self) -> Vec<CircleRoot> {
        let mut roots: Vec<CircleRoot> = Vec::new();
        for e in &self.entries {
            for f in e.circle_factors() {
                let r = f.root().unwrap();
                match roots.iter_mut().find(|c| c.abscissa.cmp_root(r) == Ordering::Equal) {
                    Some(c) => c.multiplicity += f.mult as usize,
                    None => roots.push(CircleRoot { abscissa: r.clone(), multiplicity: f.mult as usize }),
                }
            }
        }
        roots.sort_by(|a, b| b.abscissa.cmp_root(&a.abscissa));
        roots
    }

    fn raw_at_s(&self, s: &Rational) -> i64 {
        self.entries.iter().map(|e| e.sign_at_s(s) as i64).sum()
    }

    pub fn profile(&self) -> Result<SignatureProfile> {
        let roots = self.circle_roots();
        let baseline = self.raw_at_s(&int(2));
        let arc_sigma = arc_samples(&roots)?.iter().map(|s| self.raw_at_s(s) - baseline).collect();
        let at_root = roots
            .iter()
            .map(|r| {
                let signs: Vec<i8> = self.entries.iter().map(|e| e.sign_at_root(&r.abscissa)).collect();
                RootValue {
                    sigma: signs.iter().map(|&s| s as i64).sum::<i64>() - baseline,
                    eta: signs.iter().filter(|&&s| s == 0).count(),
                }
            })
            .collect();
        Ok(SignatureProfile { roots, arc_sigma, at_root, baseline, size: self.entries.len() })
    }

    /// Largest number of entries sharing an off-circle root.
    pub fn off_circle_nullity(&self) -> usize {
        let defs: Vec<Poly> = self
            .entries
            .iter()
            .flat_map(|e| e.factors.iter())
            .filter_map(|f| match &f.base {
                ElementaryBase::Off(p) => Some(p.clone()),
                _ => None,
            })
            .collect();
        gcd_free_basis(&defs)
            .iter()
            .filter(|a| has_off_roots(a))
            .map(|a| {
                self.entries
                    .iter()
                    .filter(|e| {
                        e.factors.iter().any(|f| matches!(&f.base, ElementaryBase::Off(p) if p.rem(a).is_zero()))
                    })
                    .count()
            })
            .max()
            .unwrap_or(0)
    }

    pub fn mu(&self) -> Result<usize> {
        Ok(self.profile()?.mu())
    }

    pub fn eta(&self) -> Result<usize> {
        Ok(self.profile()?.max_nullity().max(self.off_circle_nullity()))
    }

    pub fn n_r(&self) -> Result<usize> {
        Ok(self.mu()?.max(self.eta()?))
    }

    /// Entries as Laurent polynomials, when all are rational.
    pub fn expanded(&self) -> Option<Vec<LaurentPoly>> {
        self.entries.iter().map(DiagonalEntry::expanded).collect()
    }

    pub fn to_json(&self) -> DiagonalFormJson {
        DiagonalFormJson { entries: self.entries.iter().map(entry_json).collect() }
    }

    pub fn from_json(j: &DiagonalFormJson) -> Result<Self> {
        let mut entries = Vec::new();
        for e in &j.entries {
            if e.sign != 1 && e.sign != -1 {
                return Err(Error::Parse(format!("entry sign must be 1 or -1, got {}", e.sign)));
            }
            let mut factors = Vec::new();
            for f in &e.factors {
                factors.push(factor_from_json(f)?);
            }
            entries.push(DiagonalEntry { sign: e.sign, factors });
        }
        Ok(DiagonalForm { entries })
    }
}

/// Pairwise coprime monic polynomials whose products give every input.
pub fn gcd_free_basis(polys: &[Poly]) -> Vec<Poly> {
    fn add(basis: &mut Vec<Poly>, p: Poly) {
        if p.deg() == 0 {
            return;
        }
        let p = p.monic();
        for i in 0..basis.len() {
            let g = basis[i].gcd(&p);
            if g.deg() == 0 {
                continue;
            }
            let b = basis.swap_remove(i);
            let b1 = b.div_exact(&g).unwrap();
            let p1 = p.div_exact(&g).unwrap();
            add(basis, g);
            add(basis, b1);
            add(basis, p1);
            return;
        }
        basis.push(p);
    }
    let mut basis = Vec::new();
    for p in polys {
        if !p.is_zero() {
            add(&mut basis, p.clone());
        }
    }
    basis.sort_by(|a, b| a.deg().cmp(&b.deg()).then_with(|| a.to_string_in("s").cmp(&b.to_string_in("s"))));
    basis
}

/// Multiplicity of `a` in `p`.
pub fn multiplicity(p: &Poly, a: &Poly) -> usize {
    let mut p = p.clone();
    let mut k = 0;
    while let Some(q) = p.div_exact(a) {
        p = q;
        k += 1;
    }
    k
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiagonalFormJson {
    pub entries: Vec<EntryJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EntryJson {
    pub sign: i8,
    pub factors: Vec<FactorJson>,
    #[serde(default)]
    pub expanded: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FactorJson {
    pub defpoly_s: String,
    pub root: RootSelector,
    pub mult: u32,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RootSelector {
    Interval { lo: String, hi: String },
    Marker(String),
}

fn entry_json(e: &DiagonalEntry) -> EntryJson {
    EntryJson {
        sign: e.sign,
        factors: e
            .factors
            .iter()
            .map(|f| FactorJson {
                defpoly_s: f.defpoly().to_string_in("s"),
                root: match &f.base {
                    ElementaryBase::Circle(r) => RootSelector::Interval { lo: r.lo().to_string(), hi: r.hi().to_string() },
                    ElementaryBase::Off(_) => RootSelector::Marker("off".into()),
                },
                mult: f.mult,
            })
            .collect(),
        expanded: e.expanded().map(|p| p.to_string()),
    }
}

fn parse_rational(s: &str) -> Result<Rational> {
    s.trim().parse::<Rational>().map_err(|_| Error::Parse(format!("bad rational {s:?}")))
}

fn factor_from_json(f: &FactorJson) -> Result<ElementaryFactor> {
    if f.mult == 0 {
        return Err(Error::Parse("factor multiplicity must be positive".into()));
    }
    let l = LaurentPoly::parse_in(&f.defpoly_s, 's')?;
    if l.low() < 0 {
        return Err(Error::Parse(format!("negative power in {:?}", f.defpoly_s)));
    }
    let p = l.to_poly_shift().0.shift(l.low() as usize);
    if p.deg() == 0 {
        return Err(Error::Parse("defining polynomial must be nonconstant".into()));
    }
    let p = p.monic();
    if p.squarefree_part() != p {
        return Err(Error::Parse(format!("{:?} is not squarefree", f.defpoly_s)));
    }
    if p.eval(&int(2)).is_zero() || p.eval(&int(-2)).is_zero() {
        return Err(Error::DegenerateAtUnitPoints);
    }
    match &f.root {
        RootSelector::Marker(m) if m == "off" => {
            if !has_off_roots(&p) {
                return Err(Error::Parse(format!("{:?} has no roots off the circle", f.defpoly_s)));
            }
            Ok(ElementaryFactor::off(p, f.mult))
        }
        RootSelector::Marker(m) => Err(Error::Parse(format!("unknown root marker {m:?}"))),
        RootSelector::Interval { lo, hi } => {
            let iv = IsolatingInterval::new(parse_rational(lo)?, parse_rational(hi)?, p)?;
            if iv.cmp_rational(&int(-2)) != Ordering::Greater || iv.cmp_rational(&int(2)) != Ordering::Less {
                return Err(Error::NotOnCircle(format!("root of {} in ({lo}, {hi})", f.defpoly_s)));
            }
            Ok(ElementaryFactor::circle(iv, f.mult))
        }
    }
}

impl Serialize for DiagonalForm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for DiagonalForm {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = DiagonalFormJson::deserialize(d)?;
        DiagonalForm::from_json(&j).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn factor_entries() {
        let e = DiagonalEntry::from_laurent(&lp("-t + 1 - t^-1")).unwrap();
        assert_eq!(e.sign, -1);
        assert_eq!(e.factors.len(), 1);
        assert_eq!(e.expanded().unwrap(), lp("-t + 1 - t^-1"));
        let e = DiagonalEntry::from_laurent(&lp("t + 3 + t^-1")).unwrap();
        assert_eq!(e.sign, 1);
        assert_eq!(e.factors[0].location(), Location::RealOffCircle);
        assert_eq!(e.expanded().unwrap(), lp("t + 3 + t^-1"));
        let e = DiagonalEntry::from_laurent(&lp("t^2 + 3 + t^-2")).unwrap();
        assert_eq!(e.factors.len(), 1);
        assert_eq!(e.factors[0].location(), Location::ComplexQuadruple);
        assert!(DiagonalEntry::from_laurent(&lp("t + 2 + t^-1")).is_err());
    }

    #[test]
    fn irrational_roots_expand_as_a_group() {
        // S^2 - 2 has roots ±√2 on the circle
        let e = DiagonalEntry::from_laurent(&lp("t^2 + t^-2")).unwrap();
        assert_eq!(e.factors.len(), 2);
        assert_eq!(e.expanded().unwrap(), lp("t^2 + t^-2"));
        let half = DiagonalEntry::new(1, vec![e.factors[0].clone()]);
        assert!(half.expanded().is_none());
    }

    #[test]
    fn profile_of_trefoil_entry() {
        let d = DiagonalForm::from_laurent(&[lp("t - 1 + t^-1")]).unwrap();
        let p = d.profile().unwrap();
        assert_eq!(p.arc_sigma, vec![0, -2]);
        assert_eq!(p.at_root, vec![RootValue { sigma: -1, eta: 1 }]);
        assert_eq!(d.mu().unwrap(), 1);
        assert_eq!(d.eta().unwrap(), 1);
    }

    #[test]
    fn off_circle_nullity_uses_atoms() {
        let a = lp("t + 3 + t^-1");
        let b = &a * &lp("t + 5 + t^-1");
        let d = DiagonalForm::from_laurent(&[a, b]).unwrap();
        assert_eq!(d.off_circle_nullity(), 2);
        assert_eq!(d.eta().unwrap(), 2);
        assert_eq!(d.mu().unwrap(), 0);
    }

    #[test]
    fn json_round_trip() {
        let d = DiagonalForm::from_laurent(&[lp("t^2 + t^-2"), lp("-t - 3 - t^-1")]).unwrap();
        let s = serde_json::to_string(&d).unwrap();
        let back: DiagonalForm = serde_json::from_str(&s).unwrap();
        assert_eq!(back.profile().unwrap().first_difference(&d.profile().unwrap()), None);
        assert_eq!(back.expanded(), d.expanded());
    }

    #[test]
    fn gcd_free() {
        let a = Poly::from_i64s(&[-1, 1]);
        let b = Poly::from_i64s(&[-2, 1]);
        let basis = gcd_free_basis(&[&a * &b, &(&a * &a) * &b, b.clone()]);
        assert_eq!(basis.len(), 2);
        assert_eq!(multiplicity(&(&(&a * &a) * &b), &a), 2);
    }
}
