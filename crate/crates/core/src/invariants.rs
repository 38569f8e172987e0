//! Signature and nullity profiles on the circle, and the numbers `mu`, `eta`,
//! `n_r = max(mu, eta)` read off them.
//!
//! Signatures are exact: the characteristic polynomial of a hermitian
//! matrix is real-rooted, so Descartes' rule counts positive and negative
//! eigenvalues from coefficient signs alone. The coefficients are
//! palindromic Laurent polynomials, evaluated in `s` at rational or
//! algebraic points.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hermat::{smith_form_laurent, HermitianLaurentMatrix};
use crate::laurent::{int, GaussianRational, LaurentPoly, Poly, Rational};
use crate::realalg::{circle_roots_of_lift, rational_s_on_arc, ArcEnd, CircleRoot, IsolatingInterval};
use crate::seifert::SeifertMatrix;

/// Characteristic-polynomial coefficients of `A` lifted to `s`.
#[derive(Clone, Debug)]
pub struct SignatureEngine {
    lifts: Vec<Poly>,
    baseline: i64,
}

/// Signature and nullity from the coefficient signs `c_0..c_n` of a
/// real-rooted monic polynomial.
fn descartes(signs: &[i8]) -> (i64, usize) {
    let null = signs.iter().position(|&s| s != 0).unwrap_or(signs.len());
    let variations = |it: &mut dyn Iterator<Item = i8>| {
        let mut last = 0i8;
        let mut v = 0i64;
        for s in it {
            if s == 0 {
                continue;
            }
            if last != 0 && s != last {
                v += 1;
            }
            last = s;
        }
        v
    };
    let pos = variations(&mut signs.iter().copied());
    let neg = variations(&mut signs.iter().enumerate().map(|(k, &s)| if k % 2 == 1 { -s } else { s }));
    (pos - neg, null)
}

impl SignatureEngine {
    pub fn new(a: &HermitianLaurentMatrix) -> Result<Self> {
        let lifts = a
            .charpoly()
            .iter()
            .map(|c| c.to_symmetric())
            .collect::<Result<Vec<_>>>()
            .map_err(|_| Error::Internal("characteristic polynomial not palindromic".into()))?;
        let mut e = SignatureEngine { lifts, baseline: 0 };
        e.baseline = e.raw_at_s(&int(2)).0;
        Ok(e)
    }

    /// `det(x I - A)` constant term lifted to `s`; vanishes exactly where `det A` does.
    pub fn det_lift(&self) -> &Poly {
        &self.lifts[0]
    }

    pub fn size(&self) -> usize {
        self.lifts.len() - 1
    }

    /// `sign(A(1))`
    pub fn baseline(&self) -> i64 {
        self.baseline
    }

    /// `(sign A(z), null A(z))` at the point with abscissa `s`.
    pub fn raw_at_s(&self, s: &Rational) -> (i64, usize) {
        let signs: Vec<i8> = self.lifts.iter().map(|p| p.sign_at(s)).collect();
        descartes(&signs)
    }

    pub fn raw_at_root(&self, r: &IsolatingInterval) -> (i64, usize) {
        let signs: Vec<i8> = self.lifts.iter().map(|p| r.sign_at(p)).collect();
        descartes(&signs)
    }

    /// `(sigma, eta)` relative to the baseline.
    pub fn at_s(&self, s: &Rational) -> (i64, usize) {
        let (sg, null) = self.raw_at_s(s);
        (sg - self.baseline, null)
    }

    pub fn at_root(&self, r: &IsolatingInterval) -> (i64, usize) {
        let (sg, null) = self.raw_at_root(r);
        (sg - self.baseline, null)
    }
}

/// `(sigma_A(z), eta_A(z))` at a rational point of the circle.
pub fn signature_at_rational_point(a: &HermitianLaurentMatrix, z: &GaussianRational) -> Result<(i64, usize)> {
    if !z.on_unit_circle() {
        return Err(Error::NotOnCircle(z.to_string()));
    }
    let e = SignatureEngine::new(a)?;
    Ok(e.at_s(&(int(2) * &z.re)))
}

/// `(sigma_A, eta_A)` at a root of `det A` on the circle.
pub fn signature_at_root(a: &HermitianLaurentMatrix, r: &CircleRoot) -> Result<(i64, usize)> {
    let e = SignatureEngine::new(a)?;
    if r.abscissa.sign_at(e.det_lift()) != 0 {
        return Err(Error::NotARoot);
    }
    Ok(e.at_root(&r.abscissa))
}

/// Values at one root.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RootValue {
    pub sigma: i64,
    pub eta: usize,
}

/// Piecewise-constant signature on the upper half circle.
#[derive(Clone, Debug)]
pub struct SignatureProfile {
    /// Roots of `det A` with `0 < θ < π`, by increasing `θ`.
    pub roots: Vec<CircleRoot>,
    /// `sigma` on the arcs between consecutive roots; entry 0 starts at `z = 1`.
    pub arc_sigma: Vec<i64>,
    pub at_root: Vec<RootValue>,
    pub baseline: i64,
    pub size: usize,
}

impl SignatureProfile {
    pub fn trivial(size: usize, baseline: i64) -> Self {
        SignatureProfile { roots: Vec::new(), arc_sigma: vec![0], at_root: Vec::new(), baseline, size }
    }

    /// `½ (max(eta + sigma) + max(eta - sigma))` over roots and `z = 1`.
    pub fn mu(&self) -> usize {
        let mut plus = 0i64;
        let mut minus = 0i64;
        for v in &self.at_root {
            plus = plus.max(v.eta as i64 + v.sigma);
            minus = minus.max(v.eta as i64 - v.sigma);
        }
        ((plus + minus) / 2) as usize
    }

    /// The same maximum taken over arcs as well as roots.
    pub fn mu_with_arcs(&self) -> usize {
        let mut plus = 0i64;
        let mut minus = 0i64;
        for v in &self.at_root {
            plus = plus.max(v.eta as i64 + v.sigma);
            minus = minus.max(v.eta as i64 - v.sigma);
        }
        for &s in &self.arc_sigma {
            plus = plus.max(s);
            minus = minus.max(-s);
        }
        ((plus + minus) / 2) as usize
    }

    pub fn max_nullity(&self) -> usize {
        self.at_root.iter().map(|v| v.eta).max().unwrap_or(0)
    }

    /// `(sigma, eta)` at a rational abscissa.
    pub fn value_at_s(&self, s: &Rational) -> (i64, usize) {
        for (i, r) in self.roots.iter().enumerate() {
            match r.abscissa.cmp_rational(s) {
                Ordering::Less => return (self.arc_sigma[i], 0),
                Ordering::Equal => return (self.at_root[i].sigma, self.at_root[i].eta),
                Ordering::Greater => {}
            }
        }
        (*self.arc_sigma.last().unwrap(), 0)
    }

    /// `None` when equal; otherwise a description of the first difference.
    pub fn first_difference(&self, o: &SignatureProfile) -> Option<String> {
        let mut i = 0;
        let mut j = 0;
        let mut arc = 0usize;
        if self.arc_sigma[0] != o.arc_sigma[0] {
            return Some(format!("sigma differs near z = 1: {} vs {}", self.arc_sigma[0], o.arc_sigma[0]));
        }
        while i < self.roots.len() || j < o.roots.len() {
            let ord = match (self.roots.get(i), o.roots.get(j)) {
                (Some(a), Some(b)) => a.abscissa.cmp_root(&b.abscissa).reverse(),
                (Some(_), None) => Ordering::Less,
                (None, Some(_)) => Ordering::Greater,
                (None, None) => unreachable!(),
            };
            arc += 1;
            match ord {
                Ordering::Equal => {
                    if self.at_root[i] != o.at_root[j] {
                        return Some(format!(
                            "at root x = {:.6}: (sigma, eta) = ({}, {}) vs ({}, {})",
                            self.roots[i].theta_over_2pi(),
                            self.at_root[i].sigma,
                            self.at_root[i].eta,
                            o.at_root[j].sigma,
                            o.at_root[j].eta
                        ));
                    }
                    i += 1;
                    j += 1;
                }
                Ordering::Less => {
                    return Some(format!("root at x = {:.6} only on the left", self.roots[i].theta_over_2pi()));
                }
                Ordering::Greater => {
                    return Some(format!("root at x = {:.6} only on the right", o.roots[j].theta_over_2pi()));
                }
            }
            if self.arc_sigma[i] != o.arc_sigma[j] {
                return Some(format!("sigma differs on arc {arc}: {} vs {}", self.arc_sigma[i], o.arc_sigma[j]));
            }
        }
        None
    }
}

/// Exact profile of a hermitian matrix with `det A(±1) != 0`.
pub fn profile(a: &HermitianLaurentMatrix) -> Result<SignatureProfile> {
    let engine = SignatureEngine::new(a)?;
    profile_with_engine(&engine)
}

pub(crate) fn profile_with_engine(engine: &SignatureEngine) -> Result<SignatureProfile> {
    let q = engine.det_lift();
    if q.is_zero() {
        return Err(Error::SingularMatrix);
    }
    if q.eval(&int(2)) == int(0) || q.eval(&int(-2)) == int(0) {
        return Err(Error::RootAtPlusMinusOne);
    }
    let roots = circle_roots_of_lift(q);
    let samples = arc_samples(&roots)?;
    let arc_sigma = samples.iter().map(|s| engine.at_s(s).0).collect();
    let at_root =
        roots.iter().map(|r| engine.at_root(&r.abscissa)).map(|(sigma, eta)| RootValue { sigma, eta }).collect();
    Ok(SignatureProfile { roots, arc_sigma, at_root, baseline: engine.baseline(), size: engine.size() })
}

/// One rational abscissa strictly inside each arc cut out by `roots`.
pub fn arc_samples(roots: &[CircleRoot]) -> Result<Vec<Rational>> {
    let mut ends = vec![ArcEnd::One];
    ends.extend(roots.iter().map(|r| ArcEnd::Root(&r.abscissa)));
    ends.push(ArcEnd::MinusOne);
    ends.windows(2).map(|w| rational_s_on_arc(w[0], w[1])).collect()
}

pub fn mu(a: &HermitianLaurentMatrix) -> Result<usize> {
    Ok(profile(a)?.mu())
}

/// Number of non-unit invariant factors.
pub fn eta(a: &HermitianLaurentMatrix) -> Result<usize> {
    if a.det().is_zero() {
        return Err(Error::SingularMatrix);
    }
    Ok(smith_form_laurent(a.matrix()).non_unit_count())
}

pub fn n_r(a: &HermitianLaurentMatrix) -> Result<usize> {
    Ok(mu(a)?.max(eta(a)?))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantSummary {
    pub mu: usize,
    pub eta: usize,
    pub n_r: usize,
    pub unknotting_lower_bound: usize,
}

impl InvariantSummary {
    pub fn new(mu: usize, eta: usize) -> Self {
        let n_r = mu.max(eta);
        InvariantSummary { mu, eta, n_r, unknotting_lower_bound: n_r }
    }
}

/// Everything computed for one knot.
#[derive(Clone, Debug)]
pub struct KnotAnalysis {
    pub name: Option<String>,
    pub genus: usize,
    pub alexander: LaurentPoly,
    pub normalized: SeifertMatrix,
    pub matrix: HermitianLaurentMatrix,
    pub profile: SignatureProfile,
    pub summary: InvariantSummary,
    pub warnings: Vec<String>,
}

/// `V -> A(t) -> profile -> summary`, cross-checked against the signature
/// and nullity of `(1 - z) V + (1 - 1/z) V^t`.
pub fn knot_summary(v: &SeifertMatrix) -> Result<KnotAnalysis> {
    let (_, vn) = v.validate_and_normalize()?;
    let alexander = v.alexander()?;
    let a = vn.blanchfield_matrix()?;
    let engine = SignatureEngine::new(&a)?;
    let prof = profile_with_engine(&engine)?;
    let g = vn.genus();

    let eta_a = smith_form_laurent(a.matrix()).non_unit_count();
    let eta_v = smith_form_laurent(&vn.alexander_matrix()).non_unit_count();
    if eta_a != eta_v {
        return Err(Error::Internal(format!("eta mismatch: {eta_a} from A(t), {eta_v} from tV - V^t")));
    }

    let knot_engine = SignatureEngine::new(&vn.signature_matrix())?;
    for (i, s) in arc_samples(&prof.roots)?.iter().enumerate() {
        let (sk, nk) = knot_engine.raw_at_s(s);
        if sk != prof.arc_sigma[i] || nk != 0 {
            return Err(Error::Internal(format!("knot signature {sk} disagrees with {} on arc {i}", prof.arc_sigma[i])));
        }
    }
    for (r, val) in prof.roots.iter().zip(&prof.at_root) {
        let (sk, nk) = knot_engine.raw_at_root(&r.abscissa);
        if sk != val.sigma || nk != val.eta {
            return Err(Error::Internal("knot signature disagrees at a root".into()));
        }
    }

    let summary = InvariantSummary::new(prof.mu(), eta_a);
    if summary.mu > 2 * g || summary.eta > 2 * g || summary.n_r > 2 * g + 1 {
        return Err(Error::Internal("invariants exceed the genus bound".into()));
    }
    let mut warnings = Vec::new();
    if summary.mu > 0 && prof.arc_sigma.iter().all(|&s| s == 0) {
        warnings.push(format!(
            "signature vanishes on every arc; mu = {} comes from nullity at roots",
            summary.mu
        ));
    }
    Ok(KnotAnalysis {
        name: v.name.clone(),
        genus: g,
        alexander,
        normalized: vn,
        matrix: a,
        profile: prof,
        summary,
        warnings,
    })
}

/// Root record in reports.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RootJson {
    pub defpoly: String,
    pub lo: String,
    pub hi: String,
    pub mult: usize,
    pub approx_theta_over_2pi: f64,
}

impl RootJson {
    pub fn from_root(r: &CircleRoot) -> Self {
        RootJson {
            defpoly: r.abscissa.defpoly().to_string_in("s"),
            lo: r.abscissa.lo().to_string(),
            hi: r.abscissa.hi().to_string(),
            mult: r.multiplicity,
            approx_theta_over_2pi: r.theta_over_2pi(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ArcJson {
    pub arc: [f64; 2],
    pub sigma: i64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AtRootJson {
    pub x: f64,
    pub sigma: i64,
    pub eta: usize,
}

/// Per-knot report; `x = θ / 2π` over the full turn.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KnotReport {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub alexander: LaurentPoly,
    pub genus: usize,
    pub mu: usize,
    pub eta: usize,
    pub n_r: usize,
    pub unknotting_lower_bound: usize,
    pub roots: Vec<RootJson>,
    pub profile: Vec<ArcJson>,
    pub at_roots: Vec<AtRootJson>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<f64>,
}

/// Full-turn arcs and root values, mirrored through `z -> conj(z)`.
pub fn full_turn(p: &SignatureProfile) -> (Vec<ArcJson>, Vec<AtRootJson>) {
    let xs: Vec<f64> = p.roots.iter().map(|r| r.theta_over_2pi()).collect();
    let mut arcs = Vec::new();
    let mut bounds = vec![0.0];
    bounds.extend(xs.iter().copied());
    bounds.push(0.5);
    for (i, &s) in p.arc_sigma.iter().enumerate() {
        arcs.push(ArcJson { arc: [bounds[i], bounds[i + 1]], sigma: s });
    }
    // lower half: same values in reverse order; the two arcs meeting at -1 merge
    let mut lower: Vec<ArcJson> = arcs
        .iter()
        .rev()
        .map(|a| ArcJson { arc: [1.0 - a.arc[1], 1.0 - a.arc[0]], sigma: a.sigma })
        .collect();
    let last = arcs.pop().unwrap();
    let first_lower = lower.remove(0);
    arcs.push(ArcJson { arc: [last.arc[0], first_lower.arc[1]], sigma: last.sigma });
    arcs.extend(lower);
    let mut at: Vec<AtRootJson> =
        xs.iter().zip(&p.at_root).map(|(&x, v)| AtRootJson { x, sigma: v.sigma, eta: v.eta }).collect();
    let mirrored: Vec<AtRootJson> =
        at.iter().rev().map(|a| AtRootJson { x: 1.0 - a.x, sigma: a.sigma, eta: a.eta }).collect();
    at.extend(mirrored);
    (arcs, at)
}

impl KnotReport {
    pub fn from_analysis(k: &KnotAnalysis) -> Self {
        let (profile, at_roots) = full_turn(&k.profile);
        KnotReport {
            name: k.name.clone(),
            alexander: k.alexander.clone(),
            genus: k.genus,
            mu: k.summary.mu,
            eta: k.summary.eta,
            n_r: k.summary.n_r,
            unknotting_lower_bound: k.summary.unknotting_lower_bound,
            roots: k.profile.roots.iter().map(RootJson::from_root).collect(),
            profile,
            at_roots,
            warnings: k.warnings.clone(),
            elapsed_ms: None,
        }
    }
}

/// Left-continuous step samples `(x, sigma, eta)` over the full turn: `n`
/// uniform points plus each root.
pub fn plot_samples(p: &SignatureProfile, n: usize) -> Vec<(f64, i64, usize)> {
    let (arcs, at) = full_turn(p);
    let mut rows: Vec<(f64, i64, usize)> = Vec::new();
    for k in 0..=n {
        let x = k as f64 / n as f64;
        let sigma = arcs
            .iter()
            .find(|a| x >= a.arc[0] && x <= a.arc[1])
            .map_or(0, |a| a.sigma);
        rows.push((x, sigma, 0));
    }
    for r in &at {
        rows.push((r.x, r.sigma, r.eta));
    }
    rows.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap().then(b.2.cmp(&a.2)));
    rows
}
