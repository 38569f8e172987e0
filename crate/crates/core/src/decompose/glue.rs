//! Replacing `diag(A, B)` by the single entry `ε A B`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::bezout::{hypothesis_failure, positive_bezout};
use super::factor::{DiagonalEntry, DiagonalForm};
use super::norm::{norm_factor_with_tolerance, NORM_TOLERANCE};
use super::numeric::{circle_grid, FloatLaurent};
use crate::hermat::HermitianLaurentMatrix;
use crate::invariants::{arc_samples, eta, profile};
use crate::laurent::{int, LaurentPoly, Poly};
use crate::{Error, Result};

/// Number of circle points used for the witness residual.
pub const WITNESS_SAMPLES: usize = 512;

/// `N = [[V̄ B, -Ū A], [U, V]]` with `N diag(A, B) N̄ᵗ ≈ diag(ε A B, ε)`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GlueWitness {
    pub u: FloatLaurent,
    pub v: FloatLaurent,
    pub n: [[FloatLaurent; 2]; 2],
    pub residual: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GlueResult {
    pub epsilon: i8,
    pub merged: LaurentPoly,
    pub p: LaurentPoly,
    pub q: LaurentPoly,
    pub witness: GlueWitness,
}

/// `ε` for which `ε A` or `ε B` is positive at every point of the circle,
/// preferring `+1`.
pub fn choose_epsilon(a: &Poly, b: &Poly) -> Result<i8> {
    let plus = hypothesis_failure(a, b, 1)?;
    let Some(plus) = plus else { return Ok(1) };
    match hypothesis_failure(a, b, -1)? {
        None => Ok(-1),
        Some(minus) => Err(Error::SignHypothesisFails { witness: format!("eps = +1 at {plus}; eps = -1 at {minus}") }),
    }
}

fn check_entry(e: &LaurentPoly) -> Result<Poly> {
    let l = e.to_symmetric()?;
    if l.is_zero() {
        return Err(Error::SingularMatrix);
    }
    if l.eval(&int(2)) == int(0) || l.eval(&int(-2)) == int(0) {
        return Err(Error::DegenerateAtUnitPoints);
    }
    Ok(l)
}

fn witness_residual(a: &LaurentPoly, b: &LaurentPoly, eps: f64, n: &[[FloatLaurent; 2]; 2]) -> f64 {
    let mut worst = 0.0f64;
    for z in circle_grid(WITNESS_SAMPLES) {
        let d = [a.eval_complex(z), b.eval_complex(z)];
        let m: Vec<Vec<Complex64>> = n.iter().map(|row| row.iter().map(|e| e.eval(z)).collect()).collect();
        let target = [[eps * a.eval_complex(z) * b.eval_complex(z), Complex64::new(0.0, 0.0)], [
            Complex64::new(0.0, 0.0),
            Complex64::new(eps, 0.0),
        ]];
        for i in 0..2 {
            for j in 0..2 {
                let v: Complex64 = (0..2).map(|k| m[i][k] * d[k] * m[j][k].conj()).sum();
                worst = worst.max((v - target[i][j]).norm());
            }
        }
    }
    worst
}

/// Glue two coprime palindromic entries.
pub fn glue(a: &LaurentPoly, b: &LaurentPoly) -> Result<GlueResult> {
    glue_with_tolerance(a, b, NORM_TOLERANCE)
}

/// [`glue`] with the residual bound used for the norm factors.
pub fn glue_with_tolerance(a: &LaurentPoly, b: &LaurentPoly, norm_tol: f64) -> Result<GlueResult> {
    let la = check_entry(a)?;
    let lb = check_entry(b)?;
    if la.gcd(&lb).deg() > 0 {
        return Err(Error::NotCoprime);
    }
    let eps = choose_epsilon(&la, &lb)?;
    let (ea, eb) = if eps > 0 { (a.clone(), b.clone()) } else { (-a, -b) };
    let pair = positive_bezout(&ea, &eb)?;
    let u = norm_factor_with_tolerance(&pair.p, norm_tol)?.u;
    let v = norm_factor_with_tolerance(&pair.q, norm_tol)?.u;
    let fa = FloatLaurent::from_exact(a);
    let fb = FloatLaurent::from_exact(b);
    let n = [[v.involute().mul(&fb), u.involute().mul(&fa).scale(-1.0)], [u.clone(), v.clone()]];
    let residual = witness_residual(a, b, eps as f64, &n);
    let merged = (a * b).scale(&int(eps as i64));
    let before = HermitianLaurentMatrix::diagonal(&[a.clone(), b.clone()])?;
    let after = HermitianLaurentMatrix::diagonal(std::slice::from_ref(&merged))?;
    if let Some(d) = profile(&before)?.first_difference(&profile(&after)?) {
        return Err(Error::Internal(format!("glue changed the profile: {d}")));
    }
    if eta(&before)? != eta(&after)? {
        return Err(Error::Internal("glue changed the nullity".into()));
    }
    Ok(GlueResult { epsilon: eps, merged, p: pair.p, q: pair.q, witness: GlueWitness { u, v, n, residual } })
}

fn entry_points(a: &DiagonalEntry, b: &DiagonalEntry) -> Result<Vec<(i8, i8, String)>> {
    if a.factors.iter().any(|f| b.factors.iter().any(|g| f.shares_root(g))) {
        return Err(Error::NotCoprime);
    }
    let roots = DiagonalForm::new(vec![a.clone(), b.clone()]).circle_roots();
    let mut points = Vec::new();
    for r in &roots {
        points.push((a.sign_at_root(&r.abscissa), b.sign_at_root(&r.abscissa), format!("x = {:.6}", r.theta_over_2pi())));
    }
    for s in arc_samples(&roots)? {
        points.push((a.sign_at_s(&s), b.sign_at_s(&s), format!("s = {s}")));
    }
    Ok(points)
}

fn first_failure(points: &[(i8, i8, String)], eps: i8) -> Option<String> {
    points.iter().find(|(x, y, _)| eps * x <= 0 && eps * y <= 0).map(|p| p.2.clone())
}

fn merge(a: &DiagonalEntry, b: &DiagonalEntry, eps: i8) -> DiagonalEntry {
    let mut factors = a.factors.clone();
    factors.extend(b.factors.iter().cloned());
    DiagonalEntry::new(eps * a.sign * b.sign, factors)
}

/// Symbolic glue of two diagonal entries with no common root.
pub fn glue_entries(a: &DiagonalEntry, b: &DiagonalEntry) -> Result<(i8, DiagonalEntry)> {
    let points = entry_points(a, b)?;
    let eps = match (first_failure(&points, 1), first_failure(&points, -1)) {
        (None, _) => 1,
        (Some(_), None) => -1,
        (Some(p), Some(m)) => {
            return Err(Error::SignHypothesisFails { witness: format!("eps = +1 at {p}; eps = -1 at {m}") })
        }
    };
    Ok((eps, merge(a, b, eps)))
}

/// Symbolic glue with a prescribed `ε`.
pub fn glue_entries_with_sign(a: &DiagonalEntry, b: &DiagonalEntry, eps: i8) -> Result<DiagonalEntry> {
    let points = entry_points(a, b)?;
    match first_failure(&points, eps) {
        None => Ok(merge(a, b, eps)),
        Some(w) => Err(Error::SignHypothesisFails { witness: format!("eps = {eps:+} at {w}") }),
    }
}
