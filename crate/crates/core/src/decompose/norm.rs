//! Nonnegativity on the circle and norm factorization `P = U Ū`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use num_traits::Zero;

use super::numeric::{circle_grid, complex_roots, FloatLaurent};
use crate::invariants::arc_samples;
use crate::laurent::{int, LaurentPoly, Poly, Rational};
use crate::realalg::circle_roots_of_lift;
use crate::{Error, Result};

/// Residual bound for norm factors, relative to `‖P‖`.
pub const NORM_TOLERANCE: f64 = 1e-8;

const GRID: usize = 1024;

/// Exact test of `P(z) >= 0` for all `|z| = 1`.
pub fn nonneg_on_circle(p: &LaurentPoly) -> Result<bool> {
    let q = p.to_symmetric()?;
    if q.is_zero() {
        return Ok(true);
    }
    let roots = circle_roots_of_lift(&q);
    Ok(arc_samples(&roots)?.iter().all(|s| q.sign_at(s) > 0))
}

/// `U` with `U(z) U(1/z) = P(z)`: exact when rational, otherwise floating.
#[derive(Clone, Debug)]
pub struct NormFactor {
    pub u: FloatLaurent,
    pub exact: Option<LaurentPoly>,
    pub residual: f64,
}

/// Sup-norm of `P - U Ū` on the `GRID`-point circle grid.
pub fn norm_residual(p: &LaurentPoly, u: &FloatLaurent) -> f64 {
    let ubar = u.involute();
    circle_grid(GRID).into_iter().map(|z| (p.eval_complex(z) - u.eval(z) * ubar.eval(z)).norm()).fold(0.0, f64::max)
}

fn sup_on_grid(p: &LaurentPoly) -> f64 {
    circle_grid(GRID).into_iter().map(|z| p.eval_complex(z).norm()).fold(0.0, f64::max)
}

fn poly_mul(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut c = vec![0.0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            c[i + j] += x * y;
        }
    }
    c
}

/// Root of `t + 1/t = σ` inside the closed unit disc.
fn inner_root(sigma: Complex64) -> Complex64 {
    let d = (sigma * sigma - 4.0).sqrt();
    let a = (sigma + d) / 2.0;
    let b = (sigma - d) / 2.0;
    if a.norm() <= b.norm() {
        a
    } else {
        b
    }
}

/// Best rational with denominator at most `10^6` within `tol` of `x`.
pub(crate) fn rationalize(x: f64, tol: f64) -> Option<Rational> {
    use num_bigint::BigInt;
    if !x.is_finite() {
        return None;
    }
    let (mut h0, mut h1) = (BigInt::from(0), BigInt::from(1));
    let (mut k0, mut k1) = (BigInt::from(1), BigInt::from(0));
    let mut r = x;
    for _ in 0..40 {
        let a = r.floor();
        let ai = BigInt::from(a as i64);
        let h2 = &ai * &h1 + &h0;
        let k2 = &ai * &k1 + &k0;
        if k2 > BigInt::from(1_000_000) {
            return None;
        }
        let q = Rational::new(h2.clone(), k2.clone());
        if (crate::laurent::rat_to_f64(&q) - x).abs() <= tol {
            return Some(q);
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let f = r - a;
        if f.abs() < 1e-300 {
            return None;
        }
        r = 1.0 / f;
    }
    None
}

/// Factor `P >= 0` on the circle as `U Ū`.
pub fn norm_factor(p: &LaurentPoly) -> Result<NormFactor> {
    norm_factor_with_tolerance(p, NORM_TOLERANCE)
}

/// [`norm_factor`] with a relative residual bound `tol`.
pub fn norm_factor_with_tolerance(p: &LaurentPoly, tol: f64) -> Result<NormFactor> {
    let q = p.to_symmetric()?;
    if q.is_zero() {
        return Ok(NormFactor { u: FloatLaurent::zero(), exact: Some(LaurentPoly::zero()), residual: 0.0 });
    }
    if !nonneg_on_circle(p)? {
        return Err(Error::NegativeSomewhere);
    }
    let mut u = vec![1.0];
    for (f, m) in q.squarefree_decomposition() {
        if f.deg() == 0 {
            continue;
        }
        let two = f.eval(&int(2)).is_zero();
        let minus_two = f.eval(&int(-2)).is_zero();
        let mut rest = f.clone();
        if two {
            rest = rest.div_exact(&Poly::from_i64s(&[-2, 1])).unwrap();
            for _ in 0..m {
                u = poly_mul(&u, &[-1.0, 1.0]);
            }
        }
        if minus_two {
            rest = rest.div_exact(&Poly::from_i64s(&[2, 1])).unwrap();
            for _ in 0..m {
                u = poly_mul(&u, &[1.0, 1.0]);
            }
        }
        let n_circle = circle_roots_of_lift(&rest).len();
        // roots on the circle come first when sorted by distance to [-2, 2]
        let mut roots = complex_roots(&rest);
        let off_segment = |z: &Complex64| z.im.abs() + (z.re.abs() - 2.0).max(0.0);
        roots.sort_by(|a, b| off_segment(a).partial_cmp(&off_segment(b)).unwrap());
        for (k, sigma) in roots.iter().enumerate() {
            if k < n_circle {
                if m % 2 != 0 {
                    return Err(Error::NegativeSomewhere);
                }
                for _ in 0..m / 2 {
                    u = poly_mul(&u, &[1.0, -sigma.re, 1.0]);
                }
            } else if sigma.im.abs() < 1e-12 * (1.0 + sigma.norm()) {
                let xi = inner_root(Complex64::new(sigma.re, 0.0)).re;
                for _ in 0..m {
                    u = poly_mul(&u, &[-xi, 1.0]);
                }
            } else if sigma.im > 0.0 {
                let th = inner_root(*sigma);
                for _ in 0..m {
                    u = poly_mul(&u, &[th.norm_sqr(), -2.0 * th.re, 1.0]);
                }
            }
        }
    }
    let shift = -((u.len() as i64 - 1) / 2);
    let mut uf = FloatLaurent::from_real_poly(&u, shift);
    // least-squares scalar with P ≈ c^2 |U|^2
    let (mut num, mut den) = (0.0, 0.0);
    for z in circle_grid(GRID) {
        let w = uf.eval(z).norm_sqr();
        num += p.eval_complex(z).re * w;
        den += w * w;
    }
    uf = uf.scale((num / den).max(0.0).sqrt());
    let target: Vec<f64> = (0..uf.coeffs.len() as i64).map(|k| crate::laurent::rat_to_f64(&p.coeff(k))).collect();
    if let Some(c) = newton_refine(&target, &uf.coeffs) {
        let better = FloatLaurent::from_real_poly(&c, uf.low);
        if norm_residual(p, &better) < norm_residual(p, &uf) {
            uf = better;
        }
    }
    let exact = exact_candidate(&uf).filter(|e| &(e * &e.involute()) == p);
    if let Some(e) = &exact {
        uf = FloatLaurent::from_exact(e);
    }
    let residual = if exact.is_some() { 0.0 } else { norm_residual(p, &uf) };
    let scale = sup_on_grid(p).max(p.coeffs().iter().map(crate::laurent::rat_to_f64).fold(0.0, |m, c| m.max(c.abs())));
    if residual > tol * scale {
        return Err(Error::ResidualTooLarge { residual });
    }
    Ok(NormFactor { u: uf, exact, residual })
}

/// Newton iteration on `Σ_i u_i u_(i+k) = p_k`, `k = 0..n`. Converges
/// quadratically from the root-based start when `P > 0` on the circle.
fn newton_refine(p: &[f64], start: &[f64]) -> Option<Vec<f64>> {
    let n = start.len();
    if n < 2 || p.len() != n {
        return None;
    }
    let residual = |u: &[f64]| -> Vec<f64> {
        (0..n).map(|k| (0..n - k).map(|i| u[i] * u[i + k]).sum::<f64>() - p[k]).collect()
    };
    let norm = |r: &[f64]| r.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let mut u = start.to_vec();
    let mut r = residual(&u);
    for _ in 0..30 {
        let jac = DMatrix::from_fn(n, n, |k, j| {
            let mut v = 0.0;
            if j + k < n {
                v += u[j + k];
            }
            if j >= k {
                v += u[j - k];
            }
            v
        });
        let step = jac.lu().solve(&DVector::from_column_slice(&r))?;
        let next: Vec<f64> = u.iter().zip(step.iter()).map(|(a, d)| a - d).collect();
        let rn = residual(&next);
        if !(norm(&rn) < norm(&r)) {
            break;
        }
        u = next;
        r = rn;
    }
    Some(u)
}

fn exact_candidate(u: &FloatLaurent) -> Option<LaurentPoly> {
    let tol = 1e-9 * (1.0 + u.sup_norm_coeffs());
    let c: Option<Vec<Rational>> = u.coeffs.iter().map(|&x| rationalize(x, tol)).collect();
    let c = c?;
    if c.iter().all(|x| x.is_zero()) {
        return None;
    }
    Some(LaurentPoly::new(u.low, c))
}
