//! Floating-point Laurent polynomials and polynomial roots.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::laurent::{rat_to_f64, LaurentPoly, Poly};

/// `Σ coeffs[k] t^(low + k)` with float coefficients.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FloatLaurent {
    pub low: i64,
    pub coeffs: Vec<f64>,
}

impl FloatLaurent {
    pub fn zero() -> Self {
        FloatLaurent { low: 0, coeffs: Vec::new() }
    }

    pub fn constant(c: f64) -> Self {
        FloatLaurent { low: 0, coeffs: vec![c] }
    }

    pub fn from_exact(p: &LaurentPoly) -> Self {
        FloatLaurent { low: p.low(), coeffs: p.coeffs().iter().map(rat_to_f64).collect() }
    }

    pub fn from_real_poly(c: &[f64], low: i64) -> Self {
        FloatLaurent { low, coeffs: c.to_vec() }
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc * z.powi(self.low as i32)
    }

    /// `p(1/t)`
    pub fn involute(&self) -> Self {
        if self.coeffs.is_empty() {
            return FloatLaurent::zero();
        }
        let mut c = self.coeffs.clone();
        c.reverse();
        FloatLaurent { low: -(self.low + self.coeffs.len() as i64 - 1), coeffs: c }
    }

    pub fn mul(&self, o: &FloatLaurent) -> FloatLaurent {
        if self.coeffs.is_empty() || o.coeffs.is_empty() {
            return FloatLaurent::zero();
        }
        let mut c = vec![0.0; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        FloatLaurent { low: self.low + o.low, coeffs: c }
    }

    pub fn scale(&self, k: f64) -> FloatLaurent {
        FloatLaurent { low: self.low, coeffs: self.coeffs.iter().map(|c| c * k).collect() }
    }

    pub fn sup_norm_coeffs(&self) -> f64 {
        self.coeffs.iter().fold(0.0f64, |m, c| m.max(c.abs()))
    }
}

/// `n` equally spaced points of the unit circle.
pub fn circle_grid(n: usize) -> Vec<Complex64> {
    (0..n).map(|k| Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / n as f64)).collect()
}

/// All complex roots of a squarefree polynomial (Aberth iteration, then
/// Newton polishing).
pub fn complex_roots(p: &Poly) -> Vec<Complex64> {
    let n = p.deg();
    if n == 0 {
        return Vec::new();
    }
    let lc = rat_to_f64(&p.leading());
    let c: Vec<f64> = p.coeffs().iter().map(|x| rat_to_f64(x) / lc).collect();
    if n == 1 {
        return vec![Complex64::new(-c[0], 0.0)];
    }
    let eval = |z: Complex64| -> (Complex64, Complex64) {
        let mut f = Complex64::new(0.0, 0.0);
        let mut d = Complex64::new(0.0, 0.0);
        for &a in c.iter().rev() {
            d = d * z + f;
            f = f * z + a;
        }
        (f, d)
    };
    let radius = 1.0 + c[..n].iter().fold(0.0f64, |m, a| m.max(a.abs()));
    let r0 = radius.min(2.0_f64.max(c[0].abs().powf(1.0 / n as f64)));
    let mut z: Vec<Complex64> =
        (0..n).map(|k| Complex64::from_polar(r0, 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / n as f64)).collect();
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let (f, d) = eval(z[i]);
            if f.norm() == 0.0 {
                continue;
            }
            let ratio = f / d;
            let s: Complex64 = (0..n).filter(|&j| j != i).map(|j| 1.0 / (z[i] - z[j])).sum();
            let w = ratio / (1.0 - ratio * s);
            if w.is_finite() {
                z[i] -= w;
                moved = moved.max(w.norm() / (1.0 + z[i].norm()));
            }
        }
        if moved < 1e-15 {
            break;
        }
    }
    for zi in z.iter_mut() {
        for _ in 0..3 {
            let (f, d) = eval(*zi);
            if d.norm() == 0.0 {
                break;
            }
            let step = f / d;
            if !step.is_finite() {
                break;
            }
            *zi -= step;
        }
    }
    z
}
