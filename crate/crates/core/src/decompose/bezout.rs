//! Positive palindromic Bézout pairs `P A + Q B = 1` with `P, Q > 0` on
//! the circle.
//!
//! Everything happens in `S = t + 1/t`, where palindromic polynomials are
//! ordinary polynomials and the circle is the segment `[-2, 2]`.

use num_traits::Zero;

use crate::invariants::arc_samples;
use crate::laurent::{int, LaurentPoly, Poly, Rational};
use crate::realalg::{circle_roots_of_lift, SturmChain};
use crate::{Error, Result};

/// Highest degree of the correction term tried.
pub const MAX_GAMMA_DEGREE: usize = 128;

#[derive(Clone, Debug)]
pub struct BezoutPair {
    pub p: LaurentPoly,
    pub q: LaurentPoly,
    /// Correction added to the Euclidean solution.
    pub gamma: LaurentPoly,
}

/// `f > 0` on all of `[-2, 2]`, decided exactly.
pub fn positive_on_segment(f: &Poly) -> bool {
    if f.is_zero() || f.sign_at(&int(2)) <= 0 || f.sign_at(&int(-2)) <= 0 {
        return false;
    }
    f.is_constant() || SturmChain::new(&f.squarefree_part()).count_open(&int(-2), &int(2)) == 0
}

/// Description of a point of the circle where neither `eps·a` nor `eps·b`
/// is positive, if there is one. `a` and `b` are symmetric lifts.
pub(crate) fn hypothesis_failure(a: &Poly, b: &Poly, eps: i8) -> Result<Option<String>> {
    let ok = |sa: i8, sb: i8| eps * sa > 0 || eps * sb > 0;
    for s in [int(2), int(-2)] {
        if !ok(a.sign_at(&s), b.sign_at(&s)) {
            return Ok(Some(format!("s = {s}")));
        }
    }
    let roots = circle_roots_of_lift(&(a * b));
    for r in &roots {
        if !ok(r.abscissa.sign_at(a), r.abscissa.sign_at(b)) {
            return Ok(Some(format!(
                "s = root of {} in ({}, {}), x = {:.6}",
                r.abscissa.defpoly().to_string_in("s"),
                r.abscissa.lo(),
                r.abscissa.hi(),
                r.theta_over_2pi()
            )));
        }
    }
    for s in arc_samples(&roots)? {
        if !ok(a.sign_at(&s), b.sign_at(&s)) {
            return Ok(Some(format!("s = {s}")));
        }
    }
    Ok(None)
}

fn lifts(a: &LaurentPoly, b: &LaurentPoly) -> Result<(Poly, Poly)> {
    let la = a.to_symmetric()?;
    let lb = b.to_symmetric()?;
    if la.is_zero() || lb.is_zero() || la.gcd(&lb).deg() > 0 {
        return Err(Error::NotCoprime);
    }
    Ok((la, lb))
}

/// Chebyshev polynomials `T_j(s/2)` for `j <= n`.
fn chebyshev_half(n: usize) -> Vec<Poly> {
    let half = Poly::from_coeffs(vec![Rational::zero(), Rational::new(1.into(), 2.into())]);
    let s = Poly::x();
    let mut out = vec![Poly::one(), half];
    while out.len() <= n {
        let k = out.len();
        let next = &(&s * &out[k - 1]) - &out[k - 2];
        out.push(next);
    }
    out.truncate(n + 1);
    out
}

fn dyadic(x: f64) -> Rational {
    let scale = (1u64 << 40) as f64;
    Rational::new(((x * scale).round() as i64).into(), (1i64 << 40).into())
}

/// Palindromic `P, Q`, positive on the circle, with `P A + Q B = 1`.
pub fn positive_bezout(a: &LaurentPoly, b: &LaurentPoly) -> Result<BezoutPair> {
    let (la, lb) = lifts(a, b)?;
    if let Some(w) = hypothesis_failure(&la, &lb, 1)? {
        return Err(Error::SignHypothesisFails { witness: w });
    }
    let (g, x, _) = la.ext_gcd(&lb);
    let inv = g.coeff(0).recip();
    let p0 = x.scale(&inv).rem(&lb);
    let q0 = (&Poly::one() - &(&p0 * &la)).div_exact(&lb).expect("Bezout remainder");
    let finish = |gamma: Poly| -> Option<BezoutPair> {
        let p = &p0 - &(&gamma * &lb);
        let q = &q0 + &(&gamma * &la);
        (positive_on_segment(&p) && positive_on_segment(&q)).then(|| BezoutPair {
            p: LaurentPoly::from_symmetric(&p),
            q: LaurentPoly::from_symmetric(&q),
            gamma: LaurentPoly::from_symmetric(&gamma),
        })
    };
    if let Some(r) = finish(Poly::zero()) {
        return Ok(r);
    }
    let mut degree = 1;
    while degree <= MAX_GAMMA_DEGREE {
        if let Some(coeffs) = fit_gamma(&la, &lb, &p0, &q0, degree) {
            let basis = chebyshev_half(degree);
            let mut gamma = Poly::zero();
            for (c, t) in coeffs.iter().zip(&basis) {
                gamma = &gamma + &t.scale(&dyadic(*c));
            }
            if let Some(r) = finish(gamma) {
                return Ok(r);
            }
        }
        degree *= 2;
    }
    Err(Error::InterpolantNotFound { degree: MAX_GAMMA_DEGREE })
}

/// Rounds of adding violated grid points to the linear program.
const CUT_ROUNDS: usize = 12;

/// Points of the dense grid used for screening.
const SCREEN_POINTS: usize = 2048;

/// Values of `(a, b, p0, q0)` at `s`.
fn values(a: &Poly, b: &Poly, p0: &Poly, q0: &Poly, s: f64) -> [f64; 4] {
    [a.eval_f64(s), b.eval_f64(s), p0.eval_f64(s), q0.eval_f64(s)]
}

/// Chebyshev coefficients of a `γ` of the given degree making
/// `p0 - γ b` and `q0 + γ a` positive on the screening grid. The margin
/// `min(P, Q)` over a growing set of points is maximized by linear
/// programming; grid points where the optimum fails join the set.
fn fit_gamma(a: &Poly, b: &Poly, p0: &Poly, q0: &Poly, degree: usize) -> Option<Vec<f64>> {
    let n = 4 * degree + 8;
    let mut points: Vec<f64> =
        (0..n).map(|k| 2.0 * (std::f64::consts::PI * (k as f64 + 0.5) / n as f64).cos()).collect();
    points.extend([-2.0, 2.0]);
    let grid: Vec<(f64, [f64; 4])> = (0..=SCREEN_POINTS)
        .map(|k| {
            let s = -2.0 + 4.0 * k as f64 / SCREEN_POINTS as f64;
            (s, values(a, b, p0, q0, s))
        })
        .collect();
    for _ in 0..CUT_ROUNDS {
        // Maximize the margin first, then spend half of it on small coefficients:
        // the margin alone leaves γ anywhere in its box and the witness ill conditioned.
        let best = solve_margin(a, b, p0, q0, degree, &points, None)?;
        if best.0 <= 0.0 {
            return None;
        }
        let coeffs = solve_margin(a, b, p0, q0, degree, &points, Some(best.0 / 2.0)).map_or(best.1, |r| r.1);
        let bad: Vec<f64> = grid
            .iter()
            .filter(|(s, [va, vb, vp, vq])| {
                let g = clenshaw(&coeffs, *s);
                vp - g * vb <= 0.0 || vq + g * va <= 0.0
            })
            .map(|(s, _)| *s)
            .collect();
        if bad.is_empty() {
            return Some(coeffs);
        }
        points.extend(bad);
    }
    None
}

/// With `floor = None`, maximize the margin `m <= 1` of `P, Q >= m` at `points`.
/// With a floor, keep `P, Q >= floor` and minimize `Σ |c_j|` instead.
fn solve_margin(
    a: &Poly,
    b: &Poly,
    p0: &Poly,
    q0: &Poly,
    degree: usize,
    points: &[f64],
    floor: Option<f64>,
) -> Option<(f64, Vec<f64>)> {
    use microlp::{ComparisonOp, OptimizationDirection, Problem};
    let dir = if floor.is_some() { OptimizationDirection::Minimize } else { OptimizationDirection::Maximize };
    let mut lp = Problem::new(dir);
    let c: Vec<_> = (0..=degree).map(|_| lp.add_var(0.0, (-1e6, 1e6))).collect();
    let margin = match floor {
        None => lp.add_var(1.0, (f64::NEG_INFINITY, 1.0)),
        Some(f) => lp.add_var(0.0, (f, f)),
    };
    if floor.is_some() {
        for &v in &c {
            let w = lp.add_var(1.0, (0.0, f64::INFINITY));
            lp.add_constraint([(w, 1.0), (v, -1.0)], ComparisonOp::Ge, 0.0);
            lp.add_constraint([(w, 1.0), (v, 1.0)], ComparisonOp::Ge, 0.0);
        }
    }
    for &s in points {
        let [va, vb, vp, vq] = values(a, b, p0, q0, s);
        let basis = chebyshev_values(degree, s);
        // P = p0 - γ b >= margin and Q = q0 + γ a >= margin
        let row_p: Vec<_> = c.iter().zip(&basis).map(|(&v, &t)| (v, -t * vb)).chain([(margin, -1.0)]).collect();
        lp.add_constraint(&row_p[..], ComparisonOp::Ge, -vp);
        let row_q: Vec<_> = c.iter().zip(&basis).map(|(&v, &t)| (v, t * va)).chain([(margin, -1.0)]).collect();
        lp.add_constraint(&row_q[..], ComparisonOp::Ge, -vq);
    }
    let sol = lp.solve().ok()?.into_solution().ok()?;
    Some((sol.var_value(margin), c.iter().map(|&v| sol.var_value(v)).collect()))
}

/// `T_j(s/2)` for `j <= degree`.
fn chebyshev_values(degree: usize, s: f64) -> Vec<f64> {
    let x = s / 2.0;
    let mut out = vec![1.0, x];
    while out.len() <= degree {
        let k = out.len();
        out.push(2.0 * x * out[k - 1] - out[k - 2]);
    }
    out.truncate(degree + 1);
    out
}

/// `Σ c_j T_j(s/2)`.
fn clenshaw(c: &[f64], s: f64) -> f64 {
    let x = s / 2.0;
    let (mut b1, mut b2) = (0.0, 0.0);
    for &ck in c.iter().skip(1).rev() {
        let b0 = ck + 2.0 * x * b1 - b2;
        b2 = b1;
        b1 = b0;
    }
    c.first().copied().unwrap_or(0.0) + x * b1 - b2
}
