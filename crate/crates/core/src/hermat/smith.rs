//! Smith normal form over `Q[t]`.

use crate::laurent::{LaurentPoly, Poly, Rational};

use super::LaurentMatrix;

pub type PolyMatrix = Vec<Vec<Poly>>;

/// `left * M * right = diag(diagonal)` with unimodular transforms.
#[derive(Clone, Debug)]
pub struct SmithForm {
    /// Monic diagonal entries (zero for rank deficiency), each dividing the next.
    pub diagonal: Vec<Poly>,
    /// Non-unit entries of `diagonal` with powers of `t` removed.
    pub invariant_factors: Vec<LaurentPoly>,
    pub left: PolyMatrix,
    pub left_inv: PolyMatrix,
    pub right: PolyMatrix,
}

impl SmithForm {
    pub fn non_unit_count(&self) -> usize {
        self.invariant_factors.len()
    }
}

fn identity(n: usize) -> PolyMatrix {
    (0..n).map(|i| (0..n).map(|j| if i == j { Poly::one() } else { Poly::zero() }).collect()).collect()
}

struct Work {
    a: PolyMatrix,
    u: PolyMatrix,
    uinv: PolyMatrix,
    v: PolyMatrix,
}

impl Work {
    /// row_i += q * row_k
    fn add_row(&mut self, i: usize, k: usize, q: &Poly) {
        for j in 0..self.a[0].len() {
            let t = q * &self.a[k][j];
            self.a[i][j] = &self.a[i][j] + &t;
        }
        for j in 0..self.u.len() {
            let t = q * &self.u[k][j];
            self.u[i][j] = &self.u[i][j] + &t;
            let t = q * &self.uinv[j][i];
            self.uinv[j][k] = &self.uinv[j][k] - &t;
        }
    }

    /// col_j += q * col_k
    fn add_col(&mut self, j: usize, k: usize, q: &Poly) {
        for i in 0..self.a.len() {
            let t = q * &self.a[i][k];
            self.a[i][j] = &self.a[i][j] + &t;
        }
        for i in 0..self.v.len() {
            let t = q * &self.v[i][k];
            self.v[i][j] = &self.v[i][j] + &t;
        }
    }

    fn swap_rows(&mut self, i: usize, k: usize) {
        if i == k {
            return;
        }
        self.a.swap(i, k);
        self.u.swap(i, k);
        for row in self.uinv.iter_mut() {
            row.swap(i, k);
        }
    }

    fn swap_cols(&mut self, j: usize, k: usize) {
        if j == k {
            return;
        }
        for row in self.a.iter_mut() {
            row.swap(j, k);
        }
        for row in self.v.iter_mut() {
            row.swap(j, k);
        }
    }

    fn scale_row(&mut self, k: usize, c: &Rational) {
        let inv = c.recip();
        for e in self.a[k].iter_mut() {
            *e = e.scale(c);
        }
        for e in self.u[k].iter_mut() {
            *e = e.scale(c);
        }
        for row in self.uinv.iter_mut() {
            row[k] = row[k].scale(&inv);
        }
    }
}

/// Smith normal form of an `m x n` polynomial matrix, pivoting on entries
/// of least degree.
pub fn smith_normal_form(m: &PolyMatrix) -> SmithForm {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut w = Work { a: m.clone(), u: identity(rows), uinv: identity(rows), v: identity(cols) };
    let r = rows.min(cols);
    let mut diagonal = Vec::with_capacity(r);
    for k in 0..r {
        loop {
            let mut best: Option<(usize, usize, usize)> = None;
            for i in k..rows {
                for j in k..cols {
                    if let Some(d) = w.a[i][j].degree() {
                        if best.is_none_or(|b| d < b.2) {
                            best = Some((i, j, d));
                        }
                    }
                }
            }
            let Some((pi, pj, _)) = best else { break };
            w.swap_rows(k, pi);
            w.swap_cols(k, pj);
            let piv = w.a[k][k].clone();
            let mut clean = true;
            for i in k + 1..rows {
                if w.a[i][k].is_zero() {
                    continue;
                }
                let (q, rem) = w.a[i][k].div_rem(&piv);
                w.add_row(i, k, &-q);
                clean &= rem.is_zero();
            }
            for j in k + 1..cols {
                if w.a[k][j].is_zero() {
                    continue;
                }
                let (q, rem) = w.a[k][j].div_rem(&piv);
                w.add_col(j, k, &-q);
                clean &= rem.is_zero();
            }
            if !clean {
                continue;
            }
            let bad = (k + 1..rows).find(|&i| (k + 1..cols).any(|j| !w.a[i][j].rem(&piv).is_zero()));
            match bad {
                Some(i) => w.add_row(k, i, &Poly::one()),
                None => break,
            }
        }
        let lc = w.a[k][k].leading();
        if !w.a[k][k].is_zero() {
            w.scale_row(k, &lc.recip());
        }
        diagonal.push(w.a[k][k].clone());
    }
    let invariant_factors = diagonal
        .iter()
        .filter_map(|d| {
            if d.is_zero() {
                return Some(LaurentPoly::zero());
            }
            let s = d.strip_x();
            (s.deg() >= 1).then(|| LaurentPoly::from_poly(&s, 0))
        })
        .collect();
    SmithForm { diagonal, invariant_factors, left: w.u, left_inv: w.uinv, right: w.v }
}

/// Smith form of a square Laurent matrix after shifting each column by a
/// power of `t` into `Q[t]`. Column shifts do not change the column span
/// over `Q[t, 1/t]`, so `left_inv` columns still generate the cokernel.
pub fn smith_form_laurent(m: &LaurentMatrix) -> SmithForm {
    let n = m.size();
    let mut pm: PolyMatrix = vec![vec![Poly::zero(); n]; n];
    for j in 0..n {
        let low = (0..n).filter(|&i| !m.get(i, j).is_zero()).map(|i| m.get(i, j).low()).min().unwrap_or(0);
        for i in 0..n {
            let e = m.get(i, j);
            if !e.is_zero() {
                let (p, k) = e.to_poly_shift();
                pm[i][j] = p.shift((k - low) as usize);
            }
        }
    }
    smith_normal_form(&pm)
}
