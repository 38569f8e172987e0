//! Seifert matrices: symplectic normalization, Alexander polynomial and the
//! hermitian matrix presenting the Blanchfield form.
//!
//! Convention: `V_ij = lk(a_i, a_j^+)`. The other convention is the
//! transpose, which amounts to `mirror_reverse` up to congruence.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hermat::{constant_matrix, HermitianLaurentMatrix, LaurentMatrix};
use crate::laurent::{int, LaurentPoly, Rational};

/// Square rational matrix `V` with `V - V^t` unimodular and skew.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct SeifertMatrix {
    pub name: Option<String>,
    entries: Vec<Vec<Rational>>,
}

/// One entry of the JSON input: an integer or a `"p/q"` string.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum EntryJson {
    Int(i64),
    Str(String),
}

/// `{"name": str, "seifert": [[...], ...]}`
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct SeifertJson {
    #[serde(default)]
    pub name: Option<String>,
    pub seifert: Vec<Vec<EntryJson>>,
}

fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad matrix entry {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

impl SeifertMatrix {
    pub fn new(entries: Vec<Vec<Rational>>) -> Result<Self> {
        let n = entries.len();
        if entries.iter().any(|r| r.len() != n) {
            return Err(Error::NotSeifert("matrix is not square".into()));
        }
        Ok(SeifertMatrix { name: None, entries })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        SeifertMatrix::new(rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect())
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn empty() -> Self {
        SeifertMatrix::default()
    }

    pub fn entries(&self) -> &[Vec<Rational>] {
        &self.entries
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn genus(&self) -> usize {
        self.size() / 2
    }

    pub fn from_json(j: &SeifertJson) -> Result<Self> {
        let rows = j
            .seifert
            .iter()
            .map(|r| {
                r.iter()
                    .map(|e| match e {
                        EntryJson::Int(v) => Ok(int(*v)),
                        EntryJson::Str(s) => parse_rational(s),
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let mut v = SeifertMatrix::new(rows)?;
        v.name = j.name.clone();
        Ok(v)
    }

    /// Bracket syntax `[[a,b],[c,d]]`; `[]` is the empty matrix.
    pub fn parse_brackets(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let inner = compact
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("expected [[...]] matrix, got {s:?}")))?;
        if inner.is_empty() {
            return SeifertMatrix::new(Vec::new());
        }
        let body = inner
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("expected rows in brackets, got {s:?}")))?;
        let rows = body
            .split("],[")
            .map(|row| row.split(',').map(parse_rational).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        SeifertMatrix::new(rows)
    }

    fn skew(&self) -> Vec<Vec<Rational>> {
        let n = self.size();
        (0..n).map(|i| (0..n).map(|j| &self.entries[i][j] - &self.entries[j][i]).collect()).collect()
    }

    /// `true` when `V - V^t` is the standard symplectic matrix.
    pub fn is_normalized(&self) -> bool {
        let n = self.size();
        if n % 2 != 0 {
            return false;
        }
        let g = n / 2;
        let w = self.skew();
        (0..n).all(|i| {
            (0..n).all(|j| {
                let want = if j == i + g && i < g {
                    1
                } else if i == j + g && j < g {
                    -1
                } else {
                    0
                };
                w[i][j] == int(want)
            })
        })
    }

    /// Find integer unimodular `P` with `P (V - V^t) P^t` standard; returns
    /// `(P, P V P^t)`.
    pub fn validate_and_normalize(&self) -> Result<(Vec<Vec<BigInt>>, SeifertMatrix)> {
        let n = self.size();
        if n % 2 != 0 {
            return Err(Error::NotSeifert("odd size".into()));
        }
        let w0 = self.skew();
        let mut w: Vec<Vec<BigInt>> = Vec::with_capacity(n);
        for row in &w0 {
            let mut r = Vec::with_capacity(n);
            for x in row {
                if !x.is_integer() {
                    return Err(Error::NotSeifert("V - V^t is not integral".into()));
                }
                r.push(x.to_integer());
            }
            w.push(r);
        }
        let mut p: Vec<Vec<BigInt>> =
            (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect();
        // congruence helpers: basis vector r <- r + q * k
        fn add(w: &mut [Vec<BigInt>], p: &mut [Vec<BigInt>], r: usize, k: usize, q: &BigInt) {
            let n = w.len();
            for j in 0..n {
                let t = &w[k][j] * q;
                w[r][j] += t;
            }
            for i in 0..n {
                let t = &w[i][k] * q;
                w[i][r] += t;
            }
            for j in 0..n {
                let t = &p[k][j] * q;
                p[r][j] += t;
            }
        }
        fn swap(w: &mut [Vec<BigInt>], p: &mut [Vec<BigInt>], a: usize, b: usize) {
            if a == b {
                return;
            }
            w.swap(a, b);
            for row in w.iter_mut() {
                row.swap(a, b);
            }
            p.swap(a, b);
        }
        let mut k = 0;
        while k < n {
            loop {
                let mut best: Option<(usize, usize)> = None;
                for i in k..n {
                    for j in k..n {
                        if !w[i][j].is_zero() && best.is_none_or(|(bi, bj)| w[i][j].abs() < w[bi][bj].abs()) {
                            best = Some((i, j));
                        }
                    }
                }
                let Some((i, j)) = best else {
                    return Err(Error::NotSeifert("V - V^t is singular".into()));
                };
                swap(&mut w, &mut p, k, i);
                let j = if j == k { i } else { j };
                swap(&mut w, &mut p, k + 1, j);
                let piv = w[k][k + 1].clone();
                let mut clean = true;
                for r in k + 2..n {
                    // make w(e_k, e_r) small using e_{k+1}
                    let q = num_integer::Integer::div_floor(&w[k][r], &piv);
                    if !q.is_zero() {
                        add(&mut w, &mut p, r, k + 1, &-&q);
                    }
                    clean &= w[k][r].is_zero();
                    // w(e_{k+1}, e_r) using e_k, where w(e_{k+1}, e_k) = -piv
                    let q = num_integer::Integer::div_floor(&w[k + 1][r], &-&piv);
                    if !q.is_zero() {
                        add(&mut w, &mut p, r, k, &-&q);
                    }
                    clean &= w[k + 1][r].is_zero();
                }
                if clean {
                    break;
                }
            }
            let piv = w[k][k + 1].clone();
            if piv == -BigInt::one() {
                swap(&mut w, &mut p, k, k + 1);
            } else if !piv.is_one() {
                return Err(Error::NotAKnot);
            }
            k += 2;
        }
        // reorder (e1, f1, e2, f2, ...) to (e1..eg, f1..fg)
        let g = n / 2;
        let order: Vec<usize> = (0..g).map(|i| 2 * i).chain((0..g).map(|i| 2 * i + 1)).collect();
        let p: Vec<Vec<BigInt>> = order.iter().map(|&i| p[i].clone()).collect();
        let pv: Vec<Vec<Rational>> = p.iter().map(|r| r.iter().map(|x| Rational::from_integer(x.clone())).collect()).collect();
        let mut vp = vec![vec![Rational::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = Rational::zero();
                for a in 0..n {
                    if pv[i][a].is_zero() {
                        continue;
                    }
                    for b in 0..n {
                        if !pv[j][b].is_zero() {
                            acc += &pv[i][a] * &self.entries[a][b] * &pv[j][b];
                        }
                    }
                }
                vp[i][j] = acc;
            }
        }
        let out = SeifertMatrix { name: self.name.clone(), entries: vp };
        debug_assert!(out.is_normalized());
        Ok((p, out))
    }

    /// `t V - V^t` as a Laurent matrix.
    pub fn alexander_matrix(&self) -> LaurentMatrix {
        let n = self.size();
        let mut m = LaurentMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let e = &LaurentPoly::monomial(self.entries[i][j].clone(), 1)
                    - &LaurentPoly::constant(self.entries[j][i].clone());
                m.set(i, j, e);
            }
        }
        m
    }

    /// `det(t V - V^t)`, palindromic and positive at `t = 1`.
    pub fn alexander(&self) -> Result<LaurentPoly> {
        self.validate_and_normalize()?;
        let d = self.alexander_matrix().det();
        let at1 = d.eval(&Rational::one());
        if at1.abs() != Rational::one() {
            return Err(Error::NotAKnot);
        }
        let delta = d.normalize_palindromic().ok_or_else(|| Error::Internal("Alexander polynomial not symmetric".into()))?;
        let integral = self.entries.iter().all(|r| r.iter().all(|x| x.is_integer()));
        if integral && delta.eval(&-Rational::one()).is_zero() {
            return Err(Error::Internal("Alexander polynomial vanishes at -1".into()));
        }
        Ok(delta)
    }

    /// The hermitian matrix built from the normalized `V` by the four-block
    /// formula; the `(1 - t)` denominators are divided out exactly.
    pub fn blanchfield_matrix(&self) -> Result<HermitianLaurentMatrix> {
        if !self.is_normalized() {
            return Err(Error::NotNormalized);
        }
        let n = self.size();
        let g = n / 2;
        let v = |i: usize, j: usize| LaurentPoly::constant(self.entries[i][j].clone());
        let t = LaurentPoly::t();
        let tinv = LaurentPoly::monomial(Rational::one(), -1);
        let one = LaurentPoly::one();
        let one_minus_t = &one - &t;
        let one_minus_tinv = &one - &tinv;
        let mut m = LaurentMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let e = match (i < g, j < g) {
                    (true, true) => {
                        // ((1 - t^-1)^-1 V + V^t (1 - t)^-1) = (-t V + V^t) / (1 - t)
                        let num = &(&-&t * &v(i, j)) + &v(j, i);
                        num.div_exact(&one_minus_t)
                            .ok_or_else(|| Error::Internal("denominator does not cancel".into()))?
                    }
                    (true, false) => &(&-&t * &v(i, j)) + &v(j, i),
                    (false, true) => &v(i, j) - &(&tinv * &v(j, i)),
                    (false, false) => &(&one_minus_t * &v(i, j)) + &(&one_minus_tinv * &v(j, i)),
                };
                m.set(i, j, e);
            }
        }
        HermitianLaurentMatrix::new(m).map_err(|_| Error::Internal("Blanchfield matrix is not hermitian".into()))
    }

    /// `(1 - t) V + (1 - 1/t) V^t`, whose signature at `z` is the knot signature.
    pub fn signature_matrix(&self) -> HermitianLaurentMatrix {
        let n = self.size();
        let one = LaurentPoly::one();
        let a = &one - &LaurentPoly::t();
        let b = a.involute();
        let mut m = LaurentMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let e = &(&a * &LaurentPoly::constant(self.entries[i][j].clone()))
                    + &(&b * &LaurentPoly::constant(self.entries[j][i].clone()));
                m.set(i, j, e);
            }
        }
        HermitianLaurentMatrix::new(m).expect("signature matrix is hermitian")
    }

    pub fn connected_sum(&self, o: &SeifertMatrix) -> SeifertMatrix {
        let m = constant_matrix(&self.entries).block_sum(&constant_matrix(&o.entries));
        let entries = m.rows().iter().map(|r| r.iter().map(|e| e.coeff(0)).collect()).collect();
        let name = match (&self.name, &o.name) {
            (Some(a), Some(b)) => Some(format!("{a}#{b}")),
            _ => None,
        };
        SeifertMatrix { name, entries }
    }

    /// `-V`, the Seifert matrix of the reversed mirror image.
    pub fn mirror_reverse(&self) -> SeifertMatrix {
        SeifertMatrix {
            name: self.name.as_ref().map(|n| format!("-{n}")),
            entries: self.entries.iter().map(|r| r.iter().map(|x| -x).collect()).collect(),
        }
    }

    /// Genus-`k` Seifert matrix of the torus knot `T(2, 2k+1)`.
    pub fn torus_2(k: usize) -> SeifertMatrix {
        let n = 2 * k;
        let mut e = vec![vec![Rational::zero(); n]; n];
        for i in 0..n {
            e[i][i] = int(-1);
            if i + 1 < n {
                e[i][i + 1] = int(1);
            }
        }
        SeifertMatrix { name: Some(format!("T(2,{})", 2 * k + 1)), entries: e }
    }
}
