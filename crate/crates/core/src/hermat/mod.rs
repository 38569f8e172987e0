//! Hermitian matrices over `Q[t, 1/t]` and the linking pairing they present.

mod smith;

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::laurent::{rat, LaurentPoly, Poly, Rational, RationalFunction};

pub use smith::{smith_form_laurent, smith_normal_form, PolyMatrix, SmithForm};

/// Square matrix of Laurent polynomials.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentMatrix {
    rows: Vec<Vec<LaurentPoly>>,
}

impl LaurentMatrix {
    pub fn new(rows: Vec<Vec<LaurentPoly>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch("matrix is not square".into()));
        }
        Ok(LaurentMatrix { rows })
    }

    pub fn zeros(n: usize) -> Self {
        LaurentMatrix { rows: vec![vec![LaurentPoly::zero(); n]; n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = LaurentMatrix::zeros(n);
        for i in 0..n {
            m.rows[i][i] = LaurentPoly::one();
        }
        m
    }

    pub fn diagonal(entries: &[LaurentPoly]) -> Self {
        let mut m = LaurentMatrix::zeros(entries.len());
        for (i, e) in entries.iter().enumerate() {
            m.rows[i][i] = e.clone();
        }
        m
    }

    pub fn from_strs(rows: &[&[&str]]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|s| s.parse()).collect::<Result<Vec<LaurentPoly>>>())
            .collect::<Result<Vec<_>>>()?;
        LaurentMatrix::new(rows)
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<LaurentPoly>] {
        &self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.rows[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: LaurentPoly) {
        self.rows[i][j] = v;
    }

    /// Involuted transpose.
    pub fn conj_transpose(&self) -> LaurentMatrix {
        let n = self.size();
        let mut m = LaurentMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m.rows[j][i] = self.rows[i][j].involute();
            }
        }
        m
    }

    pub fn mul(&self, o: &LaurentMatrix) -> LaurentMatrix {
        let n = self.size();
        assert_eq!(n, o.size(), "matrix size mismatch");
        let mut m = LaurentMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = &self.rows[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    if !o.rows[k][j].is_zero() {
                        m.rows[i][j] = &m.rows[i][j] + &(a * &o.rows[k][j]);
                    }
                }
            }
        }
        m
    }

    pub fn block_sum(&self, o: &LaurentMatrix) -> LaurentMatrix {
        let (n, k) = (self.size(), o.size());
        let mut m = LaurentMatrix::zeros(n + k);
        for i in 0..n {
            for j in 0..n {
                m.rows[i][j] = self.rows[i][j].clone();
            }
        }
        for i in 0..k {
            for j in 0..k {
                m.rows[n + i][n + j] = o.rows[i][j].clone();
            }
        }
        m
    }

    /// Fraction-free Bareiss elimination.
    pub fn det(&self) -> LaurentPoly {
        let n = self.size();
        if n == 0 {
            return LaurentPoly::one();
        }
        let mut a = self.rows.clone();
        let mut negate = false;
        let mut prev = LaurentPoly::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(k, i);
                        negate = !negate;
                    }
                    None => return LaurentPoly::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                    a[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
                }
                a[i][k] = LaurentPoly::zero();
            }
            prev = a[k][k].clone();
        }
        let d = a[n - 1][n - 1].clone();
        if negate {
            -d
        } else {
            d
        }
    }

    /// Coefficients `c_0..c_n` of `det(x I - M)` (Faddeev-LeVerrier).
    pub fn charpoly(&self) -> Vec<LaurentPoly> {
        let n = self.size();
        let mut c = vec![LaurentPoly::zero(); n + 1];
        c[n] = LaurentPoly::one();
        let mut m = LaurentMatrix::zeros(n);
        for k in 1..=n {
            // M_k = A M_{k-1} + c_{n-k+1} I
            let mut mk = self.mul(&m);
            for i in 0..n {
                mk.rows[i][i] = &mk.rows[i][i] + &c[n - k + 1];
            }
            let am = self.mul(&mk);
            let mut tr = LaurentPoly::zero();
            for i in 0..n {
                tr = &tr + &am.rows[i][i];
            }
            c[n - k] = tr.scale(&-rat(1, k as i64));
            m = mk;
        }
        c
    }

    pub fn eval_complex(&self, z: Complex64) -> Vec<Vec<Complex64>> {
        self.rows.iter().map(|r| r.iter().map(|e| e.eval_complex(z)).collect()).collect()
    }

    /// Inverse over the fraction field.
    pub fn inverse(&self) -> Result<Vec<Vec<RationalFunction>>> {
        let n = self.size();
        let mut a: Vec<Vec<RationalFunction>> = self
            .rows
            .iter()
            .map(|r| r.iter().map(|e| RationalFunction::from_laurent(e.clone())).collect())
            .collect();
        let mut inv: Vec<Vec<RationalFunction>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { RationalFunction::one() } else { RationalFunction::zero() }).collect())
            .collect();
        for k in 0..n {
            let p = (k..n).find(|&i| !a[i][k].is_zero()).ok_or(Error::SingularMatrix)?;
            a.swap(k, p);
            inv.swap(k, p);
            let piv = a[k][k].recip();
            for j in 0..n {
                a[k][j] = &a[k][j] * &piv;
                inv[k][j] = &inv[k][j] * &piv;
            }
            for i in 0..n {
                if i == k || a[i][k].is_zero() {
                    continue;
                }
                let f = a[i][k].clone();
                for j in 0..n {
                    if !a[k][j].is_zero() {
                        a[i][j] = &a[i][j] - &(&f * &a[k][j]);
                    }
                    if !inv[k][j].is_zero() {
                        inv[i][j] = &inv[i][j] - &(&f * &inv[k][j]);
                    }
                }
            }
        }
        Ok(inv)
    }
}

impl fmt::Debug for LaurentMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.rows.iter().map(|r| r.iter().map(|e| e.to_string()).collect::<Vec<_>>())).finish()
    }
}

/// `A` with `conj(A)^t = A`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct HermitianLaurentMatrix {
    m: LaurentMatrix,
}

/// JSON shape `{"entries": [[laurent-string, ...], ...]}`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct MatrixJson {
    pub entries: Vec<Vec<LaurentPoly>>,
}

impl HermitianLaurentMatrix {
    pub fn new(m: LaurentMatrix) -> Result<Self> {
        if m.conj_transpose() != m {
            return Err(Error::NotHermitian);
        }
        Ok(HermitianLaurentMatrix { m })
    }

    pub fn from_rows(rows: Vec<Vec<LaurentPoly>>) -> Result<Self> {
        HermitianLaurentMatrix::new(LaurentMatrix::new(rows)?)
    }

    pub fn from_strs(rows: &[&[&str]]) -> Result<Self> {
        HermitianLaurentMatrix::new(LaurentMatrix::from_strs(rows)?)
    }

    /// Diagonal matrix; entries must be palindromic.
    pub fn diagonal(entries: &[LaurentPoly]) -> Result<Self> {
        HermitianLaurentMatrix::new(LaurentMatrix::diagonal(entries))
    }

    pub fn empty() -> Self {
        HermitianLaurentMatrix { m: LaurentMatrix::zeros(0) }
    }

    pub fn matrix(&self) -> &LaurentMatrix {
        &self.m
    }

    pub fn size(&self) -> usize {
        self.m.size()
    }

    pub fn get(&self, i: usize, j: usize) -> &LaurentPoly {
        self.m.get(i, j)
    }

    pub fn det(&self) -> LaurentPoly {
        self.m.det()
    }

    pub fn charpoly(&self) -> Vec<LaurentPoly> {
        self.m.charpoly()
    }

    pub fn block_sum(&self, o: &HermitianLaurentMatrix) -> HermitianLaurentMatrix {
        HermitianLaurentMatrix { m: self.m.block_sum(&o.m) }
    }

    pub fn to_json(&self) -> MatrixJson {
        MatrixJson { entries: self.m.rows.clone() }
    }

    pub fn from_json(j: &MatrixJson) -> Result<Self> {
        HermitianLaurentMatrix::from_rows(j.entries.clone())
    }

    /// Pairing `conj(a)^t A^{-1} b` modulo `Q[t, 1/t]`.
    pub fn pair(&self, a: &[LaurentPoly], b: &[LaurentPoly]) -> Result<PairingValue> {
        let inv = self.m.inverse()?;
        pair_with_inverse(&inv, a, b)
    }

    /// `P A conj(P)^t`; `det P` must be a unit.
    pub fn move_congruence(&self, p: &LaurentMatrix) -> Result<HermitianLaurentMatrix> {
        if p.size() != self.size() {
            return Err(Error::DimensionMismatch("congruence matrix size".into()));
        }
        if !p.det().is_unit() {
            return Err(Error::NotUnimodular);
        }
        Ok(HermitianLaurentMatrix { m: p.mul(&self.m).mul(&p.conj_transpose()) })
    }

    /// `A ⊕ D` with `det D` a unit.
    pub fn move_stabilize(&self, d: &HermitianLaurentMatrix) -> Result<HermitianLaurentMatrix> {
        if !d.det().is_unit() {
            return Err(Error::NotUnitBlock("determinant is not a unit".into()));
        }
        Ok(self.block_sum(d))
    }

    /// Remove the diagonal block on indices `start..start + len`, which must
    /// be decoupled from the rest and have unit determinant.
    pub fn move_destabilize(&self, start: usize, len: usize) -> Result<HermitianLaurentMatrix> {
        let n = self.size();
        if len == 0 || start + len > n {
            return Err(Error::NotUnitBlock("block out of range".into()));
        }
        let inside = |i: usize| i >= start && i < start + len;
        for i in 0..n {
            for j in 0..n {
                if inside(i) != inside(j) && !self.m.rows[i][j].is_zero() {
                    return Err(Error::NotUnitBlock("block is coupled to the rest".into()));
                }
            }
        }
        let block: Vec<Vec<LaurentPoly>> =
            (start..start + len).map(|i| self.m.rows[i][start..start + len].to_vec()).collect();
        if !(LaurentMatrix { rows: block }).det().is_unit() {
            return Err(Error::NotUnitBlock("determinant is not a unit".into()));
        }
        let keep: Vec<usize> = (0..n).filter(|&i| !inside(i)).collect();
        let rows = keep.iter().map(|&i| keep.iter().map(|&j| self.m.rows[i][j].clone()).collect()).collect();
        Ok(HermitianLaurentMatrix { m: LaurentMatrix { rows } })
    }
}

pub(crate) fn pair_with_inverse(
    inv: &[Vec<RationalFunction>],
    a: &[LaurentPoly],
    b: &[LaurentPoly],
) -> Result<PairingValue> {
    let n = inv.len();
    if a.len() != n || b.len() != n {
        return Err(Error::DimensionMismatch("pairing vector length".into()));
    }
    let mut acc = RationalFunction::zero();
    for i in 0..n {
        if a[i].is_zero() {
            continue;
        }
        let ai = RationalFunction::from_laurent(a[i].involute());
        for j in 0..n {
            if b[j].is_zero() || inv[i][j].is_zero() {
                continue;
            }
            let bj = RationalFunction::from_laurent(b[j].clone());
            acc = &acc + &(&(&ai * &inv[i][j]) * &bj);
        }
    }
    Ok(PairingValue::from_rational_function(&acc))
}

/// Class in `Q(t) / Q[t, 1/t]`, stored as `num / den` with `den` monic,
/// `den(0) != 0`, `deg num < deg den` and `gcd(num, den) = 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PairingValue {
    num: Poly,
    den: Poly,
}

impl PairingValue {
    pub fn zero() -> Self {
        PairingValue { num: Poly::zero(), den: Poly::one() }
    }

    pub fn from_rational_function(f: &RationalFunction) -> Self {
        let (d, dk) = f.den().to_poly_shift();
        let (n, nk) = f.num().to_poly_shift();
        // t^dk is a unit: fold all t-powers into the numerator
        let k = nk - dk;
        if d.is_constant() || n.is_zero() {
            return PairingValue::zero();
        }
        let mut num = n.rem(&d);
        if k > 0 {
            num = num.shift(k as usize).rem(&d);
        } else if k < 0 {
            let tinv = Poly::x().inverse_mod(&d).expect("t is invertible modulo den");
            for _ in 0..(-k) {
                num = (&num * &tinv).rem(&d);
            }
        }
        let g = num.gcd(&d);
        let num = num.div_exact(&g).unwrap();
        let den = d.div_exact(&g).unwrap();
        let lc = den.leading().recip();
        if den.is_constant() {
            return PairingValue::zero();
        }
        PairingValue { num: num.scale(&lc), den: den.scale(&lc) }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn to_rational_function(&self) -> RationalFunction {
        RationalFunction::new(LaurentPoly::from_poly(&self.num, 0), LaurentPoly::from_poly(&self.den, 0))
    }

    pub fn involute(&self) -> Self {
        PairingValue::from_rational_function(&self.to_rational_function().involute())
    }
}

impl fmt::Debug for PairingValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[({}) / ({})]", self.num.to_string_in("t"), self.den.to_string_in("t"))
    }
}

impl fmt::Display for PairingValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Rational matrix as constant Laurent entries.
pub fn constant_matrix(rows: &[Vec<Rational>]) -> LaurentMatrix {
    LaurentMatrix {
        rows: rows.iter().map(|r| r.iter().map(|c| LaurentPoly::constant(c.clone())).collect()).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    fn trefoil() -> HermitianLaurentMatrix {
        HermitianLaurentMatrix::from_strs(&[&["-1", "-t"], &["-t^-1", "t^-1 - 2 + t"]]).unwrap()
    }

    #[test]
    fn det_and_charpoly() {
        let a = trefoil();
        assert_eq!(a.det(), l("-t^-1 + 1 - t"));
        let c = a.charpoly();
        assert_eq!(c.len(), 3);
        assert_eq!(c[0], a.det());
        assert_eq!(c[1], l("-t^-1 + 3 - t"));
        assert_eq!(c[2], LaurentPoly::one());
    }

    #[test]
    fn pairing_examples() {
        let d = l("t^-1 - 1 + t");
        let a = HermitianLaurentMatrix::diagonal(&[d.clone()]).unwrap();
        let v = a.pair(&[LaurentPoly::one()], &[LaurentPoly::one()]).unwrap();
        let expect = PairingValue::from_rational_function(&RationalFunction::new(LaurentPoly::one(), d.clone()));
        assert_eq!(v, expect);
        assert_eq!(v.den(), &Poly::from_i64s(&[1, -1, 1]));
        assert!(a.pair(&[d.clone()], &[LaurentPoly::one()]).unwrap().is_zero());
        // trefoil: (A^{-1})_{11} = (t + 1/t - 2) / det
        let t = trefoil();
        let e1 = [LaurentPoly::one(), LaurentPoly::zero()];
        let v = t.pair(&e1, &e1).unwrap();
        let oracle = RationalFunction::new(l("t^-1 - 2 + t"), t.det());
        assert_eq!(v, PairingValue::from_rational_function(&oracle));
        assert_eq!(v.involute(), v);
    }

    #[test]
    fn moves() {
        let d = l("t^-1 - 1 + t");
        let a = HermitianLaurentMatrix::diagonal(&[LaurentPoly::one(), d.clone()]).unwrap();
        let p = LaurentMatrix::from_strs(&[&["1", "t"], &["0", "1"]]).unwrap();
        let b = a.move_congruence(&p).unwrap();
        assert_eq!(b.det(), a.det());
        let bad = LaurentMatrix::from_strs(&[&["1", "t"], &["0", "2 + t"]]).unwrap();
        assert_eq!(a.move_congruence(&bad).unwrap_err(), Error::NotUnimodular);
        let m1 = HermitianLaurentMatrix::diagonal(&[l("-1")]).unwrap();
        let s = a.move_stabilize(&m1).unwrap();
        assert_eq!(s.size(), 3);
        assert_eq!(s.move_destabilize(2, 1).unwrap(), a);
        assert!(matches!(s.move_destabilize(1, 1), Err(Error::NotUnitBlock(_))));
        let nd = HermitianLaurentMatrix::diagonal(&[d]).unwrap();
        assert!(matches!(a.move_stabilize(&nd), Err(Error::NotUnitBlock(_))));
    }

    #[test]
    fn rejects_non_hermitian() {
        assert_eq!(HermitianLaurentMatrix::from_strs(&[&["1", "t"], &["t", "1"]]).unwrap_err(), Error::NotHermitian);
    }
}
