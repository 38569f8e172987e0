//! Diagonalization of the linking form presented by a hermitian matrix.
//!
//! The cokernel of `A` splits by the Smith form into cyclic summands
//! `Λ/d_k`. For every factor `c` of a gcd-free basis of the `d_k` the
//! `c`-primary part is orthogonalized by Gram-Schmidt over `Q[t]/c^L`,
//! splitting `c` whenever a hermitian value turns out to be a zero divisor.
//! Each orthogonal piece `(Λ/c^l, y/c^l)` then becomes one diagonal entry per
//! real factor of `c`.

use num_traits::Zero;

use super::factor::{gcd_free_basis, has_off_roots, multiplicity, DiagonalEntry, DiagonalForm, ElementaryFactor};
use crate::hermat::{pair_with_inverse, smith_form_laurent, HermitianLaurentMatrix};
use crate::invariants::{eta, profile};
use crate::laurent::{int, LaurentPoly, Poly, RationalFunction};
use crate::realalg::circle_roots_of_lift;
use crate::{Error, Result};

/// An orthogonal summand `Λ/c^l` with generator value `y / c^l`.
#[derive(Clone, Debug)]
pub struct Piece {
    pub c: Poly,
    pub l: usize,
    pub y: Poly,
}

enum Outcome {
    Done(Vec<Piece>),
    Split(Poly),
}

struct Gen {
    coef: Vec<Poly>,
    order: usize,
}

/// Arithmetic in `Q[t]/c^L` with the involution `t -> 1/t`.
struct Ring {
    c: Poly,
    big_l: usize,
    modulus: Poly,
    tinv: Poly,
    orders: Vec<usize>,
    gram: Vec<Vec<Poly>>,
}

impl Ring {
    fn reduce(&self, f: &Poly) -> Poly {
        f.rem(&self.modulus)
    }

    /// `f(1/t)` modulo `c^L`.
    fn bar(&self, f: &Poly) -> Poly {
        let mut acc = Poly::zero();
        for a in f.coeffs().iter().rev() {
            acc = self.reduce(&(&(&acc * &self.tinv) + &Poly::constant(a.clone())));
        }
        acc
    }

    /// Numerator of `λ(u, v)` over `c^L`.
    fn pair(&self, u: &[Poly], v: &[Poly]) -> Poly {
        let mut acc = Poly::zero();
        for (i, ui) in u.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            let bu = self.bar(ui);
            for (j, vj) in v.iter().enumerate() {
                if vj.is_zero() || self.gram[i][j].is_zero() {
                    continue;
                }
                acc = self.reduce(&(&acc + &(&(&bu * vj) * &self.gram[i][j])));
            }
        }
        acc
    }

    /// Numerator of `λ(u, v)` over `c^l`.
    fn pair_at(&self, u: &[Poly], v: &[Poly], l: usize) -> Result<Poly> {
        let x = self.pair(u, v);
        let q = x
            .div_exact(&self.c.pow((self.big_l - l) as u32))
            .ok_or_else(|| Error::Internal("pairing value has the wrong order".into()))?;
        Ok(q.rem(&self.c.pow(l as u32)))
    }

    fn reduce_vec(&self, v: &[Poly]) -> Vec<Poly> {
        v.iter().zip(&self.orders).map(|(x, &e)| x.rem(&self.c.pow(e as u32))).collect()
    }
}

/// Unit, zero, or a proper self-reciprocal factor of `c` to split along.
enum Test {
    Unit,
    Zero,
    Split(Poly),
}

fn test_value(y: &Poly, c: &Poly) -> Result<Test> {
    let r = y.rem(c);
    if r.is_zero() {
        return Ok(Test::Zero);
    }
    let g = r.gcd(c);
    if g.deg() == 0 {
        return Ok(Test::Unit);
    }
    // close up under t -> 1/t
    let g2 = (&g * &g.reverse()).gcd(c);
    if g2.deg() == c.deg() {
        return Err(Error::Internal("hermitian value with a non-reciprocal zero set".into()));
    }
    Ok(Test::Split(g2))
}

/// Orthogonal pieces of the `c`-primary part.
fn process_atom(
    c: &Poly,
    inv: &[Vec<RationalFunction>],
    gens: &[Vec<LaurentPoly>],
    orders: &[Poly],
) -> Result<Outcome> {
    let es: Vec<usize> = orders.iter().map(|d| multiplicity(d, c)).collect();
    let big_l = es.iter().copied().max().unwrap_or(0);
    if big_l == 0 {
        return Ok(Outcome::Done(Vec::new()));
    }
    let idx: Vec<usize> = (0..es.len()).filter(|&k| es[k] > 0).collect();
    let h: Vec<Vec<LaurentPoly>> = idx
        .iter()
        .map(|&k| {
            let cof = LaurentPoly::from_poly(&orders[k].div_exact(&c.pow(es[k] as u32)).unwrap(), 0);
            gens[k].iter().map(|g| g * &cof).collect()
        })
        .collect();
    let modulus = c.pow(big_l as u32);
    let mut gram = vec![vec![Poly::zero(); h.len()]; h.len()];
    for i in 0..h.len() {
        for j in 0..h.len() {
            let pv = pair_with_inverse(inv, &h[i], &h[j])?;
            let q = modulus
                .div_exact(pv.den())
                .ok_or_else(|| Error::Internal("primary generator pairs outside its primary part".into()))?;
            gram[i][j] = (pv.num() * &q).rem(&modulus);
        }
    }
    let tinv = Poly::x().inverse_mod(&modulus).expect("t is a unit");
    let ring =
        Ring { c: c.clone(), big_l, modulus, tinv, orders: idx.iter().map(|&k| es[k]).collect(), gram };
    let mut work: Vec<Gen> = (0..h.len())
        .map(|i| Gen {
            coef: (0..h.len()).map(|j| if i == j { Poly::one() } else { Poly::zero() }).collect(),
            order: ring.orders[i],
        })
        .collect();
    let mut pieces = Vec::new();
    while !work.is_empty() {
        let l = work.iter().map(|g| g.order).max().unwrap();
        let top: Vec<usize> = (0..work.len()).filter(|&i| work[i].order == l).collect();
        let mut chosen = None;
        for &i in &top {
            let y = ring.pair_at(&work[i].coef, &work[i].coef, l)?;
            match test_value(&y, c)? {
                Test::Unit => {
                    chosen = Some((i, y));
                    break;
                }
                Test::Split(g) => return Ok(Outcome::Split(g)),
                Test::Zero => {}
            }
        }
        if chosen.is_none() {
            'search: for &i in &top {
                for &j in &top {
                    if i == j {
                        continue;
                    }
                    for a in [Poly::one(), Poly::x()] {
                        let w: Vec<Poly> =
                            work[i].coef.iter().zip(&work[j].coef).map(|(x, y)| x + &(&a * y)).collect();
                        let w = ring.reduce_vec(&w);
                        let y = ring.pair_at(&w, &w, l)?;
                        match test_value(&y, c)? {
                            Test::Unit => {
                                work[i].coef = w;
                                chosen = Some((i, y));
                                break 'search;
                            }
                            Test::Split(g) => return Ok(Outcome::Split(g)),
                            Test::Zero => {}
                        }
                    }
                }
            }
        }
        let Some((i, y)) = chosen else {
            return Err(Error::Internal("no anisotropic vector in the top layer".into()));
        };
        let cl = c.pow(l as u32);
        let yinv = y.inverse_mod(&cl).expect("unit modulo c");
        let v = work.remove(i);
        for g in work.iter_mut() {
            let z = ring.pair_at(&v.coef, &g.coef, l)?;
            let s = (&z * &yinv).rem(&cl);
            if s.is_zero() {
                continue;
            }
            let w: Vec<Poly> = g.coef.iter().zip(&v.coef).map(|(x, y)| x - &(&s * y)).collect();
            g.coef = ring.reduce_vec(&w);
        }
        pieces.push(Piece { c: c.clone(), l, y });
    }
    Ok(Outcome::Done(pieces))
}

/// Orthogonal cyclic pieces of the linking form of `A`.
pub fn orthogonal_pieces(a: &HermitianLaurentMatrix) -> Result<Vec<Piece>> {
    let n = a.size();
    if n == 0 {
        return Ok(Vec::new());
    }
    let det = a.det();
    let q = det.to_symmetric()?;
    if q.is_zero() {
        return Err(Error::SingularMatrix);
    }
    if q.eval(&int(2)).is_zero() || q.eval(&int(-2)).is_zero() {
        return Err(Error::DegenerateAtUnitPoints);
    }
    let inv = a.matrix().inverse()?;
    let snf = smith_form_laurent(a.matrix());
    let mut gens = Vec::new();
    let mut orders = Vec::new();
    for (k, d) in snf.diagonal.iter().enumerate() {
        let d = d.strip_x();
        if d.deg() == 0 {
            continue;
        }
        gens.push(snf.left_inv.iter().map(|row| LaurentPoly::from_poly(&row[k], 0)).collect::<Vec<_>>());
        orders.push(d.monic());
    }
    let yun: Vec<Poly> =
        orders.iter().flat_map(|d| d.squarefree_decomposition().into_iter().map(|(f, _)| f)).collect();
    let mut atoms = gcd_free_basis(&yun);
    let mut pieces = Vec::new();
    while let Some(c) = atoms.pop() {
        match process_atom(&c, &inv, &gens, &orders)? {
            Outcome::Done(p) => pieces.extend(p),
            Outcome::Split(g) => {
                let rest = c.div_exact(&g).unwrap();
                atoms.push(g.monic());
                atoms.push(rest.monic());
            }
        }
    }
    pieces.sort_by(|a, b| (a.c.deg(), a.l).cmp(&(b.c.deg(), b.l)));
    Ok(pieces)
}

/// Diagonal entries over the reals for one piece.
pub fn piece_entries(p: &Piece) -> Result<Vec<DiagonalEntry>> {
    let d = p.c.deg();
    if d % 2 != 0 {
        return Err(Error::Internal("odd degree primary factor".into()));
    }
    let half = d / 2;
    let sym = LaurentPoly::from_poly(&p.c, -(half as i64));
    let chat = sym.to_symmetric().map_err(|_| Error::Internal("primary factor is not reciprocal".into()))?;
    // hermitian representative of y t^{-dl/2} modulo c
    let tinv_c = Poly::x().inverse_mod(&p.c).expect("t is a unit");
    let r = (&p.y.rem(&p.c) * &tinv_c.pow((half * p.l) as u32)).rem(&p.c);
    let qy = LaurentPoly::from_poly(&r, 0).symmetrize().to_symmetric()?;
    let dchat = chat.derivative();
    let l = p.l as u32;
    let roots = circle_roots_of_lift(&chat);
    let mut eps = Vec::new();
    for r in &roots {
        let sy = r.abscissa.sign_at(&qy);
        if sy == 0 {
            return Err(Error::Internal("piece value vanishes at a root".into()));
        }
        let sd = r.abscissa.sign_at(&dchat);
        eps.push(if l % 2 == 1 { sy * sd } else { sy });
    }
    let circle: Vec<ElementaryFactor> =
        roots.iter().map(|r| ElementaryFactor::circle(r.abscissa.clone(), l)).collect();
    let off = has_off_roots(&chat).then(|| ElementaryFactor::off(chat.clone(), l));
    // one entry if a single sign reproduces every local sign
    let local = |j: usize, sigma: i8| -> i8 {
        circle.iter().enumerate().filter(|&(k, _)| k != j).fold(sigma, |acc, (_, f)| {
            acc * f.sign_at_root(&roots[j].abscissa)
        })
    };
    let single = if circle.is_empty() {
        Some(1)
    } else {
        let sigma = local(0, 1) * eps[0];
        (0..circle.len()).all(|j| local(j, sigma) == eps[j]).then_some(sigma)
    };
    if let Some(sigma) = single {
        let mut factors = circle;
        factors.extend(off);
        return Ok(vec![DiagonalEntry::new(sigma, factors)]);
    }
    let mut out: Vec<DiagonalEntry> =
        circle.into_iter().zip(eps).map(|(f, e)| DiagonalEntry::new(e, vec![f])).collect();
    if let Some(f) = off {
        out.push(DiagonalEntry::new(1, vec![f]));
    }
    Ok(out)
}

/// A diagonal form with the same signature profile and nullity as `A`.
pub fn diagonalize(a: &HermitianLaurentMatrix) -> Result<DiagonalForm> {
    let mut entries = Vec::new();
    for p in orthogonal_pieces(a)? {
        entries.extend(piece_entries(&p)?);
    }
    let form = DiagonalForm::new(entries);
    if a.size() > 0 {
        if let Some(d) = profile(a)?.first_difference(&form.profile()?) {
            return Err(Error::Internal(format!("diagonal form has a different profile: {d}")));
        }
        if eta(a)? != form.eta()? {
            return Err(Error::Internal("diagonal form has a different nullity".into()));
        }
    }
    Ok(form)
}
