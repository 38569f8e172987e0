//! Elementary and minimal diagonal forms.

use serde::{Deserialize, Serialize};

use super::factor::{gcd_free_basis, has_off_roots, DiagonalEntry, DiagonalForm, ElementaryBase, ElementaryFactor};
use super::glue::glue_entries_with_sign;
use crate::laurent::Poly;
use crate::{Error, Result};

fn check_same(before: &DiagonalForm, after: &DiagonalForm, what: &str) -> Result<()> {
    if let Some(d) = before.profile()?.first_difference(&after.profile()?) {
        return Err(Error::Internal(format!("{what} changed the profile: {d}")));
    }
    if before.eta()? != after.eta()? {
        return Err(Error::Internal(format!("{what} changed the nullity")));
    }
    Ok(())
}

/// Rewrite off-circle factors over a common gcd-free basis and merge
/// factors with the same base.
fn refine(form: &DiagonalForm) -> DiagonalForm {
    let defs: Vec<Poly> = form
        .entries
        .iter()
        .flat_map(|e| e.factors.iter())
        .filter_map(|f| match &f.base {
            ElementaryBase::Off(p) => Some(p.clone()),
            _ => None,
        })
        .collect();
    let atoms: Vec<Poly> = gcd_free_basis(&defs).into_iter().filter(has_off_roots).collect();
    let entries = form
        .entries
        .iter()
        .map(|e| {
            let mut out: Vec<ElementaryFactor> = Vec::new();
            let mut push = |f: ElementaryFactor| match out.iter_mut().find(|g| g.same_base(&f)) {
                Some(g) => g.mult += f.mult,
                None => out.push(f),
            };
            for f in &e.factors {
                match &f.base {
                    ElementaryBase::Off(p) => {
                        for a in atoms.iter().filter(|a| p.rem(a).is_zero()) {
                            push(ElementaryFactor::off(a.clone(), f.mult));
                        }
                    }
                    ElementaryBase::Circle(_) => push(f.clone()),
                }
            }
            DiagonalEntry::new(e.sign, out)
        })
        .collect();
    DiagonalForm::new(entries)
}

/// Split every entry into entries with a single elementary factor.
pub fn elementary_diagonal(form: &DiagonalForm) -> Result<DiagonalForm> {
    let refined = refine(form);
    let mut out = Vec::new();
    for e in &refined.entries {
        let mut rest = e.clone();
        while rest.factors.len() > 1 {
            let pos = rest.factors.iter().position(|f| !f.is_circle()).unwrap_or_else(|| {
                // circle factor with the largest abscissa, i.e. smallest angle
                let mut best = 0;
                for (k, f) in rest.factors.iter().enumerate() {
                    if f.root().unwrap().cmp_root(rest.factors[best].root().unwrap()).is_gt() {
                        best = k;
                    }
                }
                best
            });
            let f = rest.factors.remove(pos);
            let (a, b, eps) = if f.is_circle() {
                let flip = if f.mult % 2 == 1 { -1 } else { 1 };
                let a = DiagonalEntry::new(rest.sign, vec![f]);
                let b = DiagonalEntry::new(rest.sign * flip, rest.factors.clone());
                (a, b, rest.sign * flip)
            } else {
                (DiagonalEntry::new(1, vec![f]), rest.clone(), 1)
            };
            // a and b must glue back to the original entry
            glue_entries_with_sign(&a, &b, eps)?;
            out.push(a);
            rest = b;
        }
        if !rest.factors.is_empty() {
            out.push(rest);
        }
    }
    let result = DiagonalForm::new(out);
    check_same(form, &result, "elementary splitting")?;
    Ok(result)
}

/// Output of [`minimal_diagonal`].
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MinimalForm {
    pub form: DiagonalForm,
    pub mu: usize,
    pub eta: usize,
    pub size: usize,
    /// `"eta-bound"` when `η >= μ`, otherwise `"mu-bound"`.
    pub reason: String,
}

/// A diagonal form of size `max(μ, η)` with the same profile.
pub fn minimal_diagonal(form: &DiagonalForm) -> Result<MinimalForm> {
    if !form.is_elementary() {
        return Err(Error::NotElementary("an entry has more than one elementary factor".into()));
    }
    let mu = form.mu()?;
    let eta = form.eta()?;
    let mut circle: Vec<DiagonalEntry> = Vec::new();
    let mut off: Vec<DiagonalEntry> = Vec::new();
    for e in &form.entries {
        match e.factors.first() {
            None => {}
            Some(f) if f.is_circle() => circle.push(e.clone()),
            // the sign of an off-circle entry does not change the form
            Some(f) => off.push(DiagonalEntry::new(1, vec![f.clone()])),
        }
    }
    circle.sort_by(|a, b| {
        let ra = a.factors[0].root().unwrap();
        let rb = b.factors[0].root().unwrap();
        rb.cmp_root(ra)
    });
    let mut classes: Vec<DiagonalEntry> = Vec::new();
    for e in circle {
        let xi = e.factors[0].root().unwrap().clone();
        match classes.iter().position(|c| c.sign_at_root(&xi) == e.sign) {
            Some(a) => classes[a] = glue_entries_with_sign(&classes[a], &e, e.sign)?,
            None => classes.push(e),
        }
    }
    let mut packs: Vec<DiagonalEntry> = Vec::new();
    for e in off {
        let f = &e.factors[0];
        match packs.iter().position(|p| p.factors.iter().all(|g| !g.shares_root(f))) {
            Some(k) => packs[k] = glue_entries_with_sign(&packs[k], &e, 1)?,
            None => packs.push(e),
        }
    }
    let mut entries = Vec::new();
    for k in 0..classes.len().max(packs.len()) {
        entries.push(match (classes.get(k), packs.get(k)) {
            (Some(f), Some(g)) => glue_entries_with_sign(f, g, 1)?,
            (Some(f), None) => f.clone(),
            (None, Some(g)) => g.clone(),
            (None, None) => unreachable!(),
        });
    }
    let result = DiagonalForm::new(entries);
    check_same(form, &result, "minimal diagonal")?;
    let bound = mu.max(eta);
    if result.size() != bound {
        return Err(Error::SizeNotAchievable { achieved: result.size(), bound });
    }
    let reason = if eta >= mu { "eta-bound" } else { "mu-bound" };
    Ok(MinimalForm { size: result.size(), form: result, mu, eta, reason: reason.into() })
}
