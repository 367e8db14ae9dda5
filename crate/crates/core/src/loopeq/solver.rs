//! Genus-by-genus solution of a loop equation.
//!
//! At genus `g` the unknowns are `H_{g;s} = ∂F_g/∂v^{(s)}`, `0 <= s <= 3g-2`.
//! `A_s` has poles up to `P^{s+1}`, so the `P^k` coefficients form a
//! triangular system: the equation at `P^{s+1}` fixes `H_{g;s}` once the
//! higher ones are known. All remaining coefficients are then checked by
//! recomputing the full residual.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::jetring::text::{log_poly_text, poly_text};
use crate::jetring::{
    int, integrate_in, log_poly_from_json, log_poly_to_json, poly_from_json, poly_to_json, substitute_log_change,
    Chart, DiffPoly, JetError, LogChange, LogExtendedPoly,
};

use super::models::{Kernels, LoopModel};
use super::ring::{Basis, LambdaRingElem};
use super::LoopError;

/// Gradients (and, once integrated, the free energy) of one genus.
///
/// Everything is stored in the jets of `v` as the coefficient of
/// `ε^{2g-2}`. For the FVH model that coefficient is `(-2)^{g-1} H_g`, since
/// its own expansion parameter satisfies `ϵ² = -2ε²`;
/// [`GenusSolution::reported_free_energy`] undoes both changes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenusSolution {
    pub model: LoopModel,
    pub genus: u32,
    pub gradients: Vec<DiffPoly>,
    pub free_energy: Option<LogExtendedPoly>,
}

impl GenusSolution {
    /// `F_g` in the `v` chart, or `H_g` in the `w` chart for the FVH model.
    pub fn reported_free_energy(&self) -> Result<(LogExtendedPoly, Chart), LoopError> {
        let f = self.free_energy.as_ref().ok_or(LoopError::NotIntegrated(self.genus))?;
        match self.model {
            LoopModel::GfmV4 => Ok((f.clone(), Chart::V)),
            LoopModel::Fvh => {
                let w = substitute_log_change(f, LogChange::VToW)?;
                let scale = int(-2).pow(self.genus as i32 - 1).recip();
                Ok((w.scale(&scale), Chart::W))
            }
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "model": self.model,
            "genus": self.genus,
            "gradients": self.gradients.iter().map(poly_to_json).collect::<Vec<_>>(),
            "free_energy": self.free_energy.as_ref().map(log_poly_to_json),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self, LoopError> {
        let bad = |what: &str| LoopError::Json(what.to_string());
        let model: LoopModel = serde_json::from_value(v["model"].clone()).map_err(|e| bad(&e.to_string()))?;
        let genus = v["genus"].as_u64().ok_or_else(|| bad("genus"))? as u32;
        let gradients = v["gradients"]
            .as_array()
            .ok_or_else(|| bad("gradients"))?
            .iter()
            .map(poly_from_json)
            .collect::<Result<Vec<_>, JetError>>()?;
        let free_energy = match &v["free_energy"] {
            Value::Null => None,
            f => Some(log_poly_from_json(f)?),
        };
        Ok(GenusSolution { model, genus, gradients, free_energy })
    }

    /// Human-readable summary: gradients and free energy.
    pub fn to_text(&self) -> String {
        let mut out = format!("model {} genus {}\n", self.model, self.genus);
        for (s, h) in self.gradients.iter().enumerate() {
            out.push_str(&format!("  H[{s}] = {}\n", poly_text(h, Chart::V)));
        }
        if let Ok((f, chart)) = self.reported_free_energy() {
            let name = match self.model {
                LoopModel::GfmV4 => "F",
                LoopModel::Fvh => "H",
            };
            out.push_str(&format!("  {name}_{} = {}\n", self.genus, log_poly_text(&f, chart)));
        }
        out
    }
}

/// Gradient `s` of the genus with index `i` (genus `i+1`), zero if absent.
fn grad(lower: &[Vec<DiffPoly>], genus: u32, s: usize) -> DiffPoly {
    lower.get(genus as usize - 1).and_then(|h| h.get(s)).cloned().unwrap_or_else(DiffPoly::zero)
}

/// Everything in the genus-`g` equation that does not involve `H_g`.
fn known_side(kernels: &mut Kernels, lower: &[Vec<DiffPoly>], g: u32) -> LambdaRingElem {
    if g == 1 {
        return kernels.source();
    }
    let width = lower.iter().map(Vec::len).max().unwrap_or(0);
    let q = kernels.quad_scale();
    let mut out = LambdaRingElem::zero();
    for k in 0..width {
        for l in 0..width {
            let mut c = grad(lower, g - 1, l).partial(k);
            for g1 in 1..g {
                let a = grad(lower, g1, k);
                if a.is_zero() {
                    continue;
                }
                let b = grad(lower, g - g1, l);
                if !b.is_zero() {
                    c += &a * &b;
                }
            }
            if c.is_zero() {
                continue;
            }
            let bk = kernels.quad(k).clone();
            let bl = kernels.quad(l).clone();
            out = &out + &(&bk * &bl).mul_poly(&c.scale(&q));
        }
    }
    for k in 0..width {
        let h = grad(lower, g - 1, k);
        if !h.is_zero() {
            out = &out + &kernels.lin(k).mul_poly(&h);
        }
    }
    out
}

fn lhs_side(kernels: &mut Kernels, h: &[DiffPoly]) -> LambdaRingElem {
    let mut out = LambdaRingElem::zero();
    for (s, hs) in h.iter().enumerate() {
        if !hs.is_zero() {
            out = &out + &kernels.lhs(s).mul_poly(hs);
        }
    }
    out
}

/// LHS - RHS of the genus-`g` equation.
fn genus_residual(kernels: &mut Kernels, lower: &[Vec<DiffPoly>], g: u32, h: &[DiffPoly]) -> LambdaRingElem {
    let rhs = known_side(kernels, lower, g);
    &lhs_side(kernels, h) - &rhs
}

/// LHS - RHS collected by `(ε-order, basis label)` for genera `1..=through`,
/// with missing gradients read as zero.
pub fn build_residual(
    model: LoopModel,
    solutions: &[GenusSolution],
    through: u32,
) -> BTreeMap<(usize, Basis), DiffPoly> {
    let mut kernels = Kernels::new(model);
    let all: Vec<Vec<DiffPoly>> = (1..=through)
        .map(|g| solutions.iter().find(|s| s.genus == g).map(|s| s.gradients.clone()).unwrap_or_default())
        .collect();
    let mut out = BTreeMap::new();
    for g in 1..=through {
        let r = genus_residual(&mut kernels, &all[..g as usize - 1], g, &all[g as usize - 1]);
        for (b, c) in r.terms() {
            out.insert((2 * g as usize - 2, *b), c.clone());
        }
    }
    out
}

/// Solves genus `g`, given the gradients of genera `1..g` in `lower`.
pub fn solve_genus(kernels: &mut Kernels, lower: &[GenusSolution], g: u32) -> Result<GenusSolution, LoopError> {
    if g == 0 {
        return Err(LoopError::MissingGenus(0));
    }
    for need in 1..g {
        if !lower.iter().any(|s| s.genus == need && s.model == kernels.model()) {
            return Err(LoopError::MissingGenus(need));
        }
    }
    let lower_grads: Vec<Vec<DiffPoly>> = (1..g)
        .map(|need| lower.iter().find(|s| s.genus == need).map(|s| s.gradients.clone()).unwrap_or_default())
        .collect();
    let n = 3 * g as usize - 2;
    let rhs = known_side(kernels, &lower_grads, g);
    let mut h = vec![DiffPoly::zero(); n + 1];
    for s in (0..=n).rev() {
        let pole = Basis::P(s as u32 + 1);
        let mut known = rhs.coeff(pole);
        for (t, ht) in h.iter().enumerate().skip(s + 1) {
            if !ht.is_zero() {
                known -= &kernels.lhs(t).coeff(pole) * ht;
            }
        }
        let pivot = kernels.lhs(s).coeff(pole);
        let (m, c) = pivot.as_single_term().ok_or_else(|| LoopError::InconsistentSystem {
            genus: g,
            detail: format!("pivot at {pole} is not a monomial: {}", poly_text(&pivot, Chart::V)),
        })?;
        h[s] = known.div_monomial(m, c).map_err(|e| LoopError::RingEscape { genus: g, s, detail: e.to_string() })?;
    }
    for (s, hs) in h.iter().enumerate() {
        if let Some(ord) = hs.max_order() {
            if ord + s + 1 > 3 * g as usize {
                return Err(LoopError::RingEscape {
                    genus: g,
                    s,
                    detail: format!("depends on v^({ord}), above the bound {}", 3 * g as usize - s - 1),
                });
            }
        }
    }
    let residual = &lhs_side(kernels, &h) - &rhs;
    if let Some((b, c)) = residual.terms().next() {
        return Err(LoopError::InconsistentSystem {
            genus: g,
            detail: format!("residual at {b}: {}", poly_text(c, Chart::V)),
        });
    }
    Ok(GenusSolution { model: kernels.model(), genus: g, gradients: h, free_energy: None })
}

/// Checks `∂H_r/∂v^{(s)} = ∂H_s/∂v^{(r)}` for all pairs.
pub fn compatibility_check(sol: &GenusSolution) -> Result<(), LoopError> {
    let h = &sol.gradients;
    for r in 0..h.len() {
        for s in r + 1..h.len() {
            let diff = &h[r].partial(s) - &h[s].partial(r);
            if !diff.is_zero() {
                return Err(LoopError::CompatibilityFailure { r, s, difference: poly_text(&diff, Chart::V) });
            }
        }
    }
    Ok(())
}

/// Reconstructs `F_g` from its gradients, with zero additive constant.
///
/// `F` is built from the top jet down: at step `s` the part of `H_s` not yet
/// accounted for depends only on `v, ..., v^{(s)}` and is integrated in
/// `v^{(s)}`.
pub fn integrate_genus(sol: &GenusSolution) -> Result<GenusSolution, LoopError> {
    compatibility_check(sol)?;
    let h = &sol.gradients;
    let mut f = LogExtendedPoly::zero();
    for s in (0..h.len()).rev() {
        let rest = &h[s] - &f.partial(s);
        if rest.is_zero() {
            continue;
        }
        if rest.max_order().is_some_and(|o| o > s) {
            return Err(LoopError::CompatibilityFailure {
                r: s,
                s: rest.max_order().unwrap_or(s),
                difference: poly_text(&rest, Chart::V),
            });
        }
        f = &f + &integrate_in(&rest, s)?;
    }
    for (s, hs) in h.iter().enumerate() {
        let diff = &f.partial(s) - hs;
        if !diff.is_zero() {
            return Err(LoopError::InconsistentSystem {
                genus: sol.genus,
                detail: format!("reconstructed free energy misses gradient {s}: {}", poly_text(&diff, Chart::V)),
            });
        }
    }
    Ok(GenusSolution { free_energy: Some(f), ..sol.clone() })
}

/// Solves and integrates genera `1..=g_max`.
pub fn solve_through(model: LoopModel, g_max: u32) -> Result<Vec<GenusSolution>, LoopError> {
    let mut kernels = Kernels::new(model);
    let mut out: Vec<GenusSolution> = Vec::new();
    for g in 1..=g_max {
        let sol = solve_genus(&mut kernels, &out, g)?;
        out.push(integrate_genus(&sol)?);
    }
    Ok(out)
}
