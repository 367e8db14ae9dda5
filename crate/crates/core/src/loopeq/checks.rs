//! Cross-checks on solved loop equations: reference data, the two
//! linearization identities, the GFM/FVH correspondence, the canonical form
//! of genus one and the quasi-Miura map to the lattice hierarchy.

use crate::combinatorics::factorial;
use crate::epsops::EpsSeries;
use crate::hierarchy::{principal_flow, principal_index, qkdv_flow, FlowIndex};
use crate::jetring::text::{log_poly_text, poly_text};
use crate::jetring::{
    int, rat, substitute_log_change, Chart, DiffPoly, JetMonomial, LogChange, LogExtendedPoly, Rational,
};
use crate::report::CheckReport;

use super::fixtures::reference;
use super::models::LoopModel;
use super::solver::GenusSolution;
use super::LoopError;

fn mismatch(check: String, diff: &LogExtendedPoly, chart: Chart) -> LoopError {
    LoopError::Mismatch { check, difference: log_poly_text(diff, chart) }
}

/// The solver's free energy equals the reference one, modulo a constant.
pub fn matches_reference(sol: &GenusSolution) -> Result<CheckReport, LoopError> {
    let (ours, chart) = sol.reported_free_energy()?;
    let name = match sol.model {
        LoopModel::GfmV4 => "F",
        LoopModel::Fvh => "H",
    };
    let expected = reference(sol.model, sol.genus).ok_or(LoopError::MissingGenus(sol.genus))??;
    let diff = (&ours - &expected).without_constant();
    if !diff.is_zero() {
        return Err(mismatch(format!("{name}_{} vs reference", sol.genus), &diff, chart));
    }
    let terms = ours.rational.len() + ours.logs.iter().filter(|c| **c != int(0)).count();
    Ok(CheckReport::new(
        format!("{} {name}_{}", sol.model, sol.genus),
        format!("matches reference exactly ({terms} terms)"),
    ))
}

/// `sum_s (s+1) dx^s(1/v) H_{g;s} = 0` and `sum_s v^{(s)} H_{g;s} = δ_{g,1}/8`.
pub fn verify_linearization_identities(sols: &[GenusSolution]) -> Result<CheckReport, LoopError> {
    let inv_v = DiffPoly::term(int(1), JetMonomial::var_pow(0, -1)?);
    for sol in sols {
        let mut first = DiffPoly::zero();
        let mut second = DiffPoly::zero();
        let mut d = inv_v.clone();
        for (s, h) in sol.gradients.iter().enumerate() {
            first += (&d * h).scale(&int(s as i64 + 1));
            second += &DiffPoly::var(s) * h;
            d = d.dx();
        }
        if !first.is_zero() {
            return Err(LoopError::Mismatch {
                check: format!("first linearization identity at genus {}", sol.genus),
                difference: poly_text(&first, Chart::V),
            });
        }
        let target = if sol.genus == 1 { DiffPoly::constant(rat(1, 8)) } else { DiffPoly::zero() };
        let diff = &second - &target;
        if !diff.is_zero() {
            return Err(LoopError::Mismatch {
                check: format!("second linearization identity at genus {}", sol.genus),
                difference: poly_text(&diff, Chart::V),
            });
        }
    }
    let top = sols.iter().map(|s| s.genus).max().unwrap_or(0);
    Ok(CheckReport::new("linearization identities", format!("exact for genus 1..={top}")))
}

/// `F_g = (-2)^{g-1} H_g` after `w = log v`, modulo constants.
pub fn compare_f_h(gfm: &[GenusSolution], fvh: &[GenusSolution]) -> Result<CheckReport, LoopError> {
    let mut count = 0;
    for f in gfm {
        let Some(h) = fvh.iter().find(|h| h.genus == f.genus) else {
            return Err(LoopError::MissingGenus(f.genus));
        };
        let (fv, _) = f.reported_free_energy()?;
        let (hw, _) = h.reported_free_energy()?;
        let hv = substitute_log_change(&hw, LogChange::WToV)?.scale(&int(-2).pow(f.genus as i32 - 1));
        let diff = (&fv - &hv).without_constant();
        if !diff.is_zero() {
            return Err(mismatch(format!("F_{g} vs (-2)^{g}-1 H_{g}", g = f.genus), &diff, Chart::V));
        }
        count += 1;
    }
    Ok(CheckReport::new("F_g = (-2)^(g-1) H_g", format!("exact modulo constants for {count} genera")))
}

// log(c v^a v_x^b) up to the constant log c.
fn log_of_monomial(a: i64, b: i64) -> LogExtendedPoly {
    let mut out = LogExtendedPoly::zero();
    out.logs = [int(a), int(b)];
    out
}

/// Genus one from the canonical-coordinate formula
/// `F_1 = log τ_I - (1/24) log J + (1/24) log u_x`, specialized to one
/// dimension: `u = v²`, `J = 1/(2v)` and `τ_I` constant.
pub fn genus1_canonical_check(sol: &GenusSolution) -> Result<CheckReport, LoopError> {
    if sol.model != LoopModel::GfmV4 || sol.genus != 1 {
        return Err(LoopError::MissingGenus(1));
    }
    let (ours, _) = sol.reported_free_energy()?;
    let u_x = log_of_monomial(1, 1);
    let j = log_of_monomial(-1, 0);
    let canonical = &u_x.scale(&rat(1, 24)) - &j.scale(&rat(1, 24));
    let diff = (&ours - &canonical).without_constant();
    if !diff.is_zero() {
        return Err(mismatch("genus one vs canonical formula".into(), &diff, Chart::V));
    }
    Ok(CheckReport::new("genus one canonical form", log_poly_text(&canonical, Chart::V)))
}

fn dx_n(f: &EpsSeries, n: usize) -> EpsSeries {
    let mut out = f.clone();
    for _ in 0..n {
        out = out.dx();
    }
    out
}

/// `U = (Λ-Λ^{-1})/(2ϵ∂_x) (v + ε² ∂_x ∂_{t^{1,0}} ΔF)` as an ε-series,
/// with `ϵ² = -2ε²` and the `t^{1,0}` derivative taken along the principal
/// hierarchy.
pub fn quasimiura_field(sols: &[GenusSolution], order: usize) -> Result<EpsSeries, LoopError> {
    let x = principal_flow(1, 0)?;
    let mut inner = EpsSeries::from_poly(DiffPoly::var(0), order);
    for sol in sols {
        let k = 2 * sol.genus as usize;
        if k > order {
            continue;
        }
        let mut dt = DiffPoly::zero();
        let mut xs = x.clone();
        for h in &sol.gradients {
            dt += h * &xs;
            xs = xs.dx();
        }
        inner = &inner + &EpsSeries::from_poly(dt.dx(), order - k).mul_eps(k);
    }
    let mut u = EpsSeries::zero(order);
    for j in 0..=order / 2 {
        let c = int(-2).pow(j as i32) / Rational::from_integer(factorial(2 * j as u64 + 1));
        u = &u + &dx_n(&inner.truncate(order - 2 * j), 2 * j).mul_eps(2 * j).scale(&c);
    }
    Ok(u)
}

/// Checks that the quasi-Miura image of the principal flow matching `idx`
/// is the lattice flow `idx` evaluated at `U[v]`, through `ε^order`.
pub fn quasimiura_verify(idx: FlowIndex, sols: &[GenusSolution], order: usize) -> Result<CheckReport, LoopError> {
    let top = sols.iter().filter(|s| s.model == LoopModel::GfmV4).map(|s| s.genus).max().unwrap_or(0);
    for g in 1..=top {
        if !sols.iter().any(|s| s.genus == g && s.model == LoopModel::GfmV4) {
            return Err(LoopError::MissingGenus(g));
        }
    }
    // U is exact through ε^{2 top}
    if order > 2 * top as usize {
        return Err(LoopError::MissingGenus(order as u32 / 2));
    }
    let u = quasimiura_field(sols, order)?;
    let (alpha, p) = principal_index(idx)?;
    let x = EpsSeries::from_poly(principal_flow(alpha, p)?, order);
    let lhs = u.frechet_apply(&x);
    let flow = qkdv_flow(idx, order)?.eps_sign_substitute()?;
    let rhs = flow.compose_field(&u)?;
    let diff = &lhs - &rhs;
    if let Some(k) = diff.coeffs().iter().position(|c| !c.is_zero()) {
        return Err(LoopError::Mismatch {
            check: format!("quasi-Miura image of {idx}"),
            difference: format!("eps^{k}: {}", poly_text(diff.coeff(k), Chart::V)),
        });
    }
    Ok(CheckReport::new(format!("quasi-Miura {idx}"), format!("residual vanishes through eps^{order}")))
}
