//! The `(-1/2,1,1)` fractional Volterra hierarchy, `L̂ = Λ^{-2} + e^W Λ^{-1}`.
//!
//! `E = e^W` occupies jet slot 0 during the lattice computation, so the same
//! operators as for `L` apply; results are moved to `w`-jets at the end.

use crate::epsops::EpsSeries;
use crate::jetring::{substitute_log_change, Chart, LogChange, LogExtendedPoly};
use crate::lattice::{op_commutator, op_power, op_project, LaurentShiftOp, Part, Shift, Tail};
use crate::report::CheckReport;

use super::constants::{c_negative, c_positive};
use super::flows::{qkdv_flow, single_coefficient};
use super::{expect_equal, FlowIndex, HierarchyError};

fn fvh_lax(order: usize) -> LaurentShiftOp {
    LaurentShiftOp::finite([(Shift::int(-2), EpsSeries::one(order)), (Shift::int(-1), EpsSeries::field(order))], order)
}

/// `∂E/∂T_s` in the jets of `E = e^W`, through `ε^order`.
///
/// `s = -p-1/2` uses `[(L̂^{p+1/2})_⊕, L̂]`; `s = p >= 1` uses `-[(L̂^{-p})_⊖, L̂]`.
pub fn fvh_exp_flow(s: Shift, order: usize) -> Result<EpsSeries, HierarchyError> {
    let l = fvh_lax(order + 1);
    let comm = if s.0 < 0 && s.0 % 2 != 0 {
        let p = (-s.0 - 1) / 2;
        let root = op_power(&l, 2 * p + 1, Tail::Upward, Shift(0))?;
        op_commutator(&op_project(&root, Part::Oplus)?, &l)?
    } else if s.0 > 0 && s.0 % 2 == 0 {
        let p = s.0 / 2;
        let inv = op_power(&l, -2 * p, Tail::Upward, Shift::int(0))?;
        op_commutator(&l, &op_project(&inv, Part::Ominus)?)?
    } else {
        return Err(HierarchyError::InvalidIndex(FlowIndex::Fvh(s).to_string()));
    };
    let eps_flow = single_coefficient(&comm, Shift::int(-1))?;
    Ok(eps_flow.div_eps()?.truncate(order))
}

/// `∂W/∂T_s` in `w`-jets (chart `W`: slot 0 is `exp(w)`).
pub fn fvh_flow(s: Shift, order: usize) -> Result<EpsSeries, HierarchyError> {
    let ef = fvh_exp_flow(s, order)?;
    let e_inv = EpsSeries::field(order).invert()?;
    let wf = &ef * &e_inv;
    let coeffs = wf
        .coeffs()
        .iter()
        .map(|c| {
            let moved = substitute_log_change(&LogExtendedPoly::from_poly(c.clone()), LogChange::VToW)?;
            Ok(moved.rational)
        })
        .collect::<Result<Vec<_>, HierarchyError>>()?;
    Ok(EpsSeries::from_coeffs(coeffs))
}

/// Under `U = e^W`, `ε -> -ε`, `T_{-p-1/2} = -c_{1,p} t^{1,p}` and
/// `T_p = c_{0,-p} t^{0,-p}`, the FVH flow of `E` is the lattice flow of `U`.
pub fn fvh_correspondence(s: Shift, order: usize) -> Result<CheckReport, HierarchyError> {
    let (idx, c) = if s.0 < 0 && s.0 % 2 != 0 {
        let p = ((-s.0 - 1) / 2) as u32;
        (FlowIndex::T1(p), -c_positive(p))
    } else if s.0 > 0 && s.0 % 2 == 0 {
        let p = (s.0 / 2) as u32;
        (FlowIndex::T0Neg(p), c_negative(p))
    } else {
        return Err(HierarchyError::InvalidIndex(FlowIndex::Fvh(s).to_string()));
    };
    let lhs = qkdv_flow(idx, order)?;
    let rhs = fvh_exp_flow(s, order)?.flip_eps().scale(&c);
    let name = format!("FVH T_{s} vs {idx}");
    expect_equal(&name, &lhs, &rhs, Chart::U)?;
    Ok(CheckReport::new(name, format!("d/d{idx} = {c} (d/dT_{s})|eps->-eps through eps^{order}")))
}
