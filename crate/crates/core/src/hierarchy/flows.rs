//! Positive, negative and logarithmic flows of `L = Λ^2 + UΛ`.

use crate::epsops::{symbol_apply_log, EpsSeries, SymbolOp};
use crate::jetring::{int, rat, Chart, DiffPoly, LogExtendedPoly};
use crate::lattice::{op_commutator, op_power, op_project, LatticeError, LaurentShiftOp, Part, Shift, Tail};
use crate::report::CheckReport;

use super::constants::{c_log, c_negative, c_positive};
use super::poisson::recursion_apply;
use super::{expect_equal, FlowIndex, HierarchyError};

/// `∂U/∂t` through `ε^order`.
///
/// Positive and negative flows come from the commutators
/// `c_{1,p}[(L^{p+1/2})_+, L]` and `c_{0,-p}[(M^p)_-, L]`, computed one
/// ε-order deeper and divided by `ε`. Logarithmic flows start from
/// `∂U/∂t^{0,0} = U_x` and use `p ∂U/∂t^{0,p} = R ∂U/∂t^{0,p-1}`.
pub fn qkdv_flow(idx: FlowIndex, order: usize) -> Result<EpsSeries, HierarchyError> {
    match idx {
        FlowIndex::T1(p) => positive_flow(p, order),
        FlowIndex::T0Neg(p) if p >= 1 => negative_flow(p, order),
        FlowIndex::T0(p) => log_flow(p, order),
        _ => Err(HierarchyError::InvalidIndex(idx.to_string())),
    }
}

/// The only nonzero coefficient of a Lax-type commutator, which must sit at `Λ^at`.
pub(crate) fn single_coefficient(comm: &LaurentShiftOp, at: Shift) -> Result<EpsSeries, HierarchyError> {
    if let Some((q, _)) = comm.terms().find(|(q, c)| **q != at && !c.is_zero()) {
        return Err(LatticeError::Shape(format!("commutator has a term at Λ^{q}")).into());
    }
    Ok(comm.coeff(at)?)
}

fn positive_flow(p: u32, order: usize) -> Result<EpsSeries, HierarchyError> {
    let l = LaurentShiftOp::lax(order + 1);
    let root = op_power(&l, 2 * p as i64 + 1, Tail::Downward, Shift(0))?;
    let comm = op_commutator(&op_project(&root, Part::Plus)?, &l)?;
    let eps_flow = single_coefficient(&comm, Shift::int(1))?;
    Ok(eps_flow.scale(&c_positive(p)).div_eps()?.truncate(order))
}

fn negative_flow(p: u32, order: usize) -> Result<EpsSeries, HierarchyError> {
    let l = LaurentShiftOp::lax(order + 1);
    let mp = op_power(&l, -2 * p as i64, Tail::Downward, Shift::int(0))?;
    let comm = op_commutator(&op_project(&mp, Part::Minus)?, &l)?;
    let eps_flow = single_coefficient(&comm, Shift::int(1))?;
    Ok(eps_flow.scale(&c_negative(p)).div_eps()?.truncate(order))
}

fn log_flow(p: u32, order: usize) -> Result<EpsSeries, HierarchyError> {
    let mut flow = EpsSeries::from_poly(DiffPoly::var(1), order);
    for q in 1..=p {
        flow = recursion_apply(&flow)?.scale(&rat(1, q as i64));
    }
    Ok(flow)
}

/// `c_{0,0} U (1-Λ)/ε f_0` with `f_0 = 2ε d_x/(Λ-1) log U` must equal `U_x`.
pub fn log_flow_closed_form_check(order: usize) -> Result<CheckReport, HierarchyError> {
    let n = order + 1;
    let log_u = LogExtendedPoly::log(0, int(1))?;
    let (head, rest) = symbol_apply_log(&SymbolOp::log_kernel(n), &log_u, n)?;
    let one_minus = SymbolOp::identity(n).sub(&SymbolOp::shift(&int(1), n));
    // (1-Λ) kills the constant part of the log head, leaving a rational series
    let (zero_head, from_head) = symbol_apply_log(&one_minus, &head, n)?;
    debug_assert!(zero_head.is_zero());
    let from_rest = rest.apply_symbol(&one_minus)?;
    let f = (&from_head + &from_rest).div_eps()?;
    let flow = (&f * &EpsSeries::field(f.order())).scale(&c_log(0)).truncate(order);
    expect_equal("f0 closed form", &flow, &EpsSeries::from_poly(DiffPoly::var(1), order), Chart::U)?;
    Ok(CheckReport::new("f0 closed form", format!("c00 U (1-Λ)/eps f0 = Ux through eps^{order}")))
}

/// `[∂_A, ∂_B] U = X_B'[X_A] - X_A'[X_B]` must vanish through `ε^order`.
pub fn check_commutativity(a: FlowIndex, b: FlowIndex, order: usize) -> Result<CheckReport, HierarchyError> {
    let xa = qkdv_flow(a, order)?;
    let xb = qkdv_flow(b, order)?;
    let comm = &xb.frechet_apply(&xa) - &xa.frechet_apply(&xb);
    let name = format!("[d/d{a}, d/d{b}]");
    expect_equal(&name, &comm, &EpsSeries::zero(comm.order()), Chart::U)?;
    Ok(CheckReport::new(name, format!("vanishes through eps^{}", comm.order())))
}
