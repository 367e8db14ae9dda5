//! The Volterra hierarchy `L̃ = Λ + e^{W̃} Λ^{-1}` and its link to the
//! negative flows through `W̃ = -(Λ^{1/2} + Λ^{-1/2}) log U`.

use crate::combinatorics::factorial;
use crate::epsops::{symbol_apply_log, EpsDiffOp, EpsSeries, SymbolOp};
use crate::jetring::{int, rat, substitute_log_change, Chart, LogChange, LogExtendedPoly, Rational};
use crate::lattice::{op_commutator, op_power, op_project, LaurentShiftOp, Part, Shift};
use crate::report::CheckReport;

use super::flows::{qkdv_flow, single_coefficient};
use super::poisson::{difference_symbol, Factor, PoissonOp};
use super::{expect_equal, FlowIndex, HierarchyError};

/// `e^{W̃} = 1/(U^{+1/2} U^{-1/2})` as a series in `U`-jets.
pub fn e_tilde(order: usize) -> Result<EpsSeries, HierarchyError> {
    let u = EpsSeries::field(order);
    Ok((&u.shift(&rat(1, 2)) * &u.shift(&rat(-1, 2))).invert()?)
}

fn half_shift_sum(order: usize) -> EpsDiffOp {
    &EpsDiffOp::shift(&rat(1, 2), order) + &EpsDiffOp::shift(&rat(-1, 2), order)
}

/// Fréchet derivative of the Miura map: `-(Λ^{1/2} + Λ^{-1/2}) ∘ (1/U)`.
pub fn miura_frechet(order: usize) -> Result<EpsDiffOp, HierarchyError> {
    let inv_u = EpsSeries::field(order).invert()?;
    Ok((-&half_shift_sum(order)).compose(&EpsDiffOp::multiplication(&inv_u)))
}

/// `P̃_1 = (1/2ε)((Λ+1) e^{W̃} (Λ+1) - (1+Λ^{-1}) e^{W̃} (1+Λ^{-1}))`,
/// with `e^{W̃}` given as a series.
pub fn volterra_p1(e: &EpsSeries) -> Result<PoissonOp, HierarchyError> {
    let n = e.order();
    let up = SymbolOp::shift(&int(1), n).add(&SymbolOp::identity(n));
    let down = SymbolOp::shift(&int(-1), n).add(&SymbolOp::identity(n));
    let side = |s: &SymbolOp| {
        vec![Factor::InvEps, Factor::Symbol(s.clone()), Factor::Mul(e.clone()), Factor::Symbol(s.clone())]
    };
    PoissonOp::new("P~1", vec![(rat(1, 2), side(&up)), (rat(-1, 2), side(&down))], n.saturating_sub(1))
}

/// `P̃_2 = (2/ε)(Λ - Λ^{-1}) = 2 d_x ∘ (Λ - Λ^{-1})/ξ`.
pub fn volterra_p2(order: usize) -> Result<PoissonOp, HierarchyError> {
    PoissonOp::new("P~2", vec![(int(2), vec![Factor::Dx, Factor::Symbol(difference_symbol(order + 1))])], order)
}

/// `∂W̃/∂T̃_p` from `ε ∂L̃/∂T̃_p = [(L̃^{2p})_+, L̃]` with `e^{W̃} = e`;
/// the result has order `e.order() - 1`.
pub fn volterra_flow_at(p: u32, e: &EpsSeries) -> Result<EpsSeries, HierarchyError> {
    if p == 0 {
        return Err(HierarchyError::InvalidIndex(FlowIndex::Volterra(p).to_string()));
    }
    let n = e.order();
    let l = LaurentShiftOp::finite([(Shift::int(1), EpsSeries::one(n)), (Shift::int(-1), e.clone())], n);
    let power = op_power(&l, 4 * p as i64, crate::lattice::Tail::Downward, Shift(0))?;
    let comm = op_commutator(&op_project(&power, Part::Plus)?, &l)?;
    let de = single_coefficient(&comm, Shift::int(-1))?;
    Ok((&de * &e.invert()?).div_eps()?.truncate(n - 1))
}

/// `∂W̃/∂T̃_p` in `w̃`-jets (chart `W`).
pub fn volterra_flow(p: u32, order: usize) -> Result<EpsSeries, HierarchyError> {
    let f = volterra_flow_at(p, &EpsSeries::field(order + 1))?;
    let coeffs = f
        .coeffs()
        .iter()
        .map(|c| Ok(substitute_log_change(&LogExtendedPoly::from_poly(c.clone()), LogChange::VToW)?.rational))
        .collect::<Result<Vec<_>, HierarchyError>>()?;
    Ok(EpsSeries::from_coeffs(coeffs))
}

fn expect_ops_equal(check: &str, lhs: &EpsDiffOp, rhs: &EpsDiffOp) -> Result<(), HierarchyError> {
    let diff = lhs - rhs;
    if diff.is_zero() {
        Ok(())
    } else {
        Err(HierarchyError::Mismatch { check: check.to_string(), difference: diff.to_text(Chart::U) })
    }
}

/// Checks the Miura link between the Volterra hierarchy and the negative
/// flows through `ε^order`:
/// the assembled Fréchet derivative `D` against the linearization of
/// `W̃[U]`, `D P_i D^† = P̃_i` for `i = 1, 2`, and
/// `D(∂U/∂t^{0,-p}) = (-1)^p (p-1)!/2^{2p} ∂W̃/∂T̃_p` for `p = 1, 2`.
pub fn miura_volterra_verify(order: usize) -> Result<Vec<CheckReport>, HierarchyError> {
    let mut out = Vec::new();
    let d = miura_frechet(order)?;

    let log_u = LogExtendedPoly::log(0, int(1))?;
    let sym = SymbolOp::shift(&rat(1, 2), order).add(&SymbolOp::shift(&rat(-1, 2), order)).scale(&int(-1));
    let (head, rest) = symbol_apply_log(&sym, &log_u, order)?;
    // the head is c log U, whose linearization is c/U
    let head_lin = EpsDiffOp::multiplication(&EpsSeries::field(order).invert()?.scale(&head.logs[0]));
    let linearized = &head_lin + &EpsDiffOp::frechet(&rest);
    expect_ops_equal("Miura Fréchet derivative", &d, &linearized)?;
    out.push(CheckReport::new(
        "Miura Fréchet derivative",
        format!("D = -(S^(1/2)+S^(-1/2))∘(1/U) through eps^{order}"),
    ));

    let dt = d.adjoint();
    let p2 = PoissonOp::p2(order)?.to_diffop(order)?;
    let lhs2 = d.compose(&p2).compose(&dt).truncate(order);
    let rhs2 = volterra_p2(order)?.to_diffop(order)?;
    expect_ops_equal("D P2 D^† = P~2", &lhs2, &rhs2)?;
    out.push(CheckReport::new("D P2 D^† = P~2", format!("(2/eps)(S - S^-1) recovered through eps^{order}")));

    let e = e_tilde(order + 1)?;
    let p1 = PoissonOp::p1(order)?.to_diffop(order)?;
    let lhs1 = d.compose(&p1).compose(&dt).truncate(order);
    let rhs1 = volterra_p1(&e)?.to_diffop(order)?;
    expect_ops_equal("D P1 D^† = P~1", &lhs1, &rhs1)?;
    out.push(CheckReport::new("D P1 D^† = P~1", format!("recovered through eps^{order}")));

    for p in 1..=2u32 {
        let flow = qkdv_flow(FlowIndex::T0Neg(p), order)?;
        let chain = d.apply(&flow);
        let sign = if p % 2 == 0 { int(1) } else { int(-1) };
        let scale: Rational = sign * Rational::from_integer(factorial(p as u64 - 1)) / int(1i64 << (2 * p));
        let volterra = volterra_flow_at(p, &e)?.scale(&scale);
        let name = format!("t0,-{p} vs Volterra T~{p}");
        expect_equal(&name, &chain, &volterra, Chart::U)?;
        out.push(CheckReport::new(name, format!("dW~/dt0,-{p} = {scale} dW~/dT~{p} through eps^{order}")));
    }
    Ok(out)
}
