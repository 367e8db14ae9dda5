//! Hamiltonians of the first and second Poisson structures.

use serde_json::Value;

use crate::epsops::{series_to_json, EpsSeries};
use crate::jetring::{
    helmholtz_is_gradient, int, integrate_gradient, log_poly_to_json, rat, variational_derivative, Chart,
    LogExtendedPoly, Rational,
};
use crate::lattice::{op_power, op_residue, LaurentShiftOp, Shift, Tail};

use super::constants::{c_negative, c_positive};
use super::first_difference;
use super::flows::qkdv_flow;
use super::poisson::p1_inverse_apply;
use super::{FlowIndex, HierarchyError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HamiltonianKind {
    /// Hamiltonian with respect to `P_1`.
    First,
    /// Hamiltonian with respect to `P_2`.
    Second,
}

/// Density and gradient of a Hamiltonian, with `δ(density_k)/δU = gradient_k`
/// for every ε-power `k` through the gradient's order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HamiltonianRecord {
    pub index: FlowIndex,
    pub kind: HamiltonianKind,
    /// Density coefficient of `ε^k` at position `k`.
    pub density: Vec<LogExtendedPoly>,
    pub gradient: EpsSeries,
}

impl HamiltonianRecord {
    fn certified(
        index: FlowIndex,
        kind: HamiltonianKind,
        density: Vec<LogExtendedPoly>,
        gradient: EpsSeries,
    ) -> Result<Self, HierarchyError> {
        for (k, g) in gradient.coeffs().iter().enumerate() {
            let d = density.get(k).cloned().unwrap_or_default();
            let diff = &variational_derivative(&d) - g;
            if !diff.is_zero() {
                return Err(HierarchyError::Mismatch {
                    check: format!("variational derivative of the {index} density"),
                    difference: first_difference(&EpsSeries::from_poly(diff, 0).mul_eps(k), Chart::U),
                });
            }
        }
        Ok(HamiltonianRecord { index, kind, density, gradient })
    }

    fn from_series(
        index: FlowIndex,
        kind: HamiltonianKind,
        density: &EpsSeries,
        gradient: EpsSeries,
    ) -> Result<Self, HierarchyError> {
        let density = density.coeffs().iter().cloned().map(LogExtendedPoly::from_poly).collect();
        Self::certified(index, kind, density, gradient)
    }

    fn rescaled(&self, index: FlowIndex, kind: HamiltonianKind, c: &Rational) -> Self {
        HamiltonianRecord {
            index,
            kind,
            density: self.density.iter().map(|d| d.scale(c)).collect(),
            gradient: self.gradient.scale(c),
        }
    }

    pub fn order(&self) -> usize {
        self.gradient.order()
    }

    pub fn density_text(&self, chart: Chart) -> String {
        let parts: Vec<String> = self
            .density
            .iter()
            .enumerate()
            .filter(|(_, d)| !d.is_zero())
            .map(|(k, d)| {
                let body = crate::jetring::text::log_poly_text(d, chart);
                match k {
                    0 => format!("({body})"),
                    1 => format!("eps*({body})"),
                    _ => format!("eps^{k}*({body})"),
                }
            })
            .collect();
        let body = if parts.is_empty() { "0".to_string() } else { parts.join(" + ") };
        format!("{body} + O(eps^{})", self.order() + 1)
    }

    pub fn to_json(&self) -> Value {
        serde_json::json!({
            "index": self.index.to_string(),
            "kind": format!("{:?}", self.kind),
            "density": self.density.iter().map(log_poly_to_json).collect::<Vec<_>>(),
            "gradient": series_to_json(&self.gradient),
        })
    }
}

/// `res(Λ A) = Λ(a_{-1})`.
fn residue_after_shift(a: &LaurentShiftOp) -> Result<EpsSeries, HierarchyError> {
    Ok(a.coeff(Shift::int(-1))?.shift(&int(1)))
}

/// First Hamiltonian `H` of a flow, `∂U/∂t = P_1 δH/δU`, through `ε^order`.
pub fn hamiltonian(idx: FlowIndex, order: usize) -> Result<HamiltonianRecord, HierarchyError> {
    let l = LaurentShiftOp::lax(order);
    match idx {
        FlowIndex::T1(p) => {
            let c = c_positive(p);
            let half = op_power(&l, 2 * p as i64 + 1, Tail::Downward, Shift::int(-1))?;
            let gradient = residue_after_shift(&half)?.scale(&(&c * int(2)));
            let big = op_power(&l, 2 * p as i64 + 3, Tail::Downward, Shift(0))?;
            let density = op_residue(&big)?.scale(&(&c * rat(4, 2 * p as i64 + 3)));
            HamiltonianRecord::from_series(idx, HamiltonianKind::First, &density, gradient)
        }
        FlowIndex::T0Neg(p) if p >= 1 => {
            let c = c_negative(p);
            let mp = op_power(&l, -2 * p as i64, Tail::Downward, Shift::int(0))?;
            let gradient = residue_after_shift(&mp)?.scale(&(&c * int(-2)));
            if p == 1 {
                let mut density = vec![LogExtendedPoly::zero(); order + 1];
                density[0] = LogExtendedPoly::log(0, rat(1, 2))?;
                HamiltonianRecord::certified(idx, HamiltonianKind::First, density, gradient)
            } else {
                let lower = op_power(&l, -2 * (p as i64 - 1), Tail::Downward, Shift::int(0))?;
                let density = op_residue(&lower)?.scale(&(&c * rat(2, p as i64 - 1)));
                HamiltonianRecord::from_series(idx, HamiltonianKind::First, &density, gradient)
            }
        }
        FlowIndex::T0(_) => {
            // reconstructed: gradient = P_1^{-1}(flow), certified, then integrated
            let flow = qkdv_flow(idx, order)?;
            let gradient = p1_inverse_apply(&flow)?;
            let mut density = Vec::with_capacity(order + 1);
            for (k, g) in gradient.coeffs().iter().enumerate() {
                if !helmholtz_is_gradient(g) {
                    return Err(HierarchyError::HelmholtzFailure { index: idx.to_string(), power: k });
                }
                density.push(integrate_gradient(g)?);
            }
            HamiltonianRecord::certified(idx, HamiltonianKind::First, density, gradient)
        }
        _ => Err(HierarchyError::InvalidIndex(idx.to_string())),
    }
}

/// Second Hamiltonian `G`, `∂U/∂t = P_2 δG/δU`:
/// `G_{1,0} = 2∫U`, `G_{1,p} = 2/(2p+1) H_{1,p-1}`, `G_{0,-p} = -(1/p) H_{0,-p-1}`
/// and, for the logarithmic flows, `G_{0,p} = (1/p) H_{0,p-1}` (`p >= 1`).
pub fn second_hamiltonian(idx: FlowIndex, order: usize) -> Result<HamiltonianRecord, HierarchyError> {
    let kind = HamiltonianKind::Second;
    match idx {
        FlowIndex::T1(0) => {
            let density = EpsSeries::field(order).scale(&int(2));
            HamiltonianRecord::from_series(idx, kind, &density, EpsSeries::constant(int(2), order))
        }
        FlowIndex::T1(p) => {
            Ok(hamiltonian(FlowIndex::T1(p - 1), order)?.rescaled(idx, kind, &rat(2, 2 * p as i64 + 1)))
        }
        FlowIndex::T0Neg(p) if p >= 1 => {
            Ok(hamiltonian(FlowIndex::T0Neg(p + 1), order)?.rescaled(idx, kind, &rat(-1, p as i64)))
        }
        FlowIndex::T0(p) if p >= 1 => {
            Ok(hamiltonian(FlowIndex::T0(p - 1), order)?.rescaled(idx, kind, &rat(1, p as i64)))
        }
        _ => Err(HierarchyError::InvalidIndex(idx.to_string())),
    }
}
