//! Flows, Hamiltonians and Poisson operators of the extended q-deformed KdV
//! hierarchy on `L = Λ^2 + UΛ`, together with the `(-1/2,1,1)` fractional
//! Volterra hierarchy, the Volterra hierarchy and the dispersionless
//! principal hierarchy of `F = v^4/12`.
//!
//! Throughout, `ε` is the shift parameter of `Λ = e^{ε d_x}`. Flows are
//! returned as `∂U/∂t` with the explicit `1/ε` already divided out.

mod comb;
mod constants;
mod flows;
mod fvh;
mod hamiltonian;
mod poisson;
mod principal;
mod volterra;

use std::fmt;

use thiserror::Error;

use crate::epsops::{EpsError, EpsSeries};
use crate::jetring::{Chart, JetError};
use crate::lattice::{LatticeError, Shift};

pub use comb::{comb_identity_check, comb_identity_sides};
pub use constants::{c_log, c_negative, c_positive};
pub use flows::{check_commutativity, log_flow_closed_form_check, qkdv_flow};
pub use fvh::{fvh_correspondence, fvh_exp_flow, fvh_flow};
pub use hamiltonian::{hamiltonian, second_hamiltonian, HamiltonianKind, HamiltonianRecord};
pub use poisson::{apply_poisson, p1_inverse_apply, recursion_apply, Factor, PoissonOp};
pub use principal::{dispersionless_closed_form, dispersionless_match, principal_flow, principal_index, theta};
pub use volterra::{
    e_tilde, miura_frechet, miura_volterra_verify, volterra_flow, volterra_flow_at, volterra_p1, volterra_p2,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HierarchyError {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Eps(#[from] EpsError),
    #[error(transparent)]
    Jet(#[from] JetError),
    #[error("index {0} is not valid for this operation")]
    InvalidIndex(String),
    #[error("gradient of {index} fails the Helmholtz test at eps^{power}")]
    HelmholtzFailure { index: String, power: usize },
    #[error("{check}: mismatch, first difference {difference}")]
    Mismatch { check: String, difference: String },
}

/// A time of one of the hierarchies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FlowIndex {
    /// `t^{1,p}`, `p >= 0`.
    T1(u32),
    /// `t^{0,-p}`, `p >= 1`.
    T0Neg(u32),
    /// `t^{0,p}`, `p >= 0` (logarithmic flows).
    T0(u32),
    /// Principal hierarchy time `t^{α,p}`.
    Principal { alpha: u8, p: i64 },
    /// FVH time `T_s`; `s` is `-p-1/2` (p >= 0) or `p` (p >= 1).
    Fvh(Shift),
    /// Volterra time `T̃_p`, `p >= 1`.
    Volterra(u32),
}

impl fmt::Display for FlowIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FlowIndex::T1(p) => write!(f, "t1,{p}"),
            FlowIndex::T0Neg(p) => write!(f, "t0,-{p}"),
            FlowIndex::T0(p) => write!(f, "t0,{p}"),
            FlowIndex::Principal { alpha, p } => write!(f, "principal({alpha},{p})"),
            FlowIndex::Fvh(s) => write!(f, "T_{s}"),
            FlowIndex::Volterra(p) => write!(f, "Tv_{p}"),
        }
    }
}

/// Text of the lowest nonzero coefficient of a difference series.
pub(crate) fn first_difference(diff: &EpsSeries, chart: Chart) -> String {
    match diff.coeffs().iter().position(|c| !c.is_zero()) {
        Some(k) => format!("eps^{k}: {}", crate::jetring::text::poly_text(diff.coeff(k), chart)),
        None => "none".to_string(),
    }
}

/// `Ok(())` when `lhs == rhs` on their common order, otherwise `Mismatch`.
pub(crate) fn expect_equal(check: &str, lhs: &EpsSeries, rhs: &EpsSeries, chart: Chart) -> Result<(), HierarchyError> {
    let diff = lhs - rhs;
    if diff.is_zero() {
        Ok(())
    } else {
        Err(HierarchyError::Mismatch { check: check.to_string(), difference: first_difference(&diff, chart) })
    }
}

#[cfg(test)]
mod tests;
