//! The dispersionless principal hierarchy of `F = v^4/12` and the ε^0 limits
//! of the lattice flows.

use num_bigint::BigInt;

use crate::combinatorics::{double_factorial, factorial};
use crate::jetring::{int, Chart, DiffPoly, JetMonomial, LogExtendedPoly, Rational};
use crate::report::CheckReport;

use super::flows::qkdv_flow;
use super::{FlowIndex, HierarchyError};

fn big(n: BigInt) -> Rational {
    Rational::from_integer(n)
}

fn pow2(e: i64) -> Rational {
    big(BigInt::from(2)).pow(e as i32)
}

fn v_pow(e: i32, c: Rational) -> DiffPoly {
    DiffPoly::term(c, JetMonomial::var_pow(0, e).expect("v may carry any exponent"))
}

/// Density `θ_{α,p}` in the jets of `v`.
pub fn theta(alpha: u8, p: i64) -> Result<LogExtendedPoly, HierarchyError> {
    let bad = || HierarchyError::InvalidIndex(format!("theta({alpha},{p})"));
    match (alpha, p) {
        (1, p) if p >= 0 => {
            let c = Rational::from_integer(1.into()) / (big(factorial(p as u64)) * int(2 * p + 1));
            Ok(v_pow(2 * p as i32 + 1, c).into())
        }
        (0, 0) => Ok(LogExtendedPoly::log(0, Rational::new(1.into(), 2.into()))?),
        (0, p) if p > 0 => {
            let c = pow2(p - 1) / (big(double_factorial(2 * p - 1)) * int(2 * p));
            Ok(v_pow(2 * p as i32, c).into())
        }
        (0, p) => {
            let q = -p;
            let sign = if q % 2 == 1 { int(1) } else { int(-1) };
            let c = sign * big(double_factorial(2 * q - 1)) / (pow2(q + 1) * int(2 * q));
            Ok(v_pow(-2 * q as i32, c).into())
        }
        _ => Err(bad()),
    }
}

/// `∂v/∂t^{α,p} = d_x ∂_v θ_{α,p+1}`.
pub fn principal_flow(alpha: u8, p: i64) -> Result<DiffPoly, HierarchyError> {
    let valid = match alpha {
        1 => p >= 0,
        0 => true,
        _ => false,
    };
    if !valid {
        return Err(HierarchyError::InvalidIndex(format!("principal({alpha},{p})")));
    }
    Ok(theta(alpha, p + 1)?.partial(0).dx())
}

/// Principal-hierarchy time matching a lattice flow.
pub fn principal_index(idx: FlowIndex) -> Result<(u8, i64), HierarchyError> {
    match idx {
        FlowIndex::T1(p) => Ok((1, p as i64)),
        FlowIndex::T0Neg(p) if p >= 1 => Ok((0, -(p as i64))),
        FlowIndex::T0(p) => Ok((0, p as i64)),
        FlowIndex::Principal { alpha, p } => Ok((alpha, p)),
        _ => Err(HierarchyError::InvalidIndex(idx.to_string())),
    }
}

/// Closed forms of the dispersionless flows:
/// `(2/p!) U^{2p+1} U_x`, `(-1)^p (2p-1)!!/2^p U^{-2p} U_x` and
/// `2^{2p-1}(p-1)!/(2p-1)! U^{2p} U_x` (with `U_x` for `p = 0`).
pub fn dispersionless_closed_form(idx: FlowIndex) -> Result<DiffPoly, HierarchyError> {
    let ux = DiffPoly::var(1);
    let (c, e) = match idx {
        FlowIndex::T1(p) => (int(2) / big(factorial(p as u64)), 2 * p as i32 + 1),
        FlowIndex::T0Neg(p) if p >= 1 => {
            let sign = if p % 2 == 0 { int(1) } else { int(-1) };
            (sign * big(double_factorial(2 * p as i64 - 1)) / pow2(p as i64), -2 * p as i32)
        }
        FlowIndex::T0(0) => return Ok(ux),
        FlowIndex::T0(p) => {
            let c = pow2(2 * p as i64 - 1) * big(factorial(p as u64 - 1)) / big(factorial(2 * p as u64 - 1));
            (c, 2 * p as i32)
        }
        _ => return Err(HierarchyError::InvalidIndex(idx.to_string())),
    };
    Ok(&v_pow(e, c) * &ux)
}

/// The `ε^0` part of the flow equals both the closed form and the principal
/// flow (with `v` read as `U`).
pub fn dispersionless_match(idx: FlowIndex) -> Result<CheckReport, HierarchyError> {
    let limit = qkdv_flow(idx, 0)?.coeff(0).clone();
    let closed = dispersionless_closed_form(idx)?;
    let (alpha, p) = principal_index(idx)?;
    let ph = principal_flow(alpha, p)?;
    for (what, other) in [("closed form", &closed), ("principal flow", &ph)] {
        let diff = &limit - other;
        if !diff.is_zero() {
            return Err(HierarchyError::Mismatch {
                check: format!("dispersionless limit of {idx} vs {what}"),
                difference: crate::jetring::text::poly_text(&diff, Chart::U),
            });
        }
    }
    Ok(CheckReport::new(
        format!("dispersionless {idx}"),
        format!(
            "eps^0 part {} equals closed form and principal({alpha},{p})",
            crate::jetring::text::poly_text(&limit, Chart::U)
        ),
    ))
}
