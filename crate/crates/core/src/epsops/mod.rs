//! Truncated ε-series over differential polynomials, shift operators
//! `Λ^a = e^{aε d_x}` and constant-coefficient symbols `g(ε d_x)`.

mod operator;
mod series;
mod symbol;

use serde_json::Value;
use thiserror::Error;

use crate::jetring::{poly_from_json, poly_to_json, JetError, LogExtendedPoly, Rational};

pub use operator::EpsDiffOp;
pub use series::EpsSeries;
pub use symbol::SymbolOp;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EpsError {
    #[error(transparent)]
    Jet(#[from] JetError),
    #[error("leading coefficient is not a unit monomial")]
    NotInvertible,
    #[error("odd power eps^{power} in an even expansion")]
    OddPower { power: usize },
    #[error("division by eps of a series with nonzero eps^0 coefficient")]
    EpsDivision,
    #[error("antiderivative produced a logarithm inside a series")]
    LogInSeries,
    #[error("symbol with a pole cannot be expanded as a differential operator")]
    PoleInOperator,
}

pub fn shift_apply(a: &Rational, f: &EpsSeries) -> EpsSeries {
    f.shift(a)
}

pub fn symbol_apply(g: &SymbolOp, f: &EpsSeries) -> Result<EpsSeries, EpsError> {
    f.apply_symbol(g)
}

pub fn series_invert(f: &EpsSeries) -> Result<EpsSeries, EpsError> {
    f.invert()
}

pub fn eps_sign_substitute(f: &EpsSeries) -> Result<EpsSeries, EpsError> {
    f.eps_sign_substitute()
}

/// `g(ε d_x) f` for a pole-free symbol and an argument with logarithms.
///
/// Returns the `ε^0` part `g(0) f` (which keeps the logarithms) and the
/// remaining purely rational series `sum_{k>=1} g_k ε^k d_x^k f`.
pub fn symbol_apply_log(
    g: &SymbolOp,
    f: &LogExtendedPoly,
    order: usize,
) -> Result<(LogExtendedPoly, EpsSeries), EpsError> {
    if g.pole_order() > 0 {
        return Err(EpsError::PoleInOperator);
    }
    let head = f.scale(&g.taylor()[0]);
    let order = order.min(g.known_order());
    let mut rest = EpsSeries::zero(order);
    if order > 0 {
        // g(ξ) - g(0) = ξ·g₁(ξ), so the tail is ε·g₁(ε d_x)(dx f).
        let tail = SymbolOp::from_taylor(g.taylor()[1..=order].to_vec(), 0);
        let df = EpsSeries::from_poly(f.dx(), order - 1);
        rest = df.apply_symbol(&tail)?.mul_eps(1);
    }
    Ok((head, rest))
}

pub fn series_to_json(f: &EpsSeries) -> Value {
    let coeffs: serde_json::Map<String, Value> =
        f.coeffs().iter().enumerate().map(|(k, c)| (k.to_string(), poly_to_json(c))).collect();
    serde_json::json!({ "order": f.order(), "coeffs": coeffs })
}

pub fn series_from_json(v: &Value) -> Result<EpsSeries, JetError> {
    let bad = |m: &str| JetError::Parse(m.to_string());
    let order = v.get("order").and_then(Value::as_u64).ok_or_else(|| bad("missing order"))? as usize;
    let map = v.get("coeffs").and_then(Value::as_object).ok_or_else(|| bad("missing coeffs"))?;
    let mut s = EpsSeries::zero(order).into_coeffs();
    for (k, c) in map {
        let k: usize = k.parse().map_err(|_| bad("bad eps power"))?;
        if k > order {
            return Err(bad("eps power beyond order"));
        }
        s[k] = poly_from_json(c)?;
    }
    Ok(EpsSeries::from_coeffs(s))
}

#[cfg(test)]
mod tests;
