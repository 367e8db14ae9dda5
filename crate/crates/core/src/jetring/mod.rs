//! Exact differential polynomial algebra in the jets of one scalar field.
//!
//! Jets `v^{(s)}` are independent variables. `v` and `v_x` may carry negative
//! exponents; higher jets may not. The same ring is reused for the field `U`
//! of the lattice hierarchy and for `w = log v`; only the printed names
//! differ (see [`Chart`]).

mod diffop;
mod json;
mod logpoly;
mod monomial;
mod poly;
pub mod text;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;
use thiserror::Error;

pub use diffop::DiffOp;
pub use json::{log_poly_from_json, log_poly_to_json, poly_from_json, poly_to_json};
pub use logpoly::LogExtendedPoly;
pub use monomial::JetMonomial;
pub use poly::DiffPoly;
pub use text::{parse_log_poly, parse_poly};

/// Exact rational number, always in lowest terms.
pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Naming of the jet slots when printing or parsing.
///
/// In the `W` chart slot 0 holds `exp(w)` and slots `s >= 1` hold `w^{(s)}`;
/// the log coefficient on slot 0 is then `w` itself.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Chart {
    V,
    U,
    W,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum JetError {
    #[error("not a total derivative; variational derivative is {witness}")]
    NotExact { witness: DiffPoly },
    #[error("antiderivative leaves the ring (would need a logarithm of a non-monomial)")]
    NonLocalAntiderivative,
    #[error("division by zero at jet order {order:?}")]
    DivisionByZero { order: Option<usize> },
    #[error("negative exponent {exponent} on jet of order {order}")]
    RingEscape { order: usize, exponent: i32 },
    #[error("not a variational gradient (Fréchet derivative is not self-adjoint)")]
    NotGradient,
    #[error("product of two logarithmic terms")]
    LogProduct,
    #[error("logarithm of jet order {order} is not supported")]
    LogOutOfRange { order: usize },
    #[error("parse error: {0}")]
    Parse(String),
}

/// Direction of the `w = log v` change of jet coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LogChange {
    VToW,
    WToV,
}

/// `sum_s (-dx)^s partial(p, s)`.
pub fn variational_derivative(p: &LogExtendedPoly) -> DiffPoly {
    let Some(n) = p.max_order() else {
        return DiffPoly::zero();
    };
    let mut out = DiffPoly::zero();
    for s in 0..=n {
        let mut term = p.partial(s);
        for _ in 0..s {
            term = -term.dx();
        }
        out += term;
    }
    out
}

pub fn variational_derivative_poly(p: &DiffPoly) -> DiffPoly {
    variational_derivative(&LogExtendedPoly::from_poly(p.clone()))
}

/// `sum_s partial(p, s) d_x^s`.
pub fn frechet(p: &DiffPoly) -> DiffOp {
    let mut op = DiffOp::zero();
    if let Some(n) = p.max_order() {
        for s in 0..=n {
            op.add_coeff(s, p.partial(s));
        }
    }
    op
}

/// True iff `p` is a variational gradient, i.e. its Fréchet derivative is
/// self-adjoint.
pub fn helmholtz_is_gradient(p: &DiffPoly) -> bool {
    frechet(p).is_self_adjoint()
}

pub fn eval_numeric(p: &DiffPoly, point: &BTreeMap<usize, Rational>) -> Result<Rational, JetError> {
    p.eval(point)
}

/// Formal `d_x^{-1}` with zero integration constant.
///
/// A nonzero constant term does not rule out exactness in the Laurent ring:
/// `dx(v / v_x) = 1 - v v_xx / v_x^2`. A bare constant is reported as
/// `NotExact` with the constant as witness.
///
/// The top jet is stripped repeatedly: an exact `p` of order `n` is linear in
/// `v^{(n)}`, and its coefficient is integrated with respect to `v^{(n-1)}`.
pub fn antiderivative(p: &DiffPoly) -> Result<LogExtendedPoly, JetError> {
    let witness = variational_derivative_poly(p);
    if !witness.is_zero() {
        return Err(JetError::NotExact { witness });
    }
    let mut rest = p.clone();
    let mut out = LogExtendedPoly::zero();
    while let Some(n) = rest.max_order() {
        if n == 0 {
            break;
        }
        if rest.exponents_of(n).iter().any(|&e| e != 0 && e != 1) {
            return Err(JetError::NonLocalAntiderivative);
        }
        let a = rest.coefficient_of_power(n, 1);
        let q = integrate_in(&a, n - 1)?;
        rest -= q.dx();
        out = &out + &q;
    }
    if rest.is_zero() {
        Ok(out)
    } else if rest.as_constant().is_some() {
        Err(JetError::NotExact { witness: rest })
    } else {
        Err(JetError::NonLocalAntiderivative)
    }
}

/// A density `h` with `δh/δv = g`, for `g` passing the Helmholtz test.
///
/// Each component of total degree `d != -1` contributes `v g_d / (d+1)`
/// (Euler homogeneity); in degree `-1` only `c/v` is accepted, giving
/// `c log v`. The result is checked against `g`.
pub fn integrate_gradient(g: &DiffPoly) -> Result<LogExtendedPoly, JetError> {
    if !helmholtz_is_gradient(g) {
        return Err(JetError::NotGradient);
    }
    let mut out = LogExtendedPoly::zero();
    for (d, part) in g.homogeneous_components() {
        if d == -1 {
            let (m, c) = part.as_single_term().ok_or(JetError::NonLocalAntiderivative)?;
            if *m != JetMonomial::var_pow(0, -1)? {
                return Err(JetError::NonLocalAntiderivative);
            }
            out.logs[0] += c;
        } else {
            let scaled = part.mul_monomial(&JetMonomial::var(0), &Rational::new(BigInt::one(), BigInt::from(d + 1)));
            out.rational += scaled;
        }
    }
    if variational_derivative(&out) != *g {
        return Err(JetError::NotGradient);
    }
    Ok(out)
}

// Antiderivative of `a` with respect to the single variable v^{(s)}.
pub(crate) fn integrate_in(a: &DiffPoly, s: usize) -> Result<LogExtendedPoly, JetError> {
    let mut out = LogExtendedPoly::zero();
    for (m, c) in a.terms() {
        let e = m.exponent(s);
        if e == -1 {
            if m.without(s).is_one() && s <= 1 {
                out.logs[s] += c;
                continue;
            }
            return Err(JetError::NonLocalAntiderivative);
        }
        let nm = JetMonomial::from_exponents({
            let mut v = m.exponents().to_vec();
            if v.len() <= s {
                v.resize(s + 1, 0);
            }
            v[s] += 1;
            v
        })?;
        out.rational.add_term(nm, c / int((e + 1) as i64));
    }
    Ok(out)
}

/// Total x-derivative in the `W` chart, where slot 0 is `E = exp(w)` and
/// `dx E = E w_x`.
pub fn dx_w(p: &DiffPoly) -> DiffPoly {
    let mut out = DiffPoly::zero();
    for (m, c) in p.terms() {
        for (s, &e) in m.exponents().iter().enumerate() {
            if e == 0 {
                continue;
            }
            let dm = if s == 0 { m.bump(1, 1) } else { m.bump(s, -1).bump(s + 1, 1) };
            out.add_term(dm, c * int(e as i64));
        }
    }
    out
}

/// Rewrites `p` between jets of `v` and jets of `w = log v`.
///
/// In the `W` chart slot 0 is `exp(w)`, so no information is lost in either
/// direction.
pub fn substitute_log_change(p: &LogExtendedPoly, direction: LogChange) -> Result<LogExtendedPoly, JetError> {
    let n = p.rational.max_order().unwrap_or(0).max(1);
    let mut out = LogExtendedPoly::zero();
    match direction {
        LogChange::VToW => {
            // v^{(s)} = dx_w^s(E)
            let mut images = vec![DiffPoly::var(0)];
            for s in 1..=n {
                let next = dx_w(&images[s - 1]);
                images.push(next);
            }
            out.rational = substitute(&p.rational, &images, |s, e| match s {
                0 => JetMonomial::var_pow(0, e),
                _ => Ok(JetMonomial::var_pow(0, e)?.mul(&JetMonomial::var_pow(1, e)?)),
            })?;
            // log v = w, log v_x = w + log w_x
            out.logs[0] = &p.logs[0] + &p.logs[1];
            out.logs[1] = p.logs[1].clone();
        }
        LogChange::WToV => {
            // E = v, w^{(s)} = dx^{s-1}(v_x / v)
            let wx = DiffPoly::term(Rational::one(), JetMonomial::var(1).mul(&JetMonomial::var_pow(0, -1)?));
            let mut images = vec![DiffPoly::var(0), wx];
            for s in 2..=n {
                let next = images[s - 1].dx();
                images.push(next);
            }
            out.rational = substitute(&p.rational, &images, |s, e| match s {
                0 => JetMonomial::var_pow(0, e),
                _ => Ok(JetMonomial::var_pow(1, e)?.mul(&JetMonomial::var_pow(0, -e)?)),
            })?;
            // w = log v, log w_x = log v_x - log v
            out.logs[0] = &p.logs[0] - &p.logs[1];
            out.logs[1] = p.logs[1].clone();
        }
    }
    Ok(out)
}

// Replace slot s by images[s]; negative powers (only on slots 0 and 1) use
// the monomial `neg(s, e)` for the image raised to e < 0.
fn substitute(
    p: &DiffPoly,
    images: &[DiffPoly],
    neg: impl Fn(usize, i32) -> Result<JetMonomial, JetError>,
) -> Result<DiffPoly, JetError> {
    let mut cache: BTreeMap<(usize, i32), DiffPoly> = BTreeMap::new();
    let mut out = DiffPoly::zero();
    for (m, c) in p.terms() {
        let mut acc = DiffPoly::constant(c.clone());
        for (s, &e) in m.exponents().iter().enumerate() {
            if e == 0 {
                continue;
            }
            let factor = match cache.get(&(s, e)) {
                Some(f) => f.clone(),
                None => {
                    let f = if e > 0 { images[s].pow(e as u32) } else { DiffPoly::term(Rational::one(), neg(s, e)?) };
                    cache.insert((s, e), f.clone());
                    f
                }
            };
            acc = &acc * &factor;
        }
        out += acc;
    }
    Ok(out)
}

#[cfg(test)]
mod tests;
