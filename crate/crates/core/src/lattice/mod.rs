//! Pseudo-difference operators `sum_p a_p Λ^p` with ε-series coefficients.
//!
//! Exponents live on the half-integer lattice and are stored in half-units
//! (see [`Shift`]). Infinite operators carry a [`Tail`] and the window of
//! exponents whose coefficients are actually known; reading outside that
//! window is an error rather than a silent zero.

mod ops;
mod roots;

use std::collections::BTreeMap;
use std::fmt;

use serde_json::Value;
use thiserror::Error;

use crate::epsops::{series_to_json, EpsError, EpsSeries};
use crate::jetring::{rat, Chart, DiffPoly, Rational};

pub use ops::Part;

/// A shift exponent `n/2`, stored as `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Shift(pub i64);

impl Shift {
    pub fn int(n: i64) -> Self {
        Shift(2 * n)
    }

    pub fn half(n: i64) -> Self {
        Shift(n)
    }

    pub fn value(self) -> Rational {
        rat(self.0, 2)
    }
}

impl fmt::Display for Shift {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

/// Direction in which an operator may be infinite.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Tail {
    /// Series in `Λ^{-1}` with a finite top.
    Downward,
    /// Series in `Λ` with a finite bottom.
    Upward,
    Finite,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("coefficient of Λ^{needed} is outside the known window")]
    WindowUnderflow { needed: Shift },
    #[error("cannot multiply a downward and an upward operator")]
    IncompatibleTails,
    #[error("operator is not of the required shape: {0}")]
    Shape(String),
    #[error("power {0} is not supported")]
    UnsupportedPower(String),
    #[error(transparent)]
    Eps(#[from] EpsError),
}

/// `sum_p a_p Λ^p`.
///
/// For a `Downward` operator coefficients with exponent `>= lo` are known;
/// for an `Upward` one those with exponent `<= hi`; a `Finite` operator is
/// known everywhere.
#[derive(Clone)]
pub struct LaurentShiftOp {
    coeffs: BTreeMap<Shift, EpsSeries>,
    tail: Tail,
    lo: Option<Shift>,
    hi: Option<Shift>,
    order: usize,
}

impl LaurentShiftOp {
    pub fn zero(order: usize) -> Self {
        LaurentShiftOp { coeffs: BTreeMap::new(), tail: Tail::Finite, lo: None, hi: None, order }
    }

    /// A finite operator from `(exponent, coefficient)` pairs.
    pub fn finite<I: IntoIterator<Item = (Shift, EpsSeries)>>(terms: I, order: usize) -> Self {
        let mut op = Self::zero(order);
        for (p, c) in terms {
            op.add_coeff(p, c);
        }
        op
    }

    /// `Λ^p` times the multiplication operator `f`, written `f Λ^p`.
    pub fn monomial(p: Shift, f: EpsSeries) -> Self {
        let order = f.order();
        Self::finite([(p, f)], order)
    }

    pub fn shift_power(p: Shift, order: usize) -> Self {
        Self::monomial(p, EpsSeries::one(order))
    }

    /// The Lax operator `Λ^2 + U Λ`.
    pub fn lax(order: usize) -> Self {
        Self::finite([(Shift::int(2), EpsSeries::one(order)), (Shift::int(1), EpsSeries::field(order))], order)
    }

    pub(crate) fn with_tail(tail: Tail, lo: Option<Shift>, hi: Option<Shift>, order: usize) -> Self {
        LaurentShiftOp { coeffs: BTreeMap::new(), tail, lo, hi, order }
    }

    pub fn tail(&self) -> Tail {
        self.tail
    }

    /// Known window `[lo, hi]`; `None` means unbounded on that side.
    pub fn window(&self) -> (Option<Shift>, Option<Shift>) {
        (self.lo, self.hi)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub(crate) fn add_coeff(&mut self, p: Shift, c: EpsSeries) {
        self.order = self.order.min(c.order());
        let merged = match self.coeffs.remove(&p) {
            Some(old) => &old + &c,
            None => c,
        };
        if !merged.is_zero() {
            self.coeffs.insert(p, merged);
        }
    }

    pub fn is_known(&self, p: Shift) -> bool {
        self.lo.is_none_or(|lo| p >= lo) && self.hi.is_none_or(|hi| p <= hi)
    }

    /// Coefficient of `Λ^p`, failing outside the known window.
    pub fn coeff(&self, p: Shift) -> Result<EpsSeries, LatticeError> {
        if !self.is_known(p) {
            return Err(LatticeError::WindowUnderflow { needed: p });
        }
        Ok(self.coeffs.get(&p).map(|c| c.truncate(self.order)).unwrap_or_else(|| EpsSeries::zero(self.order)))
    }

    /// Nonzero stored coefficients (all of them known).
    pub fn terms(&self) -> impl Iterator<Item = (&Shift, &EpsSeries)> {
        self.coeffs.iter()
    }

    /// Largest exponent with a nonzero coefficient; `None` for an upward
    /// operator (unbounded) or the zero operator.
    pub fn top(&self) -> Option<Shift> {
        match self.tail {
            Tail::Upward => None,
            _ => self.coeffs.keys().next_back().copied(),
        }
    }

    pub fn bottom(&self) -> Option<Shift> {
        match self.tail {
            Tail::Downward => None,
            _ => self.coeffs.keys().next().copied(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Forget coefficients outside `[lo, hi]` and mark them unknown.
    pub fn restrict(&self, lo: Option<Shift>, hi: Option<Shift>) -> Result<Self, LatticeError> {
        if let (Some(l), Some(sl)) = (lo, self.lo) {
            if l < sl {
                return Err(LatticeError::WindowUnderflow { needed: l });
            }
        }
        if let (Some(h), Some(sh)) = (hi, self.hi) {
            if h > sh {
                return Err(LatticeError::WindowUnderflow { needed: h });
            }
        }
        let new_lo = lo.or(self.lo);
        let new_hi = hi.or(self.hi);
        let mut out = self.clone();
        out.lo = new_lo;
        out.hi = new_hi;
        out.coeffs.retain(|p, _| new_lo.is_none_or(|l| *p >= l) && new_hi.is_none_or(|h| *p <= h));
        if out.tail == Tail::Finite && (new_lo.is_some() || new_hi.is_some()) {
            out.tail = if new_lo.is_some() { Tail::Downward } else { Tail::Upward };
        }
        Ok(out)
    }

    pub fn truncate_order(&self, order: usize) -> Self {
        let mut out = self.clone();
        out.order = order.min(self.order);
        for c in out.coeffs.values_mut() {
            *c = c.truncate(out.order);
        }
        out
    }

    pub fn map_coeffs(&self, f: impl Fn(&EpsSeries) -> EpsSeries) -> Self {
        let mut out = Self::with_tail(self.tail, self.lo, self.hi, self.order);
        for (p, c) in &self.coeffs {
            out.add_coeff(*p, f(c));
        }
        out.order = self.order;
        out
    }

    pub fn to_text(&self, chart: Chart) -> String {
        let mut parts = Vec::new();
        for (p, c) in self.coeffs.iter().rev() {
            let pow = match p.0 {
                0 => String::new(),
                2 => "*S".to_string(),
                _ => format!("*S^({p})"),
            };
            if *c == EpsSeries::one(c.order()) && p.0 != 0 {
                parts.push(pow[1..].to_string());
            } else if c.coeffs().iter().skip(1).all(DiffPoly::is_zero) {
                parts.push(format!("({}){pow}", crate::jetring::text::poly_text(c.coeff(0), chart)));
            } else {
                parts.push(format!("[{}]{pow}", c.to_text(chart)));
            }
        }
        let body = if parts.is_empty() { "0".to_string() } else { parts.join(" + ") };
        match (self.tail, self.lo, self.hi) {
            (Tail::Downward, Some(lo), _) => format!("{body} + O(S^({lo}))"),
            (Tail::Upward, _, Some(hi)) => format!("{body} + O(S^({hi}) above)"),
            _ => body,
        }
    }

    pub fn to_json(&self) -> Value {
        let coeffs: serde_json::Map<String, Value> =
            self.coeffs.iter().map(|(p, c)| (p.to_string(), series_to_json(c))).collect();
        serde_json::json!({
            "tail": format!("{:?}", self.tail),
            "window": { "lo": self.lo.map(|s| s.to_string()), "hi": self.hi.map(|s| s.to_string()) },
            "coeffs": coeffs,
        })
    }
}

// Equality of the known data: same shape, and equal coefficients once
// truncated to the common ε-order.
impl PartialEq for LaurentShiftOp {
    fn eq(&self, other: &Self) -> bool {
        if (self.tail, self.lo, self.hi, self.order) != (other.tail, other.lo, other.hi, other.order) {
            return false;
        }
        let keys: std::collections::BTreeSet<&Shift> = self.coeffs.keys().chain(other.coeffs.keys()).collect();
        keys.into_iter().all(|p| self.coeff(*p).ok() == other.coeff(*p).ok())
    }
}

impl Eq for LaurentShiftOp {}

impl fmt::Debug for LaurentShiftOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text(Chart::U))
    }
}

pub use ops::{op_add, op_adjoint, op_commutator, op_mul, op_mul_window, op_project, op_residue, op_sub};
pub use roots::{op_inverse, op_power, op_sqrt};

#[cfg(test)]
mod tests;
