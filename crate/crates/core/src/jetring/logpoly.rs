//! Differential polynomials extended by `log v` and `log v_x`.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::Zero;

use super::{DiffPoly, JetError, JetMonomial, Rational};

/// `rational + a log v + b log v_x`.
///
/// Genus-one free energies and the density `(1/2) log U` are the only objects
/// of this shape; products of two logarithmic objects are rejected.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LogExtendedPoly {
    pub rational: DiffPoly,
    /// Coefficients of `log v^{(0)}` and `log v^{(1)}`.
    pub logs: [Rational; 2],
}

impl LogExtendedPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_poly(p: DiffPoly) -> Self {
        LogExtendedPoly { rational: p, logs: [Rational::zero(), Rational::zero()] }
    }

    /// `c log v^{(order)}` for `order` in `{0, 1}`.
    pub fn log(order: usize, c: Rational) -> Result<Self, JetError> {
        if order > 1 {
            return Err(JetError::LogOutOfRange { order });
        }
        let mut out = Self::zero();
        out.logs[order] = c;
        Ok(out)
    }

    pub fn has_logs(&self) -> bool {
        self.logs.iter().any(|c| !c.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.rational.is_zero() && !self.has_logs()
    }

    /// The purely rational part, failing if logarithms are present.
    pub fn as_poly(&self) -> Option<&DiffPoly> {
        if self.has_logs() {
            None
        } else {
            Some(&self.rational)
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        LogExtendedPoly { rational: self.rational.scale(c), logs: [&self.logs[0] * c, &self.logs[1] * c] }
    }

    /// Product; at most one factor may carry logarithms and then the other
    /// must be a constant.
    pub fn mul(&self, other: &LogExtendedPoly) -> Result<LogExtendedPoly, JetError> {
        match (self.has_logs(), other.has_logs()) {
            (true, true) => Err(JetError::LogProduct),
            (false, false) => Ok(LogExtendedPoly::from_poly(&self.rational * &other.rational)),
            (true, false) => other.rational.as_constant().map(|c| self.scale(&c)).ok_or(JetError::LogProduct),
            (false, true) => self.rational.as_constant().map(|c| other.scale(&c)).ok_or(JetError::LogProduct),
        }
    }

    pub fn without_constant(&self) -> Self {
        LogExtendedPoly { rational: self.rational.without_constant(), logs: self.logs.clone() }
    }

    pub fn dx(&self) -> DiffPoly {
        let mut out = self.rational.dx();
        for s in 0..2 {
            if !self.logs[s].is_zero() {
                // d/dx log v^{(s)} = v^{(s+1)} / v^{(s)}
                let m = JetMonomial::var(s + 1).mul(&JetMonomial::var_pow(s, -1).expect("order <= 1"));
                out.add_term(m, self.logs[s].clone());
            }
        }
        out
    }

    pub fn partial(&self, s: usize) -> DiffPoly {
        let mut out = self.rational.partial(s);
        if s < 2 && !self.logs[s].is_zero() {
            out.add_term(JetMonomial::var_pow(s, -1).expect("order <= 1"), self.logs[s].clone());
        }
        out
    }

    pub fn max_order(&self) -> Option<usize> {
        let log_order = if !self.logs[1].is_zero() {
            Some(1)
        } else if !self.logs[0].is_zero() {
            Some(0)
        } else {
            None
        };
        self.rational.max_order().max(log_order)
    }
}

impl From<DiffPoly> for LogExtendedPoly {
    fn from(p: DiffPoly) -> Self {
        LogExtendedPoly::from_poly(p)
    }
}

impl Add for &LogExtendedPoly {
    type Output = LogExtendedPoly;
    fn add(self, rhs: &LogExtendedPoly) -> LogExtendedPoly {
        LogExtendedPoly {
            rational: &self.rational + &rhs.rational,
            logs: [&self.logs[0] + &rhs.logs[0], &self.logs[1] + &rhs.logs[1]],
        }
    }
}

impl Sub for &LogExtendedPoly {
    type Output = LogExtendedPoly;
    fn sub(self, rhs: &LogExtendedPoly) -> LogExtendedPoly {
        LogExtendedPoly {
            rational: &self.rational - &rhs.rational,
            logs: [&self.logs[0] - &rhs.logs[0], &self.logs[1] - &rhs.logs[1]],
        }
    }
}

impl Neg for &LogExtendedPoly {
    type Output = LogExtendedPoly;
    fn neg(self) -> LogExtendedPoly {
        LogExtendedPoly { rational: -&self.rational, logs: [-self.logs[0].clone(), -self.logs[1].clone()] }
    }
}

impl fmt::Display for LogExtendedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::text::log_poly_text(self, super::Chart::V))
    }
}

impl fmt::Debug for LogExtendedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
