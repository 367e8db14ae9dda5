//! Monomials in the jet variables `v, v_x, v_xx, ...` of a single field.

use std::cmp::Ordering;
use std::fmt;

use super::JetError;

/// A monomial `prod_s (v^{(s)})^{e_s}`.
///
/// Exponents on `v` and `v_x` may be negative; all higher jets carry
/// non-negative exponents. Trailing zero exponents are never stored, so two
/// equal monomials always have identical exponent vectors.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct JetMonomial {
    exps: Vec<i32>,
}

impl JetMonomial {
    pub fn one() -> Self {
        JetMonomial { exps: Vec::new() }
    }

    /// `(v^{(order)})^exp`.
    pub fn var_pow(order: usize, exp: i32) -> Result<Self, JetError> {
        let mut exps = vec![0; order + 1];
        exps[order] = exp;
        Self::from_exponents(exps)
    }

    pub fn var(order: usize) -> Self {
        Self::var_pow(order, 1).expect("positive exponent is always valid")
    }

    /// Builds a monomial from a dense exponent vector indexed by jet order.
    pub fn from_exponents(mut exps: Vec<i32>) -> Result<Self, JetError> {
        for (s, &e) in exps.iter().enumerate().skip(2) {
            if e < 0 {
                return Err(JetError::RingEscape { order: s, exponent: e });
            }
        }
        while exps.last() == Some(&0) {
            exps.pop();
        }
        Ok(JetMonomial { exps })
    }

    /// Unchecked constructor for exponent vectors already known to be valid.
    pub(crate) fn from_valid(mut exps: Vec<i32>) -> Self {
        debug_assert!(exps.iter().skip(2).all(|&e| e >= 0), "negative exponent on a higher jet");
        while exps.last() == Some(&0) {
            exps.pop();
        }
        JetMonomial { exps }
    }

    pub fn exponents(&self) -> &[i32] {
        &self.exps
    }

    pub fn exponent(&self, order: usize) -> i32 {
        self.exps.get(order).copied().unwrap_or(0)
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    /// Highest jet order carrying a nonzero exponent.
    pub fn max_order(&self) -> Option<usize> {
        self.exps.len().checked_sub(1)
    }

    pub fn degree(&self) -> i64 {
        self.exps.iter().map(|&e| e as i64).sum()
    }

    /// True when the monomial only involves `v` and `v_x`, i.e. it is a unit
    /// of the Laurent ring.
    pub fn is_unit(&self) -> bool {
        self.exps.len() <= 2
    }

    pub fn mul(&self, other: &JetMonomial) -> JetMonomial {
        let n = self.exps.len().max(other.exps.len());
        let mut exps = vec![0; n];
        for (i, e) in self.exps.iter().enumerate() {
            exps[i] += e;
        }
        for (i, e) in other.exps.iter().enumerate() {
            exps[i] += e;
        }
        JetMonomial::from_valid(exps)
    }

    pub fn pow(&self, n: i32) -> Result<JetMonomial, JetError> {
        JetMonomial::from_exponents(self.exps.iter().map(|e| e * n).collect())
    }

    /// Inverse in the Laurent ring; only units are invertible.
    pub fn inverse(&self) -> Option<JetMonomial> {
        if self.is_unit() {
            Some(JetMonomial::from_valid(self.exps.iter().map(|e| -e).collect()))
        } else {
            None
        }
    }

    /// `self / other` when the quotient stays inside the ring.
    pub fn div(&self, other: &JetMonomial) -> Result<JetMonomial, JetError> {
        let n = self.exps.len().max(other.exps.len());
        let mut exps = vec![0; n];
        for (i, e) in self.exps.iter().enumerate() {
            exps[i] += e;
        }
        for (i, e) in other.exps.iter().enumerate() {
            exps[i] -= e;
        }
        JetMonomial::from_exponents(exps)
    }

    /// Returns the monomial with the exponent of `order` shifted by `delta`.
    pub(crate) fn bump(&self, order: usize, delta: i32) -> JetMonomial {
        let mut exps = self.exps.clone();
        if exps.len() <= order {
            exps.resize(order + 1, 0);
        }
        exps[order] += delta;
        JetMonomial::from_valid(exps)
    }

    /// The monomial with the variable `order` removed entirely.
    pub(crate) fn without(&self, order: usize) -> JetMonomial {
        let mut exps = self.exps.clone();
        if order < exps.len() {
            exps[order] = 0;
        }
        JetMonomial::from_valid(exps)
    }
}

// Graded by highest jet order, then total degree, then lexicographic on the
// exponents read from the highest jet downwards.
impl Ord for JetMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.exps
            .len()
            .cmp(&other.exps.len())
            .then_with(|| self.degree().cmp(&other.degree()))
            .then_with(|| self.exps.iter().rev().cmp(other.exps.iter().rev()))
    }
}

impl PartialOrd for JetMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for JetMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", super::text::monomial_text(self, super::Chart::V))
    }
}
