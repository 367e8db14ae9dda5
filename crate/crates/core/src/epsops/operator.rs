//! Differential operators with ε-series coefficients, `sum_k ε^k A_k`.
//!
//! Any pole-free symbol `g(ε d_x)`, any shift `Λ^a` and any multiplication
//! operator expands into this form, which makes operator identities such as
//! `D∘P∘D^† = P̃` checkable coefficient by coefficient.

use std::ops::{Add, Neg, Sub};

use crate::jetring::{frechet, Chart, DiffOp, DiffPoly, Rational};

use super::{EpsError, EpsSeries, SymbolOp};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EpsDiffOp {
    terms: Vec<DiffOp>,
}

impl EpsDiffOp {
    pub fn zero(order: usize) -> Self {
        EpsDiffOp { terms: vec![DiffOp::zero(); order + 1] }
    }

    pub fn identity(order: usize) -> Self {
        Self::multiplication(&EpsSeries::one(order))
    }

    pub fn order(&self) -> usize {
        self.terms.len() - 1
    }

    pub fn term(&self, k: usize) -> &DiffOp {
        &self.terms[k]
    }

    pub fn is_zero(&self) -> bool {
        self.terms.iter().all(DiffOp::is_zero)
    }

    pub fn multiplication(f: &EpsSeries) -> Self {
        EpsDiffOp { terms: f.coeffs().iter().map(|c| DiffOp::multiplication(c.clone())).collect() }
    }

    /// `g(ε d_x) = sum_k g_k ε^k d_x^k`; symbols with poles are refused.
    pub fn symbol(g: &SymbolOp, order: usize) -> Result<Self, EpsError> {
        if g.pole_order() > 0 {
            return Err(EpsError::PoleInOperator);
        }
        let order = order.min(g.known_order());
        let terms = (0..=order).map(|k| DiffOp::monomial(k, DiffPoly::constant(g.taylor()[k].clone()))).collect();
        Ok(EpsDiffOp { terms })
    }

    /// `d_x` itself (no ε attached).
    pub fn dx(order: usize) -> Self {
        let mut terms = vec![DiffOp::zero(); order + 1];
        terms[0] = DiffOp::monomial(1, DiffPoly::one());
        EpsDiffOp { terms }
    }

    /// Division by `ε`; the `ε^0` term must vanish and the order drops by one.
    pub fn div_eps(&self) -> Result<Self, EpsError> {
        if !self.terms[0].is_zero() || self.terms.len() < 2 {
            return Err(EpsError::EpsDivision);
        }
        Ok(EpsDiffOp { terms: self.terms[1..].to_vec() })
    }

    pub fn shift(a: &Rational, order: usize) -> Self {
        Self::symbol(&SymbolOp::shift(a, order), order).expect("shifts have no poles")
    }

    /// Linearization of the differential function `f` (coefficientwise).
    pub fn frechet(f: &EpsSeries) -> Self {
        EpsDiffOp { terms: f.coeffs().iter().map(frechet).collect() }
    }

    pub fn truncate(&self, order: usize) -> Self {
        EpsDiffOp { terms: self.terms[..=order.min(self.order())].to_vec() }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        EpsDiffOp { terms: self.terms.iter().map(|t| t.scale(c)).collect() }
    }

    fn valuation(&self) -> usize {
        self.terms.iter().position(|t| !t.is_zero()).unwrap_or(self.terms.len())
    }

    pub fn compose(&self, other: &EpsDiffOp) -> EpsDiffOp {
        let (va, vb) = (self.valuation(), other.valuation());
        let order = (self.order() + vb).min(other.order() + va).min(self.order().max(other.order()));
        let mut out = EpsDiffOp::zero(order);
        for i in 0..=self.order().min(order) {
            if self.terms[i].is_zero() {
                continue;
            }
            for j in 0..=other.order().min(order - i) {
                if !other.terms[j].is_zero() {
                    let c = self.terms[i].compose(&other.terms[j]);
                    out.terms[i + j] = &out.terms[i + j] + &c;
                }
            }
        }
        out
    }

    pub fn adjoint(&self) -> EpsDiffOp {
        EpsDiffOp { terms: self.terms.iter().map(DiffOp::adjoint).collect() }
    }

    pub fn is_skew_adjoint(&self) -> bool {
        self.adjoint() == -self
    }

    pub fn apply(&self, f: &EpsSeries) -> EpsSeries {
        let order = self.order().min(f.order());
        let mut coeffs = vec![DiffPoly::zero(); order + 1];
        for (i, op) in self.terms.iter().enumerate().take(order + 1) {
            if op.is_zero() {
                continue;
            }
            for (j, c) in f.coeffs().iter().enumerate().take(order + 1 - i) {
                coeffs[i + j] += op.apply(c);
            }
        }
        EpsSeries::from_coeffs(coeffs)
    }

    pub fn to_text(&self, chart: Chart) -> String {
        let parts: Vec<String> = self
            .terms
            .iter()
            .enumerate()
            .filter(|(_, t)| !t.is_zero())
            .map(|(k, t)| match k {
                0 => format!("[{}]", t.to_text(chart)),
                _ => format!("eps^{k}*[{}]", t.to_text(chart)),
            })
            .collect();
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }
}

impl Add for &EpsDiffOp {
    type Output = EpsDiffOp;
    fn add(self, rhs: &EpsDiffOp) -> EpsDiffOp {
        let n = self.order().min(rhs.order());
        EpsDiffOp { terms: (0..=n).map(|k| &self.terms[k] + &rhs.terms[k]).collect() }
    }
}

impl Sub for &EpsDiffOp {
    type Output = EpsDiffOp;
    fn sub(self, rhs: &EpsDiffOp) -> EpsDiffOp {
        let n = self.order().min(rhs.order());
        EpsDiffOp { terms: (0..=n).map(|k| &self.terms[k] - &rhs.terms[k]).collect() }
    }
}

impl Neg for &EpsDiffOp {
    type Output = EpsDiffOp;
    fn neg(self) -> EpsDiffOp {
        EpsDiffOp { terms: self.terms.iter().map(|t| -t).collect() }
    }
}
