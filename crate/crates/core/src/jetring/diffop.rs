//! Linear differential operators `sum_k c_k d_x^k` with jet-polynomial coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::combinatorics::binomial;

use super::{Chart, DiffPoly, Rational};

#[derive(Clone, PartialEq, Eq, Default)]
pub struct DiffOp {
    coeffs: BTreeMap<usize, DiffPoly>,
}

impl DiffOp {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn identity() -> Self {
        Self::multiplication(DiffPoly::one())
    }

    pub fn multiplication(c: DiffPoly) -> Self {
        Self::monomial(0, c)
    }

    /// `c * d_x^k`.
    pub fn monomial(k: usize, c: DiffPoly) -> Self {
        let mut op = DiffOp::zero();
        op.add_coeff(k, c);
        op
    }

    pub fn add_coeff(&mut self, k: usize, c: DiffPoly) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(k).or_default();
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&k);
        }
    }

    pub fn coeff(&self, k: usize) -> DiffPoly {
        self.coeffs.get(&k).cloned().unwrap_or_default()
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (&usize, &DiffPoly)> {
        self.coeffs.iter()
    }

    pub fn order(&self) -> Option<usize> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(&self, c: &Rational) -> DiffOp {
        let mut out = DiffOp::zero();
        for (k, p) in &self.coeffs {
            out.add_coeff(*k, p.scale(c));
        }
        out
    }

    pub fn apply(&self, f: &DiffPoly) -> DiffPoly {
        let mut out = DiffPoly::zero();
        let mut deriv = f.clone();
        let mut k = 0;
        for (&order, c) in &self.coeffs {
            while k < order {
                deriv = deriv.dx();
                k += 1;
            }
            out += c * &deriv;
        }
        out
    }

    /// `self ∘ other`, using `d_x^k ∘ b = sum_i C(k,i) d_x^i(b) d_x^{k-i}`.
    pub fn compose(&self, other: &DiffOp) -> DiffOp {
        let mut out = DiffOp::zero();
        for (&k, a) in &self.coeffs {
            for (&m, b) in &other.coeffs {
                let mut db = b.clone();
                for i in 0..=k {
                    if i > 0 {
                        db = db.dx();
                    }
                    let c = Rational::from(binomial(k as u64, i as u64));
                    out.add_coeff(k - i + m, (a * &db).scale(&c));
                }
            }
        }
        out
    }

    /// Formal adjoint, `(c d_x^k)^† = (-d_x)^k ∘ c`.
    pub fn adjoint(&self) -> DiffOp {
        let mut out = DiffOp::zero();
        for (&k, c) in &self.coeffs {
            let sign = if k % 2 == 0 { Rational::from_integer(1.into()) } else { Rational::from_integer((-1).into()) };
            let mut dc = c.clone();
            // (d^k ∘ c) = sum_i C(k,i) d^{k-i}(c) d^i
            let mut derivs = vec![dc.clone()];
            for _ in 0..k {
                dc = dc.dx();
                derivs.push(dc.clone());
            }
            for i in 0..=k {
                let b = Rational::from(binomial(k as u64, i as u64)) * &sign;
                out.add_coeff(i, derivs[k - i].scale(&b));
            }
        }
        out
    }

    pub fn is_self_adjoint(&self) -> bool {
        *self == self.adjoint()
    }

    pub fn is_skew_adjoint(&self) -> bool {
        self.adjoint() == -self
    }

    pub fn to_text(&self, chart: Chart) -> String {
        if self.coeffs.is_empty() {
            return "0".to_string();
        }
        self.coeffs
            .iter()
            .rev()
            .map(|(k, c)| match k {
                0 => format!("({})", super::text::poly_text(c, chart)),
                1 => format!("({})*Dx", super::text::poly_text(c, chart)),
                _ => format!("({})*Dx^{}", super::text::poly_text(c, chart), k),
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl Add for &DiffOp {
    type Output = DiffOp;
    fn add(self, rhs: &DiffOp) -> DiffOp {
        let mut out = self.clone();
        for (k, c) in &rhs.coeffs {
            out.add_coeff(*k, c.clone());
        }
        out
    }
}

impl Sub for &DiffOp {
    type Output = DiffOp;
    fn sub(self, rhs: &DiffOp) -> DiffOp {
        self + &(-rhs)
    }
}

impl Neg for &DiffOp {
    type Output = DiffOp;
    fn neg(self) -> DiffOp {
        DiffOp { coeffs: self.coeffs.iter().map(|(k, c)| (*k, -c)).collect() }
    }
}

impl fmt::Debug for DiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text(Chart::V))
    }
}
