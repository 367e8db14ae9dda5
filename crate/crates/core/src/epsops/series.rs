//! Truncated power series in ε with differential-polynomial coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::jetring::{antiderivative, frechet, int, Chart, DiffPoly, Rational};

use super::{EpsError, SymbolOp};

/// `sum_{k=0}^{K} c_k ε^k + O(ε^{K+1})`.
///
/// `order` is the highest power whose coefficient is known. Binary operations
/// never claim more than either operand knows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct EpsSeries {
    coeffs: Vec<DiffPoly>,
}

impl EpsSeries {
    pub fn zero(order: usize) -> Self {
        EpsSeries { coeffs: vec![DiffPoly::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        Self::from_poly(DiffPoly::one(), order)
    }

    pub fn constant(c: Rational, order: usize) -> Self {
        Self::from_poly(DiffPoly::constant(c), order)
    }

    pub fn from_poly(p: DiffPoly, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = p;
        s
    }

    /// The field itself, `U` (jet slot 0), as a series.
    pub fn field(order: usize) -> Self {
        Self::from_poly(DiffPoly::var(0), order)
    }

    /// `ε^k` known through `order`.
    pub fn eps_pow(k: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = DiffPoly::one();
        }
        s
    }

    /// Builds a series from coefficients `c_0, ..., c_K`; `K = len - 1`.
    pub fn from_coeffs(coeffs: Vec<DiffPoly>) -> Self {
        assert!(!coeffs.is_empty(), "a series knows at least its ε^0 coefficient");
        EpsSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &DiffPoly {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[DiffPoly] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<DiffPoly> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(DiffPoly::is_zero)
    }

    /// Lowest power with a nonzero coefficient, or `order + 1` for zero.
    pub fn valuation(&self) -> usize {
        self.coeffs.iter().position(|c| !c.is_zero()).unwrap_or(self.coeffs.len())
    }

    pub fn truncate(&self, order: usize) -> EpsSeries {
        let n = order.min(self.order());
        EpsSeries { coeffs: self.coeffs[..=n].to_vec() }
    }

    pub fn map(&self, f: impl Fn(&DiffPoly) -> DiffPoly) -> EpsSeries {
        EpsSeries { coeffs: self.coeffs.iter().map(f).collect() }
    }

    pub fn try_map<E>(&self, f: impl Fn(&DiffPoly) -> Result<DiffPoly, E>) -> Result<EpsSeries, E> {
        Ok(EpsSeries { coeffs: self.coeffs.iter().map(f).collect::<Result<_, _>>()? })
    }

    pub fn scale(&self, c: &Rational) -> EpsSeries {
        self.map(|p| p.scale(c))
    }

    pub fn mul_poly(&self, p: &DiffPoly) -> EpsSeries {
        self.map(|c| c * p)
    }

    pub fn dx(&self) -> EpsSeries {
        self.map(DiffPoly::dx)
    }

    /// Multiplication by `ε^k`; the known order grows by `k`.
    pub fn mul_eps(&self, k: usize) -> EpsSeries {
        let mut coeffs = vec![DiffPoly::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        EpsSeries { coeffs }
    }

    /// Division by `ε`; requires a vanishing `ε^0` coefficient and lowers the
    /// known order by one.
    pub fn div_eps(&self) -> Result<EpsSeries, EpsError> {
        if !self.coeffs[0].is_zero() {
            return Err(EpsError::EpsDivision);
        }
        if self.coeffs.len() == 1 {
            return Err(EpsError::EpsDivision);
        }
        Ok(EpsSeries { coeffs: self.coeffs[1..].to_vec() })
    }

    /// `Λ^a f = sum_j (aε)^j / j! dx^j f`.
    pub fn shift(&self, a: &Rational) -> EpsSeries {
        if a.is_zero() {
            return self.clone();
        }
        let k = self.order();
        let mut out = EpsSeries::zero(k);
        for (i, c) in self.coeffs.iter().enumerate() {
            let mut d = c.clone();
            let mut w = Rational::one();
            for j in 0..=(k - i) {
                if j > 0 {
                    d = d.dx();
                    w = w * a / int(j as i64);
                }
                if d.is_zero() {
                    break;
                }
                out.coeffs[i + j] += d.scale(&w);
            }
        }
        out
    }

    /// `g(ε d_x) f`; for a symbol with a pole of order `m` this is
    /// `h(ε d_x) d_x^{-m} f` with `g = ξ^{-m} h`, so the caller owns the
    /// missing `ε^{-m}`.
    pub fn apply_symbol(&self, g: &SymbolOp) -> Result<EpsSeries, EpsError> {
        let mut base = self.clone();
        for _ in 0..g.pole_order() {
            base = base.try_map(|c| {
                let q = antiderivative(c)?;
                q.as_poly().cloned().ok_or(EpsError::LogInSeries)
            })?;
        }
        let h = g.taylor();
        let val = base.valuation();
        let order = base.order().min(g.known_order().saturating_add(val));
        let mut out = EpsSeries::zero(order);
        for (i, c) in base.coeffs.iter().enumerate().take(order + 1) {
            if c.is_zero() {
                continue;
            }
            let mut d = c.clone();
            for (k, hk) in h.iter().enumerate().take(order - i + 1) {
                if k > 0 {
                    d = d.dx();
                }
                if d.is_zero() {
                    break;
                }
                if !hk.is_zero() {
                    out.coeffs[i + k] += d.scale(hk);
                }
            }
        }
        Ok(out)
    }

    /// Multiplicative inverse, defined when the `ε^0` coefficient is a single
    /// unit monomial.
    pub fn invert(&self) -> Result<EpsSeries, EpsError> {
        let (m, c) = self.coeffs[0].as_single_term().ok_or(EpsError::NotInvertible)?;
        let inv_m = m.inverse().ok_or(EpsError::NotInvertible)?;
        let lead_inv = DiffPoly::term(c.recip(), inv_m);
        let k = self.order();
        let mut out = EpsSeries::zero(k);
        out.coeffs[0] = lead_inv.clone();
        for n in 1..=k {
            let mut acc = DiffPoly::zero();
            for i in 1..=n {
                if !self.coeffs[i].is_zero() && !out.coeffs[n - i].is_zero() {
                    acc += &self.coeffs[i] * &out.coeffs[n - i];
                }
            }
            out.coeffs[n] = -(&lead_inv * &acc);
        }
        Ok(out)
    }

    /// `ε^{2k} -> (-2)^k ε^{2k}`; odd powers are rejected.
    pub fn eps_sign_substitute(&self) -> Result<EpsSeries, EpsError> {
        let mut out = self.clone();
        let mut w = Rational::one();
        for (k, c) in out.coeffs.iter_mut().enumerate() {
            if k % 2 == 1 {
                if !c.is_zero() {
                    return Err(EpsError::OddPower { power: k });
                }
                continue;
            }
            if k > 0 {
                w *= int(-2);
            }
            *c = c.scale(&w);
        }
        Ok(out)
    }

    /// `ε -> -ε`.
    pub fn flip_eps(&self) -> EpsSeries {
        let mut out = self.clone();
        for (k, c) in out.coeffs.iter_mut().enumerate() {
            if k % 2 == 1 {
                *c = -&*c;
            }
        }
        out
    }

    /// First-order variation of `self` along `g`: `sum ε^{i+j} f_i'[g_j]`.
    pub fn frechet_apply(&self, g: &EpsSeries) -> EpsSeries {
        let order = self.order().min(g.order());
        let mut out = EpsSeries::zero(order);
        for (i, f) in self.coeffs.iter().enumerate().take(order + 1) {
            if f.is_zero() {
                continue;
            }
            let op = frechet(f);
            for (j, gj) in g.coeffs.iter().enumerate().take(order - i + 1) {
                if !gj.is_zero() {
                    out.coeffs[i + j] += op.apply(gj);
                }
            }
        }
        out
    }

    /// Replace the field by another series: `f(U) -> f(V)`, with `V` given as
    /// a series whose `ε^0` part is a unit monomial whenever `f` has negative
    /// exponents.
    pub fn compose_field(&self, v: &EpsSeries) -> Result<EpsSeries, EpsError> {
        let order = self.order().min(v.order());
        let max_jet = self.coeffs.iter().filter_map(DiffPoly::max_order).max().unwrap_or(0);
        let mut jets = vec![v.truncate(order)];
        for s in 1..=max_jet {
            let next = jets[s - 1].dx();
            jets.push(next);
        }
        let mut inverses: Vec<Option<EpsSeries>> = vec![None; max_jet + 1];
        let mut out = EpsSeries::zero(order);
        for (k, c) in self.coeffs.iter().enumerate().take(order + 1) {
            for (m, a) in c.terms() {
                let mut term = EpsSeries::constant(a.clone(), order - k);
                for (s, &e) in m.exponents().iter().enumerate() {
                    if e == 0 {
                        continue;
                    }
                    let base = if e > 0 {
                        jets[s].truncate(order - k)
                    } else {
                        if inverses[s].is_none() {
                            inverses[s] = Some(jets[s].invert()?);
                        }
                        inverses[s].as_ref().expect("just filled").truncate(order - k)
                    };
                    for _ in 0..e.unsigned_abs() {
                        term = &term * &base;
                    }
                }
                let shifted = term.mul_eps(k);
                out = &out + &shifted;
            }
        }
        Ok(out.truncate(order))
    }

    pub fn to_text(&self, chart: Chart) -> String {
        let mut parts = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let body = crate::jetring::text::poly_text(c, chart);
            parts.push(match k {
                0 => format!("({body})"),
                1 => format!("eps*({body})"),
                _ => format!("eps^{k}*({body})"),
            });
        }
        if parts.is_empty() {
            parts.push("0".to_string());
        }
        format!("{} + O(eps^{})", parts.join(" + "), self.order() + 1)
    }
}

impl Add for &EpsSeries {
    type Output = EpsSeries;
    fn add(self, rhs: &EpsSeries) -> EpsSeries {
        let order = self.order().min(rhs.order());
        EpsSeries { coeffs: (0..=order).map(|k| &self.coeffs[k] + &rhs.coeffs[k]).collect() }
    }
}

impl Sub for &EpsSeries {
    type Output = EpsSeries;
    fn sub(self, rhs: &EpsSeries) -> EpsSeries {
        let order = self.order().min(rhs.order());
        EpsSeries { coeffs: (0..=order).map(|k| &self.coeffs[k] - &rhs.coeffs[k]).collect() }
    }
}

impl Neg for &EpsSeries {
    type Output = EpsSeries;
    fn neg(self) -> EpsSeries {
        self.map(|c| -c)
    }
}

impl Mul for &EpsSeries {
    type Output = EpsSeries;
    fn mul(self, rhs: &EpsSeries) -> EpsSeries {
        let (va, vb) = (self.valuation(), rhs.valuation());
        let order = (self.order() + vb).min(rhs.order() + va).min(self.order().max(rhs.order()));
        let mut out = EpsSeries::zero(order);
        for i in va..=self.order().min(order) {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in vb..=rhs.order().min(order - i) {
                if !rhs.coeffs[j].is_zero() {
                    out.coeffs[i + j] += &self.coeffs[i] * &rhs.coeffs[j];
                }
            }
        }
        out
    }
}

impl fmt::Debug for EpsSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text(Chart::U))
    }
}
