//! Symbols `g(ξ)`, `ξ = ε d_x`, of constant-coefficient operators such as
//! `(Λ-1)/(Λ+1)` or `2ε d_x/(Λ-1)`.

use num_traits::{One, Zero};

use crate::jetring::{int, Rational};

use super::EpsError;

/// `g(ξ) = ξ^{-m} h(ξ)` with `h` known through `ξ^{known_order}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolOp {
    taylor: Vec<Rational>,
    pole: usize,
}

fn valuation(t: &[Rational]) -> usize {
    t.iter().position(|c| !c.is_zero()).unwrap_or(t.len())
}

impl SymbolOp {
    pub fn from_taylor(taylor: Vec<Rational>, pole: usize) -> Self {
        assert!(!taylor.is_empty());
        let mut s = SymbolOp { taylor, pole };
        while s.pole > 0 && s.taylor.len() > 1 && s.taylor[0].is_zero() {
            s.taylor.remove(0);
            s.pole -= 1;
        }
        s
    }

    pub fn constant(c: Rational, n: usize) -> Self {
        let mut t = vec![Rational::zero(); n + 1];
        t[0] = c;
        Self::from_taylor(t, 0)
    }

    pub fn identity(n: usize) -> Self {
        Self::constant(Rational::one(), n)
    }

    /// `ξ` itself.
    pub fn xi(n: usize) -> Self {
        let mut t = vec![Rational::zero(); n.max(1) + 1];
        t[1] = Rational::one();
        Self::from_taylor(t, 0)
    }

    /// `Λ^a = e^{aξ}`.
    pub fn shift(a: &Rational, n: usize) -> Self {
        let mut t = Vec::with_capacity(n + 1);
        let mut c = Rational::one();
        for k in 0..=n {
            if k > 0 {
                c = c * a / int(k as i64);
            }
            t.push(c.clone());
        }
        Self::from_taylor(t, 0)
    }

    pub fn taylor(&self) -> &[Rational] {
        &self.taylor
    }

    pub fn pole_order(&self) -> usize {
        self.pole
    }

    pub fn known_order(&self) -> usize {
        self.taylor.len() - 1
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_taylor(self.taylor.iter().map(|t| t * c).collect(), self.pole)
    }

    fn raised(&self, by: usize) -> Vec<Rational> {
        let mut t = vec![Rational::zero(); by];
        t.extend(self.taylor.iter().cloned());
        t
    }

    pub fn add(&self, other: &SymbolOp) -> SymbolOp {
        let m = self.pole.max(other.pole);
        let a = self.raised(m - self.pole);
        let b = other.raised(m - other.pole);
        let n = a.len().min(b.len());
        Self::from_taylor((0..n).map(|k| &a[k] + &b[k]).collect(), m)
    }

    pub fn sub(&self, other: &SymbolOp) -> SymbolOp {
        self.add(&other.scale(&-Rational::one()))
    }

    /// Product of symbols, i.e. composition of the operators.
    pub fn mul(&self, other: &SymbolOp) -> SymbolOp {
        let (va, vb) = (valuation(&self.taylor), valuation(&other.taylor));
        let n = (self.known_order() + vb).min(other.known_order() + va);
        let mut t = vec![Rational::zero(); n + 1];
        for (i, a) in self.taylor.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.taylor.iter().enumerate().take(n + 1 - i) {
                t[i + j] += a * b;
            }
        }
        Self::from_taylor(t, self.pole + other.pole)
    }

    pub fn inverse(&self) -> Result<SymbolOp, EpsError> {
        let v = valuation(&self.taylor);
        if v > self.known_order() {
            return Err(EpsError::NotInvertible);
        }
        let h = &self.taylor[v..];
        let n = h.len() - 1;
        let h0_inv = h[0].recip();
        let mut inv = vec![Rational::zero(); n + 1];
        inv[0] = h0_inv.clone();
        for k in 1..=n {
            let mut acc = Rational::zero();
            for i in 1..=k {
                acc += &h[i] * &inv[k - i];
            }
            inv[k] = -(&h0_inv * acc);
        }
        if self.pole >= v {
            let mut t = vec![Rational::zero(); self.pole - v];
            t.extend(inv);
            Ok(Self::from_taylor(t, 0))
        } else {
            Ok(Self::from_taylor(inv, v - self.pole))
        }
    }

    pub fn div(&self, other: &SymbolOp) -> Result<SymbolOp, EpsError> {
        Ok(self.mul(&other.inverse()?))
    }

    /// `(Λ^a - 1)/ξ = sum_k a^{k+1} ξ^k/(k+1)!`, pole free.
    pub fn difference_quotient(a: &Rational, n: usize) -> Self {
        let mut t = Vec::with_capacity(n + 1);
        let mut c = a.clone();
        for k in 0..=n {
            if k > 0 {
                c = c * a / int(k as i64 + 1);
            }
            t.push(c.clone());
        }
        Self::from_taylor(t, 0)
    }

    /// `(Λ-1)/(Λ+1) = tanh(ξ/2)`.
    pub fn tanh_half(n: usize) -> Self {
        let l = Self::shift(&int(1), n + 1);
        let one = Self::identity(n + 1);
        l.sub(&one).div(&l.add(&one)).expect("Λ+1 is invertible")
    }

    /// `1/(Λ+1)`.
    pub fn inv_shift_plus_one(n: usize) -> Self {
        let l = Self::shift(&int(1), n);
        l.add(&Self::identity(n)).inverse().expect("Λ+1 is invertible")
    }

    /// `1/(Λ-Λ^{-1})`, a simple pole.
    pub fn inv_shift_difference(n: usize) -> Self {
        let d = Self::shift(&int(1), n + 2).sub(&Self::shift(&int(-1), n + 2));
        d.inverse().expect("Λ-Λ^{-1} has a simple zero")
    }

    /// `2ξ/(Λ-1)`.
    pub fn log_kernel(n: usize) -> Self {
        let d = Self::shift(&int(1), n + 2).sub(&Self::identity(n + 2));
        Self::xi(n + 2).scale(&int(2)).div(&d).expect("Λ-1 has a simple zero")
    }
}
