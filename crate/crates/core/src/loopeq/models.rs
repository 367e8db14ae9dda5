//! Kernels of the two loop equations in the jets of `v`.
//!
//! Both equations have the shape
//!
//! `sum_s ∂ΔF/∂v^{(s)} A_s = ε² q sum_{k,l} B_k B_l (∂²ΔF/∂v^{(k)}∂v^{(l)} + ∂ΔF/∂v^{(k)} ∂ΔF/∂v^{(l)})
//!  + ε² sum_k C_k ∂ΔF/∂v^{(k)} + S`
//!
//! with ring-valued kernels `A_s`, `B_k`, `C_k` and source `S`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::combinatorics::binomial;
use crate::jetring::{int, rat, DiffPoly, JetMonomial, Rational};

use super::ring::LambdaRingElem;
use super::LoopError;

/// Which loop equation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum LoopModel {
    /// The generalized Frobenius manifold with potential `v^4/12`.
    #[serde(rename = "gfm-v4")]
    GfmV4,
    /// The `(-1/2, 1, 1)` fractional Volterra equation, rewritten in `v = e^w`.
    #[serde(rename = "fvh")]
    Fvh,
}

impl fmt::Display for LoopModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LoopModel::GfmV4 => "gfm-v4",
            LoopModel::Fvh => "fvh",
        })
    }
}

impl FromStr for LoopModel {
    type Err = LoopError;
    fn from_str(s: &str) -> Result<Self, LoopError> {
        match s {
            "gfm-v4" | "gfm" => Ok(LoopModel::GfmV4),
            "fvh" | "fvh-hodge" => Ok(LoopModel::Fvh),
            other => Err(LoopError::UnknownModel(other.to_string())),
        }
    }
}

fn mono(exps: &[i32], c: Rational) -> DiffPoly {
    DiffPoly::term(c, JetMonomial::from_exponents(exps.to_vec()).expect("exponents on v and v_x only"))
}

fn poly_elem(exps: &[i32], c: Rational) -> LambdaRingElem {
    LambdaRingElem::from_poly(mono(exps, c))
}

/// Kernel tables for one model, grown on demand.
pub struct Kernels {
    model: LoopModel,
    lhs: Vec<LambdaRingElem>,
    quad: Vec<LambdaRingElem>,
    lin: Vec<LambdaRingElem>,
    // dx^j of the building blocks of A_s
    first: Vec<LambdaRingElem>,
    second: Vec<LambdaRingElem>,
    left: Vec<LambdaRingElem>,
    right: Vec<LambdaRingElem>,
    quad_seed: Vec<LambdaRingElem>,
    lin_seed: Vec<LambdaRingElem>,
}

fn grow(v: &mut Vec<LambdaRingElem>, n: usize) {
    while v.len() <= n {
        let next = v.last().expect("seeded").dx();
        v.push(next);
    }
}

impl Kernels {
    pub fn new(model: LoopModel) -> Self {
        let lam = LambdaRingElem::lambda;
        let p = LambdaRingElem::p();
        let d = LambdaRingElem::d();
        let v2vx = mono(&[2, 1], int(1));
        let p3 = &(&p * &p) * &p;
        let (first, second, left, right, quad_seed, lin_seed) = match model {
            LoopModel::GfmV4 => {
                // 1/(2v(v²-λ)), (D - 1/v)/(2λ), (vD - 1)/(2λ), D
                let first = p.mul_poly(&mono(&[-1], rat(1, 2)));
                let half_inv = lam(-1).scale(&rat(1, 2));
                let second = &half_inv * &(&d - &poly_elem(&[-1], int(1)));
                let left = &half_inv * &(&d.mul_poly(&DiffPoly::var(0)) - &LambdaRingElem::one());
                let lin_seed = p3.mul_poly(&v2vx).scale(&rat(1, 2));
                (first, second, left, d.clone(), d.clone(), lin_seed)
            }
            LoopModel::Fvh => {
                // v³/(v²-λ), vD, λD
                let first = p.mul_poly(&mono(&[3], int(1)));
                let left = d.mul_poly(&DiffPoly::var(0));
                let lam_d = &lam(1) * &d;
                let lin_seed = &(&lam(2) * &p3) * &LambdaRingElem::from_poly(v2vx);
                (first, LambdaRingElem::zero(), left, lam_d.clone(), lam_d, lin_seed)
            }
        };
        Kernels {
            model,
            lhs: Vec::new(),
            quad: Vec::new(),
            lin: Vec::new(),
            first: vec![first],
            second: vec![second],
            left: vec![left],
            right: vec![right],
            quad_seed: vec![quad_seed],
            lin_seed: vec![lin_seed],
        }
    }

    pub fn model(&self) -> LoopModel {
        self.model
    }

    /// Coefficient `q` of the quadratic term.
    pub fn quad_scale(&self) -> Rational {
        match self.model {
            LoopModel::GfmV4 => rat(1, 2),
            LoopModel::Fvh => int(1),
        }
    }

    /// Source `S`, present at genus one only.
    pub fn source(&self) -> LambdaRingElem {
        let p = LambdaRingElem::p();
        let p2 = &p * &p;
        match self.model {
            LoopModel::GfmV4 => p2.scale(&rat(-1, 16)),
            LoopModel::Fvh => {
                // -(2λv² - v⁴)/(8(v²-λ)²)
                let num = &LambdaRingElem::lambda(1).mul_poly(&mono(&[2], int(2))) - &poly_elem(&[4], int(1));
                (&num * &p2).scale(&rat(-1, 8))
            }
        }
    }

    /// `A_s`, the kernel multiplying `∂ΔF/∂v^{(s)}`.
    pub fn lhs(&mut self, s: usize) -> &LambdaRingElem {
        while self.lhs.len() <= s {
            let n = self.lhs.len();
            grow(&mut self.first, n);
            let mut a = self.first[n].clone();
            if n >= 1 {
                if !self.second[0].is_zero() {
                    grow(&mut self.second, n);
                    a = &a + &self.second[n].scale(&int(n as i64));
                }
                grow(&mut self.left, n - 1);
                grow(&mut self.right, n);
                for k in 1..=n {
                    let c = Rational::from_integer(binomial(n as u64, k as u64));
                    let prod = &self.left[k - 1] * &self.right[n + 1 - k];
                    a = &a + &prod.scale(&c);
                }
            }
            self.lhs.push(a);
        }
        &self.lhs[s]
    }

    /// `B_k`.
    pub fn quad(&mut self, k: usize) -> &LambdaRingElem {
        grow(&mut self.quad_seed, k + 1);
        while self.quad.len() <= k {
            let n = self.quad.len();
            self.quad.push(self.quad_seed[n + 1].clone());
        }
        &self.quad[k]
    }

    /// `C_k`.
    pub fn lin(&mut self, k: usize) -> &LambdaRingElem {
        grow(&mut self.lin_seed, k + 1);
        while self.lin.len() <= k {
            let n = self.lin.len();
            self.lin.push(self.lin_seed[n + 1].clone());
        }
        &self.lin[k]
    }
}
