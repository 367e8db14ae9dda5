//! The ring generated over the jets of `v` by `λ^{±1}`, `P = (v²-λ)^{-1}`
//! and `D = (v²-λ)^{-1/2}`.
//!
//! Every element is kept in the normal form `R + D·R`, where `R` is spanned
//! by `λ^m` (`m ∈ ℤ`) and `P^k` (`k ≥ 1`). Partial fractions in `λ` remove
//! mixed products:
//!
//! - `D·D = P`
//! - `λ·P = v²P - 1`
//! - `λ^{-1}·P = v^{-2}(λ^{-1} + P)`

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::One;

use crate::jetring::text::poly_text;
use crate::jetring::{int, rat, Chart, DiffPoly, JetMonomial, Rational};

/// Basis label of the normal form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Basis {
    /// `λ^m`.
    Lam(i64),
    /// `P^k`, `k >= 1`.
    P(u32),
    /// `D·λ^m`; `DLam(0)` is `D` itself.
    DLam(i64),
    /// `D·P^k`, `k >= 1`.
    DP(u32),
}

impl Basis {
    // (carries D, power of λ, power of P)
    fn parts(self) -> (bool, i64, u32) {
        match self {
            Basis::Lam(m) => (false, m, 0),
            Basis::P(k) => (false, 0, k),
            Basis::DLam(m) => (true, m, 0),
            Basis::DP(k) => (true, 0, k),
        }
    }

    fn with_d(self, d: bool) -> Basis {
        match (self, d) {
            (b, false) => b,
            (Basis::Lam(m), true) => Basis::DLam(m),
            (Basis::P(k), true) => Basis::DP(k),
            (b, true) => b,
        }
    }

    /// Power of `P` (0 for the `λ^m` labels).
    pub fn pole(self) -> u32 {
        self.parts().2
    }

    pub fn has_d(self) -> bool {
        self.parts().0
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Basis::Lam(0) => write!(f, "1"),
            Basis::Lam(m) => write!(f, "λ^{m}"),
            Basis::P(k) => write!(f, "P^{k}"),
            Basis::DLam(0) => write!(f, "D"),
            Basis::DLam(m) => write!(f, "D*λ^{m}"),
            Basis::DP(k) => write!(f, "D*P^{k}"),
        }
    }
}

fn v_pow(e: i32) -> JetMonomial {
    JetMonomial::var_pow(0, e).expect("v may carry any exponent")
}

// λ^m P^k reduced to the normal form, by (m, k).
type Reduced = Vec<(Basis, DiffPoly)>;

thread_local! {
    static REDUCE_CACHE: RefCell<HashMap<(i64, u32), Reduced>> = RefCell::new(HashMap::new());
}

/// `λ^m P^k` in the basis `{λ^j, P^i}`.
fn reduce_lam_p(m: i64, k: u32) -> Vec<(Basis, DiffPoly)> {
    if k == 0 {
        return vec![(Basis::Lam(m), DiffPoly::one())];
    }
    if m == 0 {
        return vec![(Basis::P(k), DiffPoly::one())];
    }
    if let Some(hit) = REDUCE_CACHE.with(|c| c.borrow().get(&(m, k)).cloned()) {
        return hit;
    }
    let mut acc: BTreeMap<Basis, DiffPoly> = BTreeMap::new();
    let mut push = |terms: Vec<(Basis, DiffPoly)>, e: i32, c: Rational| {
        for (b, p) in terms {
            let slot = acc.entry(b).or_insert_with(DiffPoly::zero);
            *slot += p.mul_monomial(&v_pow(e), &c);
        }
    };
    if m > 0 {
        // λ^m P^k = λ^{m-1}(v² P^k - P^{k-1})
        push(reduce_lam_p(m - 1, k), 2, Rational::one());
        push(reduce_lam_p(m - 1, k - 1), 0, int(-1));
    } else {
        // λ^m P^k = v^{-2}(λ^m P^{k-1} + λ^{m+1} P^k)
        push(reduce_lam_p(m, k - 1), -2, Rational::one());
        push(reduce_lam_p(m + 1, k), -2, Rational::one());
    }
    let out: Vec<(Basis, DiffPoly)> = acc.into_iter().filter(|(_, p)| !p.is_zero()).collect();
    REDUCE_CACHE.with(|c| c.borrow_mut().insert((m, k), out.clone()));
    out
}

/// An element of the ring in normal form.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct LambdaRingElem {
    parts: BTreeMap<Basis, DiffPoly>,
}

impl LambdaRingElem {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `c·b` for a basis label `b`.
    pub fn basis(b: Basis, c: DiffPoly) -> Self {
        let mut out = Self::zero();
        out.add_to(b, c);
        out
    }

    pub fn from_poly(c: DiffPoly) -> Self {
        Self::basis(Basis::Lam(0), c)
    }

    pub fn one() -> Self {
        Self::from_poly(DiffPoly::one())
    }

    pub fn lambda(m: i64) -> Self {
        Self::basis(Basis::Lam(m), DiffPoly::one())
    }

    pub fn p() -> Self {
        Self::basis(Basis::P(1), DiffPoly::one())
    }

    pub fn d() -> Self {
        Self::basis(Basis::DLam(0), DiffPoly::one())
    }

    /// `c·D^d·λ^m·P^k` reduced to normal form; `d` may be 0, 1 or 2.
    pub fn monomial(d: u8, m: i64, k: u32, c: &DiffPoly) -> Self {
        let mut out = Self::zero();
        out.add_reduced(d, m, k, c);
        out
    }

    fn add_reduced(&mut self, d: u8, m: i64, k: u32, c: &DiffPoly) {
        if c.is_zero() {
            return;
        }
        let (has_d, k) = match d {
            0 => (false, k),
            1 => (true, k),
            _ => (false, k + 1),
        };
        for (b, p) in reduce_lam_p(m, k) {
            self.add_to(b.with_d(has_d), &p * c);
        }
    }

    fn add_to(&mut self, b: Basis, c: DiffPoly) {
        if c.is_zero() {
            return;
        }
        let merged = match self.parts.remove(&b) {
            Some(old) => old + c,
            None => c,
        };
        if !merged.is_zero() {
            self.parts.insert(b, merged);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn coeff(&self, b: Basis) -> DiffPoly {
        self.parts.get(&b).cloned().unwrap_or_else(DiffPoly::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Basis, &DiffPoly)> {
        self.parts.iter()
    }

    /// Highest power of `P` present (with or without `D`).
    pub fn max_pole(&self) -> u32 {
        self.parts.keys().map(|b| b.pole()).max().unwrap_or(0)
    }

    pub fn mul_poly(&self, c: &DiffPoly) -> Self {
        let mut out = Self::zero();
        if c.is_zero() {
            return out;
        }
        for (b, p) in &self.parts {
            out.add_to(*b, p * c);
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero();
        for (b, p) in &self.parts {
            out.add_to(*b, p.scale(c));
        }
        out
    }

    /// Total x-derivative, with `dx P = -2 v v_x P²` and `dx D = -v v_x D P`.
    pub fn dx(&self) -> Self {
        let vvx = DiffPoly::term(Rational::one(), JetMonomial::var(0).mul(&JetMonomial::var(1)));
        let mut out = Self::zero();
        for (b, c) in &self.parts {
            out.add_to(*b, c.dx());
            let (d, m, k) = b.parts();
            let weight = 2 * k as i64 + d as i64;
            if weight != 0 {
                out.add_reduced(d as u8, m, k + 1, &(c * &vvx).scale(&int(-weight)));
            }
        }
        out
    }

    pub fn dx_n(&self, n: usize) -> Self {
        let mut out = self.clone();
        for _ in 0..n {
            out = out.dx();
        }
        out
    }

    /// Derivative in `λ`, with `∂λ P = P²` and `∂λ D = D P / 2`.
    pub fn d_lambda(&self) -> Self {
        let mut out = Self::zero();
        for (b, c) in &self.parts {
            let (d, m, k) = b.parts();
            if m != 0 {
                out.add_reduced(d as u8, m - 1, k, &c.scale(&int(m)));
            }
            let weight = rat(2 * k as i64 + d as i64, 2);
            if k > 0 || d {
                out.add_reduced(d as u8, m, k + 1, &c.scale(&weight));
            }
        }
        out
    }

    pub fn to_text(&self) -> String {
        if self.parts.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self.parts.iter().map(|(b, c)| format!("({})*{b}", poly_text(c, Chart::V))).collect();
        parts.join(" + ")
    }
}

impl Add for &LambdaRingElem {
    type Output = LambdaRingElem;
    fn add(self, rhs: &LambdaRingElem) -> LambdaRingElem {
        let mut out = self.clone();
        for (b, c) in &rhs.parts {
            out.add_to(*b, c.clone());
        }
        out
    }
}

impl Sub for &LambdaRingElem {
    type Output = LambdaRingElem;
    fn sub(self, rhs: &LambdaRingElem) -> LambdaRingElem {
        let mut out = self.clone();
        for (b, c) in &rhs.parts {
            out.add_to(*b, -c);
        }
        out
    }
}

impl Neg for &LambdaRingElem {
    type Output = LambdaRingElem;
    fn neg(self) -> LambdaRingElem {
        self.scale(&int(-1))
    }
}

impl Mul for &LambdaRingElem {
    type Output = LambdaRingElem;
    fn mul(self, rhs: &LambdaRingElem) -> LambdaRingElem {
        let mut out = LambdaRingElem::zero();
        for (a, ca) in &self.parts {
            let (da, ma, ka) = a.parts();
            for (b, cb) in &rhs.parts {
                let (db, mb, kb) = b.parts();
                out.add_reduced(da as u8 + db as u8, ma + mb, ka + kb, &(ca * cb));
            }
        }
        out
    }
}

impl fmt::Debug for LambdaRingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Display for LambdaRingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}
