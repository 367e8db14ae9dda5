//! Products, commutators, adjoints, residues and projections.

use std::collections::BTreeMap;

use crate::epsops::EpsSeries;

use super::{LatticeError, LaurentShiftOp, Shift, Tail};

/// Projections: `Plus` keeps `p >= 0`, `Minus` keeps `p < 0`; `Oplus` and
/// `Ominus` are the cuts with respect to `Λ^{-1}` (keep `p <= 0`, resp. `p > 0`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Part {
    Plus,
    Minus,
    Oplus,
    Ominus,
}

fn effective_top(a: &LaurentShiftOp) -> Option<Shift> {
    match (a.top(), a.tail, a.lo) {
        (Some(t), _, _) => Some(t),
        (None, Tail::Downward, Some(lo)) => Some(Shift(lo.0 - 1)),
        _ => None,
    }
}

fn effective_bottom(a: &LaurentShiftOp) -> Option<Shift> {
    match (a.bottom(), a.tail, a.hi) {
        (Some(b), _, _) => Some(b),
        (None, Tail::Upward, Some(hi)) => Some(Shift(hi.0 + 1)),
        _ => None,
    }
}

/// Window of `A∘B` that is determined by the known parts of `A` and `B`.
fn product_window(
    a: &LaurentShiftOp,
    b: &LaurentShiftOp,
) -> Result<(Tail, Option<Shift>, Option<Shift>), LatticeError> {
    let tail = match (a.tail, b.tail) {
        (Tail::Downward, Tail::Upward) | (Tail::Upward, Tail::Downward) => return Err(LatticeError::IncompatibleTails),
        (Tail::Downward, _) | (_, Tail::Downward) => Tail::Downward,
        (Tail::Upward, _) | (_, Tail::Upward) => Tail::Upward,
        _ => Tail::Finite,
    };
    let mut lo: Option<Shift> = None;
    let mut hi: Option<Shift> = None;
    let bump_lo = |cur: Option<Shift>, v: Shift| Some(cur.map_or(v, |c: Shift| c.max(v)));
    let bump_hi = |cur: Option<Shift>, v: Shift| Some(cur.map_or(v, |c: Shift| c.min(v)));
    if let (Some(al), Some(bt)) = (a.lo, effective_top(b)) {
        lo = bump_lo(lo, Shift(al.0 + bt.0));
    }
    if let (Some(bl), Some(at)) = (b.lo, effective_top(a)) {
        lo = bump_lo(lo, Shift(bl.0 + at.0));
    }
    if let (Some(ah), Some(bb)) = (a.hi, effective_bottom(b)) {
        hi = bump_hi(hi, Shift(ah.0 + bb.0));
    }
    if let (Some(bh), Some(ab)) = (b.hi, effective_bottom(a)) {
        hi = bump_hi(hi, Shift(bh.0 + ab.0));
    }
    Ok((tail, lo, hi))
}

/// `A∘B` using `Λ^p ∘ f = (Λ^p f) Λ^p`, on the largest window determined by
/// the operands.
pub fn op_mul(a: &LaurentShiftOp, b: &LaurentShiftOp) -> Result<LaurentShiftOp, LatticeError> {
    op_mul_window(a, b, None, None)
}

/// `A∘B` restricted to the requested window; fails if the request reaches
/// coefficients that depend on unknown operand coefficients.
pub fn op_mul_window(
    a: &LaurentShiftOp,
    b: &LaurentShiftOp,
    want_lo: Option<Shift>,
    want_hi: Option<Shift>,
) -> Result<LaurentShiftOp, LatticeError> {
    let (tail, lo, hi) = product_window(a, b)?;
    if let (Some(l), Some(w)) = (lo, want_lo) {
        if w < l {
            return Err(LatticeError::WindowUnderflow { needed: w });
        }
    }
    if let (Some(h), Some(w)) = (hi, want_hi) {
        if w > h {
            return Err(LatticeError::WindowUnderflow { needed: w });
        }
    }
    let lo = want_lo.or(lo);
    let hi = want_hi.or(hi);
    let order = a.order.min(b.order);
    let mut acc: BTreeMap<Shift, EpsSeries> = BTreeMap::new();
    for (p, ap) in &a.coeffs {
        let ap = ap.truncate(order);
        for (q, bq) in &b.coeffs {
            let n = Shift(p.0 + q.0);
            if lo.is_some_and(|l| n < l) || hi.is_some_and(|h| n > h) {
                continue;
            }
            let term = &ap * &bq.truncate(order).shift(&p.value());
            let slot = acc.entry(n).or_insert_with(|| EpsSeries::zero(order));
            *slot = &*slot + &term;
        }
    }
    let tail = match (tail, lo, hi) {
        (_, None, None) => Tail::Finite,
        (Tail::Finite, Some(_), _) => Tail::Downward,
        (Tail::Finite, None, Some(_)) => Tail::Upward,
        (t, _, _) => t,
    };
    let mut out = LaurentShiftOp::with_tail(tail, lo, hi, order);
    for (n, c) in acc {
        out.add_coeff(n, c);
    }
    out.order = order;
    Ok(out)
}

fn combine(a: &LaurentShiftOp, b: &LaurentShiftOp, sign: i64) -> Result<LaurentShiftOp, LatticeError> {
    let tail = match (a.tail, b.tail) {
        (Tail::Downward, Tail::Upward) | (Tail::Upward, Tail::Downward) => return Err(LatticeError::IncompatibleTails),
        (Tail::Finite, t) | (t, Tail::Finite) => t,
        (t, _) => t,
    };
    let lo = match (a.lo, b.lo) {
        (Some(x), Some(y)) => Some(x.max(y)),
        (x, y) => x.or(y),
    };
    let hi = match (a.hi, b.hi) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, y) => x.or(y),
    };
    let order = a.order.min(b.order);
    let mut out = LaurentShiftOp::with_tail(tail, lo, hi, order);
    let inside = |p: &Shift| lo.is_none_or(|l| *p >= l) && hi.is_none_or(|h| *p <= h);
    for (p, c) in a.coeffs.iter().filter(|(p, _)| inside(p)) {
        out.add_coeff(*p, c.truncate(order));
    }
    for (p, c) in b.coeffs.iter().filter(|(p, _)| inside(p)) {
        let c = if sign < 0 { -&c.truncate(order) } else { c.truncate(order) };
        out.add_coeff(*p, c);
    }
    out.order = order;
    Ok(out)
}

pub fn op_add(a: &LaurentShiftOp, b: &LaurentShiftOp) -> Result<LaurentShiftOp, LatticeError> {
    combine(a, b, 1)
}

pub fn op_sub(a: &LaurentShiftOp, b: &LaurentShiftOp) -> Result<LaurentShiftOp, LatticeError> {
    combine(a, b, -1)
}

pub fn op_commutator(a: &LaurentShiftOp, b: &LaurentShiftOp) -> Result<LaurentShiftOp, LatticeError> {
    op_sub(&op_mul(a, b)?, &op_mul(b, a)?)
}

/// Formal adjoint, `(f Λ^p)^† = Λ^{-p} ∘ f = (Λ^{-p} f) Λ^{-p}`.
pub fn op_adjoint(a: &LaurentShiftOp) -> LaurentShiftOp {
    let tail = match a.tail {
        Tail::Downward => Tail::Upward,
        Tail::Upward => Tail::Downward,
        Tail::Finite => Tail::Finite,
    };
    let flip = |s: Option<Shift>| s.map(|x| Shift(-x.0));
    let mut out = LaurentShiftOp::with_tail(tail, flip(a.hi), flip(a.lo), a.order);
    for (p, c) in &a.coeffs {
        let q = Shift(-p.0);
        out.add_coeff(q, c.shift(&q.value()));
    }
    out.order = a.order;
    out
}

pub fn op_residue(a: &LaurentShiftOp) -> Result<EpsSeries, LatticeError> {
    a.coeff(Shift(0))
}

pub fn op_project(a: &LaurentShiftOp, part: Part) -> Result<LaurentShiftOp, LatticeError> {
    // kept exponent range, in half-units
    let (klo, khi) = match part {
        Part::Plus => (Some(Shift(0)), None),
        Part::Minus => (None, Some(Shift(-1))),
        Part::Oplus => (None, Some(Shift(0))),
        Part::Ominus => (Some(Shift(1)), None),
    };
    let mut lo = a.lo;
    let mut hi = a.hi;
    if let (Some(k), Some(l)) = (klo, a.lo) {
        if l > k {
            return Err(LatticeError::WindowUnderflow { needed: k });
        }
        lo = None;
    }
    if let (Some(k), Some(h)) = (khi, a.hi) {
        if h < k {
            return Err(LatticeError::WindowUnderflow { needed: k });
        }
        hi = None;
    }
    let tail = match (lo, hi) {
        (None, None) => Tail::Finite,
        (Some(_), _) => Tail::Downward,
        (None, Some(_)) => Tail::Upward,
    };
    let mut out = LaurentShiftOp::with_tail(tail, lo, hi, a.order);
    for (p, c) in &a.coeffs {
        if klo.is_none_or(|k| *p >= k) && khi.is_none_or(|k| *p <= k) {
            out.add_coeff(*p, c.clone());
        }
    }
    out.order = a.order;
    Ok(out)
}
