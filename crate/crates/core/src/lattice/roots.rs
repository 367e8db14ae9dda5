//! Square roots, inverses and half-integer powers of monic operators.

use crate::epsops::{EpsSeries, SymbolOp};

use super::ops::op_mul;
use super::{LatticeError, LaurentShiftOp, Shift, Tail};

fn leading(a: &LaurentShiftOp, tail: Tail) -> Result<(Shift, EpsSeries), LatticeError> {
    let end = match tail {
        Tail::Downward => a.top(),
        Tail::Upward => a.bottom(),
        Tail::Finite => return Err(LatticeError::Shape("a root needs an infinite direction".into())),
    };
    let end = end.ok_or_else(|| LatticeError::Shape("operator has no leading term in that direction".into()))?;
    Ok((end, a.coeff(end)?))
}

/// The square root with leading term `Λ^{t/2}`, expanded in the direction of
/// `tail`, where `Λ^t` is the monic leading term of `a` on that side.
///
/// Coefficients are computed down to `until` (downward) or up to `until`
/// (upward). Each one solves `(Λ^{t/2} + 1) s = rhs`; the pivot symbol is 2
/// at `ξ = 0`, so it is always invertible.
pub fn op_sqrt(a: &LaurentShiftOp, tail: Tail, until: Shift) -> Result<LaurentShiftOp, LatticeError> {
    let (end, lead) = leading(a, tail)?;
    let order = a.order();
    if lead != EpsSeries::one(lead.order()) {
        return Err(LatticeError::Shape("leading coefficient must be 1".into()));
    }
    if end.0 % 2 != 0 {
        return Err(LatticeError::Shape("leading exponent is not on the root lattice".into()));
    }
    let t = Shift(end.0 / 2);
    let dir: i64 = if tail == Tail::Downward { -1 } else { 1 };
    let steps = (until.0 - t.0) * dir;
    if steps < 0 {
        return Err(LatticeError::WindowUnderflow { needed: until });
    }
    let pivot = SymbolOp::shift(&t.value(), order + 1)
        .add(&SymbolOp::identity(order + 1))
        .inverse()
        .expect("Λ^t + 1 is invertible");
    let mut s: Vec<EpsSeries> = vec![EpsSeries::one(order)];
    for k in 1..=steps {
        let mut rhs = a.coeff(Shift(end.0 + dir * k))?;
        for i in 1..k {
            let j = k - i;
            if s[i as usize].is_zero() || s[j as usize].is_zero() {
                continue;
            }
            let shifted = s[j as usize].shift(&Shift(t.0 + dir * i).value());
            rhs = &rhs - &(&s[i as usize] * &shifted);
        }
        s.push(rhs.apply_symbol(&pivot)?);
    }
    let (lo, hi) = if tail == Tail::Downward { (Some(until), None) } else { (None, Some(until)) };
    let mut out = LaurentShiftOp::with_tail(tail, lo, hi, order);
    for (k, c) in s.into_iter().enumerate() {
        out.add_coeff(Shift(t.0 + dir * k as i64), c);
    }
    out.order = order;
    let check = op_mul(&out, &out)?;
    let (clo, chi) = check.window();
    let shared = LaurentShiftOp::restrict(a, clo, chi)?;
    if check != shared {
        return Err(LatticeError::Shape("square root postcondition failed".into()));
    }
    Ok(out)
}

/// Inverse expanded in the direction of `tail`; the extreme term of `a` on
/// that side must have an invertible coefficient.
/// Coefficients are computed up to `until` (upward) or down to it (downward).
pub fn op_inverse(a: &LaurentShiftOp, tail: Tail, until: Shift) -> Result<LaurentShiftOp, LatticeError> {
    // an upward inverse starts from the bottom term of `a`, a downward one
    // from its top term
    let (b, ab) = leading(a, tail)?;
    let order = a.order();
    let ab_inv = ab.invert()?;
    let dir: i64 = if tail == Tail::Upward { 1 } else { -1 };
    let start = Shift(-b.0);
    let steps = (until.0 - start.0) * dir;
    if steps < 0 {
        return Err(LatticeError::WindowUnderflow { needed: until });
    }
    let neg_b = Shift(-b.0).value();
    // m_{k-b} = Λ^{-b}[(δ_{k0} - sum_{p beyond b} a_p Λ^p m_{k-p}) / a_b]
    let mut m: Vec<EpsSeries> = Vec::with_capacity(steps as usize + 1);
    for k in 0..=steps {
        let mut rhs = if k == 0 { EpsSeries::one(order) } else { EpsSeries::zero(order) };
        for i in 1..=k {
            let p = Shift(b.0 + dir * i);
            let ap = a.coeff(p)?;
            let prev = &m[(k - i) as usize];
            if ap.is_zero() || prev.is_zero() {
                continue;
            }
            rhs = &rhs - &(&ap * &prev.shift(&p.value()));
        }
        m.push((&rhs * &ab_inv).shift(&neg_b));
    }
    let (lo, hi) = if tail == Tail::Downward { (Some(until), None) } else { (None, Some(until)) };
    let mut out = LaurentShiftOp::with_tail(tail, lo, hi, order);
    for (k, c) in m.into_iter().enumerate() {
        out.add_coeff(Shift(start.0 + dir * k as i64), c);
    }
    out.order = order;
    for prod in [op_mul(a, &out)?, op_mul(&out, a)?] {
        let (plo, phi) = prod.window();
        let ident = LaurentShiftOp::restrict(&LaurentShiftOp::shift_power(Shift(0), order), plo, phi)?;
        if prod != ident {
            return Err(LatticeError::Shape("inverse postcondition failed".into()));
        }
    }
    Ok(out)
}

/// `a^{n/2}`, with fractional powers expanded in the direction `root_tail`
/// and negative powers in the opposite one. The result is known down to
/// (resp. up to) `target`.
pub fn op_power(a: &LaurentShiftOp, n: i64, root_tail: Tail, target: Shift) -> Result<LaurentShiftOp, LatticeError> {
    let order = a.order();
    if n == 0 {
        return Ok(LaurentShiftOp::shift_power(Shift(0), order));
    }
    if n > 0 && n % 2 == 0 {
        let mut acc = a.clone();
        for _ in 1..n / 2 {
            acc = op_mul(&acc, a)?;
        }
        return Ok(acc);
    }
    if n < 0 && n % 2 != 0 {
        return Err(LatticeError::UnsupportedPower(format!("{n}/2")));
    }
    let inv_tail = match root_tail {
        Tail::Downward => Tail::Upward,
        Tail::Upward => Tail::Downward,
        Tail::Finite => return Err(LatticeError::Shape("root direction must be infinite".into())),
    };
    let (factor, count, tail) = if n > 0 {
        let (end, _) = leading(a, root_tail)?;
        let t = end.0 / 2;
        let count = n;
        // factor^count reaches `target` when the factor itself reaches
        // target - (count-1)·t in the expansion direction
        let until = Shift(target.0 - (count - 1) * t);
        (op_sqrt(a, root_tail, until)?, count, root_tail)
    } else {
        let (end, _) = leading(a, inv_tail)?;
        let t = -end.0;
        let count = -n / 2;
        let until = Shift(target.0 - (count - 1) * t);
        (op_inverse(a, inv_tail, until)?, count, inv_tail)
    };
    let mut acc = factor.clone();
    for _ in 1..count {
        acc = op_mul(&acc, &factor)?;
    }
    let (lo, hi) = if tail == Tail::Downward { (Some(target), None) } else { (None, Some(target)) };
    acc.restrict(lo, hi)
}
