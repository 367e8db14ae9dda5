//! Poisson operators as sums of compositions of simple factors.

use std::collections::BTreeMap;

use crate::epsops::{EpsDiffOp, EpsSeries, SymbolOp};
use crate::jetring::{int, rat, Chart, Rational};

use super::HierarchyError;

/// One factor of a composition.
#[derive(Debug, Clone)]
pub enum Factor {
    /// Multiplication by a series.
    Mul(EpsSeries),
    /// A constant-coefficient symbol, applied as [`EpsSeries::apply_symbol`]
    /// does: for a pole of order `m` this is `ε^m g(ε d_x)`.
    Symbol(SymbolOp),
    Dx,
    /// Division by `ε`.
    InvEps,
}

/// `sum_i c_i F_{i,1} ∘ ... ∘ F_{i,n_i}`.
#[derive(Debug, Clone)]
pub struct PoissonOp {
    name: String,
    terms: Vec<(Rational, Vec<Factor>)>,
}

impl PoissonOp {
    /// Builds the operator and checks skew-adjointness through `ε^order`.
    pub fn new(name: &str, terms: Vec<(Rational, Vec<Factor>)>, order: usize) -> Result<Self, HierarchyError> {
        let op = PoissonOp { name: name.to_string(), terms };
        let d = op.to_diffop(order)?;
        if !d.is_skew_adjoint() {
            let sum = &d + &d.adjoint();
            return Err(HierarchyError::Mismatch {
                check: format!("skew-adjointness of {name}"),
                difference: sum.to_text(Chart::U),
            });
        }
        Ok(op)
    }

    /// `P_1 = (1/2ε)(Λ - Λ^{-1}) = (1/2) d_x ∘ (Λ - Λ^{-1})/ξ`.
    pub fn p1(order: usize) -> Result<Self, HierarchyError> {
        let sym = difference_symbol(order + 1);
        Self::new("P1", vec![(rat(1, 2), vec![Factor::Dx, Factor::Symbol(sym)])], order)
    }

    /// `P_2 = (2/ε) U ((Λ-1)/(Λ+1)) U = 2 U ∘ d_x ∘ tanh(ξ/2)/ξ ∘ U`.
    pub fn p2(order: usize) -> Result<Self, HierarchyError> {
        let u = EpsSeries::field(order + 1);
        let sym = SymbolOp::difference_quotient(&int(1), order + 1).mul(&SymbolOp::inv_shift_plus_one(order + 1));
        Self::new(
            "P2",
            vec![(int(2), vec![Factor::Mul(u.clone()), Factor::Dx, Factor::Symbol(sym), Factor::Mul(u)])],
            order,
        )
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn terms(&self) -> &[(Rational, Vec<Factor>)] {
        &self.terms
    }

    /// Expansion as a differential operator through `ε^order`.
    ///
    /// `InvEps` factors are collected: terms are summed first and divided
    /// afterwards, since only the sum needs a vanishing `ε^0` part.
    pub fn to_diffop(&self, order: usize) -> Result<EpsDiffOp, HierarchyError> {
        let mut by_lift: BTreeMap<usize, EpsDiffOp> = BTreeMap::new();
        for (c, factors) in &self.terms {
            let lifts = factors.iter().filter(|f| matches!(f, Factor::InvEps)).count();
            let inner = order + lifts;
            let mut op = EpsDiffOp::identity(inner);
            for f in factors {
                let next = match f {
                    Factor::Mul(s) => EpsDiffOp::multiplication(&s.truncate(inner)),
                    Factor::Symbol(g) => EpsDiffOp::symbol(g, inner)?,
                    Factor::Dx => EpsDiffOp::dx(inner),
                    Factor::InvEps => continue,
                };
                op = op.compose(&next);
            }
            let op = op.truncate(inner).scale(c);
            let slot = by_lift.entry(lifts).or_insert_with(|| EpsDiffOp::zero(inner));
            *slot = &*slot + &op;
        }
        let mut total = EpsDiffOp::zero(order);
        for (lifts, mut op) in by_lift {
            for _ in 0..lifts {
                op = op.div_eps()?;
            }
            total = &total + &op.truncate(order);
        }
        Ok(total)
    }

    /// Applies the factors right to left, with the same collection of
    /// `InvEps` factors as [`PoissonOp::to_diffop`].
    pub fn apply(&self, g: &EpsSeries) -> Result<EpsSeries, HierarchyError> {
        let mut by_lift: BTreeMap<usize, EpsSeries> = BTreeMap::new();
        for (c, factors) in &self.terms {
            let lifts = factors.iter().filter(|f| matches!(f, Factor::InvEps)).count();
            let mut cur = g.clone();
            for f in factors.iter().rev() {
                cur = match f {
                    Factor::Mul(s) => &cur * s,
                    Factor::Symbol(sym) => cur.apply_symbol(sym)?,
                    Factor::Dx => cur.dx(),
                    Factor::InvEps => continue,
                };
            }
            let cur = cur.scale(c);
            let slot = by_lift.remove(&lifts);
            by_lift.insert(
                lifts,
                match slot {
                    None => cur,
                    Some(t) => &t + &cur,
                },
            );
        }
        let mut total: Option<EpsSeries> = None;
        for (lifts, mut s) in by_lift {
            for _ in 0..lifts {
                s = s.div_eps()?;
            }
            total = Some(match total {
                None => s,
                Some(t) => &t + &s,
            });
        }
        Ok(total.unwrap_or_else(|| EpsSeries::zero(g.order())))
    }
}

/// `(Λ - Λ^{-1})/ξ`.
pub(crate) fn difference_symbol(n: usize) -> SymbolOp {
    SymbolOp::difference_quotient(&int(1), n).sub(&SymbolOp::difference_quotient(&int(-1), n))
}

pub fn apply_poisson(p: &PoissonOp, g: &EpsSeries) -> Result<EpsSeries, HierarchyError> {
    p.apply(g)
}

/// `P_1^{-1} g = 2ε/(Λ - Λ^{-1}) g`; every coefficient of `g` must be a total
/// derivative.
pub fn p1_inverse_apply(g: &EpsSeries) -> Result<EpsSeries, HierarchyError> {
    let sym = SymbolOp::inv_shift_difference(g.order() + 1);
    Ok(g.apply_symbol(&sym)?.scale(&int(2)))
}

/// `R g = P_2 P_1^{-1} g`.
pub fn recursion_apply(g: &EpsSeries) -> Result<EpsSeries, HierarchyError> {
    if g.is_zero() {
        return Ok(g.clone());
    }
    let h = p1_inverse_apply(g)?;
    PoissonOp::p2(g.order())?.apply(&h)
}
