use super::*;
use crate::epsops::{EpsSeries, SymbolOp};
use crate::jetring::{int, parse_poly, Chart};

const K: usize = 5;

fn field() -> EpsSeries {
    EpsSeries::field(K)
}

fn inv_u_minus() -> EpsSeries {
    field().shift(&int(-1)).invert().unwrap()
}

#[test]
fn composition_rule() {
    let ul = LaurentShiftOp::monomial(Shift::int(1), field());
    let sq = op_mul(&ul, &ul).unwrap();
    let expected = LaurentShiftOp::monomial(Shift::int(2), &field() * &field().shift(&int(1)));
    assert_eq!(sq, expected);
    let lam_u =
        op_mul(&LaurentShiftOp::shift_power(Shift::int(1), K), &LaurentShiftOp::monomial(Shift(0), field())).unwrap();
    assert_eq!(lam_u, LaurentShiftOp::monomial(Shift::int(1), field().shift(&int(1))));
}

#[test]
fn commutator_examples() {
    let lam = LaurentShiftOp::shift_power(Shift::int(1), K);
    let u = LaurentShiftOp::monomial(Shift(0), field());
    let c = op_commutator(&lam, &u).unwrap();
    assert_eq!(c, LaurentShiftOp::monomial(Shift::int(1), &field().shift(&int(1)) - &field()));
    let l = LaurentShiftOp::lax(K);
    assert!(op_commutator(&l, &l).unwrap().is_zero());
}

#[test]
fn residues() {
    assert!(op_residue(&LaurentShiftOp::shift_power(Shift::int(1), K)).unwrap().is_zero());
    let m = op_inverse(&LaurentShiftOp::lax(K), Tail::Upward, Shift::int(2)).unwrap();
    let lm = op_mul(&LaurentShiftOp::shift_power(Shift::int(1), K), &m).unwrap();
    assert_eq!(op_residue(&lm).unwrap(), field().invert().unwrap());
}

#[test]
fn inverse_coefficients() {
    let l = LaurentShiftOp::lax(K);
    let m = op_inverse(&l, Tail::Upward, Shift::int(3)).unwrap();
    // b_{-1} = 1/U^-, b_0 = -1/(U U^-)
    assert_eq!(m.coeff(Shift::int(-1)).unwrap(), inv_u_minus());
    assert_eq!(m.coeff(Shift::int(0)).unwrap(), -&(&field().invert().unwrap() * &inv_u_minus()));
    let lm = op_mul(&l, &m).unwrap();
    let ml = op_mul(&m, &l).unwrap();
    for prod in [lm, ml] {
        assert_eq!(prod.coeff(Shift(0)).unwrap(), EpsSeries::one(K));
        for p in [-3, -2, -1, 1, 2, 3] {
            assert!(prod.coeff(Shift::int(p)).unwrap().is_zero(), "Λ^{p}");
        }
    }
    let minus = op_project(&m, Part::Minus).unwrap();
    assert_eq!(minus, LaurentShiftOp::monomial(Shift::int(-1), inv_u_minus()));
}

#[test]
fn square_root() {
    let l = LaurentShiftOp::lax(K);
    let s = op_sqrt(&l, Tail::Downward, Shift::int(-6)).unwrap();
    let plus = op_project(&s, Part::Plus).unwrap();
    let a0 = field().apply_symbol(&SymbolOp::inv_shift_plus_one(K)).unwrap();
    let expected = LaurentShiftOp::finite([(Shift::int(1), EpsSeries::one(K)), (Shift(0), a0.clone())], K);
    assert_eq!(plus, expected);
    assert_eq!(a0.coeff(0), &parse_poly("(1/2)*U", Chart::U).unwrap());
    let sq = op_mul(&s, &s).unwrap();
    for p in -4..=2 {
        assert_eq!(sq.coeff(Shift::int(p)).unwrap(), l.coeff(Shift::int(p)).unwrap(), "Λ^{p}");
    }
    assert_eq!(op_power(&l, 2, Tail::Downward, Shift::int(-2)).unwrap(), l);
    let half = op_power(&l, 1, Tail::Downward, Shift::int(-3)).unwrap();
    let again = op_mul(&half, &half).unwrap();
    assert_eq!(again.coeff(Shift::int(1)).unwrap(), field());
    assert!(op_power(&l, -1, Tail::Downward, Shift(0)).is_err());
}

#[test]
fn positive_flow_kernel() {
    // Λ^1 coefficient of [(L^{1/2})_+, L] equals U (1 - Λ) res(L^{1/2})
    let l = LaurentShiftOp::lax(K);
    let s = op_sqrt(&l, Tail::Downward, Shift::int(-2)).unwrap();
    let plus = op_project(&s, Part::Plus).unwrap();
    let c = op_commutator(&plus, &l).unwrap();
    let r = op_residue(&s).unwrap();
    let kernel = &field() * &(&r - &r.shift(&int(1)));
    assert_eq!(c.coeff(Shift::int(1)).unwrap(), kernel);
}

#[test]
fn adjoints() {
    let ul = LaurentShiftOp::monomial(Shift::int(1), field());
    assert_eq!(op_adjoint(&ul), LaurentShiftOp::monomial(Shift::int(-1), field().shift(&int(-1))));
    let p1 = LaurentShiftOp::finite([(Shift::int(1), EpsSeries::one(K)), (Shift::int(-1), -&EpsSeries::one(K))], K);
    assert_eq!(op_adjoint(&p1), op_sub(&LaurentShiftOp::zero(K), &p1).unwrap());
    let u = LaurentShiftOp::monomial(Shift(0), field());
    assert_eq!(op_adjoint(&u), u);
}

#[test]
fn window_is_enforced() {
    let l = LaurentShiftOp::lax(K);
    let s = op_sqrt(&l, Tail::Downward, Shift::int(-2)).unwrap();
    assert!(matches!(s.coeff(Shift::int(-3)), Err(LatticeError::WindowUnderflow { .. })));
    let m = op_inverse(&l, Tail::Upward, Shift::int(0)).unwrap();
    assert_eq!(op_mul(&s, &m).unwrap_err(), LatticeError::IncompatibleTails);
    assert!(op_mul_window(&s, &s, Some(Shift::int(-5)), None).is_err());
}

#[test]
fn half_integer_shifts() {
    let a = LaurentShiftOp::monomial(Shift::half(1), field());
    let b = op_mul(&a, &a).unwrap();
    assert_eq!(b, LaurentShiftOp::monomial(Shift::int(1), &field() * &field().shift(&crate::jetring::rat(1, 2))));
}
