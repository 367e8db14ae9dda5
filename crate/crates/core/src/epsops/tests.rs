use super::*;
use crate::jetring::{int, parse_log_poly, parse_poly, rat, Chart, DiffPoly};

fn u(s: &str) -> DiffPoly {
    parse_poly(s, Chart::U).unwrap()
}

fn series(parts: &[(usize, &str)], order: usize) -> EpsSeries {
    let mut c = vec![DiffPoly::zero(); order + 1];
    for &(k, s) in parts {
        c[k] = u(s);
    }
    EpsSeries::from_coeffs(c)
}

#[test]
fn shift_of_field() {
    let f = EpsSeries::field(2);
    assert_eq!(shift_apply(&int(1), &f), series(&[(0, "U"), (1, "Ux"), (2, "(1/2)*U2")], 2));
    let g = series(&[(0, "U^2*Ux"), (1, "U3")], 6);
    assert_eq!(shift_apply(&int(1), &shift_apply(&int(-1), &g)), g);
    assert_eq!(shift_apply(&int(0), &g), g);
}

// Reference Taylor data: tanh(z/2) = z/2 - z^3/24 + z^5/240,
// 1/(e^z+1) = 1/2 - z/4 + z^3/48 - z^5/480, 2z/(e^z-1) = 2 - z + z^2/6 - z^4/360.
#[test]
fn symbol_examples() {
    let f = EpsSeries::field(5);
    let t = symbol_apply(&SymbolOp::tanh_half(5), &f).unwrap();
    assert_eq!(t, series(&[(1, "(1/2)*Ux"), (3, "-(1/24)*U3"), (5, "(1/240)*U5")], 5));
    let h = symbol_apply(&SymbolOp::inv_shift_plus_one(5), &f).unwrap();
    assert_eq!(h, series(&[(0, "(1/2)*U"), (1, "-(1/4)*Ux"), (3, "(1/48)*U3"), (5, "-(1/480)*U5")], 5));
    let log_u = parse_log_poly("log(U)", Chart::U).unwrap();
    let (head, rest) = symbol_apply_log(&SymbolOp::log_kernel(4), &log_u, 4).unwrap();
    assert_eq!(head, log_u.scale(&int(2)));
    let dlog = log_u.dx();
    let expected = EpsSeries::from_coeffs(vec![
        DiffPoly::zero(),
        -&dlog,
        dlog.dx().scale(&rat(1, 6)),
        DiffPoly::zero(),
        dlog.dx_n(3).scale(&rat(-1, 360)),
    ]);
    assert_eq!(rest, expected);
}

#[test]
fn pole_consistency() {
    // ξ/(Λ-Λ^{-1}) = ξ/(2 sinh ξ) = 1/2 - ξ^2/12 + 7ξ^4/720
    let q = series(&[(0, "U^3*Ux"), (2, "U2*U")], 4);
    let with_pole = symbol_apply(&SymbolOp::inv_shift_difference(4), &q.dx()).unwrap();
    let h = SymbolOp::from_taylor(vec![rat(1, 2), int(0), rat(-1, 12), int(0), rat(7, 720)], 0);
    assert_eq!(with_pole, symbol_apply(&h, &q).unwrap());
    let not_exact = series(&[(0, "Ux^2")], 4);
    assert!(matches!(
        symbol_apply(&SymbolOp::inv_shift_difference(4), &not_exact),
        Err(EpsError::Jet(crate::jetring::JetError::NotExact { .. }))
    ));
}

#[test]
fn symbol_composition() {
    let f = series(&[(0, "U^2"), (1, "Ux*U")], 6);
    let a = SymbolOp::tanh_half(6);
    let b = SymbolOp::inv_shift_plus_one(6);
    let lhs = symbol_apply(&a.mul(&b), &f).unwrap();
    let rhs = symbol_apply(&a, &symbol_apply(&b, &f).unwrap()).unwrap();
    assert_eq!(lhs, rhs);
}

#[test]
fn inversion() {
    let lu = shift_apply(&int(1), &EpsSeries::field(4));
    let inv = series_invert(&lu).unwrap();
    assert_eq!(&lu * &inv, EpsSeries::one(4));
    assert_eq!(inv.coeff(0), &u("U^-1"));
    assert_eq!(inv.coeff(1), &u("-Ux*U^-2"));
    assert_eq!(series_invert(&EpsSeries::one(4)).unwrap(), EpsSeries::one(4));
    let bad = EpsSeries::from_poly(u("U + Ux"), 2);
    assert_eq!(series_invert(&bad), Err(EpsError::NotInvertible));
}

#[test]
fn sign_substitution() {
    let f = series(&[(0, "U"), (2, "Ux"), (4, "U2")], 4);
    let g = eps_sign_substitute(&f).unwrap();
    assert_eq!(g, series(&[(0, "U"), (2, "-2*Ux"), (4, "4*U2")], 4));
    let odd = series(&[(1, "U")], 2);
    assert_eq!(eps_sign_substitute(&odd), Err(EpsError::OddPower { power: 1 }));
}

#[test]
fn operator_expansion_matches_series_action() {
    let f = series(&[(0, "U^2*Ux"), (1, "U")], 5);
    let op = EpsDiffOp::symbol(&SymbolOp::tanh_half(5), 5).unwrap();
    assert_eq!(op.apply(&f), symbol_apply(&SymbolOp::tanh_half(5), &f).unwrap());
    let sh = EpsDiffOp::shift(&int(1), 5);
    assert_eq!(sh.adjoint(), EpsDiffOp::shift(&int(-1), 5));
}

#[test]
fn division_by_eps() {
    let f = series(&[(1, "U"), (2, "Ux")], 3);
    assert_eq!(f.div_eps().unwrap(), series(&[(0, "U"), (1, "Ux")], 2));
    assert_eq!(EpsSeries::one(2).div_eps(), Err(EpsError::EpsDivision));
}

#[test]
fn json_round_trip() {
    let f = series(&[(0, "U^2*Ux"), (3, "U3*U^-1")], 4);
    assert_eq!(series_from_json(&series_to_json(&f)).unwrap(), f);
}
