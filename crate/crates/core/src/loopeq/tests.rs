use super::*;
use crate::hierarchy::FlowIndex;
use crate::jetring::{int, parse_log_poly, parse_poly, substitute_log_change, Chart, DiffPoly, LogChange};

fn v(s: &str) -> DiffPoly {
    parse_poly(s, Chart::V).unwrap()
}

#[test]
fn reduction_rules() {
    let p = LambdaRingElem::p();
    let d = LambdaRingElem::d();
    assert_eq!(&d * &d, p);
    let lp = &LambdaRingElem::lambda(1) * &p;
    assert_eq!(lp, &p.mul_poly(&v("v^2")) - &LambdaRingElem::one());
    let lip = &LambdaRingElem::lambda(-1) * &p;
    let expected = &LambdaRingElem::lambda(-1).mul_poly(&v("v^-2")) + &p.mul_poly(&v("v^-2"));
    assert_eq!(lip, expected);
    assert_eq!(d.dx(), LambdaRingElem::basis(Basis::DP(1), v("-v*vx")));
    assert_eq!(p.dx(), LambdaRingElem::basis(Basis::P(2), v("-2*v*vx")));
    assert_eq!(d.d_lambda(), LambdaRingElem::basis(Basis::DP(1), v("(1/2)")));
}

#[test]
fn empty_solution_residual_shows_source() {
    let r = build_residual(LoopModel::GfmV4, &[], 1);
    // LHS - RHS with RHS = -P²/16
    assert_eq!(r.get(&(0, Basis::P(2))), Some(&v("(1/16)")));
    assert_eq!(r.len(), 1);
}

#[test]
fn genus_one_gfm() {
    let sols = solve_through(LoopModel::GfmV4, 1).unwrap();
    assert_eq!(sols[0].gradients, vec![v("(1/12)*v^-1"), v("(1/24)*vx^-1")]);
    assert!(build_residual(LoopModel::GfmV4, &sols, 1).is_empty());
    matches_reference(&sols[0]).unwrap();
    genus1_canonical_check(&sols[0]).unwrap();
}

#[test]
fn genus_one_fvh() {
    let sols = solve_through(LoopModel::Fvh, 1).unwrap();
    matches_reference(&sols[0]).unwrap();
}

#[test]
fn genus_two() {
    let f = solve_through(LoopModel::GfmV4, 2).unwrap();
    assert_eq!(f[1].gradients[4], v("(1/576)*v*vx^-2"));
    matches_reference(&f[1]).unwrap();
    let h = solve_through(LoopModel::Fvh, 2).unwrap();
    matches_reference(&h[1]).unwrap();
    compare_f_h(&f, &h).unwrap();
    verify_linearization_identities(&f).unwrap();
}

#[test]
fn genus_three_both_models() {
    let f = solve_through(LoopModel::GfmV4, 3).unwrap();
    let h = solve_through(LoopModel::Fvh, 3).unwrap();
    for s in f.iter().chain(h.iter()) {
        matches_reference(s).unwrap();
        compatibility_check(s).unwrap();
        assert!(build_residual(s.model, if s.model == LoopModel::GfmV4 { &f } else { &h }, 3).is_empty());
    }
    compare_f_h(&f, &h).unwrap();
    verify_linearization_identities(&f).unwrap();
    verify_linearization_identities(&h).unwrap();
}

#[test]
fn weight_defect_variant_is_rejected() {
    let defective = parse_log_poly(fixtures::F3_WEIGHT_DEFECT, Chart::V).unwrap();
    let fixed = parse_log_poly(fixtures::F3, Chart::V).unwrap();
    assert_eq!(fixtures::weight_defects(&defective, 4), vec!["(913/241920)*v5*v^-1".to_string()]);
    assert!(fixtures::weight_defects(&fixed, 4).is_empty());
    let h3 = parse_log_poly(fixtures::H3, Chart::W).unwrap();
    let h3v = substitute_log_change(&h3, LogChange::WToV).unwrap().scale(&int(4));
    assert_eq!(h3v.without_constant(), fixed);
    let f2 = parse_log_poly(fixtures::F2, Chart::V).unwrap();
    assert!(fixtures::weight_defects(&f2, 2).is_empty());
}

#[test]
fn linearization_examples() {
    // genus one: v_x/(24 v_x) + v/(12 v) = 1/8 and (1/v)/(12v) + 2(-v_x/v^2)/(24 v_x) = 0
    let g1 = GenusSolution {
        model: LoopModel::GfmV4,
        genus: 1,
        gradients: vec![v("(1/12)*v^-1"), v("(1/24)*vx^-1")],
        free_energy: None,
    };
    verify_linearization_identities(std::slice::from_ref(&g1)).unwrap();
    let bad = GenusSolution { gradients: vec![v("(1/12)*v^-1"), v("(1/12)*vx^-1")], ..g1 };
    assert!(matches!(verify_linearization_identities(&[bad]), Err(LoopError::Mismatch { .. })));
}

#[test]
fn compatibility_failure_is_reported() {
    let sol =
        GenusSolution { model: LoopModel::GfmV4, genus: 2, gradients: vec![v("vx"), v("v^2")], free_energy: None };
    assert!(matches!(integrate_genus(&sol), Err(LoopError::CompatibilityFailure { r: 0, s: 1, .. })));
}

#[test]
fn fvh_genus_one_source() {
    // S = -(2λv² - v⁴)P²/8 with λP² = v²P² - P gives S = -(v⁴/8)P² + (v²/4)P,
    // so the empty residual -S is Θ²/8 - Θ/4 with Θ = v²P
    let r = build_residual(LoopModel::Fvh, &[], 1);
    assert_eq!(r.get(&(0, Basis::P(2))), Some(&v("(1/8)*v^4")));
    assert_eq!(r.get(&(0, Basis::P(1))), Some(&v("-(1/4)*v^2")));
    assert_eq!(r.len(), 2);
}

#[test]
fn quasimiura_low_order() {
    let f = solve_through(LoopModel::GfmV4, 2).unwrap();
    for idx in [FlowIndex::T1(0), FlowIndex::T0Neg(1)] {
        quasimiura_verify(idx, &f, 4).unwrap();
    }
    assert!(quasimiura_verify(FlowIndex::T1(0), &f, 6).is_err());
}

#[test]
fn json_round_trip() {
    let f = solve_through(LoopModel::Fvh, 2).unwrap();
    for s in &f {
        assert_eq!(&GenusSolution::from_json(&s.to_json()).unwrap(), s);
    }
}
