use super::*;
use crate::epsops::{EpsSeries, SymbolOp};
use crate::jetring::{int, parse_poly, rat, Chart, DiffPoly};

const K: usize = 4;

fn u(s: &str) -> DiffPoly {
    parse_poly(s, Chart::U).unwrap()
}

fn field(order: usize) -> EpsSeries {
    EpsSeries::field(order)
}

// (1/ε) 4U((Λ-1)/(Λ+1))U, built directly from the tanh symbol
fn t10_display(order: usize) -> EpsSeries {
    let n = order + 1;
    let t = field(n).apply_symbol(&SymbolOp::tanh_half(n)).unwrap();
    (&field(n) * &t).scale(&int(4)).div_eps().unwrap()
}

// (1/4ε)(1/U^+ - 1/U^-)
fn t0m1_display(order: usize) -> EpsSeries {
    let n = order + 1;
    let up = field(n).shift(&int(1)).invert().unwrap();
    let dn = field(n).shift(&int(-1)).invert().unwrap();
    (&up - &dn).scale(&rat(1, 4)).div_eps().unwrap()
}

#[test]
fn constants() {
    assert_eq!(c_positive(0), int(-4));
    assert_eq!(c_positive(1), rat(32, 3));
    assert_eq!(c_negative(1), rat(-1, 4));
    assert_eq!(c_negative(2), rat(-1, 16));
    assert_eq!(c_log(0), rat(-1, 2));
    assert_eq!(c_log(1), int(2));
}

#[test]
fn first_flows_match_displays() {
    let t10 = qkdv_flow(FlowIndex::T1(0), K).unwrap();
    assert_eq!(t10.order(), K);
    assert_eq!(t10, t10_display(K));
    assert_eq!(t10.coeff(0), &u("2*U*Ux"));
    let t0m1 = qkdv_flow(FlowIndex::T0Neg(1), K).unwrap();
    assert_eq!(t0m1, t0m1_display(K));
    assert_eq!(t0m1.coeff(0), &u("-(1/2)*Ux*U^-2"));
    assert!(t0m1.coeff(1).is_zero());
}

#[test]
fn residue_forms_agree_with_commutators() {
    // ε U_t = c_{1,p} U (1-Λ) res(L^{p+1/2})
    let n = K + 1;
    let l = crate::lattice::LaurentShiftOp::lax(n);
    for p in 0..2u32 {
        let root =
            crate::lattice::op_power(&l, 2 * p as i64 + 1, crate::lattice::Tail::Downward, crate::lattice::Shift(0))
                .unwrap();
        let r = crate::lattice::op_residue(&root).unwrap();
        let form = (&field(n) * &(&r - &r.shift(&int(1)))).scale(&c_positive(p)).div_eps().unwrap();
        assert_eq!(qkdv_flow(FlowIndex::T1(p), K).unwrap(), form);
    }
}

#[test]
fn log_flow_recursion_examples() {
    let ux = EpsSeries::from_poly(u("Ux"), K);
    assert_eq!(qkdv_flow(FlowIndex::T0(0), K).unwrap(), ux);
    let r1 = recursion_apply(&ux).unwrap();
    assert_eq!(r1.coeff(0), &u("2*U^2*Ux"));
    let r2 = recursion_apply(&r1).unwrap().scale(&rat(1, 2));
    assert_eq!(r2.coeff(0), &u("(4/3)*U^4*Ux"));
    assert!(recursion_apply(&EpsSeries::zero(K)).unwrap().is_zero());
    assert_eq!(qkdv_flow(FlowIndex::T0(2), K).unwrap(), r2);
    log_flow_closed_form_check(K).unwrap();
}

#[test]
fn poisson_operators() {
    let p1 = PoissonOp::p1(K).unwrap();
    let p2 = PoissonOp::p2(K).unwrap();
    let half_inv_u = field(K + 1).invert().unwrap().scale(&rat(1, 2));
    assert_eq!(apply_poisson(&p1, &half_inv_u).unwrap().truncate(K), t0m1_display(K));
    assert_eq!(apply_poisson(&p2, &EpsSeries::constant(int(2), K)).unwrap(), t10_display(K));
    assert!(apply_poisson(&p1, &EpsSeries::zero(K)).unwrap().is_zero());
}

#[test]
fn hamiltonian_examples() {
    let h = hamiltonian(FlowIndex::T0Neg(1), K).unwrap();
    assert_eq!(h.gradient, field(K).invert().unwrap().scale(&rat(1, 2)));
    assert_eq!(h.density[0], crate::jetring::LogExtendedPoly::log(0, rat(1, 2)).unwrap());
    let h = hamiltonian(FlowIndex::T1(0), K).unwrap();
    // ε^0: L^{1/2} ~ z + U/2 - U^2/(8z), so 2c_{1,0} a_{-1} = -8(-U^2/8)
    assert_eq!(h.gradient.coeff(0), &u("U^2"));
    let h = hamiltonian(FlowIndex::T0(0), K).unwrap();
    assert_eq!(h.gradient.coeff(0), &u("U"));
    assert_eq!(h.density[0].rational, u("(1/2)*U^2"));
    let p1 = PoissonOp::p1(K).unwrap();
    assert_eq!(apply_poisson(&p1, &h.gradient).unwrap(), qkdv_flow(FlowIndex::T0(0), K).unwrap());
}

#[test]
fn hamiltonian_forms() {
    let p1 = PoissonOp::p1(K).unwrap();
    let p2 = PoissonOp::p2(K).unwrap();
    let idxs = [FlowIndex::T1(0), FlowIndex::T1(1), FlowIndex::T0Neg(1), FlowIndex::T0Neg(2), FlowIndex::T0(1)];
    for idx in idxs {
        let flow = qkdv_flow(idx, K).unwrap();
        let h = hamiltonian(idx, K).unwrap();
        assert_eq!(apply_poisson(&p1, &h.gradient).unwrap(), flow, "P1 form of {idx}");
        let g = second_hamiltonian(idx, K).unwrap();
        assert_eq!(apply_poisson(&p2, &g.gradient).unwrap(), flow, "P2 form of {idx}");
    }
}

#[test]
fn dispersionless_limits() {
    for idx in [
        FlowIndex::T1(0),
        FlowIndex::T1(1),
        FlowIndex::T0Neg(1),
        FlowIndex::T0Neg(2),
        FlowIndex::T0(0),
        FlowIndex::T0(1),
    ] {
        dispersionless_match(idx).unwrap();
    }
    assert_eq!(dispersionless_closed_form(FlowIndex::T1(1)).unwrap(), u("2*U^3*Ux"));
    assert_eq!(dispersionless_closed_form(FlowIndex::T0Neg(2)).unwrap(), u("(3/4)*U^-4*Ux"));
}

#[test]
fn principal_examples() {
    let v = |s: &str| parse_poly(s, Chart::V).unwrap();
    assert_eq!(principal_flow(1, 0).unwrap(), v("2*v*vx"));
    assert_eq!(principal_flow(0, 0).unwrap(), v("vx"));
    assert_eq!(principal_flow(0, -1).unwrap(), v("-(1/2)*vx*v^-2"));
    assert_eq!(theta(1, 1).unwrap().rational, v("(1/3)*v^3"));
    assert!(principal_flow(1, -1).is_err());
}

#[test]
fn commutativity_examples() {
    check_commutativity(FlowIndex::T1(0), FlowIndex::T0Neg(1), K).unwrap();
    check_commutativity(FlowIndex::T0(0), FlowIndex::T1(1), K).unwrap();
    check_commutativity(FlowIndex::T1(0), FlowIndex::T1(0), K).unwrap();
    // a non-member of the hierarchy does not commute
    let bogus = EpsSeries::from_poly(u("U^2"), K);
    let x = qkdv_flow(FlowIndex::T1(0), K).unwrap();
    assert!(!(&bogus.frechet_apply(&x) - &x.frechet_apply(&bogus)).is_zero());
}

#[test]
fn fvh_link() {
    use crate::lattice::Shift;
    fvh_correspondence(Shift::half(-1), K).unwrap();
    fvh_correspondence(Shift::int(1), K).unwrap();
    let f = fvh_exp_flow(Shift::half(-1), K).unwrap();
    assert_eq!(f.flip_eps().flip_eps(), f);
    // T_{-1/2} = 4 t^{1,0}
    assert_eq!(-c_positive(0), int(4));
    let w = fvh_flow(Shift::int(1), 2).unwrap();
    // ε^0: E_T = U_t/c_{0,-1} = 2U_x/U^2, so W_T = 2 E_x/E^3 = 2 w_x/E^2
    assert_eq!(w.coeff(0), &parse_poly("2*wx*exp(w)^-2", Chart::W).unwrap());
}

#[test]
fn miura_to_volterra() {
    let reports = miura_volterra_verify(3).unwrap();
    assert_eq!(reports.len(), 5);
    let p2 = volterra_p2(3).unwrap().to_diffop(3).unwrap();
    assert!(p2.is_skew_adjoint());
}

#[test]
fn comb_identity() {
    assert_eq!(comb_identity_sides(0), (int(1), int(1)));
    assert_eq!(comb_identity_sides(2), (rat(15, 4), rat(15, 4)));
    comb_identity_check(30).unwrap();
}
