use std::collections::BTreeMap;

use super::*;

fn p(s: &str) -> DiffPoly {
    parse_poly(s, Chart::V).unwrap()
}

fn lp(s: &str) -> LogExtendedPoly {
    parse_log_poly(s, Chart::V).unwrap()
}

#[test]
fn dx_examples() {
    assert_eq!(p("v^2").dx(), p("2*v*vx"));
    assert_eq!(p("v^-1").dx(), p("-vx*v^-2"));
    let f1 = lp("(1/24)*log(vx) + (1/12)*log(v)");
    assert_eq!(f1.dx(), p("(1/24)*v2*vx^-1 + (1/12)*vx*v^-1"));
}

#[test]
fn partial_examples() {
    assert_eq!(p("v*v2").partial(2), p("v"));
    assert_eq!(p("vx^-1").partial(1), p("-vx^-2"));
    let f2 = p("v4*v*vx^-2/576 - (7/960)*v3*v2*v*vx^-3");
    assert_eq!(f2.partial(4), p("(1/576)*v*vx^-2"));
}

#[test]
fn variational_examples() {
    assert_eq!(variational_derivative_poly(&p("(1/2)*vx^2")), p("-v2"));
    assert!(variational_derivative_poly(&p("v2")).is_zero());
    let half_log = LogExtendedPoly::log(0, rat(1, 2)).unwrap();
    assert_eq!(variational_derivative(&half_log), p("(1/2)*v^-1"));
}

#[test]
fn antiderivative_examples() {
    assert_eq!(antiderivative(&p("2*v*vx")).unwrap(), lp("v^2"));
    assert_eq!(antiderivative(&p("v2*vx^-1")).unwrap(), lp("log(vx)"));
    match antiderivative(&p("vx^2")) {
        Err(JetError::NotExact { witness }) => assert_eq!(witness, p("-2*v2")),
        other => panic!("expected NotExact, got {other:?}"),
    }
    assert!(matches!(antiderivative(&p("1")), Err(JetError::NotExact { .. })));
}

#[test]
fn antiderivative_of_mixed_orders() {
    let q = lp("v3*v2*vx^-2 + v*vx^-1 + (1/3)*log(v) + v^4");
    assert_eq!(q.dx().constant_term(), int(1));
    let back = antiderivative(&q.dx()).unwrap();
    assert_eq!(back, q);
}

#[test]
fn frechet_examples() {
    assert_eq!(frechet(&p("v^2")), DiffOp::multiplication(p("2*v")));
    assert_eq!(frechet(&p("vx")), DiffOp::monomial(1, DiffPoly::one()));
    let mut op = DiffOp::multiplication(p("2*vx"));
    op.add_coeff(1, p("2*v"));
    assert_eq!(frechet(&p("2*v*vx")), op);
}

#[test]
fn helmholtz_examples() {
    assert!(helmholtz_is_gradient(&p("-v2")));
    // v_xx v_x is the gradient of -v_x^3/6
    assert!(helmholtz_is_gradient(&p("v2*vx")));
    assert_eq!(variational_derivative_poly(&p("-(1/6)*vx^3")), p("v2*vx"));
    assert!(!helmholtz_is_gradient(&p("v*vx")));
    assert!(!helmholtz_is_gradient(&p("vx")));
    assert!(helmholtz_is_gradient(&DiffPoly::zero()));
}

#[test]
fn log_change_examples() {
    let w = |s: &str| parse_log_poly(s, Chart::W).unwrap();
    assert_eq!(substitute_log_change(&w("wx"), LogChange::WToV).unwrap(), lp("vx*v^-1"));
    assert_eq!(substitute_log_change(&w("w2"), LogChange::WToV).unwrap(), lp("v2*v^-1 - vx^2*v^-2"));
    let h1 = w("(1/24)*log(wx) + (1/8)*w");
    let f1 = lp("(1/24)*log(vx) + (1/12)*log(v)");
    assert_eq!(substitute_log_change(&h1, LogChange::WToV).unwrap(), f1);
    assert_eq!(substitute_log_change(&f1, LogChange::VToW).unwrap(), h1);
}

#[test]
fn log_change_round_trip() {
    let f = lp("v3*v2*v*vx^-3 + v^-2*vx^2 + log(vx)");
    let there = substitute_log_change(&f, LogChange::VToW).unwrap();
    assert_eq!(substitute_log_change(&there, LogChange::WToV).unwrap(), f);
}

#[test]
fn eval_examples() {
    let pt = |pairs: &[(usize, i64)]| pairs.iter().map(|&(s, x)| (s, int(x))).collect::<BTreeMap<_, _>>();
    assert_eq!(eval_numeric(&p("v*vx"), &pt(&[(0, 2), (1, 3)])).unwrap(), int(6));
    assert_eq!(eval_numeric(&p("vx^-1"), &pt(&[(1, 0)])), Err(JetError::DivisionByZero { order: Some(1) }));
    assert_eq!(eval_numeric(&p("(1/576)*v*vx^-2"), &pt(&[(0, 1), (1, 2)])).unwrap(), rat(1, 2304));
}

#[test]
fn text_is_canonical() {
    let q = p("-(7/960)*v3*v2*v*vx^-3");
    assert_eq!(q.to_string(), "-(7/960)*v3*v2*v*vx^-3");
    let r = p("vx - 3*v^2 + (1/2)");
    assert_eq!(parse_poly(&r.to_string(), Chart::V).unwrap(), r);
    assert_eq!(lp("log(vx)/24").to_string(), "(1/24)*log(vx)");
}

#[test]
fn ring_escape_is_rejected() {
    assert!(matches!(parse_poly("v2^-1", Chart::V), Err(JetError::RingEscape { order: 2, exponent: -1 })));
    assert!(matches!(LogExtendedPoly::log(2, int(1)), Err(JetError::LogOutOfRange { order: 2 })));
    let a = lp("log(v)");
    assert_eq!(a.mul(&a), Err(JetError::LogProduct));
}

#[test]
fn json_round_trip() {
    let q = lp("(1/24)*log(vx) + v4*v*vx^-2/576 - 3");
    let j = log_poly_to_json(&q);
    assert_eq!(log_poly_from_json(&j).unwrap(), q);
    let r = p("-(7/960)*v3*v2*v*vx^-3");
    assert_eq!(poly_from_json(&poly_to_json(&r)).unwrap(), r);
}
