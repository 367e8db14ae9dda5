//! Randomized invariants of the algebra, 256 cases per suite.

mod common;

use qkdv_core::jetring::parse_log_poly;
use qkdv_core::jetring::Chart;
use qkdv_core::loopeq::{fixtures, solve_through, LoopModel};

use qkdv_core::invariants::{self, CASES};

#[test]
fn ring_axioms() {
    invariants::ring_axioms(CASES).unwrap();
}

#[test]
fn leibniz() {
    invariants::leibniz(CASES).unwrap();
}

#[test]
fn adjointness() {
    invariants::adjointness(CASES).unwrap();
}

#[test]
fn exactness() {
    invariants::exactness(CASES).unwrap();
}

#[test]
fn shift_group_law() {
    invariants::shift_group_law(CASES).unwrap();
}

#[test]
fn window_soundness() {
    invariants::window_soundness(CASES).unwrap();
}

#[test]
fn lambda_ring() {
    invariants::lambda_ring(CASES).unwrap();
}

#[test]
fn solver_agrees_with_references_numerically() {
    let sols = solve_through(LoopModel::GfmV4, 3).unwrap();
    for (g, text) in [(2, fixtures::F2), (3, fixtures::F3)] {
        let expected = parse_log_poly(text, Chart::V).unwrap();
        let ours = sols[g - 1].free_energy.clone().unwrap();
        assert_eq!(common::numeric_disagreement(&ours, &expected, 20, g as u64), None, "genus {g}");
    }
    let defective = parse_log_poly(fixtures::F3_WEIGHT_DEFECT, Chart::V).unwrap();
    let ours = sols[2].free_energy.clone().unwrap();
    assert!(common::numeric_disagreement(&ours, &defective, 20, 3).is_some());
}
