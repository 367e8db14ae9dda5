//! Randomized invariant suites of the algebra. Each suite drives a
//! deterministic proptest runner and reports the first counterexample as
//! text, so the same suites back the test targets and `qkdv verify`.

use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};

use crate::epsops::{shift_apply, EpsSeries};
use crate::jetring::{antiderivative, int, rat, variational_derivative_poly, DiffOp, DiffPoly, JetMonomial};
use crate::lattice::{op_inverse, op_mul, op_sqrt, LaurentShiftOp, Shift, Tail};
use crate::loopeq::{Basis, LambdaRingElem};

pub const CASES: u32 = 256;

/// A suite run with a given number of cases.
pub type Suite = fn(u32) -> Result<(), String>;

fn runner(cases: u32) -> TestRunner {
    let config = Config { cases, failure_persistence: None, ..Config::default() };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

fn run<S: Strategy>(cases: u32, strategy: S, test: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Result<(), String>
where
    S::Value: std::fmt::Debug,
{
    runner(cases).run(&strategy, test).map_err(|e| e.to_string())
}

fn check(ok: bool, what: &str) -> Result<(), TestCaseError> {
    if ok {
        Ok(())
    } else {
        Err(TestCaseError::fail(what.to_string()))
    }
}

/// Small Laurent differential polynomials in `v, v_x, v_xx, v_xxx`.
pub fn poly() -> impl Strategy<Value = DiffPoly> {
    let coeff = prop_oneof![-4i64..=-1, 1i64..=4];
    let term = (coeff, -2i32..=2, -2i32..=2, 0i32..=2, 0i32..=1);
    prop::collection::vec(term, 1..=3).prop_map(|terms| {
        DiffPoly::from_terms(
            terms.into_iter().map(|(c, a, b, d, e)| {
                (JetMonomial::from_exponents(vec![a, b, d, e]).expect("valid exponents"), int(c))
            }),
        )
    })
}

/// Polynomials in `v, v_x` only, for operator coefficients.
fn low_poly() -> impl Strategy<Value = DiffPoly> {
    let term = (1i64..=3, 0i32..=2, 0i32..=1);
    prop::collection::vec(term, 1..=2).prop_map(|terms| {
        DiffPoly::from_terms(
            terms.into_iter().map(|(c, a, b)| (JetMonomial::from_exponents(vec![a, b]).expect("valid"), int(c))),
        )
    })
}

fn unit_term() -> impl Strategy<Value = DiffPoly> {
    (prop_oneof![-3i64..=-1, 1i64..=3], -2i32..=2, -1i32..=1)
        .prop_map(|(c, a, b)| DiffPoly::term(int(c), JetMonomial::from_exponents(vec![a, b]).expect("valid")))
}

fn diff_op() -> impl Strategy<Value = DiffOp> {
    prop::collection::vec((0usize..=2, low_poly()), 1..=2).prop_map(|parts| {
        let mut op = DiffOp::zero();
        for (k, c) in parts {
            op.add_coeff(k, c);
        }
        op
    })
}

fn series(order: usize) -> impl Strategy<Value = EpsSeries> {
    prop::collection::vec(low_poly(), order + 1).prop_map(EpsSeries::from_coeffs)
}

fn ring_elem() -> impl Strategy<Value = LambdaRingElem> {
    let label = prop_oneof![
        (-2i64..=2).prop_map(Basis::Lam),
        (1u32..=3).prop_map(Basis::P),
        (-1i64..=1).prop_map(Basis::DLam),
        (1u32..=2).prop_map(Basis::DP),
    ];
    prop::collection::vec((label, low_poly()), 1..=3).prop_map(|parts| {
        parts.into_iter().fold(LambdaRingElem::zero(), |acc, (b, c)| &acc + &LambdaRingElem::basis(b, c))
    })
}

pub fn ring_axioms(cases: u32) -> Result<(), String> {
    run(cases, (poly(), poly(), poly()), |(a, b, c)| {
        check(&a + &b == &b + &a, "addition commutes")?;
        check(&a * &b == &b * &a, "multiplication commutes")?;
        check(&(&a * &b) * &c == &a * &(&b * &c), "multiplication associates")?;
        check(&a * &(&b + &c) == &(&a * &b) + &(&a * &c), "distributivity")?;
        let copy = a.clone();
        check((&a - &copy).is_zero(), "a - a = 0")?;
        check(&a * &DiffPoly::one() == a, "unit")
    })
}

pub fn leibniz(cases: u32) -> Result<(), String> {
    run(cases, (poly(), poly(), ring_elem(), ring_elem()), |(a, b, x, y)| {
        check((&a * &b).dx() == &(&a.dx() * &b) + &(&a * &b.dx()), "dx(ab) = a'b + ab'")?;
        check((&a * &b).partial(1) == &(&a.partial(1) * &b) + &(&a * &b.partial(1)), "partial derivative rule")?;
        check((&x * &y).dx() == &(&x.dx() * &y) + &(&x * &y.dx()), "dx Leibniz on the λ-ring")?;
        check((&x * &y).d_lambda() == &(&x.d_lambda() * &y) + &(&x * &y.d_lambda()), "∂λ Leibniz on the λ-ring")
    })
}

pub fn adjointness(cases: u32) -> Result<(), String> {
    run(cases, (diff_op(), diff_op(), low_poly(), low_poly()), |(a, b, f, g)| {
        check(a.adjoint().adjoint() == a, "A†† = A")?;
        check(a.compose(&b).adjoint() == b.adjoint().compose(&a.adjoint()), "(AB)† = B†A†")?;
        let pairing = &(&f * &a.apply(&g)) - &(&g * &a.adjoint().apply(&f));
        check(variational_derivative_poly(&pairing).is_zero(), "f A g - g A† f is a total derivative")
    })
}

pub fn exactness(cases: u32) -> Result<(), String> {
    run(cases, poly(), |p| {
        let d = p.dx();
        check(variational_derivative_poly(&d).is_zero(), "δ(dx p) = 0")?;
        let back = antiderivative(&d).map_err(|e| TestCaseError::fail(e.to_string()))?;
        check(!back.has_logs(), "antiderivative of dx p has no logarithms")?;
        check((&back.rational - &p).as_constant().is_some(), "antiderivative recovers p up to a constant")
    })
}

pub fn shift_group_law(cases: u32) -> Result<(), String> {
    run(cases, (-4i64..=4, -4i64..=4, series(3)), |(a, b, f)| {
        let (a, b) = (rat(a, 2), rat(b, 2));
        let twice = shift_apply(&a, &shift_apply(&b, &f));
        check(twice == shift_apply(&(&a + &b), &f), "Λ^a Λ^b = Λ^(a+b)")?;
        check(shift_apply(&int(0), &f) == f, "Λ^0 = 1")?;
        check(shift_apply(&a, &(&f * &f)) == &shift_apply(&a, &f) * &shift_apply(&a, &f), "shifts are multiplicative")
    })
}

pub fn window_soundness(cases: u32) -> Result<(), String> {
    // the bottom coefficient must be a unit for the upward inverse
    run(cases, (low_poly(), unit_term(), 1i64..=2, 1i64..=2), |(a, b, d1, extra)| {
        let order = 2;
        let l = LaurentShiftOp::finite(
            [
                (Shift::int(2), EpsSeries::one(order)),
                (Shift::int(1), EpsSeries::from_poly(a, order)),
                (Shift::int(0), EpsSeries::from_poly(b, order)),
            ],
            order,
        );
        let err = |e: crate::lattice::LatticeError| TestCaseError::fail(e.to_string());
        let shallow = op_sqrt(&l, Tail::Downward, Shift::int(-d1)).map_err(err)?;
        let deep = op_sqrt(&l, Tail::Downward, Shift::int(-d1 - extra)).map_err(err)?;
        check(
            deep.restrict(Some(Shift::int(-d1)), None).map_err(err)? == shallow,
            "deeper root agrees on the common window",
        )?;
        check(shallow.coeff(Shift::int(-d1 - 1)).is_err(), "reading below the window fails")?;
        let sq = op_mul(&shallow, &shallow).map_err(err)?;
        let (lo, hi) = sq.window();
        check(sq == l.restrict(lo, hi).map_err(err)?, "square of the root is the operator on its window")?;
        let inv = op_inverse(&l, Tail::Upward, Shift::int(extra)).map_err(err)?;
        check(inv.coeff(Shift::int(extra + 1)).is_err(), "reading above an upward window fails")?;
        check(op_mul(&shallow, &inv).is_err(), "downward times upward is rejected")
    })
}

pub fn lambda_ring(cases: u32) -> Result<(), String> {
    run(cases, (ring_elem(), ring_elem(), ring_elem()), |(x, y, z)| {
        check(&(&x * &y) * &z == &x * &(&y * &z), "associativity")?;
        check(&x * &y == &y * &x, "commutativity")?;
        check(&x * &(&y + &z) == &(&x * &y) + &(&x * &z), "linearity")?;
        check(x.dx().d_lambda() == x.d_lambda().dx(), "dx and ∂λ commute")?;
        let d = LambdaRingElem::d();
        check(&(&d * &d) * &x == &LambdaRingElem::p() * &x, "D² = P")
    })
}

/// All suites, in the order the acceptance report lists them.
pub fn suites() -> Vec<(&'static str, Suite)> {
    vec![
        ("ring axioms", ring_axioms),
        ("Leibniz", leibniz),
        ("adjointness", adjointness),
        ("exactness", exactness),
        ("shift group law", shift_group_law),
        ("window soundness", window_soundness),
        ("λ-ring", lambda_ring),
    ]
}
