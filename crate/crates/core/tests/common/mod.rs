//! Helpers shared by the integration test targets.

#![allow(dead_code)]

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qkdv_core::jetring::{eval_numeric, rat, LogExtendedPoly, Rational};

/// Evaluates two free energies at `points` random rational jet assignments
/// (jets up to order 7, `v` and `v_x` nonzero) and returns the first point
/// where they differ.
pub fn numeric_disagreement(a: &LogExtendedPoly, b: &LogExtendedPoly, points: usize, seed: u64) -> Option<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..points {
        let mut point: BTreeMap<usize, Rational> = BTreeMap::new();
        for s in 0..=7 {
            let mut n: i64 = rng.gen_range(-9..=9);
            if s <= 1 && n == 0 {
                n = 1;
            }
            point.insert(s, rat(n, rng.gen_range(1..=7)));
        }
        let x = eval_numeric(&a.rational, &point).ok()?;
        let y = eval_numeric(&b.rational, &point).ok()?;
        if x != y || a.logs != b.logs {
            return Some(format!("{point:?}: {x} vs {y}"));
        }
    }
    None
}
