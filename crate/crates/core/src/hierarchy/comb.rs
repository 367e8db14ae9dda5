//! The double-factorial identity
//! `(s+1)! - 2^{-s} sum_k k C(s+1,k+1) (2s-2k-1)!! (2k-1)!! = (2s+1)!!/2^s`.

use num_bigint::BigInt;

use crate::combinatorics::{binomial, double_factorial, factorial};
use crate::jetring::Rational;
use crate::report::CheckReport;

use super::HierarchyError;

/// Both sides of the identity at `s`.
pub fn comb_identity_sides(s: u64) -> (Rational, Rational) {
    let mut sum = BigInt::from(0);
    for k in 0..=s {
        let term = BigInt::from(k)
            * binomial(s + 1, k + 1)
            * double_factorial(2 * s as i64 - 2 * k as i64 - 1)
            * double_factorial(2 * k as i64 - 1);
        sum += term;
    }
    let two_s = Rational::from_integer(BigInt::from(2).pow(s as u32));
    let lhs = Rational::from_integer(factorial(s + 1)) - Rational::from_integer(sum) / &two_s;
    let rhs = Rational::from_integer(double_factorial(2 * s as i64 + 1)) / two_s;
    (lhs, rhs)
}

pub fn comb_identity_check(s_max: u64) -> Result<CheckReport, HierarchyError> {
    for s in 0..=s_max {
        let (lhs, rhs) = comb_identity_sides(s);
        if lhs != rhs {
            return Err(HierarchyError::Mismatch {
                check: format!("double-factorial identity at s = {s}"),
                difference: (lhs - rhs).to_string(),
            });
        }
    }
    Ok(CheckReport::new("double-factorial identity", format!("exact for 0 <= s <= {s_max}")))
}
