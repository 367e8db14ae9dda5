//! Normalization constants of the positive, logarithmic and negative flows.

use num_bigint::BigInt;
use num_traits::One;

use crate::combinatorics::{double_factorial, factorial};
use crate::jetring::Rational;

fn sign(p: u32) -> Rational {
    if p % 2 == 1 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

fn two_pow(e: i64) -> Rational {
    Rational::from_integer(BigInt::from(2)).pow(e as i32)
}

/// `c_{1,p} = (-1)^{p+1} 2^{3p+2} / (2p+1)!!`.
pub fn c_positive(p: u32) -> Rational {
    sign(p) * two_pow(3 * p as i64 + 2) / Rational::from_integer(double_factorial(2 * p as i64 + 1))
}

/// `c_{0,p} = (-1)^{p+1} 2^{2p-1} / p!`.
pub fn c_log(p: u32) -> Rational {
    sign(p) * two_pow(2 * p as i64 - 1) / Rational::from_integer(factorial(p as u64))
}

/// `c_{0,-p} = -(p-1)! / 4^p`, `p >= 1`.
pub fn c_negative(p: u32) -> Rational {
    assert!(p >= 1, "c_{{0,-p}} needs p >= 1");
    -Rational::from_integer(factorial(p as u64 - 1)) / two_pow(2 * p as i64)
}
