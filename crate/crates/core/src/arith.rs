//! Exact integer and rational helpers.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Exact rational value of every inequality sum.
pub type ExactRational = BigRational;

pub fn factorial(n: usize) -> BigUint {
    (1..=n as u64).fold(BigUint::one(), |acc, i| acc * i)
}

pub fn binomial(n: usize, r: usize) -> BigUint {
    if r > n {
        return BigUint::zero();
    }
    let r = r.min(n - r);
    let mut acc = BigUint::one();
    for i in 0..r {
        // Exact at each step: acc = C(n, i+1) after the division.
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `C(n, r)` in 128 bits, `None` on overflow.
pub fn binomial_u128(n: u64, r: u64) -> Option<u128> {
    if r > n {
        return Some(0);
    }
    let r = r.min(n - r);
    let mut acc: u128 = 1;
    for i in 0..r as u128 {
        acc = acc.checked_mul(n as u128 - i)? / (i + 1);
    }
    Some(acc)
}

/// `total! / ∏ parts_i!`.
///
/// Built as a product of binomials so no intermediate exceeds the result by
/// more than one factor.
pub fn multinomial(total: usize, parts: &[usize]) -> Result<BigUint> {
    let sum: usize = parts.iter().sum();
    if sum != total {
        return Err(Error::param(format!(
            "multinomial parts sum to {sum}, expected {total}"
        )));
    }
    let mut acc = BigUint::one();
    let mut running = 0;
    for &p in parts {
        running += p;
        acc *= binomial(running, p);
    }
    Ok(acc)
}

pub fn reciprocal(n: &BigUint) -> ExactRational {
    BigRational::new(1.into(), n.clone().into())
}
