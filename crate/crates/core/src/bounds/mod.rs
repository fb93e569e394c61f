//! Poisson-approximation enclosures for Stirling, rook and file numbers.
//!
//! The closed-form ingredients are generic over [`Scalar`]; reports always
//! evaluate them exactly over [`crate::Rational`] and then turn the caps into
//! outward-rounded enclosures of the integer in question.

mod binomial;
mod enclosure;
mod theorem4;
mod theorem5;
mod theorem6;

pub use binomial::{log_binomial, log_binomial_str, log_binomial_u64, log_power_over_factorial};
pub use enclosure::{Enclosure, Endpoint, EndpointSign, Mode, LOG_BUDGET};
pub use theorem4::{
    mu, mu_generic, theorem4_bound, theorem4_bound_with, theorem4_terms, BoundReport, TFactor,
    Theorem4Terms,
};
pub use theorem5::{
    attacking_positions, column_positions, theorem5_bound, theorem5_bound_with, theorem5_terms,
    CapConvention, IndepBoundReport,
    Theorem5Terms,
};
pub use theorem6::{
    theorem6_bound, theorem6_bound_with, theorem6_terms, FerrersBoundReport, S4Exponent,
    Theorem6Terms,
};

use crate::error::{Error, Result};
use crate::exact::binomial_big;
use crate::interval::Bracket;
use crate::scalar::Scalar;
use num_bigint::BigUint;

/// Prefactor `C(big_n, k)` as a bracket; zero when `k > big_n`.
pub(crate) fn binomial_prefactor(mode: Mode, big_n: &BigUint, k: u64) -> Result<Bracket> {
    if BigUint::from(k) > *big_n {
        return Ok(Bracket::from_u64(0));
    }
    match mode {
        Mode::Exact => Ok(Bracket::from_bignat(&binomial_big(big_n, k)?)),
        Mode::Log => Ok(log_binomial(big_n, k)?.to_bracket()),
    }
}

pub(crate) fn check_nk(n: u64, k: u64) -> Result<()> {
    if n < 3 || k < 2 || k > n {
        return Err(Error::OutOfRange(format!(
            "need n >= 3 and 2 <= k <= n, got n = {n}, k = {k}"
        )));
    }
    Ok(())
}

pub(crate) fn big(v: u64) -> BigUint {
    BigUint::from(v)
}

pub(crate) fn choose(a: &BigUint, b: u64) -> BigUint {
    binomial_big(a, b)
        .map(|v| v.into_biguint())
        .unwrap_or_default()
}

pub(crate) fn sc<T: Scalar>(v: &BigUint) -> T {
    T::from_biguint(v)
}

pub(crate) fn scu<T: Scalar>(v: u64) -> T {
    <T as Scalar>::from_u64(v)
}
