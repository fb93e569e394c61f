use crate::error::{Error, Result};
use crate::interval::{biguint_to_bf, Bracket, LogInterval, PREC};
use astro_float::{BigFloat, RoundingMode};
use num_bigint::BigUint;
use rayon::prelude::*;

const CHUNK: u64 = 1 << 14;

/// Bracket of `prod_{i in lo..=hi} t_i / i` with `t_i = base + i`, or
/// `t_i = base` when `fixed`.
fn chunk_ratio(base: &BigFloat, fixed: bool, lo: u64, hi: u64) -> Bracket {
    let mut num_lo = BigFloat::from_u64(1, 64);
    let mut num_hi = num_lo.clone();
    let mut den_lo = num_lo.clone();
    let mut den_hi = num_lo.clone();
    for i in lo..=hi {
        let ib = BigFloat::from_u64(i, 64);
        let (t_lo, t_hi) = if fixed {
            (base.clone(), base.clone())
        } else {
            (
                base.add(&ib, PREC, RoundingMode::Down),
                base.add(&ib, PREC, RoundingMode::Up),
            )
        };
        num_lo = num_lo.mul(&t_lo, PREC, RoundingMode::Down);
        num_hi = num_hi.mul(&t_hi, PREC, RoundingMode::Up);
        den_lo = den_lo.mul(&ib, PREC, RoundingMode::Down);
        den_hi = den_hi.mul(&ib, PREC, RoundingMode::Up);
    }
    Bracket::new(
        num_lo.div(&den_hi, PREC, RoundingMode::Down),
        num_hi.div(&den_lo, PREC, RoundingMode::Up),
    )
}

/// Certified enclosure of `log10 C(big_n, k)` for `k >= 1`.
///
/// Terms `(N-k+i)/i` are multiplied in fixed-size chunks with directed
/// rounding, each chunk is converted to a log interval, and the chunk logs
/// are summed outward in index order, so the result does not depend on
/// thread scheduling.
pub fn log_binomial(big_n: &BigUint, k: u64) -> Result<LogInterval> {
    if BigUint::from(k) > *big_n {
        return Err(Error::BinomialOutOfRange {
            a: big_n.to_string(),
            b: k,
        });
    }
    let zero = BigFloat::from_u64(0, 64);
    if k == 0 {
        return Ok(LogInterval::new(zero.clone(), zero));
    }
    let base = biguint_to_bf(&(big_n - BigUint::from(k)));
    Ok(chunked_log(&base, false, k))
}

/// Certified enclosure of `log10 (N^k / k!)`.
pub fn log_power_over_factorial(big_n: &BigUint, k: u64) -> LogInterval {
    chunked_log(&biguint_to_bf(big_n), true, k)
}

fn chunked_log(base: &BigFloat, fixed: bool, k: u64) -> LogInterval {
    let zero = BigFloat::from_u64(0, 64);
    let chunks: Vec<(u64, u64)> = (0..k.div_ceil(CHUNK))
        .map(|c| (c * CHUNK + 1, ((c + 1) * CHUNK).min(k)))
        .collect();
    let logs: Vec<LogInterval> = chunks
        .par_iter()
        .map(|&(lo, hi)| chunk_ratio(base, fixed, lo, hi).log10())
        .collect();
    let mut acc = LogInterval::new(zero.clone(), zero);
    for l in &logs {
        acc = acc.add(l);
    }
    acc
}

/// `log_binomial` for machine-sized `N`.
pub fn log_binomial_u64(big_n: u64, k: u64) -> Result<LogInterval> {
    log_binomial(&BigUint::from(big_n), k)
}

/// Parses `N` from a decimal string (plain digits only).
pub fn log_binomial_str(big_n: &str, k: u64) -> Result<LogInterval> {
    let n: BigUint = big_n
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad integer `{big_n}`")))?;
    log_binomial(&n, k)
}
