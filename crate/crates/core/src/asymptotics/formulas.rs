use super::special::ln_factorial;
use super::{AsymptoticEstimate, ParamInfo, Regime};
use crate::bounds::log_binomial;
use crate::error::{Error, Result};
use crate::exact::{choose2, StirlingKind};
use crate::scalar::rational_to_f64;
use crate::Rational;
use num_bigint::{BigInt, BigUint};
use std::f64::consts::{LN_10, LN_2, PI};

pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// First-order estimate of `|s(n,m)|` for small `m`:
/// `(n-1)!/(m-1)! (ln n + gamma)^(m-1)`.
pub fn small_m_first_kind(n: u64, m: u64) -> Result<AsymptoticEstimate> {
    if m == 0 || n < 2 || m > n {
        return Err(Error::OutOfRange(format!("need 1 <= m <= n, n >= 2; got n = {n}, m = {m}")));
    }
    let ln_n = (n as f64).ln();
    let ln_value =
        ln_factorial(n - 1) - ln_factorial(m - 1) + (m - 1) as f64 * (ln_n + EULER_GAMMA).ln();
    let mut est = AsymptoticEstimate::new(Regime::Jordan, StirlingKind::First, n, ln_value);
    est.m = Some(m);
    est.in_range = m as f64 <= ln_n.max(1.0);
    Ok(est)
}

/// `S(n,m) ~ m^n/m! exp[(n/m - m) e^(-n/m)]` for `m < n / ln n`.
pub fn sachkov_s2(n: u64, m: u64) -> Result<AsymptoticEstimate> {
    if m == 0 || m > n {
        return Err(Error::OutOfRange(format!("need 1 <= m <= n, got n = {n}, m = {m}")));
    }
    let (nf, mf) = (n as f64, m as f64);
    let ln_value = nf * mf.ln() - ln_factorial(m) + (nf / mf - mf) * (-nf / mf).exp();
    let mut est = AsymptoticEstimate::new(Regime::Sachkov, StirlingKind::Second, n, ln_value);
    est.m = Some(m);
    est.in_range = n >= 2 && mf < nf / nf.ln();
    Ok(est)
}

/// Exponent multiplier of the Poisson rate: the first kind uses `mu`, the
/// second kind `2 mu`.
fn rate_factor(kind: StirlingKind) -> f64 {
    match kind {
        StirlingKind::First => 1.0,
        StirlingKind::Second => 2.0,
    }
}

fn ln_binomial_pairs(n: u64, k: u64) -> Result<f64> {
    let big_n = choose2(&BigUint::from(n));
    Ok(log_binomial(&big_n, k)?.mid_f64() * LN_10)
}

/// `C(C(n,2), n-m) e^(-c mu)`, `c = 1` (first kind) or `2` (second kind).
pub fn prop24_formula(n: u64, m: u64, kind: StirlingKind) -> Result<AsymptoticEstimate> {
    if n < 3 || m >= n {
        return Err(Error::OutOfRange(format!("need n >= 3 and m < n, got n = {n}, m = {m}")));
    }
    let k = n - m;
    let bn = BigUint::from(n);
    let big_n = choose2(&bn);
    let num = choose2(&BigUint::from(k)) * (&bn * (&bn - 1u32) * (&bn - 2u32) / 6u32);
    let mu = rational_to_f64(&Rational::new(BigInt::from(num), BigInt::from(choose2(&big_n))));
    let ln_value = ln_binomial_pairs(n, k)? - rate_factor(kind) * mu;
    let mut est = AsymptoticEstimate::new(Regime::FullRange, kind, n, ln_value);
    est.m = Some(m);
    est.in_range = (k as f64) <= (n as f64).sqrt();
    Ok(est)
}

/// Estimates for `m = n - t n^a`, with `t n^a` rounded to the nearest
/// integer `k` and `t` replaced by `k / n^a` throughout.
pub fn param_formula(n: u64, a: f64, t: f64, kind: StirlingKind) -> Result<AsymptoticEstimate> {
    if !(0.0..1.0).contains(&a) || !(t > 0.0) {
        return Err(Error::OutOfRange(format!("need 0 <= a < 1 and t > 0, got a = {a}, t = {t}")));
    }
    let nf = n as f64;
    let na = nf.powf(a);
    let k = (t * na).round() as u64;
    if k < 1 || k >= n {
        return Err(Error::OutOfRange(format!("t n^a rounds to {k}, outside [1, n)")));
    }
    let te = k as f64 / na;
    let correction = rate_factor(kind) * (2.0 / 3.0) * te * te * nf.powf(2.0 * a - 1.0);
    let ln_binomial_form = ln_binomial_pairs(n, k)? - correction;
    let ln_closed = -0.5 * (2.0 * PI * te.powi(5) * na).ln()
        + k as f64 * ((2.0 - a) * nf.ln() + 1.0 - LN_2)
        - correction;
    let mut est = AsymptoticEstimate::new(Regime::Parametrized, kind, n, ln_binomial_form);
    est.m = Some(n - k);
    est.a = Some(a);
    est.t = Some(t);
    est.param = Some(ParamInfo {
        k_rounded: k,
        t_effective: te,
        log10_binomial_form: ln_binomial_form / LN_10,
        log10_closed_form: ln_closed / LN_10,
    });
    Ok(est)
}

/// `x = n^a`, `y = n^(1-a)`.
pub fn louchard_xy(n: f64, a: f64) -> (f64, f64) {
    (n.powf(a), n.powf(1.0 - a))
}

/// Truncated exponent `T1` (first kind) or `T1'` (second kind), through the
/// `1/y^2` term.
pub fn louchard_t(x: f64, y: f64, kind: StirlingKind) -> f64 {
    let (c1, c2) = match kind {
        StirlingKind::First => (2.0 / 3.0, 2.0 / 9.0),
        StirlingKind::Second => (4.0 / 3.0, 5.0 / 9.0),
    };
    x * (1.0 - LN_2 + 2.0 * y.ln() + x.ln() - c1 / y - c2 / (y * y))
}

/// `e^T / sqrt(2 pi n^a)` for `m = n - n^a`.
pub fn louchard_estimate(n: u64, a: f64, kind: StirlingKind) -> Result<AsymptoticEstimate> {
    if !(0.0..1.0).contains(&a) || n < 2 {
        return Err(Error::OutOfRange(format!("need 0 <= a < 1 and n >= 2, got a = {a}")));
    }
    let (x, y) = louchard_xy(n as f64, a);
    let ln_value = louchard_t(x, y, kind) - 0.5 * (2.0 * PI * x).ln();
    let mut est = AsymptoticEstimate::new(Regime::Louchard, kind, n, ln_value);
    est.a = Some(a);
    est.t = Some(1.0);
    est.in_range = a > 0.5;
    Ok(est)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{stirling1_unsigned_exact, stirling2_exact};

    fn rel(e: &AsymptoticEstimate, exact_log10: f64) -> f64 {
        (e.ratio_to(exact_log10) - 1.0).abs()
    }

    #[test]
    fn jordan() {
        let e = small_m_first_kind(50, 1).unwrap();
        assert!((e.log10_value - ln_factorial(49) / LN_10).abs() < 1e-12);
        let e = small_m_first_kind(10_000, 3).unwrap();
        let exact = stirling1_unsigned_exact(10_000, 3).unwrap().log10_f64();
        assert!(rel(&e, exact) < 0.10);
    }

    #[test]
    fn jordan_against_harmonic_closed_form() {
        // |s(n,2)| = (n-1)! H_(n-1)
        let n = 1_000_000u64;
        let h: f64 = super::super::special::compensated_sum((1..n).map(|j| 1.0 / j as f64));
        let exact = (ln_factorial(n - 1) + h.ln()) / LN_10;
        let e = small_m_first_kind(n, 2).unwrap();
        assert!(rel(&e, exact) < 0.05);
    }

    #[test]
    fn sachkov() {
        let e = sachkov_s2(30, 1).unwrap();
        assert!(e.log10_value.abs() < 1e-9);
        let e = sachkov_s2(40, 5).unwrap();
        let exact = stirling2_exact(40, 5).unwrap().log10_f64();
        assert!(rel(&e, exact) < 0.15);
        assert!(sachkov_s2(100, 3).unwrap().log10_value.is_finite());
    }

    #[test]
    fn prop24_small_case() {
        let e = prop24_formula(10, 8, StirlingKind::Second).unwrap();
        let exact = stirling2_exact(10, 8).unwrap().log10_f64();
        // within the absolute cap relative to C(45,2)
        let cap: f64 = crate::bounds::theorem4_terms::<f64>(10, 2, Default::default())
            .unwrap()
            .cap2;
        let c452 = 990.0;
        assert!((10f64.powf(exact) - 10f64.powf(e.log10_value)).abs() <= cap * c452);
    }

    #[test]
    fn param_identities() {
        let f = param_formula(1000, 0.0, 3.0, StirlingKind::First).unwrap();
        let s = param_formula(1000, 0.0, 3.0, StirlingKind::Second).unwrap();
        let p = f.param.unwrap();
        assert_eq!(p.k_rounded, 3);
        let diff = (f.log10_value - s.log10_value) * LN_10;
        assert!((diff - (2.0 / 3.0) * 9.0 / 1000.0).abs() < 1e-9);
        let g = param_formula(1_000_000, 0.5, 1.0, StirlingKind::First).unwrap();
        let gp = g.param.unwrap();
        assert!((gp.log10_binomial_form - gp.log10_closed_form).abs() < 1e-2);
    }

    #[test]
    fn louchard_coefficients() {
        let (x, y) = (7.0_f64, 3.0_f64);
        let d = louchard_t(x, y, StirlingKind::First) - louchard_t(x, y, StirlingKind::Second);
        assert!((d - x * (2.0 / (3.0 * y) + 3.0 / (9.0 * y * y))).abs() < 1e-12);
        let big_y = 1e12_f64;
        let lim = x * (1.0 - LN_2 + 2.0 * big_y.ln() + x.ln());
        assert!((louchard_t(x, big_y, StirlingKind::First) - lim).abs() < 1e-9);
    }
}
