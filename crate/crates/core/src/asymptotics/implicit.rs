use super::roots::solve_increasing;
use super::special::{compensated_sum, digamma, ln_factorial, ln_gamma, trigamma};
use super::{AsymptoticEstimate, Regime, RootInfo};
use crate::error::{Error, Result};
use crate::exact::StirlingKind;
use std::f64::consts::PI;

/// Above this many terms the first-kind sums switch to polygamma forms.
const DIRECT_SUM_LIMIT: u64 = 100_000;

/// `R / (1 - e^-R)` and its derivative.
fn saddle_second(r: f64) -> (f64, f64) {
    let a = -(-r).exp_m1();
    let g = r / a;
    let dg = (a - r * (-r).exp()) / (a * a);
    (g, dg)
}

/// Saddle point of the second kind: `R / (1 - e^-R) = n/m`.
pub fn implicit_r_second(n: u64, m: u64) -> Result<AsymptoticEstimate> {
    if m == 0 || m >= n {
        return Err(Error::OutOfRange(format!("need 0 < m < n, got n = {n}, m = {m}")));
    }
    let target = n as f64 / m as f64;
    let (r, iterations) = solve_increasing(
        |r| {
            let (g, dg) = saddle_second(r);
            (g - target, dg)
        },
        0.5 * (target - 1.0),
        target,
    )?;
    let residual = (saddle_second(r).0 - target).abs() / target.max(1.0);
    let em1 = r.exp_m1();
    // e^R (e^R - 1 - R) / (2 (e^R - 1)^2)
    let h = r.exp() * (em1 - r) / (2.0 * em1 * em1);
    let mf = m as f64;
    let ln_value = ln_factorial(n) + mf * em1.ln()
        - (2f64).ln()
        - n as f64 * r.ln()
        - ln_factorial(m)
        - 0.5 * (PI * mf * r * h).ln();
    let mut est = AsymptoticEstimate::new(Regime::ImplicitRSecond, StirlingKind::Second, n, ln_value);
    est.m = Some(m);
    est.root = Some(RootInfo {
        r,
        h,
        residual,
        iterations,
    });
    Ok(est)
}

/// `sum_{l<n} R/(R+l)`, its derivative in `R`, and `sum_{l<n} R^2/(R+l)^2`.
fn saddle_first(n: u64, r: f64) -> (f64, f64, f64) {
    if n <= DIRECT_SUM_LIMIT {
        let f = compensated_sum((0..n).map(|l| r / (r + l as f64)));
        let sq = compensated_sum((0..n).map(|l| {
            let v = r / (r + l as f64);
            v * v
        }));
        let df = compensated_sum((1..n).map(|l| {
            let d = r + l as f64;
            l as f64 / (d * d)
        }));
        (f, df, sq)
    } else {
        let nf = n as f64;
        let f = r * (digamma(r + nf) - digamma(r));
        let t = trigamma(r) - trigamma(r + nf);
        let sq = r * r * t;
        // d/dR [R (psi(R+n) - psi(R))]
        let df = (digamma(r + nf) - digamma(r)) - r * t;
        (f, df, sq)
    }
}

/// Saddle point of the first kind: `sum_{l<n} R/(R+l) = m`.
pub fn implicit_r_first(n: u64, m: u64) -> Result<AsymptoticEstimate> {
    if m < 2 || m >= n {
        return Err(Error::OutOfRange(format!(
            "need 2 <= m < n (the saddle point degenerates at m = 1), got n = {n}, m = {m}"
        )));
    }
    let mf = m as f64;
    let harmonic = compensated_sum((1..n.min(DIRECT_SUM_LIMIT)).map(|l| 1.0 / l as f64))
        + if n > DIRECT_SUM_LIMIT {
            digamma(n as f64) - digamma(DIRECT_SUM_LIMIT as f64)
        } else {
            0.0
        };
    let lo = 0.5 * (mf - 1.0) / harmonic;
    let hi = mf * (n as f64 - 1.0) / (n - m) as f64 + 1.0;
    let (r, iterations) = solve_increasing(
        |r| {
            let (f, df, _) = saddle_first(n, r);
            (f - mf, df)
        },
        lo,
        hi,
    )?;
    let (f, _, sq) = saddle_first(n, r);
    let residual = (f - mf).abs() / mf.max(1.0);
    let h = mf - sq;
    let ln_value =
        ln_gamma(n as f64 + r) - mf * r.ln() - ln_gamma(r) - 0.5 * (2.0 * PI * h).ln();
    let mut est = AsymptoticEstimate::new(Regime::ImplicitRFirst, StirlingKind::First, n, ln_value);
    est.m = Some(m);
    est.root = Some(RootInfo {
        r,
        h,
        residual,
        iterations,
    });
    Ok(est)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{stirling1_unsigned_exact, stirling2_exact};

    #[test]
    fn second_kind_residual_and_limit() {
        let e = implicit_r_second(2000, 1000).unwrap();
        let root = e.root.unwrap();
        let (g, _) = saddle_second(root.r);
        assert!((g - 2.0).abs() <= 1e-12);
        let e = implicit_r_second(100_001, 100_000).unwrap();
        assert!(e.root.unwrap().r < 1e-4);
        assert!(implicit_r_second(5, 5).is_err());
        assert!(implicit_r_second(5, 0).is_err());
    }

    #[test]
    fn second_kind_accuracy() {
        let e = implicit_r_second(2000, 1900).unwrap();
        let exact = stirling2_exact(2000, 1900).unwrap().log10_f64();
        assert!((e.ratio_to(exact) - 1.0).abs() < 0.01);
    }

    #[test]
    fn first_kind_accuracy() {
        let e = implicit_r_first(1000, 500).unwrap();
        let exact = stirling1_unsigned_exact(1000, 500).unwrap().log10_f64();
        assert!((e.ratio_to(exact) - 1.0).abs() < 0.01);
        let e = implicit_r_first(50, 49).unwrap();
        assert!(e.root.unwrap().residual <= 1e-12);
    }

    #[test]
    fn first_kind_polygamma_path_matches_sums() {
        let n = DIRECT_SUM_LIMIT;
        for r in [0.01, 1.0, 37.5, 1e4] {
            let (f1, d1, s1) = saddle_first(n, r);
            let (f2, d2, s2) = saddle_first(n + 1, r);
            // adding one term R/(R+n)
            let add = r / (r + n as f64);
            assert!((f2 - f1 - add).abs() < 1e-9 * f2);
            assert!((s2 - s1 - add * add).abs() < 1e-9 * s2.max(1.0));
            let dadd = n as f64 / ((r + n as f64) * (r + n as f64));
            assert!((d2 - d1 - dadd).abs() < 1e-9 * d2.abs().max(1.0));
        }
    }
}
