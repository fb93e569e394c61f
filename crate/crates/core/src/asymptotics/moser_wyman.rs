use super::special::ln_binomial;
use super::{AsymptoticEstimate, Regime};
use crate::error::{Error, Result};
use crate::exact::{binomial_exact, falling_factorial, BigNat, StirlingKind};
use crate::Rational;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

/// Expansion variable of the series.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum QConvention {
    /// `q = 2/m`, consistent with the first-order term `C(n,m)(m/2)^(n-m)`.
    #[default]
    OverM,
    /// `q = 2/(n-m)`.
    OverNMinusM,
}

impl std::str::FromStr for QConvention {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "m" | "over-m" | "2/m" => Ok(QConvention::OverM),
            "n-m" | "over-n-minus-m" | "2/(n-m)" => Ok(QConvention::OverNMinusM),
            other => Err(Error::Parse(format!("unknown q convention `{other}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MoserWymanInfo {
    pub q_convention: QConvention,
    pub q: f64,
    pub s: u32,
    /// Geometric ratio `2 (n-m)^2 / (5m)`.
    pub rho: f64,
    /// `rho^(s+1) / (1 - rho)`; infinite when the ratio is at least 1.
    pub e_s: f64,
    pub valid: bool,
    /// Truncated bracket `sum_{j<=s} A_j q^j`.
    pub series: f64,
}

fn check(n: u64, m: u64, s: u32) -> Result<()> {
    if m == 0 || m >= n {
        return Err(Error::OutOfRange(format!("need 0 < m < n, got n = {n}, m = {m}")));
    }
    if s > 3 {
        return Err(Error::OutOfRange(format!("s must be at most 3, got {s}")));
    }
    Ok(())
}

/// Bracket coefficients `A_0..A_3` as exact rationals in `r = n - m`.
fn coefficients(r: u64) -> [Rational; 4] {
    let ff = |j| Rational::from_integer(BigInt::from(falling_factorial(r, j).into_biguint()));
    let int = |v: i64| Rational::from_integer(BigInt::from(v));
    [
        Rational::one(),
        ff(2) / int(12),
        ff(4) / int(288),
        ff(6) / int(10368) - ff(4) / int(1440),
    ]
}

fn q_of(n: u64, m: u64, qc: QConvention) -> Rational {
    let den = match qc {
        QConvention::OverM => m,
        QConvention::OverNMinusM => n - m,
    };
    Rational::new(BigInt::from(2), BigInt::from(den))
}

fn rho_of(n: u64, m: u64) -> Rational {
    let r = BigInt::from(n - m);
    Rational::new(BigInt::from(2) * &r * &r, BigInt::from(5 * m))
}

/// Exact value window `[P (sum - E_s), P (sum + E_s)]`, `P = C(n,m) q^-(n-m)`.
#[derive(Clone, Debug, PartialEq)]
pub struct MwWindow {
    pub lower: Rational,
    pub upper: Rational,
}

impl MwWindow {
    pub fn contains(&self, v: &BigNat) -> bool {
        let x = Rational::from_integer(BigInt::from(v.as_biguint().clone()));
        self.lower <= x && x <= self.upper
    }
}

/// The guaranteed window in exact arithmetic; `None` when `rho >= 1`.
pub fn moser_wyman_window(n: u64, m: u64, s: u32, qc: QConvention) -> Result<Option<MwWindow>> {
    check(n, m, s)?;
    let rho = rho_of(n, m);
    if rho >= Rational::one() {
        return Ok(None);
    }
    let q = q_of(n, m, qc);
    let coeffs = coefficients(n - m);
    let mut series = Rational::zero();
    let mut qp = Rational::one();
    for c in coeffs.iter().take(s as usize + 1) {
        series += c * &qp;
        qp *= &q;
    }
    let e_s = num_traits::pow(rho.clone(), s as usize + 1) / (Rational::one() - rho);
    let pre = Rational::from_integer(BigInt::from(binomial_exact(n, m)?.into_biguint()))
        / num_traits::pow(q, (n - m) as usize);
    Ok(Some(MwWindow {
        lower: &pre * (&series - &e_s),
        upper: &pre * (&series + &e_s),
    }))
}

/// `C(n,m) q^-(n-m) sum_{j<=s} A_j q^j` for `S(n,m)`, with its error window.
pub fn moser_wyman_s2(n: u64, m: u64, s: u32, qc: QConvention) -> Result<AsymptoticEstimate> {
    check(n, m, s)?;
    let r = (n - m) as f64;
    let q = match qc {
        QConvention::OverM => 2.0 / m as f64,
        QConvention::OverNMinusM => 2.0 / r,
    };
    let ff = |j: u32| (0..j).map(|i| r - i as f64).product::<f64>();
    let a = [
        1.0,
        ff(2) / 12.0,
        ff(4) / 288.0,
        ff(6) / 10368.0 - ff(4) / 1440.0,
    ];
    let series: f64 = (0..=s as usize).map(|j| a[j] * q.powi(j as i32)).sum();
    let rho = 2.0 * r * r / (5.0 * m as f64);
    let valid = rho < 1.0;
    let e_s = if valid {
        rho.powi(s as i32 + 1) / (1.0 - rho)
    } else {
        f64::INFINITY
    };
    let ln_value = ln_binomial(n as f64, m as f64) - r * q.ln() + series.ln();
    let mut est = AsymptoticEstimate::new(Regime::MoserWyman, StirlingKind::Second, n, ln_value);
    est.m = Some(m);
    est.in_range = valid;
    est.moser_wyman = Some(MoserWymanInfo {
        q_convention: qc,
        q,
        s,
        rho,
        e_s,
        valid,
        series,
    });
    Ok(est)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::stirling2_exact;

    #[test]
    fn first_order_case() {
        // n - m = 1: C(n,1)(m/2) = S(n, n-1)
        let e = moser_wyman_s2(20, 19, 0, QConvention::OverM).unwrap();
        let exact = stirling2_exact(20, 19).unwrap().log10_f64();
        assert!((e.log10_value - exact).abs() < 1e-12);
    }

    #[test]
    fn flags_invalid_ratio() {
        let e = moser_wyman_s2(100, 50, 3, QConvention::OverM).unwrap();
        assert!(!e.moser_wyman.unwrap().valid);
        assert!(moser_wyman_window(100, 50, 3, QConvention::OverM).unwrap().is_none());
    }

    #[test]
    fn window_contains_exact_example() {
        let w = moser_wyman_window(50, 43, 3, QConvention::OverM).unwrap().unwrap();
        assert!(w.contains(&stirling2_exact(50, 43).unwrap()));
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(moser_wyman_s2(5, 5, 1, QConvention::OverM).is_err());
        assert!(moser_wyman_s2(5, 0, 1, QConvention::OverM).is_err());
        assert!(moser_wyman_s2(5, 3, 4, QConvention::OverM).is_err());
    }
}
