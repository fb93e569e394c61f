//! Number parsing and the fixed-width renderings used by the table output.

use anyhow::{anyhow, bail, Result};

/// Parses a non-negative integer given plainly (`1000000`) or in scientific
/// notation (`1e12`, `2.5E6`); the value must be integral.
pub fn parse_count(s: &str) -> Result<u64> {
    let s = s.trim().replace('_', "");
    let Some(split) = s.find(['e', 'E']) else {
        return s.parse().map_err(|_| anyhow!("not a non-negative integer: `{s}`"));
    };
    let (mant, exp) = (&s[..split], &s[split + 1..]);
    let exp: i64 = exp.parse().map_err(|_| anyhow!("bad exponent in `{s}`"))?;
    let (int, frac) = mant.split_once('.').unwrap_or((mant, ""));
    if int.is_empty() && frac.is_empty() || !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        bail!("bad mantissa in `{s}`");
    }
    let digits = format!("{int}{frac}");
    let shift = exp - frac.len() as i64;
    let digits = digits.trim_start_matches('0');
    if digits.is_empty() {
        return Ok(0);
    }
    let value = if shift >= 0 {
        format!("{digits}{}", "0".repeat(shift as usize))
    } else {
        let cut = digits.len() as i64 + shift;
        let tail = if cut <= 0 { digits } else { &digits[cut as usize..] };
        if tail.chars().any(|c| c != '0') {
            bail!("`{s}` is not an integer");
        }
        if cut <= 0 {
            "0".to_string()
        } else {
            digits[..cut as usize].to_string()
        }
    };
    value.parse().map_err(|_| anyhow!("`{s}` does not fit in 64 bits"))
}

/// Six significant digits with trailing zeros trimmed; values of at least 1
/// print as `1.`.
pub fn six_digits(x: f64) -> String {
    if x >= 1.0 {
        return "1.".into();
    }
    if x <= 0.0 {
        return "0.".into();
    }
    let decimals = (5 - x.log10().floor() as i64).max(0) as usize;
    let s = format!("{x:.decimals$}");
    s.trim_end_matches('0').to_string()
}

/// Rounds down to `decimals` places and renders.
pub fn round_down(x: f64, decimals: usize) -> String {
    let scale = 10f64.powi(decimals as i32);
    format!("{:.decimals$}", (x * scale).floor() / scale)
}

/// Rounds up to `decimals` places and renders.
pub fn round_up(x: f64, decimals: usize) -> String {
    let scale = 10f64.powi(decimals as i32);
    format!("{:.decimals$}", (x * scale).ceil() / scale)
}

/// Decimal places of a printed number such as `1.876982`.
pub fn decimals_of(printed: &str) -> usize {
    printed.split_once('.').map_or(0, |(_, f)| f.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(parse_count("1000").unwrap(), 1000);
        assert_eq!(parse_count("1e12").unwrap(), 1_000_000_000_000);
        assert_eq!(parse_count("2E6").unwrap(), 2_000_000);
        assert_eq!(parse_count("2.5e3").unwrap(), 2500);
        assert_eq!(parse_count("0.0e4").unwrap(), 0);
        assert!(parse_count("2.5e0").is_err());
        assert!(parse_count("-3").is_err());
        assert!(parse_count("1e30").is_err());
        assert!(parse_count("e5").is_err());
    }

    #[test]
    fn table_format() {
        assert_eq!(six_digits(1.0), "1.");
        assert_eq!(six_digits(0.8799071234), "0.879907");
        assert_eq!(six_digits(0.20528004), "0.20528");
        assert_eq!(six_digits(0.6181700), "0.61817");
    }

    #[test]
    fn directed_rounding_of_decimals() {
        assert_eq!(round_down(1.8766978, 5), "1.87669");
        assert_eq!(round_up(1.3069741, 6), "1.306975");
        assert_eq!(decimals_of("1.30121"), 5);
    }
}
