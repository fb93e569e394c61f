use super::{big, binomial_prefactor, check_nk, choose, sc, scu, Enclosure, Mode};
use crate::error::{Error, Result};
use crate::scalar::{min3, serialize_scalar, Scalar};
use crate::Rational;
use num_bigint::BigUint;
use serde::Serialize;

/// Treatment of the `(1 - T)` factor multiplying the coupling terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TFactor {
    /// Factor replaced by 1. Reproduces the published D2 table and is the
    /// larger (more conservative) bound.
    #[default]
    Unit,
    /// Factor kept as `1 - T`.
    OneMinusT,
}

impl std::str::FromStr for TFactor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "unit" | "table" => Ok(TFactor::Unit),
            "one-minus-t" | "printed" => Ok(TFactor::OneMinusT),
            other => Err(Error::Parse(format!("unknown T-factor convention `{other}`"))),
        }
    }
}

/// Ingredients of the staircase-board bound for `S(n, n-k)` and
/// `|s(n, n-k)|`.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(bound = "")]
pub struct Theorem4Terms<T: Scalar> {
    pub n: u64,
    pub k: u64,
    #[serde(serialize_with = "serialize_scalar")]
    pub mu: T,
    /// Row-attack probability of one pair, `C(n,3)/C(N,2)`.
    #[serde(serialize_with = "serialize_scalar")]
    pub r_alpha: T,
    #[serde(serialize_with = "serialize_scalar")]
    pub c_alpha: T,
    /// Probability of the coupling cases with `|W - V| = 1`.
    #[serde(serialize_with = "serialize_scalar")]
    pub t_term: T,
    #[serde(serialize_with = "serialize_scalar")]
    pub r_plus: T,
    #[serde(serialize_with = "serialize_scalar")]
    pub c_plus: T,
    #[serde(serialize_with = "serialize_scalar")]
    pub ra_minus: T,
    #[serde(serialize_with = "serialize_scalar")]
    pub rb_minus: T,
    #[serde(serialize_with = "serialize_scalar")]
    pub ca_minus: T,
    #[serde(serialize_with = "serialize_scalar")]
    pub cb_minus: T,
    /// Closed forms used for the caps.
    #[serde(serialize_with = "serialize_scalar")]
    pub d1: T,
    #[serde(serialize_with = "serialize_scalar")]
    pub d2: T,
    /// The same quantities reassembled from the individual terms above.
    #[serde(serialize_with = "serialize_scalar")]
    pub d1_from_terms: T,
    #[serde(serialize_with = "serialize_scalar")]
    pub d2_from_terms: T,
    #[serde(serialize_with = "serialize_scalar")]
    pub cap1: T,
    #[serde(serialize_with = "serialize_scalar")]
    pub cap2: T,
    pub t_factor: TFactor,
}

/// `C(k,2) C(n,3) / C(N,2)` with `N = C(n,2)`.
pub fn mu_generic<T: Scalar>(n: u64, k: u64) -> Result<T> {
    check_nk(n, k)?;
    let big_n = choose(&big(n), 2);
    let num = choose(&big(k), 2) * choose(&big(n), 3);
    Ok(T::ratio(&num, &choose(&big_n, 2)))
}

/// Exact Poisson rate for the first kind (`2 mu` for the second kind).
pub fn mu(n: u64, k: u64) -> Result<Rational> {
    mu_generic(n, k)
}

pub fn theorem4_terms<T: Scalar>(n: u64, k: u64, tf: TFactor) -> Result<Theorem4Terms<T>> {
    check_nk(n, k)?;
    let bn = big(n);
    let big_n = choose(&bn, 2);
    let cn2: T = sc(&choose(&big_n, 2));
    let cn3: T = sc(&choose(&bn, 3));
    let cn4: T = sc(&choose(&bn, 4));
    let nm2: T = sc(&(&big_n - BigUint::from(2u32)));
    let km2: T = scu(k - 2);
    let one = T::one();

    let mu: T = mu_generic(n, k)?;
    let c = cn3.clone() / cn2.clone();
    let r = c.clone();
    // 13 - 12k + 3k^2 is positive for every integer k
    let t_num = 3 * k as u128 * k as u128 + 13 - 12 * k as u128;
    let t_term = T::from_biguint(&BigUint::from(t_num)) / cn2.clone();
    let f = match tf {
        TFactor::Unit => one.clone(),
        TFactor::OneMinusT => one.clone() - t_term.clone(),
    };

    let two = scu::<T>(2);
    let r_plus = two.clone() * km2.clone() * r.clone();
    let c_plus = two.clone() * km2.clone() * c.clone();
    let ra_minus = scu::<T>(3) * cn4.clone() * km2.clone() / (cn3.clone() * nm2.clone());
    let ca_minus = ra_minus.clone();
    let rb_minus = km2.clone() * (scu::<T>(5 * n) - scu::<T>(11)) / (scu::<T>(8) * nm2.clone());
    let cb_minus = rb_minus.clone();

    let d1 = c.clone()
        + t_term.clone()
        + f.clone()
            * (scu::<T>(4) * km2.clone() * c.clone()
                + scu::<T>(6) * cn4.clone() * km2.clone() / (cn3.clone() * nm2.clone()));
    let d2 = two.clone() * c.clone()
        + t_term.clone()
        + f.clone()
            * (scu::<T>(8) * km2.clone() * c.clone()
                + scu::<T>(6) * cn4.clone() * km2.clone() / (cn3.clone() * nm2.clone())
                + km2.clone() * (scu::<T>(5 * n) - scu::<T>(11)) / (scu::<T>(4) * nm2.clone()));
    let d1_from_terms = c.clone()
        + t_term.clone()
        + f.clone() * (c_plus.clone() + two.clone() * ca_minus.clone());
    let d2_from_terms = r.clone()
        + c.clone()
        + t_term.clone()
        + f * (r_plus.clone()
            + ra_minus.clone()
            + rb_minus.clone()
            + c_plus.clone()
            + ca_minus.clone()
            + cb_minus.clone());

    let cap1 = min3(d1.clone(), mu.clone() * d1.clone(), one.clone());
    let cap2 = min3(d2.clone(), two * mu.clone() * d2.clone(), one);

    Ok(Theorem4Terms {
        n,
        k,
        mu,
        r_alpha: r,
        c_alpha: c,
        t_term,
        r_plus,
        c_plus,
        ra_minus,
        rb_minus,
        ca_minus,
        cb_minus,
        d1,
        d2,
        d1_from_terms,
        d2_from_terms,
        cap1,
        cap2,
        t_factor: tf,
    })
}

/// Exact ingredients plus certified enclosures of `|s(n,n-k)|` (first)
/// and `S(n,n-k)` (second).
#[derive(Clone, Debug, Serialize)]
pub struct BoundReport {
    pub n: u64,
    pub k: u64,
    /// `N = C(n,2)` as a decimal string.
    pub big_n: String,
    pub mode: Mode,
    pub terms: Theorem4Terms<Rational>,
    pub enclosure_first: Enclosure,
    pub enclosure_second: Enclosure,
}

pub fn theorem4_bound(n: u64, k: u64, mode: Mode) -> Result<BoundReport> {
    theorem4_bound_with(n, k, mode, TFactor::default())
}

pub fn theorem4_bound_with(n: u64, k: u64, mode: Mode, tf: TFactor) -> Result<BoundReport> {
    let terms: Theorem4Terms<Rational> = theorem4_terms(n, k, tf)?;
    let big_n = choose(&big(n), 2);
    let pre = binomial_prefactor(mode, &big_n, k)?;
    let two_mu = &terms.mu * Rational::from_integer(2.into());
    let enclosure_first = Enclosure::build(mode, pre.clone(), &terms.mu, &terms.cap1)?;
    let enclosure_second = Enclosure::build(mode, pre, &two_mu, &terms.cap2)?;
    Ok(BoundReport {
        n,
        k,
        big_n: big_n.to_string(),
        mode,
        terms,
        enclosure_first,
        enclosure_second,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{stirling1_unsigned_exact, stirling2_exact};
    use num_bigint::BigInt;

    fn q(a: i64, b: i64) -> Rational {
        Rational::new(BigInt::from(a), BigInt::from(b))
    }

    #[test]
    fn mu_examples() {
        assert_eq!(mu(3, 2).unwrap(), q(1, 3));
        // C(5,3)/C(10,2) = 10/45
        assert_eq!(mu(5, 2).unwrap(), q(2, 9));
        assert!(mu(2, 2).is_err());
        assert!(mu(5, 1).is_err());
        assert!(mu(5, 6).is_err());
    }

    #[test]
    fn table_cells() {
        let t: Theorem4Terms<f64> = theorem4_terms(12, 3, TFactor::Unit).unwrap();
        assert!((t.cap2 - 0.879907).abs() < 5e-7);
        let t: Theorem4Terms<f64> = theorem4_terms(30, 4, TFactor::Unit).unwrap();
        assert!((t.cap2 - 0.579048).abs() < 5e-7);
        let t: Theorem4Terms<f64> = theorem4_terms(11, 3, TFactor::Unit).unwrap();
        assert_eq!(t.cap2, 1.0);
    }

    #[test]
    fn generic_instantiations_agree() {
        for (n, k) in [(5, 2), (12, 3), (40, 7)] {
            let e: Theorem4Terms<Rational> = theorem4_terms(n, k, TFactor::OneMinusT).unwrap();
            let f: Theorem4Terms<f64> = theorem4_terms(n, k, TFactor::OneMinusT).unwrap();
            let g: Theorem4Terms<f32> = theorem4_terms(n, k, TFactor::OneMinusT).unwrap();
            let ed = e.d2.to_f64_lossy();
            assert!((ed - f.d2).abs() <= 1e-12 * ed.abs().max(1.0));
            assert!((ed - g.d2 as f64).abs() <= 1e-5 * ed.abs().max(1.0));
        }
    }

    #[test]
    fn k_two_closed_form() {
        for n in 3..=30u64 {
            let t: Theorem4Terms<Rational> = theorem4_terms(n, 2, TFactor::OneMinusT).unwrap();
            let big_n = choose(&big(n), 2);
            let cn2 = Rational::from_integer(BigInt::from(choose(&big_n, 2)));
            let cn3 = Rational::from_integer(BigInt::from(choose(&big(n), 3)));
            let expect = (Rational::from_integer(2.into()) * cn3 + Rational::from_integer(1.into())) / cn2;
            assert_eq!(t.d2, expect);
        }
    }

    #[test]
    fn enclosures_contain_small_cases() {
        for n in 3..=14u64 {
            for k in 2..=n {
                let r = theorem4_bound(n, k, Mode::Exact).unwrap();
                let s2 = stirling2_exact(n, n - k).unwrap();
                let s1 = stirling1_unsigned_exact(n, n - k).unwrap();
                assert!(r.enclosure_second.contains(&s2), "S({n},{})", n - k);
                assert!(r.enclosure_first.contains(&s1), "s({n},{})", n - k);
            }
        }
    }

    #[test]
    fn log_mode_agrees_with_exact_mode() {
        let a = theorem4_bound(200, 9, Mode::Exact).unwrap();
        let b = theorem4_bound(200, 9, Mode::Log).unwrap();
        assert_eq!(a.terms.cap2, b.terms.cap2);
        let s2 = stirling2_exact(200, 191).unwrap();
        assert!(b.enclosure_second.contains(&s2));
        let la = a.enclosure_second.upper.log10().unwrap();
        let lb = b.enclosure_second.upper.log10().unwrap();
        assert!(la.overlaps(&lb));
    }
}
