use super::{big, check_nk, choose, log_power_over_factorial, sc, scu, Enclosure, Mode};
use crate::error::{Error, Result};
use crate::interval::Bracket;
use crate::scalar::{min3, serialize_scalar, Scalar};
use crate::Rational;
use num_bigint::{BigInt, BigUint};
use serde::Serialize;

/// Which rate multiplies `d` inside the caps of the independence bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CapConvention {
    /// `min(d1, mu1 d1, 1)` and `min(d2, mu2 d2, 1)`: each kind's own rate.
    #[default]
    Rate,
    /// `min(d1, mu1 d1, 1)` and `min(d2, 2 mu2 d2, 1)`.
    DoubledSecond,
}

impl std::str::FromStr for CapConvention {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "rate" => Ok(CapConvention::Rate),
            "doubled" | "doubled-second" | "printed" => Ok(CapConvention::DoubledSecond),
            other => Err(Error::Parse(format!("unknown cap convention `{other}`"))),
        }
    }
}

/// Ingredients of the independent-placement bound, in both the symbolic
/// and the explicit closed forms.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(bound = "")]
pub struct Theorem5Terms<T: Scalar> {
    pub n: u64,
    pub k: u64,
    /// Ordered attacking position pairs, rows and columns.
    pub a_n: String,
    /// Ordered same-column position pairs.
    pub a_c: String,
    /// Ordered distinct same-row position pairs.
    pub a_r: String,
    /// `S_n(i) = sum_{r<n} r^i` for `i = 1, 2, 3`.
    pub s_n: [String; 3],
    #[serde(serialize_with = "serialize_scalar")]
    pub mu1: T,
    #[serde(serialize_with = "serialize_scalar")]
    pub mu2: T,
    #[serde(serialize_with = "serialize_scalar")]
    pub c_alpha: T,
    #[serde(serialize_with = "serialize_scalar")]
    pub r_alpha: T,
    #[serde(serialize_with = "serialize_scalar")]
    pub c_plus: T,
    #[serde(serialize_with = "serialize_scalar")]
    pub r_plus: T,
    #[serde(serialize_with = "serialize_scalar")]
    pub ra_minus: T,
    #[serde(serialize_with = "serialize_scalar")]
    pub ca_minus: T,
    #[serde(serialize_with = "serialize_scalar")]
    pub rb_minus: T,
    #[serde(serialize_with = "serialize_scalar")]
    pub cb_minus: T,
    #[serde(serialize_with = "serialize_scalar")]
    pub d1_symbolic: T,
    #[serde(serialize_with = "serialize_scalar")]
    pub d2_symbolic: T,
    #[serde(serialize_with = "serialize_scalar")]
    pub d1_explicit: T,
    #[serde(serialize_with = "serialize_scalar")]
    pub d2_explicit: T,
    /// `explicit - symbolic`.
    #[serde(serialize_with = "serialize_scalar")]
    pub d1_difference: T,
    #[serde(serialize_with = "serialize_scalar")]
    pub d2_difference: T,
    /// Caps from the explicit forms.
    #[serde(serialize_with = "serialize_scalar")]
    pub cap1: T,
    #[serde(serialize_with = "serialize_scalar")]
    pub cap2: T,
    pub cap_convention: CapConvention,
}

fn power_sum(n: u64, i: u32) -> BigUint {
    (1..n).map(|r| BigUint::from(r).pow(i)).sum()
}

/// `A(n) = n(n-1)(4n-5)/6`.
pub fn attacking_positions(n: u64) -> BigUint {
    big(n) * big(n.saturating_sub(1)) * big((4 * n).saturating_sub(5)) / big(6)
}

/// `A_c(n) = n(n-1)(2n-1)/6`.
pub fn column_positions(n: u64) -> BigUint {
    big(n) * big(n.saturating_sub(1)) * big((2 * n).saturating_sub(1)) / big(6)
}

pub fn theorem5_terms<T: Scalar>(n: u64, k: u64, cc: CapConvention) -> Result<Theorem5Terms<T>> {
    check_nk(n, k)?;
    let bn = big(n);
    let big_n_int = choose(&bn, 2);
    let a_n_int = attacking_positions(n);
    let a_c_int = column_positions(n);
    let a_r_int = big(2) * choose(&bn, 3);
    let s = [power_sum(n, 1), power_sum(n, 2), power_sum(n, 3)];

    let big_n: T = sc(&big_n_int);
    let n2 = big_n.clone() * big_n.clone();
    let a_n: T = sc(&a_n_int);
    let a_c: T = sc(&a_c_int);
    let a_r: T = sc(&a_r_int);
    let km2: T = scu(k - 2);
    let ck2: T = sc(&choose(&big(k), 2));
    let two = scu::<T>(2);
    let nt: T = scu(n);

    let c_alpha = a_c.clone() / n2.clone();
    let r_alpha = a_r.clone() / n2.clone();
    let c_plus = two.clone() * km2.clone() * c_alpha.clone();
    let r_plus = two.clone() * km2.clone() * r_alpha.clone();
    let ra_minus =
        two.clone() * km2.clone() * sc::<T>(&s[2]) / (a_n.clone() * big_n.clone());
    let ca_minus = a_n.clone() / a_c.clone() * ra_minus.clone();
    let rb_minus = two.clone()
        * km2.clone()
        * scu::<T>(2 * n - 1)
        * sc::<T>(&choose(&big(n + 1), 3))
        / (a_n.clone() * big_n.clone());
    let cb_minus = a_n.clone() / a_c.clone() * rb_minus.clone();
    let d1_symbolic = c_alpha.clone() + c_plus.clone() + ca_minus.clone() + cb_minus.clone();
    let d2_symbolic = r_alpha.clone()
        + c_alpha.clone()
        + two.clone() * (r_plus.clone() + ra_minus.clone() + rb_minus.clone());

    let nn1 = nt.clone() * (nt.clone() - T::one());
    let f2 = scu::<T>(2 * n - 1);
    let f4 = scu::<T>(4 * n - 5);
    let six = scu::<T>(6);
    let base1 = nn1.clone() * f2.clone() / (six.clone() * n2.clone());
    let base2 = nn1.clone() * f4.clone() / (six * n2);
    let d1_explicit = base1.clone()
        + two.clone() * km2.clone() * base1.clone()
        + scu::<T>(3) * km2.clone() * nn1.clone() / (f2.clone() * big_n.clone())
        + two.clone() * km2.clone() * scu::<T>(n + 1) / big_n.clone();
    let d2_explicit = base2.clone()
        + two.clone()
            * (scu::<T>(4) * km2.clone() * base1.clone()
                + scu::<T>(3) * km2.clone() * nn1 / (f4.clone() * big_n.clone())
                + two.clone() * km2 * f2 * scu::<T>(n + 1) / (f4 * big_n));

    let mu1 = ck2.clone() * base1;
    let mu2 = ck2 * base2;
    let one = T::one();
    let cap1 = min3(d1_explicit.clone(), mu1.clone() * d1_explicit.clone(), one.clone());
    let m2 = match cc {
        CapConvention::Rate => mu2.clone(),
        CapConvention::DoubledSecond => two * mu2.clone(),
    };
    let cap2 = min3(d2_explicit.clone(), m2 * d2_explicit.clone(), one);

    Ok(Theorem5Terms {
        n,
        k,
        a_n: a_n_int.to_string(),
        a_c: a_c_int.to_string(),
        a_r: a_r_int.to_string(),
        s_n: [s[0].to_string(), s[1].to_string(), s[2].to_string()],
        mu1,
        mu2,
        c_alpha,
        r_alpha,
        c_plus,
        r_plus,
        ra_minus,
        ca_minus,
        rb_minus,
        cb_minus,
        d1_difference: d1_explicit.clone() - d1_symbolic.clone(),
        d2_difference: d2_explicit.clone() - d2_symbolic.clone(),
        d1_symbolic,
        d2_symbolic,
        d1_explicit,
        d2_explicit,
        cap1,
        cap2,
        cap_convention: cc,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct IndepBoundReport {
    pub n: u64,
    pub k: u64,
    pub mode: Mode,
    pub terms: Theorem5Terms<Rational>,
    /// `log10 (N^k / k!)`.
    pub prefactor_log10: crate::interval::LogInterval,
    pub enclosure_first: Enclosure,
    pub enclosure_second: Enclosure,
}

pub fn theorem5_bound(n: u64, k: u64, mode: Mode) -> Result<IndepBoundReport> {
    theorem5_bound_with(n, k, mode, CapConvention::default())
}

pub fn theorem5_bound_with(
    n: u64,
    k: u64,
    mode: Mode,
    cc: CapConvention,
) -> Result<IndepBoundReport> {
    let terms: Theorem5Terms<Rational> = theorem5_terms(n, k, cc)?;
    let big_n = choose(&big(n), 2);
    let pre = match mode {
        Mode::Exact => {
            let fact = crate::exact::factorial(k).into_biguint();
            Bracket::from_rational(&Rational::new(
                BigInt::from(big_n.pow(k as u32)),
                BigInt::from(fact),
            ))
        }
        Mode::Log => log_power_over_factorial(&big_n, k).to_bracket(),
    };
    let prefactor_log10 = log_power_over_factorial(&big_n, k);
    let enclosure_first = Enclosure::build(mode, pre.clone(), &terms.mu1, &terms.cap1)?;
    let enclosure_second = Enclosure::build(mode, pre, &terms.mu2, &terms.cap2)?;
    Ok(IndepBoundReport {
        n,
        k,
        mode,
        terms,
        prefactor_log10,
        enclosure_first,
        enclosure_second,
    })
}
