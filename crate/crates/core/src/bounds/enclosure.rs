use crate::error::{Error, Result};
use crate::exact::BigNat;
use crate::interval::{biguint_to_bf, Bracket, LogInterval, Scientific};
use num_rational::BigRational;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

/// Relative log10 budget for log-space endpoints.
pub const LOG_BUDGET: f64 = 1e-8;

/// How the binomial prefactor is carried.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    /// Exact big-integer prefactor.
    #[default]
    Exact,
    /// Outward-rounded log-space prefactor.
    Log,
}

impl std::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "exact" => Ok(Mode::Exact),
            "log" | "log-space" => Ok(Mode::Log),
            other => Err(Error::Parse(format!("unknown mode `{other}`"))),
        }
    }
}

/// Sign information for an endpoint bracket.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EndpointSign {
    Positive,
    Zero,
    Negative,
    Indeterminate,
}

/// A certified bracket for one endpoint, with a log view when positive.
#[derive(Clone, Debug)]
pub struct Endpoint {
    pub value: Bracket,
}

impl Endpoint {
    pub fn sign(&self) -> EndpointSign {
        if self.value.is_positive() {
            EndpointSign::Positive
        } else if self.value.is_negative() {
            EndpointSign::Negative
        } else if self.value.lo.is_zero() && self.value.hi.is_zero() {
            EndpointSign::Zero
        } else {
            EndpointSign::Indeterminate
        }
    }

    pub fn log10(&self) -> Option<LogInterval> {
        self.value.is_positive().then(|| self.value.log10())
    }

    pub fn scientific(&self) -> Option<Scientific> {
        self.log10().map(|l| l.scientific())
    }
}

impl Serialize for Endpoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let log = self.log10();
        let sci = log.as_ref().map(|l| l.scientific());
        let mut st = s.serialize_struct("Endpoint", 6)?;
        st.serialize_field("sign", &self.sign())?;
        st.serialize_field("log10", &log)?;
        st.serialize_field("mantissa_lo", &sci.map(|x| x.mantissa_lo))?;
        st.serialize_field("mantissa_hi", &sci.map(|x| x.mantissa_hi))?;
        st.serialize_field("exponent10", &sci.map(|x| x.exponent10))?;
        st.serialize_field("approx", &self.value.mid_f64())?;
        st.end()
    }
}

/// `P * [e^{-rate} - cap, e^{-rate} + cap]` with outward rounding.
#[derive(Clone, Debug, Serialize)]
pub struct Enclosure {
    pub mode: Mode,
    pub prefactor_log10: Option<LogInterval>,
    /// The raw lower endpoint, possibly negative.
    pub lower_raw: Endpoint,
    /// `max(lower_raw, 0)`.
    pub lower: Endpoint,
    pub upper: Endpoint,
}

impl Enclosure {
    /// Builds the enclosure; `prefactor` must contain the true prefactor.
    pub fn build(
        mode: Mode,
        prefactor: Bracket,
        rate: &BigRational,
        cap: &BigRational,
    ) -> Result<Self> {
        let centre = Bracket::from_rational(rate).neg().exp();
        let d = Bracket::from_rational(cap);
        let lo = prefactor.mul(&centre.sub(&d));
        let hi = prefactor.mul(&centre.add(&d));
        let prefactor_log10 = prefactor.is_positive().then(|| prefactor.log10());
        let enc = Enclosure {
            mode,
            prefactor_log10,
            lower: Endpoint { value: lo.max_zero() },
            lower_raw: Endpoint { value: lo },
            upper: Endpoint { value: hi },
        };
        if mode == Mode::Log {
            enc.check_budget()?;
        }
        Ok(enc)
    }

    /// Refuses endpoints whose log width exceeds the relative budget.
    fn check_budget(&self) -> Result<()> {
        for ep in [&self.lower_raw, &self.upper] {
            if let Some(l) = ep.log10() {
                let width = l.width_f64();
                let allowed = LOG_BUDGET * l.mid_f64().abs().max(1.0);
                if !(width <= allowed) {
                    return Err(Error::PrecisionBudget { width, allowed });
                }
            }
        }
        Ok(())
    }

    /// Whether the exact integer lies in the certified interval.
    pub fn contains(&self, v: &BigNat) -> bool {
        let x = biguint_to_bf(v.as_biguint());
        let above = self.lower.value.lo.cmp(&x).is_some_and(|c| c <= 0);
        let below = x.cmp(&self.upper.value.hi).is_some_and(|c| c <= 0);
        above && below
    }

    /// The certified lower endpoint is not above the exact value.
    pub fn lower_below(&self, v: &BigNat) -> bool {
        let x = biguint_to_bf(v.as_biguint());
        self.lower.value.lo.cmp(&x).is_some_and(|c| c <= 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(BigInt::from(a), BigInt::from(b))
    }

    #[test]
    fn clamps_negative_lower() {
        let e = Enclosure::build(Mode::Exact, Bracket::from_u64(100), &q(1, 1), &q(1, 1)).unwrap();
        assert_eq!(e.lower_raw.sign(), EndpointSign::Negative);
        assert_eq!(e.lower.sign(), EndpointSign::Zero);
        assert!(e.contains(&BigNat::from(0u64)));
        assert!(e.contains(&BigNat::from(136u64)));
        assert!(!e.contains(&BigNat::from(137u64)));
    }

    #[test]
    fn zero_prefactor_gives_zero_interval() {
        let e = Enclosure::build(Mode::Exact, Bracket::from_u64(0), &q(1, 2), &q(1, 3)).unwrap();
        assert!(e.contains(&BigNat::zero()));
        assert!(!e.contains(&BigNat::one()));
        assert!(e.prefactor_log10.is_none());
    }
}
