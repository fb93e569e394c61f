//! Reference asymptotic formulas, all evaluated as log10 values.

mod formulas;
mod implicit;
mod moser_wyman;
pub mod roots;
pub mod special;

pub use formulas::{
    louchard_estimate, louchard_t, louchard_xy, param_formula, prop24_formula, sachkov_s2,
    small_m_first_kind, EULER_GAMMA,
};
pub use implicit::{implicit_r_first, implicit_r_second};
pub use moser_wyman::{moser_wyman_s2, moser_wyman_window, MoserWymanInfo, MwWindow, QConvention};

use crate::exact::StirlingKind;
use serde::Serialize;
use std::f64::consts::LN_10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    MoserWyman,
    ImplicitRSecond,
    ImplicitRFirst,
    Jordan,
    Sachkov,
    FullRange,
    Parametrized,
    Louchard,
}

impl std::str::FromStr for Regime {
    type Err = crate::Error;

    fn from_str(s: &str) -> crate::Result<Self> {
        Ok(match s.trim().to_ascii_lowercase().as_str() {
            "moser-wyman" | "mw" => Regime::MoserWyman,
            "implicit-r-second" | "implicit-second" => Regime::ImplicitRSecond,
            "implicit-r-first" | "implicit-first" => Regime::ImplicitRFirst,
            "jordan" | "small-m" => Regime::Jordan,
            "sachkov" => Regime::Sachkov,
            "full-range" | "prop" => Regime::FullRange,
            "parametrized" | "param" => Regime::Parametrized,
            "louchard" => Regime::Louchard,
            other => return Err(crate::Error::Parse(format!("unknown regime `{other}`"))),
        })
    }
}

/// Solution of a saddle-point equation.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RootInfo {
    pub r: f64,
    pub h: f64,
    /// `|g(R) - target| / max(1, target)`.
    pub residual: f64,
    pub iterations: usize,
}

/// Details of the `m = n - t n^a` formulas.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ParamInfo {
    pub k_rounded: u64,
    pub t_effective: f64,
    pub log10_binomial_form: f64,
    pub log10_closed_form: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AsymptoticEstimate {
    pub regime: Regime,
    pub kind: StirlingKind,
    pub n: u64,
    pub m: Option<u64>,
    pub a: Option<f64>,
    pub t: Option<f64>,
    pub log10_value: f64,
    /// Whether the inputs satisfy the formula's stated range.
    pub in_range: bool,
    pub moser_wyman: Option<MoserWymanInfo>,
    pub root: Option<RootInfo>,
    pub param: Option<ParamInfo>,
}

impl AsymptoticEstimate {
    pub(crate) fn new(regime: Regime, kind: StirlingKind, n: u64, ln_value: f64) -> Self {
        AsymptoticEstimate {
            regime,
            kind,
            n,
            m: None,
            a: None,
            t: None,
            log10_value: ln_value / LN_10,
            in_range: true,
            moser_wyman: None,
            root: None,
            param: None,
        }
    }

    /// `estimate / exact` given the exact log10 value.
    pub fn ratio_to(&self, exact_log10: f64) -> f64 {
        10f64.powf(self.log10_value - exact_log10)
    }
}
