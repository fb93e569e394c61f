//! The `D2` table for small boards and the two large-`n` enclosures.

use crate::numfmt::{decimals_of, round_down, round_up, six_digits};
use anyhow::Result;
use serde::Serialize;
use stirling_cert::bounds::{theorem4_bound, theorem4_terms, Mode, TFactor};
use stirling_cert::{Scalar, StirlingKind, Theorem4Exact};

pub const TABLE_N: std::ops::RangeInclusive<u64> = 11..=30;
pub const TABLE_K: [u64; 2] = [3, 4];

#[derive(Clone, Debug, Serialize)]
pub struct TableCell {
    pub n: u64,
    pub k: u64,
    /// Exact value `p/q`.
    pub exact: String,
    pub value: f64,
    pub printed: String,
}

/// `D2(n, k)` for `n = 11..=30`, `k = 3, 4`, row by row.
pub fn d2_table() -> Result<Vec<TableCell>> {
    let mut out = Vec::new();
    for n in TABLE_N {
        for k in TABLE_K {
            let t: Theorem4Exact = theorem4_terms(n, k, TFactor::Unit)?;
            let value = t.cap2.to_f64_lossy();
            out.push(TableCell {
                n,
                k,
                exact: t.cap2.exact_string(),
                value,
                printed: six_digits(value),
            });
        }
    }
    Ok(out)
}

pub fn table_human(cells: &[TableCell]) -> String {
    let mut s = String::from("D2(n,k)  k=3       k=4\n");
    for row in cells.chunks(TABLE_K.len()) {
        s.push_str(&format!("n={:<5}  {:<9} {}\n", row[0].n, row[0].printed, row[1].printed));
    }
    s
}

pub fn table_tsv(cells: &[TableCell]) -> String {
    let mut s = String::from("n\tk\tD2\n");
    for c in cells {
        s.push_str(&format!("{}\t{}\t{}\n", c.n, c.k, c.printed));
    }
    s
}

pub const ABSTRACT_N: u64 = 1_000_000_000_000;
pub const ABSTRACT_K: u64 = 2_000_000;

/// A reference interval `[lo, hi] x 10^exponent` as printed.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct Reference {
    pub kind: StirlingKind,
    pub lo: &'static str,
    pub hi: &'static str,
    pub exponent10: i64,
}

pub const REFERENCES: [Reference; 2] = [
    Reference {
        kind: StirlingKind::First,
        lo: "1.87669",
        hi: "1.876982",
        exponent10: 35_664_464,
    },
    Reference {
        kind: StirlingKind::Second,
        lo: "1.30121",
        hi: "1.306975",
        exponent10: 35_664_463,
    },
];

#[derive(Clone, Debug, Serialize)]
pub struct LargeCase {
    pub kind: StirlingKind,
    pub n: u64,
    pub m: u64,
    pub reference: Reference,
    /// Computed endpoint mantissas at the reference exponent (outward).
    pub lower_mantissa: [f64; 2],
    pub upper_mantissa: [f64; 2],
    pub lower_log10: Option<stirling_cert::LogInterval>,
    pub upper_log10: Option<stirling_cert::LogInterval>,
    /// Lower endpoint rounded down, upper rounded up, to the printed places.
    pub lower_rounded: String,
    pub upper_rounded: String,
    /// Both rounded endpoints equal the reference text.
    pub agreement: bool,
    /// The computed enclosure contains the reference interval.
    pub contains_reference: bool,
    /// The reference interval contains the computed enclosure.
    pub within_reference: bool,
    /// `(computed width) / (reference width)` of the mantissa intervals.
    pub width_ratio: f64,
}

/// Log-space enclosures at `n = 10^12`, `k = 2 x 10^6`, compared with the
/// reference intervals under the outward-rounding rule.
pub fn large_cases() -> Result<Vec<LargeCase>> {
    let report = theorem4_bound(ABSTRACT_N, ABSTRACT_K, Mode::Log)?;
    let mut out = Vec::new();
    for r in REFERENCES {
        let enc = match r.kind {
            StirlingKind::First => &report.enclosure_first,
            StirlingKind::Second => &report.enclosure_second,
        };
        let lower_log10 = enc.lower.log10();
        let upper_log10 = enc.upper.log10();
        let lm = lower_log10
            .as_ref()
            .map_or((0.0, 0.0), |l| l.mantissa_at(r.exponent10));
        let um = upper_log10
            .as_ref()
            .map_or((f64::INFINITY, f64::INFINITY), |l| l.mantissa_at(r.exponent10));
        let lower_rounded = round_down(lm.0, decimals_of(r.lo));
        let upper_rounded = round_up(um.1, decimals_of(r.hi));
        let (ref_lo, ref_hi): (f64, f64) = (r.lo.parse()?, r.hi.parse()?);
        out.push(LargeCase {
            kind: r.kind,
            n: ABSTRACT_N,
            m: ABSTRACT_N - ABSTRACT_K,
            reference: r,
            lower_mantissa: [lm.0, lm.1],
            upper_mantissa: [um.0, um.1],
            lower_log10,
            upper_log10,
            agreement: lower_rounded == r.lo && upper_rounded == r.hi,
            lower_rounded,
            upper_rounded,
            contains_reference: lm.0 <= ref_lo && ref_hi <= um.1,
            within_reference: ref_lo <= lm.0 && um.1 <= ref_hi,
            width_ratio: (um.1 - lm.0) / (ref_hi - ref_lo),
        });
    }
    Ok(out)
}

pub fn large_cases_human(cases: &[LargeCase]) -> String {
    let mut s = String::new();
    for c in cases {
        s.push_str(&format!(
            "{} kind, n = {}, m = {}: [{:.7}, {:.7}] x 10^{}  (rounded [{}, {}], reference [{}, {}])  agreement: {}  contains reference: {}\n",
            c.kind,
            c.n,
            c.m,
            c.lower_mantissa[0],
            c.upper_mantissa[1],
            c.reference.exponent10,
            c.lower_rounded,
            c.upper_rounded,
            c.reference.lo,
            c.reference.hi,
            c.agreement,
            c.contains_reference,
        ));
    }
    s
}
