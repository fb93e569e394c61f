use crate::reproduce::{d2_table, large_cases, large_cases_human, table_human, table_tsv};
use crate::verify::{run_verify, VerifyOptions};
use crate::{
    AsymptoticArgs, BoundArgs, Cli, Command, ExactArgs, FerrersArgs, Format, ModeArg, ModelArg,
    RegimeArg, SimulateArgs, VerifyArgs,
};
use anyhow::{anyhow, bail, Context, Result};
use serde::Serialize;
use serde_json::json;
use stirling_cert::asymptotics::{
    implicit_r_first, implicit_r_second, louchard_estimate, moser_wyman_s2, param_formula,
    prop24_formula, sachkov_s2, small_m_first_kind, AsymptoticEstimate,
};
use stirling_cert::bounds::{
    theorem4_bound_with, theorem5_bound_with, theorem6_bound_with, Enclosure, Mode,
};
use stirling_cert::exact::{
    file_number_exact, rook_number_exact, stirling_exact, BigNat,
};
use stirling_cert::sim::{estimate_p_w0, simulate_coupling, SimConfig};
use stirling_cert::{LogInterval, StirlingKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Success,
    VerificationFailed,
}

#[derive(Clone, Debug)]
pub struct Output {
    pub stdout: String,
    pub status: Status,
}

impl Output {
    fn ok(stdout: String) -> Self {
        Output {
            stdout,
            status: Status::Success,
        }
    }
}

/// Pretty JSON with keys in sorted order, so that re-serializing a parsed
/// report reproduces it byte for byte.
pub fn to_json<T: Serialize>(v: &T) -> Result<String> {
    let value = serde_json::to_value(v)?;
    Ok(serde_json::to_string_pretty(&value)? + "\n")
}

pub fn run(cli: &Cli) -> Result<Output> {
    let f = cli.format;
    match &cli.command {
        Command::Bound(a) => bound(a, f),
        Command::Exact(a) => exact(a, f),
        Command::Asymptotic(a) => asymptotic(a, f),
        Command::Simulate(a) => simulate(a, f),
        Command::Table => table(f),
        Command::Verify(a) => verify(a, f),
        Command::Ferrers(a) => ferrers(a, f),
        Command::Abstract => large(f),
    }
}

fn pick_mode(mode: ModeArg, big_n: u128, threshold: u64) -> Mode {
    match mode {
        ModeArg::Exact => Mode::Exact,
        ModeArg::Log => Mode::Log,
        ModeArg::Auto if big_n <= threshold as u128 => Mode::Exact,
        ModeArg::Auto => Mode::Log,
    }
}

fn pairs(n: u64) -> u128 {
    n as u128 * n.saturating_sub(1) as u128 / 2
}

fn describe(enc: &Enclosure) -> String {
    let side = |e: &stirling_cert::bounds::Endpoint| match e.scientific() {
        Some(s) => format!("[{:.9}, {:.9}]e{}", s.mantissa_lo, s.mantissa_hi, s.exponent10),
        None => "0".into(),
    };
    format!("lower {}  upper {}", side(&enc.lower), side(&enc.upper))
}

/// Small cases answered from the exact oracles: S(n,n) = 1, S(n,n-1) = C(n,2).
fn degenerate_bound(n: u64, k: u64, f: Format) -> Result<Output> {
    let first = stirling_exact(StirlingKind::First, n, n - k)?;
    let second = stirling_exact(StirlingKind::Second, n, n - k)?;
    let v = json!({
        "n": n,
        "k": k,
        "degenerate": true,
        "exact_first": first.to_decimal_string(),
        "exact_second": second.to_decimal_string(),
    });
    Ok(Output::ok(match f {
        Format::Json => to_json(&v)?,
        Format::Tsv => format!("kind\tvalue\n1\t{first}\n2\t{second}\n"),
        Format::Human => format!("k = {k} < 2: |s(n,n-k)| = {first}, S(n,n-k) = {second} (exact)\n"),
    }))
}

fn bound(a: &BoundArgs, f: Format) -> Result<Output> {
    if a.k > a.n {
        bail!("k = {} exceeds n = {}", a.k, a.n);
    }
    if a.k < 2 {
        return degenerate_bound(a.n, a.k, f);
    }
    let mode = pick_mode(a.mode, pairs(a.n), a.threshold);
    let (value, first, second, caps) = match a.model {
        ModelArg::Subset => {
            let r = theorem4_bound_with(a.n, a.k, mode, a.t_factor.into())?;
            let caps = (r.terms.cap1.clone(), r.terms.cap2.clone());
            (serde_json::to_value(&r)?, r.enclosure_first, r.enclosure_second, caps)
        }
        ModelArg::Independent => {
            let r = theorem5_bound_with(a.n, a.k, mode, a.cap_convention.into())?;
            let caps = (r.terms.cap1.clone(), r.terms.cap2.clone());
            (serde_json::to_value(&r)?, r.enclosure_first, r.enclosure_second, caps)
        }
    };
    let show = |k: StirlingKind| a.kind.is_none_or(|x| x == k);
    let stdout = match f {
        Format::Json => to_json(&value)?,
        Format::Human => {
            let mut s = format!("n = {}, k = {}, m = {}, mode {:?}\n", a.n, a.k, a.n - a.k, mode);
            if show(StirlingKind::First) {
                s += &format!("|s(n,m)|: D1 = {}  {}\n", caps.0, describe(&first));
            }
            if show(StirlingKind::Second) {
                s += &format!("S(n,m):   D2 = {}  {}\n", caps.1, describe(&second));
            }
            s
        }
        Format::Tsv => {
            let mut s = String::from("kind\tcap\tlower_log10\tupper_log10\n");
            for (k, cap, e) in [(1, &caps.0, &first), (2, &caps.1, &second)] {
                let lg = |x: Option<LogInterval>| x.map_or("-inf".into(), |l| l.mid_f64().to_string());
                s += &format!("{k}\t{cap}\t{}\t{}\n", lg(e.lower.log10()), lg(e.upper.log10()));
            }
            s
        }
    };
    Ok(Output::ok(stdout))
}

fn exact(a: &ExactArgs, f: Format) -> Result<Output> {
    if let Some(b) = &a.board {
        let k = a.k.context("--board needs --k")?;
        let rook = rook_number_exact(b, k as usize);
        let file = file_number_exact(b, k as usize);
        let v = json!({
            "board": b.to_string(),
            "k": k,
            "rook": rook.to_decimal_string(),
            "file": file.to_decimal_string(),
        });
        return Ok(Output::ok(match f {
            Format::Json => to_json(&v)?,
            Format::Tsv => format!("board\tk\trook\tfile\n{b}\t{k}\t{rook}\t{file}\n"),
            Format::Human => format!("board {b}, k = {k}: r = {rook}, f = {file}\n"),
        }));
    }
    let n = a.n.context("--n is required")?;
    let m = resolve_m(n, a.m, a.k)?;
    let value = stirling_exact(a.kind, n, m)?;
    let v = json!({
        "kind": a.kind,
        "n": n,
        "m": m,
        "value": value.to_decimal_string(),
        "log10": value.log10_f64(),
    });
    Ok(Output::ok(match f {
        Format::Json => to_json(&v)?,
        Format::Tsv => format!("kind\tn\tm\tvalue\n{}\t{n}\t{m}\t{value}\n", a.kind),
        Format::Human => format!("{}({n}, {m}) = {value}\n", symbol(a.kind)),
    }))
}

fn symbol(kind: StirlingKind) -> &'static str {
    match kind {
        StirlingKind::First => "|s|",
        StirlingKind::Second => "S",
    }
}

fn resolve_m(n: u64, m: Option<u64>, k: Option<u64>) -> Result<u64> {
    match (m, k) {
        (Some(m), None) => Ok(m),
        (None, Some(k)) => n.checked_sub(k).ok_or_else(|| anyhow!("k = {k} exceeds n = {n}")),
        (Some(_), Some(_)) => bail!("give either --m or --k, not both"),
        (None, None) => bail!("--m or --k is required"),
    }
}

fn asymptotic(a: &AsymptoticArgs, f: Format) -> Result<Output> {
    let n = a.n;
    let m = || resolve_m(n, a.m, a.k);
    let need_a = || a.a.context("--a is required for this regime");
    let est: AsymptoticEstimate = match a.regime {
        RegimeArg::MoserWyman => moser_wyman_s2(n, m()?, a.s, a.q_convention.into())?,
        RegimeArg::ImplicitRSecond => implicit_r_second(n, m()?)?,
        RegimeArg::ImplicitRFirst => implicit_r_first(n, m()?)?,
        RegimeArg::Jordan => small_m_first_kind(n, m()?)?,
        RegimeArg::Sachkov => sachkov_s2(n, m()?)?,
        RegimeArg::FullRange => prop24_formula(n, m()?, a.kind)?,
        RegimeArg::Parametrized => param_formula(n, need_a()?, a.t, a.kind)?,
        RegimeArg::Louchard => louchard_estimate(n, need_a()?, a.kind)?,
    };
    let mut v = serde_json::to_value(&est)?;
    if a.compare {
        let em = est.m.context("no m to compare against")?;
        if n > 5000 {
            bail!("--compare is limited to n <= 5000");
        }
        let exact = stirling_exact(est.kind, n, em)?.log10_f64();
        v["exact_log10"] = json!(exact);
        v["ratio_to_exact"] = json!(est.ratio_to(exact));
    }
    Ok(Output::ok(match f {
        Format::Json => to_json(&v)?,
        Format::Tsv => format!(
            "regime\tkind\tn\tm\tlog10\n{:?}\t{}\t{n}\t{}\t{}\n",
            est.regime,
            est.kind,
            est.m.map_or("-".into(), |m| m.to_string()),
            est.log10_value
        ),
        Format::Human => {
            let mut s = format!(
                "{:?} ({} kind): log10 estimate = {:.9}{}\n",
                est.regime,
                est.kind,
                est.log10_value,
                if est.in_range { "" } else { "  [outside stated range]" }
            );
            if let Some(mw) = est.moser_wyman {
                s += &format!("relative window +/- {:e} (rho = {:.6}, valid = {})\n", mw.e_s, mw.rho, mw.valid);
            }
            if let Some(r) = v.get("ratio_to_exact") {
                s += &format!("estimate / exact = {r}\n");
            }
            s
        }
    }))
}

fn simulate(a: &SimulateArgs, f: Format) -> Result<Output> {
    let cfg = SimConfig::new(a.board.clone(), a.k as usize, a.model.into(), a.attacks.into())
        .replicas(a.replicas)
        .seed(a.seed)
        .streams(a.streams);
    let result = if a.coupling {
        simulate_coupling(&cfg)?
    } else {
        estimate_p_w0(&cfg)?
    };
    if a.emit_histogram.is_some() {
        let tsv = result.histogram_tsv();
        match &a.histogram_out {
            Some(path) => std::fs::write(path, tsv).with_context(|| format!("writing {}", path.display()))?,
            None => return Ok(Output::ok(tsv)),
        }
    }
    Ok(Output::ok(match f {
        Format::Json => to_json(&result)?,
        Format::Tsv => result.histogram_tsv(),
        Format::Human => {
            let mut s = format!(
                "board {}, k = {}, {} replicas: P(W=0) = {:.6} +/- {:.6}, lambda = {:.6}, TV = {:.6}\n",
                result.board, result.k, result.replicas, result.p_w0_hat.value, result.p_w0_hat.se, result.lambda, result.tv_hat
            );
            if let Some(e) = result.e_wv_hat {
                s += &format!("E|W - V| = {:.6} +/- {:.6}\n", e.value, e.se);
            }
            s
        }
    }))
}

fn table(f: Format) -> Result<Output> {
    let cells = d2_table()?;
    Ok(Output::ok(match f {
        Format::Json => to_json(&json!({ "cells": cells }))?,
        Format::Tsv => table_tsv(&cells),
        Format::Human => table_human(&cells),
    }))
}

fn verify(a: &VerifyArgs, f: Format) -> Result<Output> {
    let report = run_verify(&VerifyOptions {
        n_max: a.n_max,
        k_max: a.k_max,
        boards: a.boards,
        board_seed: a.board_seed,
        max_cells: a.max_cells,
        max_rooks: a.max_rooks,
    })?;
    let stdout = match f {
        Format::Json => to_json(&report)?,
        Format::Tsv => {
            let mut s = String::from("family\tboard\tk\n");
            for v in &report.violations {
                s += &format!("{}\t{}\t{}\n", v.family, v.board, v.k);
            }
            s
        }
        Format::Human => format!(
            "{} checks, {} violations: {}\n",
            report.checks,
            report.violations.len(),
            if report.passed { "PASS" } else { "FAIL" }
        ),
    };
    Ok(Output {
        stdout,
        status: if report.passed {
            Status::Success
        } else {
            Status::VerificationFailed
        },
    })
}

/// Exact counts are attached for boards up to this many squares.
const FERRERS_EXACT_CELLS: usize = 2000;

fn ferrers(a: &FerrersArgs, f: Format) -> Result<Output> {
    let cells = a.board.cell_count() as u128;
    let mode = pick_mode(a.mode, cells, a.threshold);
    let r = theorem6_bound_with(&a.board, a.k, mode, a.s4_exponent.into())?;
    let mut v = serde_json::to_value(&r)?;
    let mut check = None;
    if a.board.cell_count() <= FERRERS_EXACT_CELLS {
        let rook = rook_number_exact(&a.board, a.k as usize);
        let file = file_number_exact(&a.board, a.k as usize);
        let inside = (r.enclosure_rook.contains(&rook), r.enclosure_file.contains(&file));
        v["exact"] = json!({
            "rook": rook.to_decimal_string(),
            "file": file.to_decimal_string(),
            "rook_contained": inside.0,
            "file_contained": inside.1,
        });
        check = Some((rook, file, inside));
    }
    Ok(Output::ok(match f {
        Format::Json => to_json(&v)?,
        Format::Tsv => format!(
            "count\tcap\nrook\t{}\nfile\t{}\n",
            r.terms.cap_rook, r.terms.cap_file
        ),
        Format::Human => {
            let mut s = format!(
                "board {}, k = {}\nrook: R = {}  {}\nfile: F = {}  {}\n",
                a.board,
                a.k,
                r.terms.cap_rook,
                describe(&r.enclosure_rook),
                r.terms.cap_file,
                describe(&r.enclosure_file)
            );
            if let Some((rook, file, inside)) = check {
                s += &format!(
                    "exact: r = {} ({}), f = {} ({})\n",
                    short(&rook),
                    if inside.0 { "inside" } else { "OUTSIDE" },
                    short(&file),
                    if inside.1 { "inside" } else { "OUTSIDE" }
                );
            }
            s
        }
    }))
}

fn short(v: &BigNat) -> String {
    let s = v.to_decimal_string();
    if s.len() <= 30 {
        s
    } else {
        format!("{}...({} digits)", &s[..12], s.len())
    }
}

fn large(f: Format) -> Result<Output> {
    let cases = large_cases()?;
    Ok(Output::ok(match f {
        Format::Json => to_json(&json!({ "cases": cases }))?,
        Format::Tsv => {
            let mut s = String::from("kind\texponent10\tlower\tupper\treference_lower\treference_upper\tagreement\n");
            for c in &cases {
                s += &format!(
                    "{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
                    c.kind, c.reference.exponent10, c.lower_rounded, c.upper_rounded, c.reference.lo, c.reference.hi, c.agreement
                );
            }
            s
        }
        Format::Human => large_cases_human(&cases),
    }))
}
