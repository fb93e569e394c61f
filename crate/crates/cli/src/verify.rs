//! Containment sweeps against the exact oracles.

use anyhow::Result;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use stirling_cert::bounds::{theorem4_bound, theorem5_bound, theorem6_bound, Mode};
use stirling_cert::exact::{file_polynomial, rook_polynomial, stirling_table};
use stirling_cert::{FerrersBoard, StirlingKind};

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub n_max: u64,
    pub k_max: u64,
    pub boards: usize,
    pub board_seed: u64,
    pub max_cells: usize,
    pub max_rooks: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            n_max: 40,
            k_max: 40,
            boards: 50,
            board_seed: 7,
            max_cells: 300,
            max_rooks: 12,
        }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Violation {
    pub family: String,
    pub board: String,
    pub k: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub n_max: u64,
    pub k_max: u64,
    pub checks: u64,
    pub boards: Vec<String>,
    pub violations: Vec<Violation>,
    pub passed: bool,
}

/// A partition with at most `max_cells` squares, drawn from `rng`.
pub fn random_board<R: Rng>(rng: &mut R, max_cells: usize) -> FerrersBoard {
    let side = (max_cells as f64).sqrt().ceil() as usize + 2;
    let rows = rng.gen_range(1..=side);
    let mut parts: Vec<usize> = (0..rows).map(|_| rng.gen_range(1..=side)).collect();
    parts.sort_unstable_by(|a, b| b.cmp(a));
    while parts.iter().sum::<usize>() > max_cells {
        let last = parts.len() - 1;
        if parts[last] > 1 {
            parts[last] -= 1;
        } else {
            parts.pop();
        }
    }
    FerrersBoard::new(parts).expect("sorted positive parts")
}

pub fn seeded_boards(count: usize, seed: u64, max_cells: usize) -> Vec<FerrersBoard> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_board(&mut rng, max_cells)).collect()
}

/// Checks every `3 <= n <= n_max`, `2 <= k <= min(n, k_max)` on the staircase
/// (both kinds, uniform and independent placements, and the Ferrers form),
/// then rook and file numbers of the seeded random boards.
pub fn run_verify(opts: &VerifyOptions) -> Result<VerifyReport> {
    let mut violations = Vec::new();
    let mut checks = 0u64;
    let s1 = stirling_table(StirlingKind::First, opts.n_max as usize);
    let s2 = stirling_table(StirlingKind::Second, opts.n_max as usize);
    let mut record = |ok: bool, family: &str, board: String, k: u64| {
        checks += 1;
        if !ok {
            violations.push(Violation {
                family: family.into(),
                board,
                k,
            });
        }
    };
    for n in 3..=opts.n_max {
        let stair = FerrersBoard::staircase(n as usize);
        let label = format!("staircase:{n}");
        for k in 2..=n.min(opts.k_max) {
            let (e1, e2) = (&s1[n as usize][(n - k) as usize], &s2[n as usize][(n - k) as usize]);
            let t4 = theorem4_bound(n, k, Mode::Exact)?;
            record(t4.enclosure_first.contains(e1), "uniform-first", label.clone(), k);
            record(t4.enclosure_second.contains(e2), "uniform-second", label.clone(), k);
            let t5 = theorem5_bound(n, k, Mode::Exact)?;
            record(t5.enclosure_first.contains(e1), "independent-first", label.clone(), k);
            record(t5.enclosure_second.contains(e2), "independent-second", label.clone(), k);
            let t6 = theorem6_bound(&stair, k, Mode::Exact)?;
            record(t6.enclosure_file.contains(e1), "ferrers-file", label.clone(), k);
            record(t6.enclosure_rook.contains(e2), "ferrers-rook", label.clone(), k);
        }
    }
    let boards = seeded_boards(opts.boards, opts.board_seed, opts.max_cells);
    for b in &boards {
        let rooks = rook_polynomial(b, opts.max_rooks as usize);
        let files = file_polynomial(b, opts.max_rooks as usize);
        for k in 2..=opts.max_rooks {
            let r = theorem6_bound(b, k, Mode::Exact)?;
            record(r.enclosure_rook.contains(&rooks[k as usize]), "ferrers-rook", b.to_string(), k);
            record(r.enclosure_file.contains(&files[k as usize]), "ferrers-file", b.to_string(), k);
        }
    }
    Ok(VerifyReport {
        n_max: opts.n_max,
        k_max: opts.k_max,
        checks,
        boards: boards.iter().map(|b| b.to_string()).collect(),
        passed: violations.is_empty(),
        violations,
    })
}
