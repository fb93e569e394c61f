use super::board::{choose2_u64, Cell, FerrersBoard};
use super::BigNat;
use crate::error::{Error, Result};
use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::str::FromStr;

/// Which pairs of rooks attack each other.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AttackMode {
    RowsAndColumns,
    ColumnsOnly,
}

impl FromStr for AttackMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "both" | "rows-and-columns" | "rook" => Ok(AttackMode::RowsAndColumns),
            "columns" | "columns-only" | "file" => Ok(AttackMode::ColumnsOnly),
            other => Err(Error::Parse(format!("unknown attack mode `{other}`"))),
        }
    }
}

/// Rook polynomial coefficients `r_B(0..=max)`.
///
/// Columns are taken in non-decreasing height order; the `j`-th rook placed
/// in a column of height `h` then has `h - (j-1)` free rows.
pub fn rook_polynomial(board: &FerrersBoard, max_k: usize) -> Vec<BigNat> {
    let mut heights: Vec<usize> = board.cols().to_vec();
    heights.sort_unstable();
    let mut r = vec![BigUint::zero(); max_k + 1];
    r[0] = BigUint::one();
    for h in heights {
        for j in (1..=max_k.min(h)).rev() {
            let free = h - (j - 1);
            let add = &r[j - 1] * free;
            r[j] += add;
        }
    }
    r.into_iter().map(BigNat).collect()
}

/// `r_B(k)`: placements of `k` rooks with no two sharing a row or column.
pub fn rook_number_exact(board: &FerrersBoard, k: usize) -> BigNat {
    rook_polynomial(board, k).pop().unwrap()
}

/// File polynomial coefficients `f_B(0..=max)`: the elementary symmetric
/// polynomials of the column heights.
pub fn file_polynomial(board: &FerrersBoard, max_k: usize) -> Vec<BigNat> {
    let mut e = vec![BigUint::zero(); max_k + 1];
    e[0] = BigUint::one();
    for &h in board.cols() {
        for j in (1..=max_k).rev() {
            let add = &e[j - 1] * h;
            e[j] += add;
        }
    }
    e.into_iter().map(BigNat).collect()
}

/// `f_B(k)`: placements of `k` rooks with no two sharing a column.
pub fn file_number_exact(board: &FerrersBoard, k: usize) -> BigNat {
    file_polynomial(board, k).pop().unwrap()
}

/// Rooks on a board. Distinct placements model the uniform k-subset; the
/// independence model allows several rooks on one square.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Placement {
    pub cells: Vec<Cell>,
    pub labeled: bool,
}

impl Placement {
    pub fn new(board: &FerrersBoard, cells: Vec<Cell>, distinct: bool, labeled: bool) -> Result<Self> {
        if let Some(c) = cells.iter().find(|c| !board.contains(**c)) {
            return Err(Error::InvalidPlacement(format!(
                "square ({}, {}) is not on board {board}",
                c.row, c.col
            )));
        }
        if distinct {
            let mut sorted = cells.clone();
            sorted.sort_unstable();
            if sorted.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidPlacement("repeated square".into()));
            }
        }
        Ok(Placement { cells, labeled })
    }
}

/// `W`: unordered rook pairs sharing a column, or a row or a column.
///
/// Two rooks on the same square count once.
pub fn count_attacking_pairs(placement: &Placement, mode: AttackMode) -> u64 {
    let mut rows: HashMap<u32, u64> = HashMap::new();
    let mut cols: HashMap<u32, u64> = HashMap::new();
    let mut squares: HashMap<Cell, u64> = HashMap::new();
    for c in &placement.cells {
        *rows.entry(c.row).or_default() += 1;
        *cols.entry(c.col).or_default() += 1;
        *squares.entry(*c).or_default() += 1;
    }
    let col_pairs: u64 = cols.values().map(|&v| choose2_u64(v)).sum();
    match mode {
        AttackMode::ColumnsOnly => col_pairs,
        AttackMode::RowsAndColumns => {
            let row_pairs: u64 = rows.values().map(|&v| choose2_u64(v)).sum();
            let same: u64 = squares.values().map(|&v| choose2_u64(v)).sum();
            row_pairs + col_pairs - same
        }
    }
}

/// Reusable `O(k)` attack counter for a fixed board, backed by occupancy
/// arrays instead of hash maps.
#[derive(Clone, Debug)]
pub struct AttackCounter {
    row_occ: Vec<u32>,
    col_occ: Vec<u32>,
    square_occ: Vec<u32>,
    row_offset: Vec<usize>,
}

impl AttackCounter {
    pub fn new(board: &FerrersBoard) -> Self {
        let mut row_offset = Vec::with_capacity(board.rows().len() + 1);
        let mut acc = 0;
        for &b in board.rows() {
            row_offset.push(acc);
            acc += b;
        }
        row_offset.push(acc);
        AttackCounter {
            row_occ: vec![0; board.rows().len() + 1],
            col_occ: vec![0; board.cols().len() + 1],
            square_occ: vec![0; acc],
            row_offset,
        }
    }

    fn square_index(&self, c: Cell) -> usize {
        self.row_offset[c.row as usize - 1] + c.col as usize - 1
    }

    /// Same value as [`count_attacking_pairs`]; every counter touched is
    /// reset before returning.
    pub fn count(&mut self, cells: &[Cell], mode: AttackMode) -> u64 {
        let mut pairs: u64 = 0;
        for &c in cells {
            let sq = self.square_index(c);
            let col_hits = self.col_occ[c.col as usize] as u64;
            let row_hits = self.row_occ[c.row as usize] as u64;
            let same = self.square_occ[sq] as u64;
            pairs += match mode {
                AttackMode::ColumnsOnly => col_hits,
                AttackMode::RowsAndColumns => col_hits + row_hits - same,
            };
            self.col_occ[c.col as usize] += 1;
            self.row_occ[c.row as usize] += 1;
            self.square_occ[sq] += 1;
        }
        for &c in cells {
            let sq = self.square_index(c);
            self.col_occ[c.col as usize] = 0;
            self.row_occ[c.row as usize] = 0;
            self.square_occ[sq] = 0;
        }
        pairs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{stirling1_unsigned_exact, stirling2_exact};
    use proptest::prelude::*;

    /// Enumerates every k-subset of squares.
    fn brute_force(board: &FerrersBoard, k: usize, mode: AttackMode) -> u64 {
        let cells = board.cells();
        let mut count = 0;
        let mut idx: Vec<usize> = (0..k).collect();
        if k > cells.len() {
            return 0;
        }
        if k == 0 {
            return 1;
        }
        loop {
            let chosen: Vec<Cell> = idx.iter().map(|&i| cells[i]).collect();
            let p = Placement { cells: chosen, labeled: false };
            if count_attacking_pairs(&p, mode) == 0 {
                count += 1;
            }
            let mut i = k;
            loop {
                if i == 0 {
                    return count;
                }
                i -= 1;
                if idx[i] < cells.len() - k + i {
                    idx[i] += 1;
                    for j in i + 1..k {
                        idx[j] = idx[j - 1] + 1;
                    }
                    break;
                }
            }
        }
    }

    #[test]
    fn rook_examples() {
        let st10 = FerrersBoard::staircase(10);
        assert_eq!(rook_number_exact(&st10, 2), BigNat::from(750));
        assert_eq!(rook_number_exact(&st10, 0), BigNat::one());
        let row: FerrersBoard = "3".parse().unwrap();
        assert_eq!(rook_number_exact(&row, 2), BigNat::zero());
        assert_eq!(rook_number_exact(&row, 1), BigNat::from(3));
    }

    #[test]
    fn file_examples() {
        let st4 = FerrersBoard::staircase(4);
        assert_eq!(file_number_exact(&st4, 2), BigNat::from(11));
        assert_eq!(file_number_exact(&st4, 0), BigNat::one());
        let b: FerrersBoard = "2,1".parse().unwrap();
        assert_eq!(file_number_exact(&b, 2), BigNat::from(2));
        assert_eq!(file_number_exact(&b, 3), BigNat::zero());
    }

    #[test]
    fn staircase_matches_stirling() {
        for n in 2..=25usize {
            let board = FerrersBoard::staircase(n);
            let rooks = rook_polynomial(&board, n - 1);
            let files = file_polynomial(&board, n - 1);
            for k in 0..n {
                let m = (n - k) as u64;
                assert_eq!(rooks[k], stirling2_exact(n as u64, m).unwrap(), "n={n} k={k}");
                assert_eq!(files[k], stirling1_unsigned_exact(n as u64, m).unwrap(), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn dp_matches_enumeration_on_small_boards() {
        let boards = ["4,3,3,1", "5,5,2", "3,3,3", "6,2,2,1,1", "4,4,4,4,4", "7"];
        for s in boards {
            let b: FerrersBoard = s.parse().unwrap();
            for k in 0..=5 {
                assert_eq!(
                    rook_number_exact(&b, k).to_u64().unwrap(),
                    brute_force(&b, k, AttackMode::RowsAndColumns),
                    "rook {s} k={k}"
                );
                assert_eq!(
                    file_number_exact(&b, k).to_u64().unwrap(),
                    brute_force(&b, k, AttackMode::ColumnsOnly),
                    "file {s} k={k}"
                );
            }
        }
    }

    #[test]
    fn attack_count_examples() {
        let column = Placement {
            cells: vec![Cell::new(1, 1), Cell::new(2, 1), Cell::new(3, 1)],
            labeled: false,
        };
        assert_eq!(count_attacking_pairs(&column, AttackMode::ColumnsOnly), 3);

        let st8 = FerrersBoard::staircase(8);
        // chess-board rows 5 and 7 have 4 and 6 squares: partition rows 4 and 2
        let p = Placement::new(
            &st8,
            vec![Cell::new(4, 1), Cell::new(4, 3), Cell::new(2, 3)],
            true,
            false,
        )
        .unwrap();
        assert_eq!(count_attacking_pairs(&p, AttackMode::RowsAndColumns), 2);
        assert_eq!(count_attacking_pairs(&p, AttackMode::ColumnsOnly), 1);

        let free = Placement::new(&st8, vec![Cell::new(1, 1), Cell::new(2, 2)], true, false).unwrap();
        assert_eq!(count_attacking_pairs(&free, AttackMode::RowsAndColumns), 0);
    }

    #[test]
    fn placement_validation() {
        let b = FerrersBoard::staircase(4);
        assert!(Placement::new(&b, vec![Cell::new(3, 2)], true, false).is_err());
        assert!(Placement::new(&b, vec![Cell::new(1, 1), Cell::new(1, 1)], true, false).is_err());
        let p = Placement::new(&b, vec![Cell::new(1, 1), Cell::new(1, 1)], false, true).unwrap();
        // same square: shares a row and a column but counts once
        assert_eq!(count_attacking_pairs(&p, AttackMode::RowsAndColumns), 1);
        assert_eq!(count_attacking_pairs(&p, AttackMode::ColumnsOnly), 1);
    }

    fn partition() -> impl Strategy<Value = Vec<usize>> {
        prop::collection::vec(1usize..9, 1..8).prop_map(|mut v| {
            v.sort_unstable_by(|a, b| b.cmp(a));
            v
        })
    }

    proptest! {
        #[test]
        fn rook_numbers_invariant_under_conjugation(rows in partition(), k in 0usize..6) {
            let b = FerrersBoard::new(rows).unwrap();
            prop_assert_eq!(rook_number_exact(&b, k), rook_number_exact(&b.conjugate(), k));
        }

        #[test]
        fn file_numbers_symmetric_in_column_heights(rows in partition(), k in 0usize..6, seed in any::<u64>()) {
            let b = FerrersBoard::new(rows).unwrap();
            let mut heights = b.cols().to_vec();
            // any permutation of the heights gives the same e_k
            let len = heights.len();
            heights.rotate_left((seed as usize) % len);
            heights.reverse();
            let mut e = vec![BigUint::zero(); k + 1];
            e[0] = BigUint::one();
            for h in heights {
                for j in (1..=k).rev() {
                    let add = &e[j - 1] * h;
                    e[j] += add;
                }
            }
            prop_assert_eq!(BigNat(e[k].clone()), file_number_exact(&b, k));
        }

        #[test]
        fn array_counter_matches_hash_counter(
            rows in partition(),
            picks in prop::collection::vec(any::<u32>(), 0..12),
        ) {
            let b = FerrersBoard::new(rows).unwrap();
            let cells = b.cells();
            let chosen: Vec<Cell> = picks.iter().map(|&p| cells[p as usize % cells.len()]).collect();
            let mut counter = AttackCounter::new(&b);
            let p = Placement { cells: chosen.clone(), labeled: true };
            for mode in [AttackMode::RowsAndColumns, AttackMode::ColumnsOnly] {
                prop_assert_eq!(counter.count(&chosen, mode), count_attacking_pairs(&p, mode));
            }
        }
    }
}
