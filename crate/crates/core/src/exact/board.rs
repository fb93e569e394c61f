use crate::error::{Error, Result};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::str::FromStr;

/// A board square, 1-based: `row` indexes the partition parts (longest row
/// first) and `col` runs from 1 to the row length.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cell {
    pub row: u32,
    pub col: u32,
}

impl Cell {
    pub fn new(row: u32, col: u32) -> Self {
        Cell { row, col }
    }
}

/// A left-justified board whose row lengths form an integer partition.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FerrersBoard {
    rows: Vec<usize>,
    cols: Vec<usize>,
    cells: usize,
}

fn conjugate(parts: &[usize]) -> Vec<usize> {
    let width = parts.first().copied().unwrap_or(0);
    (1..=width)
        .map(|i| parts.iter().take_while(|&&b| b >= i).count())
        .collect()
}

impl FerrersBoard {
    pub fn new(rows: Vec<usize>) -> Result<Self> {
        if rows.contains(&0) {
            return Err(Error::InvalidBoard("row lengths must be positive".into()));
        }
        if rows.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidBoard(format!(
                "row lengths must be non-increasing, got {rows:?}"
            )));
        }
        let cols = conjugate(&rows);
        let cells = rows.iter().sum();
        Ok(FerrersBoard { rows, cols, cells })
    }

    /// Strictly lower triangular squares of an `n x n` board: rows of
    /// lengths `n-1, ..., 1` (equivalently columns of heights `n-1, ..., 1`).
    pub fn staircase(n: usize) -> Self {
        FerrersBoard::new((1..n).rev().collect()).expect("staircase is a partition")
    }

    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    /// Column heights, the conjugate partition.
    pub fn cols(&self) -> &[usize] {
        &self.cols
    }

    /// `N`, the number of squares.
    pub fn cell_count(&self) -> usize {
        self.cells
    }

    pub fn is_empty(&self) -> bool {
        self.cells == 0
    }

    pub fn conjugate(&self) -> FerrersBoard {
        FerrersBoard::new(self.cols.clone()).expect("conjugate is a partition")
    }

    /// `L = sum C(b_i, 2)`: unordered same-row square pairs.
    pub fn row_pairs(&self) -> u64 {
        self.rows.iter().map(|&b| choose2_u64(b as u64)).sum()
    }

    /// `L' = sum C(b'_i, 2)`: unordered same-column square pairs.
    pub fn col_pairs(&self) -> u64 {
        self.cols.iter().map(|&b| choose2_u64(b as u64)).sum()
    }

    pub fn contains(&self, cell: Cell) -> bool {
        cell.row >= 1
            && (cell.row as usize) <= self.rows.len()
            && cell.col >= 1
            && (cell.col as usize) <= self.rows[cell.row as usize - 1]
    }

    /// Squares in row-major order; the position index used by samplers.
    pub fn cells(&self) -> Vec<Cell> {
        let mut out = Vec::with_capacity(self.cells);
        for (i, &b) in self.rows.iter().enumerate() {
            for c in 1..=b {
                out.push(Cell::new(i as u32 + 1, c as u32));
            }
        }
        out
    }

    /// Staircase side `n` if this board is the staircase of side `n`.
    pub fn staircase_side(&self) -> Option<usize> {
        let n = self.rows.len() + 1;
        (self.rows.iter().enumerate().all(|(i, &b)| b == n - 1 - i) && n >= 2).then_some(n)
    }
}

pub(crate) fn choose2_u64(v: u64) -> u64 {
    if v < 2 {
        0
    } else {
        v * (v - 1) / 2
    }
}

impl fmt::Display for FerrersBoard {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.rows.iter().map(|b| b.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for FerrersBoard {
    type Err = Error;

    /// Accepts `"5,3,3,1"` or `"staircase:n"`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(side) = s.strip_prefix("staircase:") {
            let n: usize = side
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad staircase side `{side}`")))?;
            if n < 2 {
                return Err(Error::InvalidBoard("staircase side must be >= 2".into()));
            }
            return Ok(FerrersBoard::staircase(n));
        }
        if s.is_empty() {
            return Err(Error::InvalidBoard("empty partition".into()));
        }
        let rows = s
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad row length `{p}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        FerrersBoard::new(rows)
    }
}

impl Serialize for FerrersBoard {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for FerrersBoard {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn staircase_shape() {
        let b = FerrersBoard::staircase(5);
        assert_eq!(b.rows(), &[4, 3, 2, 1]);
        assert_eq!(b.cols(), &[4, 3, 2, 1]);
        assert_eq!(b.cell_count(), 10);
        // L = L' = C(n,3)
        assert_eq!(b.row_pairs(), 10);
        assert_eq!(b.col_pairs(), 10);
        assert_eq!(b.staircase_side(), Some(5));
        assert_eq!(FerrersBoard::new(vec![3, 1]).unwrap().staircase_side(), None);
    }

    #[test]
    fn parse_forms() {
        let b: FerrersBoard = "5,3,3,1".parse().unwrap();
        assert_eq!(b.cols(), &[4, 3, 3, 1, 1]);
        assert_eq!(b.to_string(), "5,3,3,1");
        let s: FerrersBoard = "staircase:4".parse().unwrap();
        assert_eq!(s.rows(), &[3, 2, 1]);
        assert!("3,4".parse::<FerrersBoard>().is_err());
        assert!("3,0".parse::<FerrersBoard>().is_err());
        assert!("".parse::<FerrersBoard>().is_err());
        assert!("a,b".parse::<FerrersBoard>().is_err());
    }

    #[test]
    fn containment_and_cells() {
        let b: FerrersBoard = "2,1".parse().unwrap();
        assert!(b.contains(Cell::new(1, 2)));
        assert!(!b.contains(Cell::new(2, 2)));
        assert!(!b.contains(Cell::new(3, 1)));
        assert_eq!(b.cells(), vec![Cell::new(1, 1), Cell::new(1, 2), Cell::new(2, 1)]);
    }

    fn partition() -> impl Strategy<Value = Vec<usize>> {
        prop::collection::vec(1usize..12, 1..10).prop_map(|mut v| {
            v.sort_unstable_by(|a, b| b.cmp(a));
            v
        })
    }

    proptest! {
        #[test]
        fn conjugation_is_an_involution(rows in partition()) {
            let b = FerrersBoard::new(rows.clone()).unwrap();
            let back = b.conjugate().conjugate();
            prop_assert_eq!(back.rows(), rows.as_slice());
            prop_assert_eq!(b.cols().iter().sum::<usize>(), b.cell_count());
            prop_assert_eq!(b.conjugate().row_pairs(), b.col_pairs());
        }
    }
}
