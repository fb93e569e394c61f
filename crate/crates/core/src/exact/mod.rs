//! Exact big-integer oracles: Stirling numbers of both kinds, Bell numbers,
//! factorials, binomials, and rook/file numbers of Ferrers boards.

mod board;
mod rook;

pub use board::{Cell, FerrersBoard};
pub use rook::{
    count_attacking_pairs, file_number_exact, file_polynomial, rook_number_exact,
    rook_polynomial, AttackCounter, AttackMode, Placement,
};

use crate::error::{Error, Result};
use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::ops::{Add, AddAssign, Mul};
use std::str::FromStr;

/// Arbitrary-precision non-negative integer.
///
/// Serializes as a decimal string so that values with millions of digits
/// survive JSON round trips.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BigNat(pub BigUint);

impl BigNat {
    pub fn zero() -> Self {
        BigNat(BigUint::zero())
    }

    pub fn one() -> Self {
        BigNat(BigUint::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn as_biguint(&self) -> &BigUint {
        &self.0
    }

    pub fn into_biguint(self) -> BigUint {
        self.0
    }

    pub fn to_decimal_string(&self) -> String {
        self.0.to_str_radix(10)
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.0.to_u64()
    }

    pub fn bits(&self) -> u64 {
        self.0.bits()
    }

    /// Double-precision log10; `-inf` for zero. Use
    /// [`crate::LogInterval::from_bignat`] when a certified value is needed.
    pub fn log10_f64(&self) -> f64 {
        if self.0.is_zero() {
            return f64::NEG_INFINITY;
        }
        let bits = self.0.bits();
        if bits <= 1000 {
            return self.0.to_f64().unwrap_or(f64::INFINITY).log10();
        }
        let shift = bits - 64;
        let top = (&self.0 >> shift).to_f64().unwrap_or(f64::NAN);
        top.log10() + shift as f64 * std::f64::consts::LOG10_2
    }
}

impl From<u64> for BigNat {
    fn from(v: u64) -> Self {
        BigNat(BigUint::from(v))
    }
}

impl From<BigUint> for BigNat {
    fn from(v: BigUint) -> Self {
        BigNat(v)
    }
}

impl fmt::Display for BigNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl FromStr for BigNat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BigUint::from_str(s.trim())
            .map(BigNat)
            .map_err(|e| Error::Parse(format!("not a non-negative integer `{s}`: {e}")))
    }
}

impl Serialize for BigNat {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_decimal_string())
    }
}

impl<'de> Deserialize<'de> for BigNat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl Add for BigNat {
    type Output = BigNat;
    fn add(self, rhs: BigNat) -> BigNat {
        BigNat(self.0 + rhs.0)
    }
}

impl<'a> Add<&'a BigNat> for &'a BigNat {
    type Output = BigNat;
    fn add(self, rhs: &BigNat) -> BigNat {
        BigNat(&self.0 + &rhs.0)
    }
}

impl AddAssign<&BigNat> for BigNat {
    fn add_assign(&mut self, rhs: &BigNat) {
        self.0 += &rhs.0;
    }
}

impl Mul for BigNat {
    type Output = BigNat;
    fn mul(self, rhs: BigNat) -> BigNat {
        BigNat(self.0 * rhs.0)
    }
}

impl<'a> Mul<&'a BigNat> for &'a BigNat {
    type Output = BigNat;
    fn mul(self, rhs: &BigNat) -> BigNat {
        BigNat(&self.0 * &rhs.0)
    }
}

impl std::iter::Sum for BigNat {
    fn sum<I: Iterator<Item = BigNat>>(iter: I) -> BigNat {
        iter.fold(BigNat::zero(), |a, b| a + b)
    }
}

/// Which Stirling family (and, equivalently, which rook attack rule).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StirlingKind {
    /// Unsigned first kind `|s(n,m)|`; rooks attack along columns only.
    First,
    /// Second kind `S(n,m)`; rooks attack along rows and columns.
    Second,
}

impl StirlingKind {
    pub fn attack_mode(self) -> AttackMode {
        match self {
            StirlingKind::First => AttackMode::ColumnsOnly,
            StirlingKind::Second => AttackMode::RowsAndColumns,
        }
    }
}

impl FromStr for StirlingKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "1" | "first" | "s1" => Ok(StirlingKind::First),
            "2" | "second" | "s2" => Ok(StirlingKind::Second),
            other => Err(Error::Parse(format!("unknown Stirling kind `{other}`"))),
        }
    }
}

impl fmt::Display for StirlingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StirlingKind::First => "first",
            StirlingKind::Second => "second",
        })
    }
}

fn check_nm(n: u64, m: u64) -> Result<()> {
    if m > n {
        Err(Error::MOutOfRange { n, m })
    } else {
        Ok(())
    }
}

/// Evaluates `T(n, m)` for a triangle obeying
/// `T(i+1, j) = w(i, j) T(i, j) + T(i, j-1)`, `T(0,0) = 1`, `T(i,0) = T(0,j) = 0`
/// otherwise, keeping only a band of width `min(m, n-m) + 1`.
///
/// Cells are indexed by `j` and the diagonal offset `d = i - j`.
fn band_recurrence(n: u64, m: u64, weight: impl Fn(u64, u64) -> u64) -> BigNat {
    let depth = n - m;
    if depth <= m {
        // row over d, sweep j
        let mut row = vec![BigUint::zero(); depth as usize + 1];
        row[0] = BigUint::one();
        for j in 1..=m {
            row[0] = BigUint::one();
            for d in 1..=depth {
                let w = weight(j + d - 1, j);
                let prev = &row[d as usize - 1] * w;
                row[d as usize] += prev;
            }
        }
        BigNat(row.pop().unwrap())
    } else {
        // row over j, sweep d
        let mut row = vec![BigUint::one(); m as usize + 1];
        for d in 1..=depth {
            row[0] = BigUint::zero();
            for j in 1..=m {
                let w = weight(j + d - 1, j);
                let scaled = &row[j as usize] * w;
                row[j as usize] = scaled + &row[j as usize - 1];
            }
        }
        BigNat(row.pop().unwrap())
    }
}

/// `S(n, m)`, the number of partitions of an `n`-set into `m` blocks.
pub fn stirling2_exact(n: u64, m: u64) -> Result<BigNat> {
    check_nm(n, m)?;
    Ok(band_recurrence(n, m, |_, j| j))
}

/// `|s(n, m)|`, the number of permutations of `n` elements with `m` cycles.
pub fn stirling1_unsigned_exact(n: u64, m: u64) -> Result<BigNat> {
    check_nm(n, m)?;
    Ok(band_recurrence(n, m, |i, _| i))
}

pub fn stirling_exact(kind: StirlingKind, n: u64, m: u64) -> Result<BigNat> {
    match kind {
        StirlingKind::First => stirling1_unsigned_exact(n, m),
        StirlingKind::Second => stirling2_exact(n, m),
    }
}

/// Full triangle `T[i][j]` for `0 <= j <= i <= n_max`.
pub fn stirling_table(kind: StirlingKind, n_max: usize) -> Vec<Vec<BigNat>> {
    let mut table: Vec<Vec<BigNat>> = Vec::with_capacity(n_max + 1);
    table.push(vec![BigNat::one()]);
    for i in 0..n_max {
        let prev = &table[i];
        let mut next = vec![BigNat::zero(); i + 2];
        for j in 1..=i + 1 {
            let w = match kind {
                StirlingKind::First => i as u64,
                StirlingKind::Second => j as u64,
            };
            let mut v = BigUint::zero();
            if j <= i {
                v += &prev[j].0 * w;
            }
            v += &prev[j - 1].0;
            next[j] = BigNat(v);
        }
        table.push(next);
    }
    table
}

pub fn factorial(n: u64) -> BigNat {
    BigNat((1..=n).fold(BigUint::one(), |acc, i| acc * i))
}

/// Bell number via the Aitken/Peirce triangle.
pub fn bell_number(n: u64) -> BigNat {
    let mut row = vec![BigUint::one()];
    for _ in 0..n {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(row.last().unwrap().clone());
        for v in &row {
            let s = next.last().unwrap() + v;
            next.push(s);
        }
        row = next;
    }
    BigNat(row.swap_remove(0))
}

pub fn binomial_exact(a: u64, b: u64) -> Result<BigNat> {
    binomial_big(&BigUint::from(a), b)
}

/// `C(a, b)` for a big top argument.
pub fn binomial_big(a: &BigUint, b: u64) -> Result<BigNat> {
    if BigUint::from(b) > *a {
        return Err(Error::BinomialOutOfRange {
            a: a.to_string(),
            b,
        });
    }
    let b = {
        let comp = a - BigUint::from(b);
        if comp < BigUint::from(b) {
            comp.to_u64().unwrap()
        } else {
            b
        }
    };
    let mut acc = BigUint::one();
    for i in 0..b {
        acc *= a - BigUint::from(i);
        acc /= BigUint::from(i + 1);
    }
    Ok(BigNat(acc))
}

/// `C(n, 2)` as a big integer; `N` for the staircase of side `n`.
pub fn choose2(n: &BigUint) -> BigUint {
    if n < &BigUint::from(2u8) {
        return BigUint::zero();
    }
    (n * (n - 1u8)) >> 1
}

/// Falling factorial `(x)_j` over the integers.
pub fn falling_factorial(x: u64, j: u64) -> BigNat {
    if j > x {
        return BigNat::zero();
    }
    BigNat((0..j).fold(BigUint::one(), |acc, i| acc * (x - i)))
}
