use super::{big, binomial_prefactor, choose, sc, scu, Enclosure, Mode};
use crate::error::{Error, Result};
use crate::exact::FerrersBoard;
use crate::scalar::{min3, serialize_scalar, Scalar};
use crate::Rational;
use num_bigint::BigUint;
use serde::Serialize;

/// Power of `k` in the numerator of `s4`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum S4Exponent {
    /// `13 - 12k + 3k^2`, the coupling-case probability.
    #[default]
    Square,
    /// `13 - 12k + 3k^3`.
    Cube,
}

impl std::str::FromStr for S4Exponent {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "2" | "square" => Ok(S4Exponent::Square),
            "3" | "cube" => Ok(S4Exponent::Cube),
            other => Err(Error::Parse(format!("unknown s4 exponent `{other}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(bound = "")]
pub struct Theorem6Terms<T: Scalar> {
    pub board: FerrersBoard,
    pub k: u64,
    pub big_n: u64,
    /// `L = sum C(b_i, 2)` and `L' = sum C(b'_i, 2)`.
    pub l: u64,
    pub l_prime: u64,
    #[serde(serialize_with = "serialize_scalar")]
    pub lambda: T,
    #[serde(serialize_with = "serialize_scalar")]
    pub lambda_prime: T,
    #[serde(serialize_with = "serialize_scalar")]
    pub s0: T,
    #[serde(serialize_with = "serialize_scalar")]
    pub s0p: T,
    #[serde(serialize_with = "serialize_scalar")]
    pub s1: T,
    #[serde(serialize_with = "serialize_scalar")]
    pub s1p: T,
    #[serde(serialize_with = "serialize_scalar")]
    pub s2: T,
    #[serde(serialize_with = "serialize_scalar")]
    pub s2p: T,
    #[serde(serialize_with = "serialize_scalar")]
    pub s3: T,
    #[serde(serialize_with = "serialize_scalar")]
    pub s3p: T,
    #[serde(serialize_with = "serialize_scalar")]
    pub s4: T,
    #[serde(serialize_with = "serialize_scalar")]
    pub d3: T,
    #[serde(serialize_with = "serialize_scalar")]
    pub d4: T,
    #[serde(serialize_with = "serialize_scalar")]
    pub cap_rook: T,
    #[serde(serialize_with = "serialize_scalar")]
    pub cap_file: T,
    pub s4_exponent: S4Exponent,
}

/// `sum_i C(p_i, 2)(p_i - 2)`.
fn pair_excess(parts: &[usize]) -> BigUint {
    parts
        .iter()
        .filter(|&&p| p >= 2)
        .map(|&p| big((p * (p - 1) / 2) as u64) * big((p - 2) as u64))
        .sum()
}

/// `sum_i sum_{c1 < c2 <= p_i} (q_{c1} - 1) + (q_{c2} - 1)` where `q` is
/// the conjugate of `p`.
fn cross_sum(parts: &[usize], conj: &[usize]) -> BigUint {
    let mut prefix = Vec::with_capacity(conj.len() + 1);
    prefix.push(0u64);
    for &q in conj {
        prefix.push(prefix.last().unwrap() + (q as u64 - 1));
    }
    parts
        .iter()
        .map(|&p| big((p - 1) as u64) * big(prefix[p]))
        .sum()
}

pub fn theorem6_terms<T: Scalar>(
    board: &FerrersBoard,
    k: u64,
    s4e: S4Exponent,
) -> Result<Theorem6Terms<T>> {
    if k < 2 {
        return Err(Error::OutOfRange(format!("need k >= 2, got {k}")));
    }
    if board.is_empty() {
        return Err(Error::InvalidBoard("empty board".into()));
    }
    let n_cells = board.cell_count() as u64;
    let (l, lp) = (board.row_pairs(), board.col_pairs());
    let cn2: T = sc(&choose(&big(n_cells), 2));
    let ck2: T = sc(&choose(&big(k), 2));
    let km2: T = scu(k - 2);
    // N - 2 may vanish on boards with fewer than three squares
    let nm2: T = if n_cells >= 2 { scu(n_cells - 2) } else { T::zero() };
    let lt: T = scu(l);
    let lpt: T = scu(lp);

    let lambda = T::div_or_zero(ck2.clone() * lt.clone(), cn2.clone());
    let lambda_prime = T::div_or_zero(ck2 * lpt.clone(), cn2.clone());
    let s0 = T::div_or_zero(lt.clone(), cn2.clone());
    let s0p = T::div_or_zero(lpt.clone(), cn2.clone());
    let two_km2 = scu::<T>(2) * km2.clone();
    let s1 = T::div_or_zero(two_km2.clone() * lt.clone(), cn2.clone());
    let s1p = T::div_or_zero(two_km2 * lpt.clone(), cn2.clone());
    let s2 = T::div_or_zero(km2.clone() * sc::<T>(&pair_excess(board.rows())), nm2.clone());
    let s2p = T::div_or_zero(km2.clone() * sc::<T>(&pair_excess(board.cols())), nm2.clone());
    let s3 = T::div_or_zero(
        km2.clone() * sc::<T>(&cross_sum(board.rows(), board.cols())),
        nm2.clone(),
    );
    // the second denominator is read as N - 2 as well
    let s3p = T::div_or_zero(km2 * sc::<T>(&cross_sum(board.cols(), board.rows())), nm2);
    let kk = k as u128;
    let s4_num = match s4e {
        S4Exponent::Square => 3 * kk * kk + 13 - 12 * kk,
        S4Exponent::Cube => 3 * kk * kk * kk + 13 - 12 * kk,
    };
    let s4 = T::div_or_zero(sc(&BigUint::from(s4_num)), cn2);

    let d3 = s0.clone()
        + s0p.clone()
        + s1.clone()
        + s1p.clone()
        + T::div_or_zero(
            s2.clone() + s2p.clone() + s3.clone() + s3p.clone(),
            lt + lpt.clone(),
        )
        + s4.clone();
    let d4 = s0p.clone() + s1p.clone() + T::div_or_zero(s2p.clone() + s3p.clone(), lpt) + s4.clone();
    let one = T::one();
    let cap_rook = min3(
        d3.clone(),
        (lambda.clone() + lambda_prime.clone()) * d3.clone(),
        one.clone(),
    );
    let cap_file = min3(d4.clone(), lambda_prime.clone() * d4.clone(), one);

    Ok(Theorem6Terms {
        board: board.clone(),
        k,
        big_n: n_cells,
        l,
        l_prime: lp,
        lambda,
        lambda_prime,
        s0,
        s0p,
        s1,
        s1p,
        s2,
        s2p,
        s3,
        s3p,
        s4,
        d3,
        d4,
        cap_rook,
        cap_file,
        s4_exponent: s4e,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct FerrersBoundReport {
    pub mode: Mode,
    pub terms: Theorem6Terms<Rational>,
    /// `k` exceeds the number of squares; both counts are zero.
    pub degenerate: bool,
    pub enclosure_rook: Enclosure,
    pub enclosure_file: Enclosure,
}

pub fn theorem6_bound(board: &FerrersBoard, k: u64, mode: Mode) -> Result<FerrersBoundReport> {
    theorem6_bound_with(board, k, mode, S4Exponent::default())
}

pub fn theorem6_bound_with(
    board: &FerrersBoard,
    k: u64,
    mode: Mode,
    s4e: S4Exponent,
) -> Result<FerrersBoundReport> {
    let terms: Theorem6Terms<Rational> = theorem6_terms(board, k, s4e)?;
    let pre = binomial_prefactor(mode, &big(terms.big_n), k)?;
    let rook_rate = &terms.lambda + &terms.lambda_prime;
    let enclosure_rook = Enclosure::build(mode, pre.clone(), &rook_rate, &terms.cap_rook)?;
    let enclosure_file = Enclosure::build(mode, pre, &terms.lambda_prime, &terms.cap_file)?;
    Ok(FerrersBoundReport {
        mode,
        degenerate: k > terms.big_n,
        terms,
        enclosure_rook,
        enclosure_file,
    })
}
