//! Directed-rounding arithmetic on `BigFloat` and certified log10 intervals.
//!
//! Every operation here computes a lower result with rounding toward -inf
//! and an upper result with rounding toward +inf, so a [`Bracket`] always
//! contains the real value it tracks.

use crate::exact::BigNat;
use astro_float::{BigFloat, Consts, Radix, RoundingMode, Sign, Word};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;

/// Working precision in bits.
pub const PREC: usize = 128;

const DOWN: RoundingMode = RoundingMode::Down;
const UP: RoundingMode = RoundingMode::Up;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("constant cache"));
}

fn with_consts<R>(f: impl FnOnce(&mut Consts) -> R) -> R {
    CONSTS.with(|c| f(&mut c.borrow_mut()))
}

fn cmp(a: &BigFloat, b: &BigFloat) -> Ordering {
    match a.cmp(b) {
        Some(c) if c < 0 => Ordering::Less,
        Some(0) => Ordering::Equal,
        Some(_) => Ordering::Greater,
        None => panic!("comparison with NaN"),
    }
}

fn min_bf(a: BigFloat, b: BigFloat) -> BigFloat {
    if cmp(&b, &a) == Ordering::Less {
        b
    } else {
        a
    }
}

fn max_bf(a: BigFloat, b: BigFloat) -> BigFloat {
    if cmp(&b, &a) == Ordering::Greater {
        b
    } else {
        a
    }
}

/// Exact conversion; the precision grows with the integer.
pub fn biguint_to_bf(v: &BigUint) -> BigFloat {
    if v.is_zero() {
        return BigFloat::from_word(0, 64);
    }
    let words: Vec<Word> = v.to_u64_digits().into_iter().map(|w| w as Word).collect();
    let e = (words.len() * 64) as i32;
    BigFloat::from_words(&words, Sign::Pos, e)
}

pub fn u64_to_bf(v: u64) -> BigFloat {
    BigFloat::from_u64(v, 64)
}

/// Nearest f64 (saturating to +-inf, flushing tiny values to zero).
pub fn bf_to_f64(x: &BigFloat) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    if x.is_nan() {
        return f64::NAN;
    }
    if x.is_inf_pos() {
        return f64::INFINITY;
    }
    if x.is_inf_neg() {
        return f64::NEG_INFINITY;
    }
    let (m, _, s, e, _) = x.as_raw_parts().expect("finite value");
    let top = *m.last().expect("non-empty mantissa");
    let next = if m.len() > 1 { m[m.len() - 2] } else { 0 };
    // mantissa is the fraction top.next... in [1/2, 1)
    let frac = top as f64 / 2f64.powi(64) + next as f64 / 2f64.powi(128);
    let v = if e > 1023 + 64 {
        f64::INFINITY
    } else if e < -1100 {
        0.0
    } else {
        // split the scaling to stay inside the f64 exponent range
        frac * 2f64.powi(e / 2) * 2f64.powi(e - e / 2)
    };
    if s == Sign::Neg {
        -v
    } else {
        v
    }
}

/// A closed real interval `[lo, hi]` with `BigFloat` endpoints.
#[derive(Clone, Debug)]
pub struct Bracket {
    pub lo: BigFloat,
    pub hi: BigFloat,
}

impl Bracket {
    pub fn new(lo: BigFloat, hi: BigFloat) -> Self {
        debug_assert!(cmp(&lo, &hi) != Ordering::Greater, "inverted bracket");
        Bracket { lo, hi }
    }

    pub fn point(x: BigFloat) -> Self {
        Bracket { lo: x.clone(), hi: x }
    }

    pub fn from_u64(v: u64) -> Self {
        Bracket::point(u64_to_bf(v))
    }

    pub fn from_biguint(v: &BigUint) -> Self {
        Bracket::point(biguint_to_bf(v))
    }

    pub fn from_bignat(v: &BigNat) -> Self {
        Bracket::from_biguint(v.as_biguint())
    }

    /// Outward-rounded enclosure of a rational.
    pub fn from_rational(r: &BigRational) -> Self {
        let num = biguint_to_bf(r.numer().magnitude());
        let den = biguint_to_bf(r.denom().magnitude());
        let lo = num.div(&den, PREC, DOWN);
        let hi = num.div(&den, PREC, UP);
        if r.is_negative() {
            Bracket::new(hi.neg(), lo.neg())
        } else {
            Bracket::new(lo, hi)
        }
    }

    pub fn from_f64(x: f64) -> Self {
        Bracket::point(BigFloat::from_f64(x, 64))
    }

    pub fn add(&self, o: &Bracket) -> Bracket {
        Bracket::new(self.lo.add(&o.lo, PREC, DOWN), self.hi.add(&o.hi, PREC, UP))
    }

    pub fn sub(&self, o: &Bracket) -> Bracket {
        Bracket::new(self.lo.sub(&o.hi, PREC, DOWN), self.hi.sub(&o.lo, PREC, UP))
    }

    pub fn neg(&self) -> Bracket {
        Bracket::new(self.hi.neg(), self.lo.neg())
    }

    pub fn mul(&self, o: &Bracket) -> Bracket {
        let pairs = [
            (&self.lo, &o.lo),
            (&self.lo, &o.hi),
            (&self.hi, &o.lo),
            (&self.hi, &o.hi),
        ];
        let mut lo: Option<BigFloat> = None;
        let mut hi: Option<BigFloat> = None;
        for (a, b) in pairs {
            let d = a.mul(b, PREC, DOWN);
            let u = a.mul(b, PREC, UP);
            lo = Some(match lo {
                None => d,
                Some(l) => min_bf(l, d),
            });
            hi = Some(match hi {
                None => u,
                Some(h) => max_bf(h, u),
            });
        }
        Bracket::new(lo.unwrap(), hi.unwrap())
    }

    /// Division by a bracket that excludes zero.
    pub fn div(&self, o: &Bracket) -> Bracket {
        assert!(o.is_positive() || o.is_negative(), "division by a bracket containing zero");
        let inv = Bracket::new(
            u64_to_bf(1).div(&o.hi, PREC, DOWN),
            u64_to_bf(1).div(&o.lo, PREC, UP),
        );
        self.mul(&inv)
    }

    /// `e^x`; monotone, so the endpoints map directly.
    pub fn exp(&self) -> Bracket {
        with_consts(|cc| Bracket::new(self.lo.exp(PREC, DOWN, cc), self.hi.exp(PREC, UP, cc)))
    }

    /// `10^x`.
    pub fn pow10(&self) -> Bracket {
        with_consts(|cc| {
            let ten = u64_to_bf(10);
            let ln10 = Bracket::new(ten.ln(PREC, DOWN, cc), ten.ln(PREC, UP, cc));
            let arg = self.mul(&ln10);
            Bracket::new(arg.lo.exp(PREC, DOWN, cc), arg.hi.exp(PREC, UP, cc))
        })
    }

    /// log10 of a positive bracket.
    pub fn log10(&self) -> LogInterval {
        assert!(self.is_positive(), "log10 of a non-positive bracket");
        with_consts(|cc| LogInterval {
            lo: self.lo.log10(PREC, DOWN, cc),
            hi: self.hi.log10(PREC, UP, cc),
        })
    }

    pub fn max_zero(&self) -> Bracket {
        let z = u64_to_bf(0);
        Bracket::new(max_bf(self.lo.clone(), z.clone()), max_bf(self.hi.clone(), z))
    }

    pub fn min_one(&self) -> Bracket {
        let one = u64_to_bf(1);
        Bracket::new(min_bf(self.lo.clone(), one.clone()), min_bf(self.hi.clone(), one))
    }

    pub fn is_positive(&self) -> bool {
        !self.lo.is_zero() && self.lo.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        !self.hi.is_zero() && self.hi.is_negative()
    }

    pub fn contains(&self, x: &BigFloat) -> bool {
        cmp(&self.lo, x) != Ordering::Greater && cmp(x, &self.hi) != Ordering::Greater
    }

    pub fn lo_f64(&self) -> f64 {
        bf_to_f64(&self.lo)
    }

    pub fn hi_f64(&self) -> f64 {
        bf_to_f64(&self.hi)
    }

    pub fn mid_f64(&self) -> f64 {
        0.5 * (self.lo_f64() + self.hi_f64())
    }
}

/// Certified bounds `[lo, hi]` on `log10 x` for some positive `x`.
#[derive(Clone, Debug)]
pub struct LogInterval {
    lo: BigFloat,
    hi: BigFloat,
}

impl LogInterval {
    pub fn new(lo: BigFloat, hi: BigFloat) -> Self {
        assert!(cmp(&lo, &hi) != Ordering::Greater, "inverted log interval");
        LogInterval { lo, hi }
    }

    /// Exact log10 enclosure of a positive integer; `None` for zero.
    pub fn from_bignat(v: &BigNat) -> Option<Self> {
        if v.is_zero() {
            None
        } else {
            Some(Bracket::from_bignat(v).log10())
        }
    }

    pub fn lo(&self) -> &BigFloat {
        &self.lo
    }

    pub fn hi(&self) -> &BigFloat {
        &self.hi
    }

    pub fn lo_f64(&self) -> f64 {
        bf_to_f64(&self.lo)
    }

    pub fn hi_f64(&self) -> f64 {
        bf_to_f64(&self.hi)
    }

    pub fn mid_f64(&self) -> f64 {
        0.5 * (self.lo_f64() + self.hi_f64())
    }

    /// Width, rounded up.
    pub fn width(&self) -> BigFloat {
        self.hi.sub(&self.lo, PREC, UP)
    }

    pub fn width_f64(&self) -> f64 {
        bf_to_f64(&self.width())
    }

    /// Log of a product.
    pub fn add(&self, o: &LogInterval) -> LogInterval {
        LogInterval::new(self.lo.add(&o.lo, PREC, DOWN), self.hi.add(&o.hi, PREC, UP))
    }

    /// Log of a quotient.
    pub fn sub(&self, o: &LogInterval) -> LogInterval {
        LogInterval::new(self.lo.sub(&o.hi, PREC, DOWN), self.hi.sub(&o.lo, PREC, UP))
    }

    /// `other` lies inside `self`.
    pub fn encloses(&self, other: &LogInterval) -> bool {
        cmp(&self.lo, &other.lo) != Ordering::Greater && cmp(&other.hi, &self.hi) != Ordering::Greater
    }

    /// Both intervals share at least one point.
    pub fn overlaps(&self, other: &LogInterval) -> bool {
        cmp(&self.lo, &other.hi) != Ordering::Greater && cmp(&other.lo, &self.hi) != Ordering::Greater
    }

    /// Upper bound of `self` is at most the lower bound of `other`.
    pub fn certainly_le(&self, other: &LogInterval) -> bool {
        cmp(&self.hi, &other.lo) != Ordering::Greater
    }

    /// The value bracket `[10^lo, 10^hi]`.
    pub fn to_bracket(&self) -> Bracket {
        Bracket::new(self.lo.clone(), self.hi.clone()).pow10()
    }

    /// Splits into `10^e` and outward mantissa bounds, with `e` the floor of
    /// the lower log bound.
    pub fn scientific(&self) -> Scientific {
        let e = self.lo_f64().floor();
        let mut exponent = e as i64;
        // guard against the f64 rounding of huge exponents
        let e_bf = BigFloat::from_i64(exponent, 64);
        let mut shifted = Bracket::new(
            self.lo.sub(&e_bf, PREC, DOWN),
            self.hi.sub(&e_bf, PREC, UP),
        );
        if shifted.lo.is_negative() && !shifted.lo.is_zero() {
            exponent -= 1;
            shifted = shifted.add(&Bracket::from_u64(1));
        }
        let m = shifted.pow10();
        Scientific {
            mantissa_lo: m.lo_f64_down(),
            mantissa_hi: m.hi_f64_up(),
            exponent10: exponent,
        }
    }

    /// Outward bounds on `10^(log - exponent)`.
    pub fn mantissa_at(&self, exponent: i64) -> (f64, f64) {
        let e_bf = BigFloat::from_i64(exponent, 64);
        let m = Bracket::new(
            self.lo.sub(&e_bf, PREC, DOWN),
            self.hi.sub(&e_bf, PREC, UP),
        )
        .pow10();
        (m.lo_f64_down(), m.hi_f64_up())
    }

    pub fn lo_string(&self) -> String {
        format_bf(&self.lo, DOWN)
    }

    pub fn hi_string(&self) -> String {
        format_bf(&self.hi, UP)
    }
}

impl Bracket {
    /// `lo` converted to an f64 that is not above it.
    pub fn lo_f64_down(&self) -> f64 {
        let v = self.lo_f64();
        let back = BigFloat::from_f64(v, 64);
        if cmp(&back, &self.lo) == Ordering::Greater {
            next_down(v)
        } else {
            v
        }
    }

    /// `hi` converted to an f64 that is not below it.
    pub fn hi_f64_up(&self) -> f64 {
        let v = self.hi_f64();
        let back = BigFloat::from_f64(v, 64);
        if cmp(&back, &self.hi) == Ordering::Less {
            next_up(v)
        } else {
            v
        }
    }
}

fn next_up(v: f64) -> f64 {
    if v.is_nan() || v == f64::INFINITY {
        return v;
    }
    if v == 0.0 {
        return f64::from_bits(1);
    }
    let b = v.to_bits();
    f64::from_bits(if v > 0.0 { b + 1 } else { b - 1 })
}

fn next_down(v: f64) -> f64 {
    -next_up(-v)
}

/// Decimal rendering, directed in the given mode.
pub fn format_bf(x: &BigFloat, rm: RoundingMode) -> String {
    with_consts(|cc| x.format(Radix::Dec, rm, cc)).unwrap_or_else(|_| "NaN".into())
}

/// Parses a decimal string to the nearest `BigFloat`.
pub fn parse_bf(s: &str, rm: RoundingMode) -> BigFloat {
    with_consts(|cc| BigFloat::parse(s, Radix::Dec, PREC, rm, cc))
}

/// Outward-rounded enclosure of a decimal literal.
pub fn parse_bracket(s: &str) -> Bracket {
    Bracket::new(parse_bf(s, DOWN), parse_bf(s, UP))
}

/// `x = m * 10^e` with `m` bracketed in `[mantissa_lo, mantissa_hi]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Scientific {
    pub mantissa_lo: f64,
    pub mantissa_hi: f64,
    pub exponent10: i64,
}

impl fmt::Display for Scientific {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{:.9}, {:.9}] x 10^{}",
            self.mantissa_lo, self.mantissa_hi, self.exponent10
        )
    }
}

impl fmt::Display for LogInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "log10 in [{}, {}]", self.lo_string(), self.hi_string())
    }
}

impl Serialize for LogInterval {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("LogInterval", 2)?;
        st.serialize_field("log10_lo", &self.lo_string())?;
        st.serialize_field("log10_hi", &self.hi_string())?;
        st.end()
    }
}

impl Serialize for Bracket {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Bracket", 2)?;
        st.serialize_field("lo", &format_bf(&self.lo, DOWN))?;
        st.serialize_field("hi", &format_bf(&self.hi, UP))?;
        st.end()
    }
}

/// Convenience for tests and diagnostics.
pub fn bigint_to_bracket(v: &BigInt) -> Bracket {
    let b = Bracket::from_biguint(v.magnitude());
    if v.is_negative() {
        b.neg()
    } else {
        b
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::binomial_exact;

    #[test]
    fn integer_conversion_is_exact() {
        let v = BigUint::from(5u32);
        assert_eq!(bf_to_f64(&biguint_to_bf(&v)), 5.0);
        let big = BigUint::from(3u32).pow(200);
        let x = biguint_to_bf(&big);
        let rel = (bf_to_f64(&x) / 3f64.powi(200) - 1.0).abs();
        assert!(rel < 1e-15);
        assert_eq!(bf_to_f64(&u64_to_bf(u64::MAX)), u64::MAX as f64);
    }

    #[test]
    fn brackets_enclose() {
        let third = Bracket::from_rational(&BigRational::new(1.into(), 3.into()));
        assert!(cmp(&third.lo, &third.hi) == Ordering::Less);
        let one = third.mul(&Bracket::from_u64(3));
        assert!(one.contains(&u64_to_bf(1)));
        let e = Bracket::from_u64(1).exp();
        assert!(e.lo_f64() <= std::f64::consts::E && std::f64::consts::E <= e.hi_f64() + 1e-15);
        let neg = Bracket::from_rational(&BigRational::new((-1).into(), 3.into()));
        assert!(neg.is_negative());
        assert!(neg.add(&third).contains(&u64_to_bf(0)));
    }

    #[test]
    fn log_of_powers_of_ten() {
        let v = BigNat::from(BigUint::from(10u32).pow(50));
        let l = LogInterval::from_bignat(&v).unwrap();
        assert!(l.lo_f64() <= 50.0 && 50.0 <= l.hi_f64());
        assert!(l.width_f64() < 1e-30);
        let s = l.scientific();
        assert_eq!(s.exponent10, 50);
        assert!(s.mantissa_lo <= 1.0 && 1.0 <= s.mantissa_hi);
    }

    #[test]
    fn scientific_of_binomial() {
        let c = binomial_exact(100, 50).unwrap();
        let l = LogInterval::from_bignat(&c).unwrap();
        let s = l.scientific();
        assert_eq!(s.exponent10, 29);
        assert!(s.mantissa_lo <= 1.0089134454556419 && 1.0089134454556419 <= s.mantissa_hi);
    }

    #[test]
    fn strings_round_trip_outward() {
        let b = parse_bracket("0.1");
        assert!(b.lo_f64() <= 0.1 && 0.1 <= b.hi_f64());
        let l = LogInterval::from_bignat(&BigNat::from(1000u64)).unwrap();
        let js = serde_json::to_value(&l).unwrap();
        let lo: f64 = js["log10_lo"].as_str().unwrap().parse().unwrap();
        let hi: f64 = js["log10_hi"].as_str().unwrap().parse().unwrap();
        assert!(lo <= 3.0 && 3.0 <= hi);
    }

    #[test]
    fn huge_exponents_survive_pow10() {
        let l = LogInterval::new(parse_bf("35664464.27", DOWN), parse_bf("35664464.28", UP));
        let b = l.to_bracket();
        let back = b.log10();
        assert!(back.encloses(&l) || back.overlaps(&l));
        assert!(back.lo_f64() > 35664464.26 && back.hi_f64() < 35664464.29);
    }
}
