//! Scalar abstraction shared by the bound formulas.
//!
//! Every closed-form quantity in [`crate::bounds`] is written once against
//! [`Scalar`] and instantiated with [`crate::Rational`] for exact evaluation
//! or with `f64`/`f32` for quick floating-point sweeps.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, ToPrimitive, Zero};
use serde::ser::{SerializeStruct, Serializer};
use std::fmt::Debug;

pub trait Scalar: Clone + Debug + PartialOrd + Num + FromPrimitive {
    /// Lossless for exact types, nearest-rounded for floats.
    fn from_biguint(v: &BigUint) -> Self;

    fn to_f64_lossy(&self) -> f64;

    /// Exact textual form (`p/q` for rationals).
    fn exact_string(&self) -> String;

    fn from_u64(v: u64) -> Self {
        <Self as FromPrimitive>::from_u64(v).expect("u64 is representable")
    }

    fn ratio(num: &BigUint, den: &BigUint) -> Self {
        Self::from_biguint(num) / Self::from_biguint(den)
    }

    /// `num / den`, defined as zero when the denominator vanishes.
    fn div_or_zero(num: Self, den: Self) -> Self {
        if den.is_zero() {
            Self::zero()
        } else {
            num / den
        }
    }
}

impl Scalar for f64 {
    fn from_biguint(v: &BigUint) -> Self {
        v.to_f64().unwrap_or(f64::INFINITY)
    }

    fn to_f64_lossy(&self) -> f64 {
        *self
    }

    fn exact_string(&self) -> String {
        format!("{self:e}")
    }

    fn ratio(num: &BigUint, den: &BigUint) -> Self {
        // keeps quotients of huge integers finite
        BigRational::new(BigInt::from(num.clone()), BigInt::from(den.clone()))
            .to_f64()
            .unwrap_or(f64::NAN)
    }
}

impl Scalar for f32 {
    fn from_biguint(v: &BigUint) -> Self {
        v.to_f32().unwrap_or(f32::INFINITY)
    }

    fn to_f64_lossy(&self) -> f64 {
        f64::from(*self)
    }

    fn exact_string(&self) -> String {
        format!("{self:e}")
    }

    fn ratio(num: &BigUint, den: &BigUint) -> Self {
        <f64 as Scalar>::ratio(num, den) as f32
    }
}

impl Scalar for BigRational {
    fn from_biguint(v: &BigUint) -> Self {
        BigRational::from_integer(BigInt::from(v.clone()))
    }

    fn to_f64_lossy(&self) -> f64 {
        rational_to_f64(self)
    }

    fn exact_string(&self) -> String {
        self.to_string()
    }
}

/// `min(a, b, c)` under `PartialOrd`; the first argument wins ties.
pub fn min3<T: Scalar>(a: T, b: T, c: T) -> T {
    let ab = if b < a { b } else { a };
    if c < ab {
        c
    } else {
        ab
    }
}

pub fn max<T: Scalar>(a: T, b: T) -> T {
    if b > a {
        b
    } else {
        a
    }
}

/// Nearest f64 of a big rational, robust to numerators and denominators
/// well beyond the f64 exponent range.
pub fn rational_to_f64(r: &BigRational) -> f64 {
    if let Some(v) = r.to_f64() {
        if v.is_finite() {
            return v;
        }
    }
    let (num, den) = (r.numer(), r.denom());
    if num.is_zero() {
        return 0.0;
    }
    let shift = num.bits() as i64 - den.bits() as i64;
    let scaled = if shift > 0 {
        BigRational::new(num.clone(), den.clone() << (shift as usize))
    } else {
        BigRational::new(num.clone() << ((-shift) as usize), den.clone())
    };
    scaled.to_f64().unwrap_or(f64::NAN) * 2f64.powi(shift as i32)
}

/// Serializes a scalar as `{"exact": ..., "approx": ...}`.
pub fn serialize_scalar<T: Scalar, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    let mut st = s.serialize_struct("Scalar", 2)?;
    st.serialize_field("exact", &v.exact_string())?;
    st.serialize_field("approx", &v.to_f64_lossy())?;
    st.end()
}
