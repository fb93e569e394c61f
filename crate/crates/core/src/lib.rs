//! Certified enclosures for Stirling numbers of both kinds and for rook and
//! file numbers of Ferrers boards, with exact oracles, reference asymptotics
//! and a seeded simulator of the underlying rook-placement model.

pub mod asymptotics;
pub mod bounds;
pub mod error;
pub mod exact;
pub mod interval;
pub mod scalar;
pub mod sim;

pub use error::{Error, Result};
pub use exact::{BigNat, FerrersBoard, StirlingKind};
pub use interval::LogInterval;
pub use scalar::Scalar;

/// Exact rational scalar.
pub type Rational = num_rational::BigRational;

pub type Theorem4Exact = bounds::Theorem4Terms<Rational>;
pub type Theorem4Float = bounds::Theorem4Terms<f64>;
pub type Theorem5Exact = bounds::Theorem5Terms<Rational>;
pub type Theorem5Float = bounds::Theorem5Terms<f64>;
pub type Theorem6Exact = bounds::Theorem6Terms<Rational>;
pub type Theorem6Float = bounds::Theorem6Terms<f64>;
