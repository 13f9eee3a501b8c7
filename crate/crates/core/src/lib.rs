//! Exact arithmetic for framing operators on formal power series over Q
//! and cyclotomic fields, with p-adic valuation certificates for
//! supercongruence checks.

pub mod arith;
pub mod bell;
pub mod checks;
pub mod cyclo;
pub mod error;
pub mod framing;
pub mod intpoly;
pub mod local;
pub mod rational;
pub mod scalar;
pub mod series;

pub use cyclo::CycloElem;
pub use error::{Error, Result};
pub use rational::Rational;
pub use scalar::CoeffField;

/// Power series over Q.
pub type QSeries = series::Series<Rational>;
/// Power series over a cyclotomic field.
pub type CycloSeries = series::Series<CycloElem>;
