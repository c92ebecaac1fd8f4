//! q-exponents of weight-0 generalized modular functions whose logarithmic
//! derivative is a weight-2 Hecke eigenform, plus the sign, density,
//! integrality and first-sign-change experiments built on them.
//!
//! Exact arithmetic is generic over the scalar type where it can be; the
//! aliases below name the instantiations the rest of the crate uses.

pub mod analysis;
pub mod arith;
pub mod cli;
pub mod eigen;
pub mod error;
pub mod exponents;
pub mod series;

pub use error::{Error, Result};

/// Exact rational series; every q-expansion the crate hands out is one of these.
pub type RationalSeries = series::PowerSeries<num_rational::BigRational>;
/// Integer series, as produced by eta products.
pub type IntegerSeries = series::PowerSeries<num_bigint::BigInt>;
/// Double-precision series for quick numerical experiments.
pub type FloatSeries = series::PowerSeries<f64>;
