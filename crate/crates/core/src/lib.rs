//! Punctured Lenstra codes over quadratic fields, rate-function bounds
//! (Gilbert–Varshamov, Plotkin, number-field codes) and rigorous finite-q
//! certificates for the parameter schedules that make the number-field bound
//! beat Gilbert–Varshamov at δ = 1/2.
//!
//! Most capabilities have a runnable example under `examples/`.

pub mod bounds;
pub mod cli;
pub mod error;
pub mod highreal;
pub mod numtheory;
pub mod lenstra;
pub mod quadfield;

pub use error::{Error, Result};
pub use highreal::{Certified, HighReal};

/// Arbitrary-precision signed integer.
pub type BigInt = rug::Integer;
