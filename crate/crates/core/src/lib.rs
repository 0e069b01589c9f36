//! Exact computation of Bernstein–Sato polynomials of twisted powers `g f^s`,
//! closed-form root bounds from monomial and log-resolution data, and the
//! multiplier-ideal, V-filtration and minimal-exponent checks built on them.
//!
//! Everything is computed over ℚ; there is no floating point anywhere.

pub mod algebra;
pub mod error;
pub mod multiplier;
pub mod newton;
pub mod resolution;
pub mod snc;
pub mod weyl;

pub use error::{Error, Result};
