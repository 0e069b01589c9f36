//! Operators in `D[s]`, the module `O[1/f, s] f^s`, and the b-function oracle.

pub mod fpower;
pub mod operator;
pub mod oracle;

pub use fpower::FPowerElement;
pub use operator::{OpKey, WeylOperator};
pub use oracle::{solve_bfunction, verify_witness, BSolution, Bounds, OracleCache};

use crate::algebra::BFunction;
use crate::error::{Error, Result};

/// Removes the forced factor `s + 1`.
pub fn reduced_bfunction(b: &BFunction) -> Result<BFunction> {
    b.without_root(&crate::algebra::Rational::integer(-1))
        .ok_or(Error::MissingRootMinusOne)
}
