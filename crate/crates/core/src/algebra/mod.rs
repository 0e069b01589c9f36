//! Exact arithmetic: rationals, polynomials, root factoring and linear solving.

pub mod bfunction;
pub mod linsolve;
pub mod mpoly;
pub mod parse;
pub mod rational;
pub mod upoly;

pub use bfunction::{factor_rational_roots, BFunction};
pub use linsolve::{solve_linear_exact, AffineSolution, Echelon, SparseRow};
pub use mpoly::{default_var_names, MPoly, Monomial};
pub use parse::parse_polynomial;
pub use rational::{q, Rational};
pub use upoly::UPoly;
