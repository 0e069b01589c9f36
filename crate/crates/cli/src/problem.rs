//! Problem descriptions as read from JSON.

use serde::{Deserialize, Serialize};

use bsroots::algebra::{parse_polynomial, MPoly, Rational};
use bsroots::resolution::ResolutionData;

/// `{"command": ..., "payload": {...}}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "command", content = "payload", rename_all = "kebab-case")]
pub enum ProblemSpec {
    SolveB(SolveB),
    SncBound(SncBound),
    Candidates(Candidates),
    Lct(Lct),
    Membership(Membership),
    Jumps(Jumps),
    BudurSaito(BudurSaito),
    MinExponent(MinExponent),
    NewtonResolve(NewtonResolve),
}

impl ProblemSpec {
    pub fn command(&self) -> &'static str {
        match self {
            ProblemSpec::SolveB(_) => "solve-b",
            ProblemSpec::SncBound(_) => "snc-bound",
            ProblemSpec::Candidates(_) => "candidates",
            ProblemSpec::Lct(_) => "lct",
            ProblemSpec::Membership(_) => "membership",
            ProblemSpec::Jumps(_) => "jumps",
            ProblemSpec::BudurSaito(_) => "budur-saito",
            ProblemSpec::MinExponent(_) => "min-exponent",
            ProblemSpec::NewtonResolve(_) => "newton-resolve",
        }
    }
}

/// A polynomial written in the infix grammar (`"x^2+y^3"`) or as a term
/// list `[["coeff", [e1, e2, ...]], ...]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PolyInput {
    Infix(String),
    Terms(Vec<(String, Vec<u32>)>),
}

impl PolyInput {
    pub fn to_poly(&self, nvars: usize) -> bsroots::Result<MPoly> {
        match self {
            PolyInput::Infix(s) => parse_polynomial(s, nvars),
            PolyInput::Terms(t) => MPoly::from_term_list(nvars, t),
        }
    }
}

fn one() -> PolyInput {
    PolyInput::Infix("1".into())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolveB {
    pub vars: usize,
    pub f: PolyInput,
    #[serde(default = "one")]
    pub g: PolyInput,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bounds: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SncVariant {
    #[default]
    General,
    Unshifted,
    SmoothFactor,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SncBound {
    pub a: Vec<u32>,
    pub b: Vec<u32>,
    #[serde(default)]
    pub m: u32,
    #[serde(default)]
    pub variant: SncVariant,
    /// Also compute `b_{g f^s}` and test divisibility (needs `m = 0`).
    #[serde(default)]
    pub verify: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bounds: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Candidates {
    pub resolution: ResolutionData,
    #[serde(default)]
    pub m: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ell_max: Option<u32>,
    #[serde(default)]
    pub exceptional_only: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Lct {
    pub resolution: ResolutionData,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Membership {
    pub resolution: ResolutionData,
    pub lambda: Rational,
}

/// Exact jumping numbers from `a`, or candidates from `resolution`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Jumps {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub resolution: Option<ResolutionData>,
    pub t: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BudurSaito {
    pub a: Vec<u32>,
    pub alpha: Rational,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cap: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bounds: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MinExponent {
    pub vars: usize,
    pub f: PolyInput,
    /// Resolution table for the lower bound; for two variables it is
    /// derived from the Newton polygon when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub resolution: Option<ResolutionData>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bounds: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NewtonResolve {
    pub f: PolyInput,
    #[serde(default)]
    pub g: [u32; 2],
}
