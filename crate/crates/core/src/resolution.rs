//! Log-resolution tables and the root bounds they produce.
//!
//! A [`ResolutionData`] is the combinatorial shadow of a strong log
//! resolution `π: Y → X` of `f`: for each prime divisor `E_i` on `Y` it
//! records the multiplicity `a_i` of `π^*(f)`, the discrepancy `k_i` in
//! `K_{Y/X}`, the order `b_i` of `g` along `E_i`, and whether `E_i` is
//! exceptional. No geometry is stored or checked; callers vouch for the
//! table.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::Rational;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DivisorRecord {
    pub label: String,
    /// Multiplicity of the divisor in `π^*(f)`.
    pub a: u32,
    /// Coefficient in the relative canonical divisor.
    pub k: u32,
    /// Order of vanishing of `g`.
    #[serde(default)]
    pub b: u32,
    pub exceptional: bool,
}

impl DivisorRecord {
    pub fn new(label: impl Into<String>, a: u32, k: u32, b: u32, exceptional: bool) -> Self {
        DivisorRecord {
            label: label.into(),
            a,
            k,
            b,
            exceptional,
        }
    }

    /// `(k + 1 + b) / a`, or `None` for `a = 0` (read as +∞).
    pub fn twisted_quotient(&self) -> Option<Rational> {
        (self.a > 0).then(|| Rational::new((self.k + 1 + self.b) as i64, self.a as i64))
    }

    /// `(k + 1) / a`, or `None` for `a = 0`.
    pub fn quotient(&self) -> Option<Rational> {
        (self.a > 0).then(|| Rational::new((self.k + 1) as i64, self.a as i64))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ResolutionData {
    pub divisors: Vec<DivisorRecord>,
    #[serde(default)]
    pub reduced: bool,
    #[serde(default)]
    pub strict_transform_smooth: bool,
}

/// A lower bound that may be vacuous (minimum over an empty set).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "lowercase")]
pub enum MinExponentBound {
    Finite(Rational),
    Unbounded,
}

impl fmt::Display for MinExponentBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MinExponentBound::Finite(r) => write!(f, "{r}"),
            MinExponentBound::Unbounded => f.write_str("unbounded"),
        }
    }
}

/// A finite slice of an infinite candidate-root family. When
/// `integer_escape` is set, negative integers are admissible as well.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CandidateSet {
    pub values: BTreeSet<Rational>,
    pub integer_escape: bool,
}

impl CandidateSet {
    pub fn admits(&self, root: &Rational) -> bool {
        self.values.contains(root)
            || (self.integer_escape && root.is_integer() && root.is_negative())
    }
}

impl ResolutionData {
    pub fn new(divisors: Vec<DivisorRecord>, reduced: bool, strict_transform_smooth: bool) -> Self {
        ResolutionData {
            divisors,
            reduced,
            strict_transform_smooth,
        }
    }

    /// The identity resolution of `f = ∏ x_i^{a_i}` with `g = ∏ x_i^{b_i}`:
    /// one non-exceptional record per coordinate hyperplane on which `f`
    /// or `g` vanishes. The divisor of `f` is smooth only when it has at
    /// most one component.
    pub fn from_monomial(a: &[u32], b: &[u32]) -> Result<Self> {
        if a.len() != b.len() {
            return Err(Error::VariableMismatch {
                expected: a.len(),
                found: b.len(),
            });
        }
        let divisors: Vec<DivisorRecord> = a
            .iter()
            .zip(b)
            .enumerate()
            .filter(|(_, (&ai, &bi))| ai > 0 || bi > 0)
            .map(|(i, (&ai, &bi))| DivisorRecord::new(format!("x{}", i + 1), ai, 0, bi, false))
            .collect();
        let reduced = a.iter().all(|&ai| ai <= 1);
        let smooth = a.iter().filter(|&&ai| ai > 0).count() <= 1;
        Ok(ResolutionData::new(divisors, reduced, smooth))
    }

    /// Checks the structural invariants: at least one record, and some
    /// record on which `f` vanishes.
    pub fn validate(&self) -> Result<()> {
        if self.divisors.is_empty() {
            return Err(Error::InvalidInput("resolution has no divisors".into()));
        }
        if self.divisors.iter().all(|d| d.a == 0) {
            return Err(Error::PreconditionViolated(
                "every record has a = 0 (f is invertible)".into(),
            ));
        }
        Ok(())
    }

    /// Same table with the `b` column replaced (one entry per record).
    pub fn with_g_orders(&self, b: &[u32]) -> Result<Self> {
        if b.len() != self.divisors.len() {
            return Err(Error::VariableMismatch {
                expected: self.divisors.len(),
                found: b.len(),
            });
        }
        let mut out = self.clone();
        for (d, &bi) in out.divisors.iter_mut().zip(b) {
            d.b = bi;
        }
        Ok(out)
    }

    fn require_hypotheses(&self, what: &str) -> Result<()> {
        if !self.reduced || !self.strict_transform_smooth {
            return Err(Error::HypothesisViolated(format!(
                "{what} needs a reduced divisor with smooth strict transform \
                 (reduced = {}, strict_transform_smooth = {})",
                self.reduced, self.strict_transform_smooth
            )));
        }
        Ok(())
    }

    /// `min_i (k_i + 1 + b_i) / a_i` over records with `a_i > 0`.
    pub fn min_twisted_quotient(&self) -> Result<Rational> {
        self.validate()?;
        Ok(self
            .divisors
            .iter()
            .filter_map(DivisorRecord::twisted_quotient)
            .min()
            .expect("validated: some a > 0"))
    }
}

/// Candidate roots `-(k_i + 1 + ℓ)/a_i` of `b_f` for `0 <= ℓ <= ell_max`.
pub fn candidate_roots(res: &ResolutionData, ell_max: u32) -> Result<BTreeSet<Rational>> {
    res.validate()?;
    Ok(family(res.divisors.iter(), 0, false, ell_max))
}

/// Upper bound `-min{1, -m + min_i (k_i + 1 + b_i)/a_i}` on the roots of
/// `b_{g ∂_t^m f^s}`. Reported as is; for large `m` it is positive.
pub fn root_upper_bound(res: &ResolutionData, m: u32) -> Result<Rational> {
    let inner = res.min_twisted_quotient()? - Rational::integer(m as i64);
    Ok(-std::cmp::min(Rational::one(), inner))
}

/// Upper bound `-min_i (k_i + 1 + b_i)/a_i = -lct_g(f)` on the roots of `b_{g f^s}`.
pub fn twisted_root_bound(res: &ResolutionData) -> Result<Rational> {
    Ok(-res.min_twisted_quotient()?)
}

/// Candidates `m - (k_i + 1 + ℓ)/a_i` for the roots of `b_{∂_t^m f^s}`
/// (negative integers always admissible). With `exceptional_only` the
/// family runs over exceptional divisors only, which requires a reduced
/// divisor with smooth strict transform.
pub fn shifted_candidates(
    res: &ResolutionData,
    m: u32,
    ell_max: u32,
    exceptional_only: bool,
) -> Result<CandidateSet> {
    res.validate()?;
    if exceptional_only {
        res.require_hypotheses("restricting to exceptional divisors")?;
    }
    let records = res
        .divisors
        .iter()
        .filter(|d| d.exceptional || !exceptional_only);
    Ok(CandidateSet {
        values: family(records, m, false, ell_max),
        integer_escape: true,
    })
}

/// Candidates `m - (k_i + 1 + b_i + ℓ)/a_i` for the roots of
/// `b_{g ∂_t^m f^s}`, valid when `g` is compatible with the resolution.
/// For `m = 0` negative integers are not separately admissible.
pub fn twisted_shifted_candidates(
    res: &ResolutionData,
    m: u32,
    ell_max: u32,
) -> Result<CandidateSet> {
    res.validate()?;
    Ok(CandidateSet {
        values: family(res.divisors.iter(), m, true, ell_max),
        integer_escape: m != 0,
    })
}

/// `min over exceptional E_i with a_i > 0 of (k_i + 1)/a_i`, a lower bound
/// for the minimal exponent.
pub fn min_exponent_lower_bound(res: &ResolutionData) -> Result<MinExponentBound> {
    res.require_hypotheses("the minimal exponent bound")?;
    Ok(res
        .divisors
        .iter()
        .filter(|d| d.exceptional)
        .filter_map(DivisorRecord::quotient)
        .min()
        .map_or(MinExponentBound::Unbounded, MinExponentBound::Finite))
}

/// Record index and `ℓ >= 0` with `root = m - (k_i + 1 + [b_i] + ℓ)/a_i`,
/// solving for `ℓ` exactly instead of enumerating.
pub fn candidate_witness(
    res: &ResolutionData,
    root: &Rational,
    m: u32,
    with_b: bool,
    exceptional_only: bool,
) -> Option<(usize, u32)> {
    res.divisors.iter().enumerate().find_map(|(i, d)| {
        if d.a == 0 || (exceptional_only && !d.exceptional) {
            return None;
        }
        let b = if with_b { d.b } else { 0 };
        let ell = (Rational::integer(m as i64) - root) * Rational::integer(d.a as i64)
            - Rational::integer((d.k + 1 + b) as i64);
        if ell.is_integer() && !ell.is_negative() {
            ell.to_i64().map(|l| (i, l as u32))
        } else {
            None
        }
    })
}

fn family<'a>(
    records: impl Iterator<Item = &'a DivisorRecord>,
    m: u32,
    with_b: bool,
    ell_max: u32,
) -> BTreeSet<Rational> {
    let m = Rational::integer(m as i64);
    let mut out = BTreeSet::new();
    for d in records.filter(|d| d.a > 0) {
        let b = if with_b { d.b } else { 0 };
        for ell in 0..=ell_max {
            out.insert(&m - &Rational::new((d.k + 1 + b + ell) as i64, d.a as i64));
        }
    }
    out
}
