//! Closed-form b-function bounds for monomials in simple normal crossing
//! form, and the bound for `g ∂_t^m f^s` obtained from `b_{g f^s}`.
//!
//! Each bound is returned as an explicit root multiset; "the b-function
//! divides the bound" is then [`BFunction::divides`].

use serde::{Deserialize, Serialize};

use crate::algebra::{BFunction, MPoly, Rational};
use crate::error::{Error, Result};
use crate::weyl::reduced_bfunction;

/// `f = ∏ x_i^{a_i}`, `g = ∏ x_i^{b_i}` and the `∂_t` power `m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MonomialData {
    pub a: Vec<u32>,
    pub b: Vec<u32>,
    #[serde(default)]
    pub m: u32,
}

impl MonomialData {
    pub fn new(a: Vec<u32>, b: Vec<u32>, m: u32) -> Result<Self> {
        let d = MonomialData { a, b, m };
        d.validate()?;
        Ok(d)
    }

    pub fn validate(&self) -> Result<()> {
        if self.a.len() != self.b.len() {
            return Err(Error::VariableMismatch {
                expected: self.a.len(),
                found: self.b.len(),
            });
        }
        if self.a.is_empty() {
            return Err(Error::InvalidInput(
                "at least one variable is required".into(),
            ));
        }
        Ok(())
    }

    pub fn nvars(&self) -> usize {
        self.a.len()
    }

    /// `(f, g)` as polynomials.
    pub fn polynomials(&self) -> (MPoly, MPoly) {
        (
            MPoly::monomial(&self.a, Rational::one()),
            MPoly::monomial(&self.b, Rational::one()),
        )
    }

    /// Whether `g / f` is a polynomial.
    pub fn g_over_f_regular(&self) -> bool {
        self.a.iter().zip(&self.b).all(|(a, b)| a <= b)
    }

    /// Roots `m - (b_i + j)/a_i` for `1 <= j <= a_i`, over the variables `from..`.
    fn product_roots(&self, from: usize) -> impl Iterator<Item = Rational> + '_ {
        let m = Rational::integer(self.m as i64);
        self.a
            .iter()
            .zip(&self.b)
            .skip(from)
            .flat_map(move |(&a, &b)| {
                let m = m.clone();
                (1..=a).map(move |j| &m - &Rational::new((b + j) as i64, a as i64))
            })
    }
}

/// `(s+1) · ∏_i ∏_{j=1}^{a_i} (s - m + (b_i+j)/a_i)`; variables with
/// `a_i = 0` contribute nothing.
pub fn monomial_bound(d: &MonomialData) -> Result<BFunction> {
    d.validate()?;
    let mut out = BFunction::from_roots(d.product_roots(0));
    out.push_root(Rational::integer(-1), 1);
    Ok(out)
}

/// For `m = 0`: `∏_i ∏_{j=1}^{a_i} (s + (b_i+j)/a_i)`.
pub fn monomial_bound_unshifted(d: &MonomialData) -> Result<BFunction> {
    d.validate()?;
    if d.m != 0 {
        return Err(Error::NonzeroShift(d.m));
    }
    Ok(BFunction::from_roots(d.product_roots(0)))
}

/// When the first variable appears in `f` to the first power and not in
/// `g`: `(s+1) · ∏_{i>=2} ∏_{j=1}^{a_i} (s - m + (b_i+j)/a_i)`.
pub fn monomial_bound_smooth_factor(d: &MonomialData) -> Result<BFunction> {
    d.validate()?;
    if d.a[0] != 1 || d.b[0] != 0 {
        return Err(Error::PreconditionViolated(format!(
            "need a_1 = 1 and b_1 = 0, got a_1 = {}, b_1 = {}",
            d.a[0], d.b[0]
        )));
    }
    let mut out = BFunction::from_roots(d.product_roots(1));
    out.push_root(Rational::integer(-1), 1);
    Ok(out)
}

/// `(s+1) · b̃(s - m)` where `b̃ = b_{g f^s} / (s+1)`; the b-function of
/// `g ∂_t^m f^s` divides it.
pub fn shift_bound(b_gfs: &BFunction, m: u32) -> Result<BFunction> {
    let reduced = reduced_bfunction(b_gfs)?;
    let mut out = reduced.shifted(&Rational::integer(m as i64));
    out.push_root(Rational::integer(-1), 1);
    Ok(out)
}
