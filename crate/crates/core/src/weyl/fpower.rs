//! Elements `(h(x, s) / f^d) · f^s` of the module `O[1/f, s] f^s`.

use std::fmt;

use serde::Serialize;

use crate::algebra::{default_var_names, MPoly, UPoly};
use crate::error::{Error, Result};

/// `(numerator / f^denom_exp) · f^s`, with `numerator` a polynomial in
/// `x_1..x_n, s` (the last variable is `s`).
#[derive(Clone, Serialize)]
pub struct FPowerElement {
    base: MPoly,
    numerator: MPoly,
    denom_exp: u32,
}

impl FPowerElement {
    /// Builds and normalizes. `numerator` must have `base.nvars() + 1` variables.
    pub fn new(base: MPoly, numerator: MPoly, denom_exp: u32) -> Result<Self> {
        if numerator.nvars() != base.nvars() + 1 {
            return Err(Error::VariableMismatch {
                expected: base.nvars() + 1,
                found: numerator.nvars(),
            });
        }
        let mut u = FPowerElement {
            base,
            numerator,
            denom_exp,
        };
        u.normalize();
        Ok(u)
    }

    /// `h · f^s` for a polynomial `h` in `x` only.
    pub fn from_poly(base: &MPoly, h: &MPoly) -> Result<Self> {
        if h.nvars() != base.nvars() {
            return Err(Error::VariableMismatch {
                expected: base.nvars(),
                found: h.nvars(),
            });
        }
        FPowerElement::new(base.clone(), h.extend_vars(1), 0)
    }

    #[cfg(test)]
    pub(crate) fn raw(base: MPoly, numerator: MPoly, denom_exp: u32) -> Self {
        debug_assert_eq!(numerator.nvars(), base.nvars() + 1);
        FPowerElement {
            base,
            numerator,
            denom_exp,
        }
    }

    pub fn base(&self) -> &MPoly {
        &self.base
    }

    pub fn numerator(&self) -> &MPoly {
        &self.numerator
    }

    pub fn denom_exp(&self) -> u32 {
        self.denom_exp
    }

    pub fn nvars(&self) -> usize {
        self.base.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    /// Cancels powers of `f` from the numerator while they divide it.
    pub fn normalize(&mut self) {
        if self.numerator.is_zero() {
            self.denom_exp = 0;
            return;
        }
        if self.base.is_constant() {
            return;
        }
        let f = self.base.extend_vars(1);
        while self.denom_exp > 0 {
            match self.numerator.div_exact(&f) {
                Some(q) => {
                    self.numerator = q;
                    self.denom_exp -= 1;
                }
                None => break,
            }
        }
    }

    /// `∂/∂x_i`, using `∂_i (h f^{s-d}) = (∂_i h · f + (s - d) h ∂_i f) f^{s-d-1}`.
    /// The denominator exponent always grows by one; no normalization.
    pub(crate) fn derivative_raw(
        &self,
        i: usize,
        base_ext: &MPoly,
        dbase_ext: &MPoly,
        s_minus_d: &MPoly,
    ) -> Self {
        let h = &self.numerator;
        let first = &h.derivative(i) * base_ext;
        let second = &(h * dbase_ext) * s_minus_d;
        FPowerElement {
            base: self.base.clone(),
            numerator: &first + &second,
            denom_exp: self.denom_exp + 1,
        }
    }

    pub fn derivative(&self, i: usize) -> Self {
        let n = self.nvars();
        let base_ext = self.base.extend_vars(1);
        let dbase_ext = self.base.derivative(i).extend_vars(1);
        let s_minus_d = s_minus(n, self.denom_exp);
        let mut out = self.derivative_raw(i, &base_ext, &dbase_ext, &s_minus_d);
        out.normalize();
        out
    }

    /// Numerator rewritten over the denominator `f^target` (`target >= denom_exp`).
    pub(crate) fn numerator_over(&self, target: u32) -> MPoly {
        debug_assert!(target >= self.denom_exp);
        &self.numerator * &self.base.extend_vars(1).pow(target - self.denom_exp)
    }

    /// Multiplication by a polynomial in `s`.
    pub fn mul_s_poly(&self, b: &UPoly) -> Self {
        let mut out = self.clone();
        out.numerator = &self.numerator * &s_poly(self.nvars(), b);
        out.normalize();
        out
    }

    pub fn add(&self, other: &FPowerElement) -> Result<Self> {
        self.check_base(other)?;
        let d = self.denom_exp.max(other.denom_exp);
        FPowerElement::new(
            self.base.clone(),
            &self.numerator_over(d) + &other.numerator_over(d),
            d,
        )
    }

    fn check_base(&self, other: &FPowerElement) -> Result<()> {
        if self.base.nvars() != other.base.nvars() {
            return Err(Error::VariableMismatch {
                expected: self.base.nvars(),
                found: other.base.nvars(),
            });
        }
        if self.base != other.base {
            return Err(Error::InvalidInput(
                "elements have different bases f".into(),
            ));
        }
        Ok(())
    }
}

/// Equal iff the bases agree and the numerators agree after
/// cross-multiplying by powers of `f`.
impl PartialEq for FPowerElement {
    fn eq(&self, other: &Self) -> bool {
        if self.base != other.base {
            return false;
        }
        let d = self.denom_exp.max(other.denom_exp);
        self.numerator_over(d) == other.numerator_over(d)
    }
}

impl Eq for FPowerElement {}

impl fmt::Debug for FPowerElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut names = default_var_names(self.nvars());
        names.push("s".into());
        write!(
            f,
            "({}) / ({})^{} · f^s",
            self.numerator.display_with(&names),
            self.base,
            self.denom_exp
        )
    }
}

/// `s - d` as a polynomial in `n + 1` variables.
pub(crate) fn s_minus(n: usize, d: u32) -> MPoly {
    let s = MPoly::var(n + 1, n);
    let c = MPoly::constant(n + 1, crate::algebra::Rational::integer(d as i64));
    &s - &c
}

/// A univariate polynomial in `s` embedded in `n + 1` variables.
pub(crate) fn s_poly(n: usize, b: &UPoly) -> MPoly {
    let mut out = MPoly::zero(n + 1);
    for (j, c) in b.coeffs().iter().enumerate() {
        let mut e = vec![0; n + 1];
        e[n] = j as u32;
        out = &out + &MPoly::monomial(&e, c.clone());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_polynomial, Rational};

    #[test]
    fn normalization_strips_factors_of_f() {
        let f = parse_polynomial("x^2+y^3", 2).unwrap();
        let num = (&f * &f).extend_vars(1);
        let u = FPowerElement::new(f.clone(), num, 3).unwrap();
        assert_eq!(u.denom_exp(), 1);
        assert_eq!(u.numerator(), &MPoly::one(3));
    }

    #[test]
    fn equality_cross_multiplies() {
        let f = parse_polynomial("x", 1).unwrap();
        let a = FPowerElement::raw(f.clone(), parse_polynomial("x*y", 2).unwrap(), 2);
        let b = FPowerElement::raw(f.clone(), parse_polynomial("y", 2).unwrap(), 1);
        assert_eq!(a, b);
        let c = FPowerElement::raw(f, parse_polynomial("y+1", 2).unwrap(), 1);
        assert_ne!(a, c);
    }

    #[test]
    fn derivative_of_power_of_x() {
        // ∂_x x^s = s x^{s-1}
        let f = parse_polynomial("x", 1).unwrap();
        let u = FPowerElement::from_poly(&f, &MPoly::one(1)).unwrap();
        let du = u.derivative(0);
        assert_eq!(du.denom_exp(), 1);
        assert_eq!(du.numerator(), &MPoly::var(2, 1));
    }

    #[test]
    fn addition_and_s_multiplication() {
        let f = parse_polynomial("x", 1).unwrap();
        let u = FPowerElement::from_poly(&f, &MPoly::one(1)).unwrap();
        let twice = u.add(&u).unwrap();
        let b = UPoly::new(vec![Rational::integer(2)]);
        assert_eq!(twice, u.mul_s_poly(&b));
    }
}
