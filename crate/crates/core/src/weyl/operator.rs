//! Differential operators `Σ c_{β,j}(x) s^j ∂^β` in `D[s]` on affine space.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use super::fpower::{s_minus, FPowerElement};
use crate::algebra::{MPoly, Rational};
use crate::error::{Error, Result};

/// Key of one operator term: derivative multi-exponent and power of `s`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct OpKey {
    pub deriv: Vec<u32>,
    pub s_power: u32,
}

/// Coefficients are written to the left: `c(x) s^j ∂^β`.
#[derive(Clone, PartialEq, Eq)]
pub struct WeylOperator {
    nvars: usize,
    terms: BTreeMap<OpKey, MPoly>,
}

#[derive(Serialize)]
struct TermView<'a> {
    deriv: &'a [u32],
    s_power: u32,
    coeff: &'a MPoly,
}

impl Serialize for WeylOperator {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.terms.iter().map(|(k, c)| TermView {
            deriv: &k.deriv,
            s_power: k.s_power,
            coeff: c,
        }))
    }
}

impl WeylOperator {
    pub fn zero(nvars: usize) -> Self {
        WeylOperator {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn identity(nvars: usize) -> Self {
        Self::multiplication(&MPoly::one(nvars))
    }

    /// Multiplication by a polynomial.
    pub fn multiplication(c: &MPoly) -> Self {
        let mut p = WeylOperator::zero(c.nvars());
        p.add_term(vec![0; c.nvars()], 0, c.clone());
        p
    }

    /// `∂/∂x_i`.
    pub fn partial(nvars: usize, i: usize) -> Self {
        let mut beta = vec![0; nvars];
        beta[i] = 1;
        let mut p = WeylOperator::zero(nvars);
        p.add_term(beta, 0, MPoly::one(nvars));
        p
    }

    /// Multiplication by `s`.
    pub fn s(nvars: usize) -> Self {
        let mut p = WeylOperator::zero(nvars);
        p.add_term(vec![0; nvars], 1, MPoly::one(nvars));
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&OpKey, &MPoly)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, deriv: Vec<u32>, s_power: u32, coeff: MPoly) {
        assert_eq!(deriv.len(), self.nvars, "derivative exponent length");
        assert_eq!(coeff.nvars(), self.nvars, "coefficient variable count");
        if coeff.is_zero() {
            return;
        }
        let key = OpKey { deriv, s_power };
        let merged = match self.terms.remove(&key) {
            Some(old) => &old + &coeff,
            None => coeff,
        };
        if !merged.is_zero() {
            self.terms.insert(key, merged);
        }
    }

    pub fn order(&self) -> u32 {
        self.terms
            .keys()
            .map(|k| k.deriv.iter().sum())
            .max()
            .unwrap_or(0)
    }

    pub fn s_degree(&self) -> u32 {
        self.terms.keys().map(|k| k.s_power).max().unwrap_or(0)
    }

    pub fn coeff_degree(&self) -> u32 {
        self.terms
            .values()
            .filter_map(MPoly::total_degree)
            .max()
            .unwrap_or(0)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = WeylOperator::zero(self.nvars);
        for (k, v) in &self.terms {
            out.add_term(k.deriv.clone(), k.s_power, v.scale(c));
        }
        out
    }

    pub fn add(&self, other: &WeylOperator) -> Self {
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.add_term(k.deriv.clone(), k.s_power, v.clone());
        }
        out
    }

    /// Product `self · other`, commuting derivatives past coefficients by
    /// the Leibniz rule `∂^β c = Σ_{α ≤ β} C(β, α) (∂^α c) ∂^{β-α}`.
    pub fn compose(&self, other: &WeylOperator) -> Result<Self> {
        if self.nvars != other.nvars {
            return Err(Error::VariableMismatch {
                expected: self.nvars,
                found: other.nvars,
            });
        }
        let mut out = WeylOperator::zero(self.nvars);
        for (k1, c1) in &self.terms {
            for (k2, c2) in &other.terms {
                for alpha in sub_multi_indices(&k1.deriv) {
                    let mut dc = c2.clone();
                    let mut binom = Rational::one();
                    for (i, (&a, &b)) in alpha.iter().zip(&k1.deriv).enumerate() {
                        for _ in 0..a {
                            dc = dc.derivative(i);
                        }
                        binom = binom * Rational::integer(binomial(b, a) as i64);
                    }
                    if dc.is_zero() {
                        continue;
                    }
                    let deriv: Vec<u32> = k1
                        .deriv
                        .iter()
                        .zip(&alpha)
                        .zip(&k2.deriv)
                        .map(|((b, a), g)| b - a + g)
                        .collect();
                    out.add_term(deriv, k1.s_power + k2.s_power, (c1 * &dc).scale(&binom));
                }
            }
        }
        Ok(out)
    }

    /// Left action on `O[1/f, s] f^s`.
    pub fn apply(&self, u: &FPowerElement) -> Result<FPowerElement> {
        if u.nvars() != self.nvars {
            return Err(Error::VariableMismatch {
                expected: self.nvars,
                found: u.nvars(),
            });
        }
        let n = self.nvars;
        let derivs = DerivativeTable::build(u, self.terms.keys().map(|k| k.deriv.as_slice()));
        let top = derivs.max_denom_exp();
        let mut acc = MPoly::zero(n + 1);
        for (k, c) in &self.terms {
            let du = derivs.get(&k.deriv);
            let mut e = vec![0; n + 1];
            e[n] = k.s_power;
            let mult = &c.extend_vars(1) * &MPoly::monomial(&e, Rational::one());
            acc = &acc + &(&mult * &du.numerator_over(top));
        }
        FPowerElement::new(u.base().clone(), acc, top)
    }
}

/// All raw derivatives `∂^β u` needed by an operator, built incrementally.
pub(crate) struct DerivativeTable {
    table: BTreeMap<Vec<u32>, FPowerElement>,
}

impl DerivativeTable {
    pub(crate) fn build<'a>(u: &FPowerElement, wanted: impl Iterator<Item = &'a [u32]>) -> Self {
        let n = u.nvars();
        let base_ext = u.base().extend_vars(1);
        let dbase: Vec<MPoly> = (0..n)
            .map(|i| u.base().derivative(i).extend_vars(1))
            .collect();
        let mut table = BTreeMap::new();
        table.insert(vec![0; n], u.clone());
        for beta in wanted {
            Self::ensure(&mut table, beta, &base_ext, &dbase);
        }
        DerivativeTable { table }
    }

    fn ensure(
        table: &mut BTreeMap<Vec<u32>, FPowerElement>,
        beta: &[u32],
        base_ext: &MPoly,
        dbase: &[MPoly],
    ) {
        if table.contains_key(beta) {
            return;
        }
        let i = beta
            .iter()
            .position(|&b| b > 0)
            .expect("zero index is seeded");
        let mut prev = beta.to_vec();
        prev[i] -= 1;
        Self::ensure(table, &prev, base_ext, dbase);
        let p = &table[&prev];
        let sm = s_minus(p.nvars(), p.denom_exp());
        let next = p.derivative_raw(i, base_ext, &dbase[i], &sm);
        table.insert(beta.to_vec(), next);
    }

    pub(crate) fn get(&self, beta: &[u32]) -> &FPowerElement {
        &self.table[beta]
    }

    pub(crate) fn max_denom_exp(&self) -> u32 {
        self.table
            .values()
            .map(FPowerElement::denom_exp)
            .max()
            .unwrap_or(0)
    }
}

fn sub_multi_indices(beta: &[u32]) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for &b in beta {
        let mut next = Vec::new();
        for prefix in &out {
            for a in 0..=b {
                let mut p = prefix.clone();
                p.push(a);
                next.push(p);
            }
        }
        out = next;
    }
    out
}

fn binomial(n: u32, k: u32) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

impl fmt::Display for WeylOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let names = crate::algebra::default_var_names(self.nvars);
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, c)| {
                let mut factors = vec![format!("({c})")];
                if k.s_power == 1 {
                    factors.push("s".into());
                } else if k.s_power > 1 {
                    factors.push(format!("s^{}", k.s_power));
                }
                for (i, &b) in k.deriv.iter().enumerate() {
                    match b {
                        0 => {}
                        1 => factors.push(format!("d{}", names[i])),
                        _ => factors.push(format!("d{}^{}", names[i], b)),
                    }
                }
                factors.join("*")
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

impl fmt::Debug for WeylOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WeylOperator({self})")
    }
}
