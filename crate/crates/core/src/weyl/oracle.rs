//! Brute-force b-function oracle.
//!
//! For `u = g f^s` we look for a monic `b` and an operator
//! `P = Σ c_{β,j}(x) s^j ∂^β` with `b(s) g f^s = P · (g f f^s)`. Writing
//! `∂^β (g f f^s) = h_β f^{s-|β|}` and clearing the denominator `f^D`
//! (`D` the largest order used) turns this into the polynomial identity
//!
//! ```text
//! b(s) g f^D = Σ c_{β,j}(x) s^j h_β f^{D-|β|}
//! ```
//!
//! which is linear in the unknown coefficients of `b` and of the `c_{β,j}`.
//! All unknowns go into one homogeneous system with the `b` columns last;
//! after elimination the rows whose pivot lies among the `b` columns cut
//! out exactly the attainable `b`s, and the first free `b` column is the
//! minimal degree.
//!
//! When `f` and `g` are homogeneous for some weight vector `w`, every
//! solution can be replaced by its weight `-deg_w(f)` component, which
//! lives within the same bounds. Only coefficient monomials `x^γ ∂^β`
//! with `⟨w, γ - β⟩ = -deg_w(f)` are then generated.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use super::fpower::{s_poly, FPowerElement};
use super::operator::{DerivativeTable, WeylOperator};
use crate::algebra::linsolve::{Echelon, SparseRow};
use crate::algebra::{
    factor_rational_roots, solve_linear_exact, BFunction, MPoly, Monomial, Rational, UPoly,
};
use crate::error::{Error, Result};

/// Search bounds for the ansatz.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Bounds {
    /// Maximal order `|β|` of the operator.
    pub order: u32,
    /// Maximal total degree of the coefficients `c_{β,j}`.
    pub coeff_degree: u32,
    /// Maximal power of `s` in the operator.
    pub s_degree: u32,
    /// Maximal degree of `b`.
    pub b_degree: u32,
}

impl Bounds {
    pub const fn new(order: u32, coeff_degree: u32, s_degree: u32, b_degree: u32) -> Self {
        Bounds {
            order,
            coeff_degree,
            s_degree,
            b_degree,
        }
    }
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds::new(4, 6, 3, 8)
    }
}

impl fmt::Display for Bounds {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{},{},{},{}",
            self.order, self.coeff_degree, self.s_degree, self.b_degree
        )
    }
}

/// Parses `"ord,deg,sdeg,bdeg"`.
impl FromStr for Bounds {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        let nums: Vec<u32> = parts
            .iter()
            .map(|p| p.parse::<u32>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| {
                Error::Parse(format!("bounds `{s}` must be four non-negative integers"))
            })?;
        match nums.as_slice() {
            [o, d, sd, bd] => Ok(Bounds::new(*o, *d, *sd, *bd)),
            _ => Err(Error::Parse(format!(
                "bounds `{s}` must have the form ord,deg,sdeg,bdeg"
            ))),
        }
    }
}

/// A b-function together with an operator certifying it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BSolution {
    pub b: BFunction,
    pub witness: WeylOperator,
    pub bounds: Bounds,
}

/// Minimal monic `b` (within `bounds`) with `b(s) g f^s ∈ D[s] · f g f^s`.
///
/// The returned witness is re-applied to `g f f^s` and compared with
/// `b(s) g f^s` before returning.
pub fn solve_bfunction(f: &MPoly, g: &MPoly, bounds: Bounds) -> Result<BSolution> {
    if f.nvars() != g.nvars() {
        return Err(Error::VariableMismatch {
            expected: f.nvars(),
            found: g.nvars(),
        });
    }
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let n = f.nvars();
    let gf = g * f;
    let u = FPowerElement::from_poly(f, &gf)?;

    if f.is_constant() {
        // g f^s = (1/f) · (g f f^s), so b = 1.
        let witness = WeylOperator::multiplication(&MPoly::constant(n, f.constant_term().recip()));
        let solution = BSolution {
            b: BFunction::one(),
            witness,
            bounds,
        };
        verify(&solution, f, g, &u)?;
        return Ok(solution);
    }

    let grading = Grading::new(f, g)?;
    let columns = ansatz_columns(n, bounds, &grading);
    let Some(top) = columns.iter().map(|c| c.beta.iter().sum::<u32>()).max() else {
        return Err(Error::BoundsExhausted(bounds));
    };

    let mut betas: Vec<Vec<u32>> = columns.iter().map(|c| c.beta.clone()).collect();
    betas.dedup();
    let derivs = DerivativeTable::build(&u, betas.iter().map(Vec::as_slice));
    let f_ext = f.extend_vars(1);
    let f_pows: Vec<MPoly> = {
        let mut v = vec![MPoly::one(n + 1)];
        for _ in 0..top {
            let next = v.last().unwrap() * &f_ext;
            v.push(next);
        }
        v
    };
    // h_β f^{D-|β|} per distinct β
    let mut scaled: BTreeMap<Vec<u32>, MPoly> = BTreeMap::new();
    for beta in &betas {
        let du = derivs.get(beta);
        let k = du.denom_exp();
        scaled.insert(beta.clone(), du.numerator() * &f_pows[(top - k) as usize]);
    }

    let nc = columns.len();
    let nb = bounds.b_degree as usize + 1;
    let mut rows: BTreeMap<Monomial, SparseRow> = BTreeMap::new();
    for (col, c) in columns.iter().enumerate() {
        let mut e = c.gamma.clone();
        e.push(c.s_power);
        let poly = scaled[&c.beta].mul_monomial(&Monomial::new(e), &Rational::one());
        for (m, v) in poly.terms() {
            rows.entry(m.clone()).or_default().push((col, v.clone()));
        }
    }
    let rhs = &g.extend_vars(1) * &f_pows[top as usize];
    for i in 0..nb {
        let mut e = vec![0; n + 1];
        e[n] = i as u32;
        let poly = rhs.mul_monomial(&Monomial::new(e), &Rational::integer(-1));
        for (m, v) in poly.terms() {
            rows.entry(m.clone()).or_default().push((nc + i, v.clone()));
        }
    }

    let ech = Echelon::new(nc + nb, rows.into_values().collect());

    // Constraints involving only the coefficients of b.
    let b_rows: Vec<SparseRow> = ech
        .rows()
        .iter()
        .filter(|r| r[0].0 >= nc)
        .map(|r| r.iter().map(|(j, v)| (j - nc, v.clone())).collect())
        .collect();
    let mut b_block = Echelon::new(nb, b_rows);
    b_block.reduce();
    let pivots: Vec<usize> = b_block.pivot_columns().collect();
    let Some(deg) = (0..nb).find(|j| !pivots.contains(j)) else {
        return Err(Error::BoundsExhausted(bounds));
    };
    let mut b_coeffs = vec![Rational::zero(); deg + 1];
    b_coeffs[deg] = Rational::one();
    for row in b_block.rows() {
        let p = row[0].0;
        if p < deg {
            if let Some((_, v)) = row.iter().find(|(j, _)| *j == deg) {
                b_coeffs[p] = -v;
            }
        }
    }
    let b_poly = UPoly::new(b_coeffs.clone());
    let b = factor_rational_roots(&b_poly)?;

    let mut values: Vec<Option<Rational>> = vec![None; nc + nb];
    for i in 0..nb {
        values[nc + i] = Some(b_coeffs.get(i).cloned().unwrap_or_else(Rational::zero));
    }
    let sol = ech.back_substitute(&mut values);
    let mut witness = WeylOperator::zero(n);
    for (c, v) in columns.iter().zip(&sol) {
        if !v.is_zero() {
            witness.add_term(
                c.beta.clone(),
                c.s_power,
                MPoly::monomial(&c.gamma, v.clone()),
            );
        }
    }

    let solution = BSolution { b, witness, bounds };
    verify(&solution, f, g, &u)?;
    Ok(solution)
}

/// Checks `P · (g f f^s) == b(s) g f^s` exactly.
pub fn verify_witness(solution: &BSolution, f: &MPoly, g: &MPoly) -> Result<()> {
    let u = FPowerElement::from_poly(f, &(g * f))?;
    verify(solution, f, g, &u)
}

fn verify(solution: &BSolution, f: &MPoly, g: &MPoly, u: &FPowerElement) -> Result<()> {
    let lhs = solution.witness.apply(u)?;
    let rhs = FPowerElement::from_poly(f, g)?.mul_s_poly(&solution.b.to_upoly());
    if lhs == rhs {
        Ok(())
    } else {
        Err(Error::VerificationFailed(format!(
            "P·(g f f^s) != b(s) g f^s for b = {}",
            solution.b
        )))
    }
}

/// Weight vectors for which both `f` and `g` are homogeneous.
struct Grading {
    weights: Vec<Vec<Rational>>,
    f_exps: Vec<u32>,
}

impl Grading {
    fn new(f: &MPoly, g: &MPoly) -> Result<Self> {
        let n = f.nvars();
        let mut diffs: Vec<Vec<Rational>> = Vec::new();
        for p in [f, g] {
            let support: Vec<&[u32]> = p.support().collect();
            for m in &support[1..] {
                diffs.push(
                    m.iter()
                        .zip(support[0])
                        .map(|(a, b)| Rational::integer(*a as i64 - *b as i64))
                        .collect(),
                );
            }
        }
        let weights = if diffs.is_empty() {
            (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            if i == j {
                                Rational::one()
                            } else {
                                Rational::zero()
                            }
                        })
                        .collect()
                })
                .collect()
        } else {
            let zeros = vec![Rational::zero(); diffs.len()];
            solve_linear_exact(&diffs, &zeros)?.kernel
        };
        Ok(Grading {
            weights,
            f_exps: f.support().next().unwrap().to_vec(),
        })
    }

    /// Whether `x^γ ∂^β` has weight `-deg_w(f)` for every grading `w`.
    fn admits(&self, gamma: &[u32], beta: &[u32]) -> bool {
        self.weights.iter().all(|w| {
            let mut total = Rational::zero();
            for ((wi, g), (b, fe)) in w.iter().zip(gamma).zip(beta.iter().zip(&self.f_exps)) {
                let e = *g as i64 - *b as i64 + *fe as i64;
                if e != 0 {
                    total += &(wi * &Rational::integer(e));
                }
            }
            total.is_zero()
        })
    }
}

struct Column {
    beta: Vec<u32>,
    s_power: u32,
    gamma: Vec<u32>,
}

fn ansatz_columns(n: usize, bounds: Bounds, grading: &Grading) -> Vec<Column> {
    let betas = multi_indices(n, bounds.order);
    let gammas = multi_indices(n, bounds.coeff_degree);
    let mut out = Vec::new();
    for beta in &betas {
        let admissible: Vec<&Vec<u32>> =
            gammas.iter().filter(|g| grading.admits(g, beta)).collect();
        for j in 0..=bounds.s_degree {
            for gamma in &admissible {
                out.push(Column {
                    beta: beta.clone(),
                    s_power: j,
                    gamma: (*gamma).clone(),
                });
            }
        }
    }
    out
}

/// All exponent vectors of length `n` with total degree at most `max`,
/// ordered by degree then lexicographically.
pub(crate) fn multi_indices(n: usize, max: u32) -> Vec<Vec<u32>> {
    fn rec(n: usize, remaining: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        for e in 0..=remaining {
            prefix.push(e);
            rec(n, remaining - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, max, &mut Vec::new(), &mut out);
    out.sort_by(|a, b| {
        let (da, db): (u32, u32) = (a.iter().sum(), b.iter().sum());
        da.cmp(&db).then_with(|| a.cmp(b))
    });
    out
}

/// `b(s) · h` as an element over base `f`, convenience for callers.
pub fn times_b(f: &MPoly, h: &MPoly, b: &BFunction) -> Result<FPowerElement> {
    let num = &h.extend_vars(1) * &s_poly(f.nvars(), &b.to_upoly());
    FPowerElement::new(f.clone(), num, 0)
}

/// Memoizes oracle calls keyed by `(f, g, bounds)`; safe to share across threads.
#[derive(Default)]
pub struct OracleCache {
    entries: Mutex<HashMap<(MPoly, MPoly, Bounds), Result<BSolution>>>,
}

impl OracleCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn solve(&self, f: &MPoly, g: &MPoly, bounds: Bounds) -> Result<BSolution> {
        let key = (f.clone(), g.clone(), bounds);
        if let Some(hit) = self.entries.lock().unwrap().get(&key) {
            return hit.clone();
        }
        let result = solve_bfunction(f, g, bounds);
        self.entries.lock().unwrap().insert(key, result.clone());
        result
    }

    pub fn len(&self) -> usize {
        self.entries.lock().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_polynomial, q};

    fn p(s: &str, n: usize) -> MPoly {
        parse_polynomial(s, n).unwrap()
    }

    #[test]
    fn smooth_coordinate() {
        let sol = solve_bfunction(&p("x", 1), &p("1", 1), Bounds::default()).unwrap();
        assert_eq!(sol.b, BFunction::from_roots([q(-1, 1)]));
        assert_eq!(sol.witness, WeylOperator::partial(1, 0));
    }

    #[test]
    fn x_squared_with_witness() {
        let sol = solve_bfunction(&p("x^2", 1), &p("1", 1), Bounds::default()).unwrap();
        assert_eq!(sol.b, BFunction::from_roots([q(-1, 1), q(-1, 2)]));
        let d2 = WeylOperator::partial(1, 0)
            .compose(&WeylOperator::partial(1, 0))
            .unwrap()
            .scale(&q(1, 4));
        assert_eq!(sol.witness, d2);
    }

    #[test]
    fn twisted_x_squared() {
        let sol = solve_bfunction(&p("x^2", 1), &p("x", 1), Bounds::default()).unwrap();
        assert_eq!(sol.b, BFunction::from_roots([q(-1, 1), q(-3, 2)]));
    }

    #[test]
    fn constant_f_gives_one() {
        let sol = solve_bfunction(&p("3", 2), &p("x+y", 2), Bounds::default()).unwrap();
        assert!(sol.b.is_one());
    }

    #[test]
    fn zero_inputs_rejected() {
        assert_eq!(
            solve_bfunction(&p("0", 1), &p("1", 1), Bounds::default()).unwrap_err(),
            Error::ZeroPolynomial
        );
        assert_eq!(
            solve_bfunction(&p("x", 1), &p("0", 1), Bounds::default()).unwrap_err(),
            Error::ZeroPolynomial
        );
        assert!(matches!(
            solve_bfunction(&p("x", 1), &p("1", 2), Bounds::default()),
            Err(Error::VariableMismatch { .. })
        ));
    }

    #[test]
    fn exhausted_bounds_are_reported() {
        let tight = Bounds::new(1, 1, 0, 8);
        assert_eq!(
            solve_bfunction(&p("x^2", 1), &p("1", 1), tight).unwrap_err(),
            Error::BoundsExhausted(tight)
        );
    }

    #[test]
    fn non_quasihomogeneous_input() {
        // x(1+x) is smooth; the witness is (s+1)(-4) + (1+2x)∂.
        let sol = solve_bfunction(&p("x+x^2", 1), &p("1", 1), Bounds::new(1, 1, 1, 4)).unwrap();
        assert_eq!(sol.b, BFunction::from_roots([q(-1, 1)]));
    }

    #[test]
    fn bounds_parse_and_display() {
        let b: Bounds = "3, 4,2,6".parse().unwrap();
        assert_eq!(b, Bounds::new(3, 4, 2, 6));
        assert_eq!(b.to_string(), "3,4,2,6");
        assert!("1,2,3".parse::<Bounds>().is_err());
        assert!("a,b,c,d".parse::<Bounds>().is_err());
    }

    #[test]
    fn multi_index_enumeration() {
        let m = multi_indices(2, 2);
        assert_eq!(m.len(), 6);
        assert_eq!(m[0], vec![0, 0]);
        assert_eq!(m[5], vec![2, 0]);
    }
}
