//! Multiplier ideals, jumping numbers, V-levels and minimal exponents.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{BFunction, MPoly, Rational};
use crate::error::{Error, Result};
use crate::resolution::{min_exponent_lower_bound, MinExponentBound, ResolutionData};
use crate::weyl::{reduced_bfunction, Bounds, OracleCache};

/// `I(f^λ)` for a monomial `f` in normal crossing form: the principal ideal
/// `(∏ x_i^{e_i})` with `e_i = ⌊λ a_i⌋`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct MonomialIdealSNC {
    pub exponents: Vec<u32>,
}

impl MonomialIdealSNC {
    pub fn of_power(a: &[u32], lambda: &Rational) -> Self {
        let exponents = a
            .iter()
            .map(|&ai| floor_u32(&(lambda * &Rational::integer(ai as i64))))
            .collect();
        MonomialIdealSNC { exponents }
    }

    pub fn contains_monomial(&self, g: &[u32]) -> bool {
        g.iter().zip(&self.exponents).all(|(b, e)| b >= e)
    }
}

/// Supremum of the `α` with `u ∈ V^α`: the negated largest root of `b_u`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct VLevel(pub Rational);

impl fmt::Display for VLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "lowercase")]
pub enum MinimalExponent {
    Finite(Rational),
    Infinite,
}

impl fmt::Display for MinimalExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MinimalExponent::Finite(r) => write!(f, "{r}"),
            MinimalExponent::Infinite => f.write_str("infinite"),
        }
    }
}

fn floor_u32(r: &Rational) -> u32 {
    let fl = r.floor();
    u32::try_from(fl.max(BigInt::from(0))).expect("floor fits in u32")
}

/// Whether `g` (given through its orders `b_i`) lies in `I(f^λ)`:
/// `b_i + k_i >= ⌊λ a_i⌋` for every record.
pub fn multiplier_membership(res: &ResolutionData, lambda: &Rational) -> Result<bool> {
    if !lambda.is_positive() {
        return Err(Error::InvalidInput(format!(
            "λ must be positive, got {lambda}"
        )));
    }
    res.validate()?;
    Ok(res.divisors.iter().all(|d| {
        let fl = floor_u32(&(lambda * &Rational::integer(d.a as i64)));
        d.b + d.k >= fl
    }))
}

/// `lct_g(f) = min_i (k_i + 1 + b_i)/a_i`, the least λ with `g ∉ I(f^λ)`.
pub fn lct_g(res: &ResolutionData) -> Result<Rational> {
    res.min_twisted_quotient()
}

/// Jumping numbers of `f = ∏ x_i^{a_i}` in `(0, T]`: all `j / a_i`,
/// sorted and without repetition.
pub fn jumping_numbers_snc(a: &[u32], t: &Rational) -> Result<Vec<Rational>> {
    if a.iter().all(|&ai| ai == 0) {
        return Err(Error::InvalidInput(
            "exponent vector must be nonzero".into(),
        ));
    }
    if !t.is_positive() {
        return Err(Error::InvalidInput(format!("T must be positive, got {t}")));
    }
    let mut out = BTreeSet::new();
    for &ai in a.iter().filter(|&&ai| ai > 0) {
        let top = floor_u32(&(t * &Rational::integer(ai as i64)));
        for j in 1..=top {
            out.insert(Rational::new(j as i64, ai as i64));
        }
    }
    Ok(out.into_iter().collect())
}

/// Candidate jumping numbers `(k_i + 1 + b_i + ℓ)/a_i` in `(0, T]` from an
/// arbitrary resolution table. Only candidates: deciding which ones jump
/// needs the push-forward of the sheaves.
pub fn jumping_number_candidates(res: &ResolutionData, t: &Rational) -> Result<Vec<Rational>> {
    res.validate()?;
    let mut out = BTreeSet::new();
    for d in res.divisors.iter().filter(|d| d.a > 0) {
        let mut ell = 0i64;
        loop {
            let c = Rational::new((d.k + 1 + d.b) as i64 + ell, d.a as i64);
            if &c > t {
                break;
            }
            out.insert(c);
            ell += 1;
        }
    }
    Ok(out.into_iter().collect())
}

pub fn v_level_from_bfunction(b: &BFunction) -> Result<VLevel> {
    b.largest_root()
        .map(|r| VLevel(-r))
        .ok_or_else(|| Error::InvalidInput("b-function has no roots".into()))
}

/// `⌊(α - ε) a⌋` for all sufficiently small `ε > 0`: `α a - 1` when `α a`
/// is an integer, `⌊α a⌋` otherwise.
pub fn epsilon_floor(alpha: &Rational, a: u32) -> i64 {
    let prod = alpha * &Rational::integer(a as i64);
    let fl = prod.floor();
    let v = if prod.is_integer() { fl - 1 } else { fl };
    i64::try_from(v).expect("fits in i64")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MonomialVLevel {
    pub g: Vec<u32>,
    pub b: BFunction,
    pub v_level: VLevel,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BudurSaitoReport {
    pub a: Vec<u32>,
    pub alpha: Rational,
    pub cap: u32,
    pub bounds: Bounds,
    /// Monomials `g` with `g f^s ∈ V^α`, from oracle b-functions.
    pub side_a: Vec<Vec<u32>>,
    /// Monomials `g ∈ I(f^{α-ε})`.
    pub side_b: Vec<Vec<u32>>,
    pub symmetric_difference: Vec<Vec<u32>>,
    pub per_monomial: Vec<MonomialVLevel>,
}

impl BudurSaitoReport {
    pub fn agrees(&self) -> bool {
        self.symmetric_difference.is_empty()
    }
}

/// Compares `{g : g f^s ∈ V^α}` with `I(f^{α-ε})` over all monomials `g`
/// with every exponent at most `cap`, for `f = ∏ x_i^{a_i}`.
pub fn budur_saito_check(
    a: &[u32],
    alpha: &Rational,
    cap: u32,
    bounds: Bounds,
    cache: &OracleCache,
) -> Result<BudurSaitoReport> {
    if !alpha.is_positive() {
        return Err(Error::InvalidInput(format!(
            "α must be positive, got {alpha}"
        )));
    }
    if a.is_empty() || a.iter().all(|&ai| ai == 0) {
        return Err(Error::InvalidInput(
            "f must be a non-constant monomial".into(),
        ));
    }
    let n = a.len();
    let f = MPoly::monomial(a, Rational::one());
    let grid = exponent_grid(n, cap);

    let per_monomial: Vec<MonomialVLevel> = grid
        .par_iter()
        .map(|g| {
            let gp = MPoly::monomial(g, Rational::one());
            let sol = cache.solve(&f, &gp, bounds)?;
            let v_level = v_level_from_bfunction(&sol.b)?;
            Ok(MonomialVLevel {
                g: g.clone(),
                b: sol.b,
                v_level,
            })
        })
        .collect::<Result<_>>()?;

    let e: Vec<i64> = a.iter().map(|&ai| epsilon_floor(alpha, ai)).collect();
    let side_a: Vec<Vec<u32>> = per_monomial
        .iter()
        .filter(|r| &r.v_level.0 >= alpha)
        .map(|r| r.g.clone())
        .collect();
    let side_b: Vec<Vec<u32>> = grid
        .iter()
        .filter(|g| g.iter().zip(&e).all(|(&b, &ei)| b as i64 >= ei))
        .cloned()
        .collect();
    let sa: BTreeSet<&Vec<u32>> = side_a.iter().collect();
    let sb: BTreeSet<&Vec<u32>> = side_b.iter().collect();
    let symmetric_difference = grid
        .iter()
        .filter(|g| sa.contains(g) != sb.contains(g))
        .cloned()
        .collect();

    Ok(BudurSaitoReport {
        a: a.to_vec(),
        alpha: alpha.clone(),
        cap,
        bounds,
        side_a,
        side_b,
        symmetric_difference,
        per_monomial,
    })
}

/// All exponent vectors in `{0..=cap}^n`, lexicographic.
fn exponent_grid(n: usize, cap: u32) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..=cap).map(move |e| {
                    let mut q = p.clone();
                    q.push(e);
                    q
                })
            })
            .collect();
    }
    out
}

/// Negated largest root of `b_f / (s+1)`; infinite when `b_f = s + 1`.
pub fn min_exponent_from_bfunction(b_f: &BFunction) -> Result<MinimalExponent> {
    let reduced = reduced_bfunction(b_f)?;
    Ok(match reduced.largest_root() {
        Some(r) => MinimalExponent::Finite(-r),
        None => MinimalExponent::Infinite,
    })
}

/// `(b̃_f(s - m), (s+1) b̃_f(s - m))`; the b-function of `∂_t^m f^s` sits
/// between them in the divisibility order.
pub fn sandwich_for_shifted(b_f: &BFunction, m: u32) -> Result<(BFunction, BFunction)> {
    let lower = reduced_bfunction(b_f)?.shifted(&Rational::integer(m as i64));
    let mut upper = lower.clone();
    upper.push_root(Rational::integer(-1), 1);
    Ok((lower, upper))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SaitoCheck {
    pub bound: MinExponentBound,
    /// Decomposition `bound = m + α` with `α ∈ (0, 1]`; absent when unbounded.
    pub m: Option<u32>,
    pub alpha: Option<Rational>,
    pub confirmed: bool,
}

/// Writes the resolution lower bound for the minimal exponent as `m + α`
/// (`α ∈ (0, 1]`) and checks that every root of both sandwich polynomials
/// for that `m` is `<= -α` or a negative integer.
pub fn saito_criterion_check(b_f: &BFunction, res: &ResolutionData) -> Result<SaitoCheck> {
    let bound = min_exponent_lower_bound(res)?;
    let MinExponentBound::Finite(beta) = &bound else {
        return Ok(SaitoCheck {
            bound,
            m: None,
            alpha: None,
            confirmed: true,
        });
    };
    let m_big = beta.ceil() - BigInt::from(1);
    let m = u32::try_from(m_big.clone())
        .map_err(|_| Error::InvalidInput(format!("bound {beta} is not positive")))?;
    let alpha = beta - &Rational::from_bigint(m_big);
    let (lower, upper) = sandwich_for_shifted(b_f, m)?;
    let neg_alpha = -&alpha;
    let confirmed = lower
        .roots()
        .chain(upper.roots())
        .all(|(r, _)| r <= &neg_alpha || (r.is_integer() && r.is_negative()));
    Ok(SaitoCheck {
        bound,
        m: Some(m),
        alpha: Some(alpha),
        confirmed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::q;
    use crate::resolution::DivisorRecord;

    fn x2y3(b: [u32; 2]) -> ResolutionData {
        ResolutionData::from_monomial(&[2, 3], &b).unwrap()
    }

    fn cusp_res() -> ResolutionData {
        ResolutionData::new(
            vec![
                DivisorRecord::new("ray(2,1)", 3, 2, 0, true),
                DivisorRecord::new("ray(3,2)", 6, 4, 0, true),
                DivisorRecord::new("ray(1,1)", 2, 1, 0, true),
                DivisorRecord::new("strict", 1, 0, 0, false),
            ],
            true,
            true,
        )
    }

    fn roots(v: &[(i64, i64)]) -> BFunction {
        BFunction::from_roots(v.iter().map(|&(n, d)| q(n, d)))
    }

    #[test]
    fn membership() {
        assert!(multiplier_membership(&x2y3([1, 2]), &q(9, 10)).unwrap());
        assert!(!multiplier_membership(&x2y3([0, 0]), &q(1, 3)).unwrap());
        assert!(multiplier_membership(&x2y3([0, 0]), &q(1, 4)).unwrap());
        assert!(multiplier_membership(&cusp_res(), &q(1, 100)).unwrap());
        assert!(multiplier_membership(&cusp_res(), &Rational::zero()).is_err());
    }

    #[test]
    fn lct_values() {
        assert_eq!(lct_g(&x2y3([0, 0])).unwrap(), q(1, 3));
        assert_eq!(
            lct_g(&ResolutionData::from_monomial(&[2], &[1]).unwrap()).unwrap(),
            q(1, 1)
        );
        assert_eq!(lct_g(&cusp_res()).unwrap(), q(5, 6));
    }

    #[test]
    fn jumping_numbers() {
        assert_eq!(
            jumping_numbers_snc(&[2, 3], &q(1, 1)).unwrap(),
            vec![q(1, 3), q(1, 2), q(2, 3), q(1, 1)]
        );
        assert_eq!(
            jumping_numbers_snc(&[1], &q(2, 1)).unwrap(),
            vec![q(1, 1), q(2, 1)]
        );
        assert_eq!(
            jumping_numbers_snc(&[2], &q(1, 1)).unwrap(),
            vec![q(1, 2), q(1, 1)]
        );
        assert!(jumping_numbers_snc(&[0, 0], &q(1, 1)).is_err());
        assert!(jumping_numbers_snc(&[1], &q(0, 1)).is_err());
    }

    #[test]
    fn jumping_candidates_include_lct() {
        let c = jumping_number_candidates(&cusp_res(), &q(1, 1)).unwrap();
        assert_eq!(c.first(), Some(&q(5, 6)));
        assert!(c.contains(&q(1, 1)));
    }

    #[test]
    fn v_levels() {
        assert_eq!(
            v_level_from_bfunction(&roots(&[(-1, 1), (-1, 2)])).unwrap(),
            VLevel(q(1, 2))
        );
        assert_eq!(
            v_level_from_bfunction(&roots(&[(-1, 1)])).unwrap(),
            VLevel(q(1, 1))
        );
        assert_eq!(
            v_level_from_bfunction(&roots(&[(-1, 1), (-5, 6), (-7, 6)])).unwrap(),
            VLevel(q(5, 6))
        );
        assert!(v_level_from_bfunction(&BFunction::one()).is_err());
    }

    #[test]
    fn epsilon_floor_values() {
        assert_eq!(epsilon_floor(&q(1, 2), 2), 0);
        assert_eq!(epsilon_floor(&q(1, 2), 3), 1);
        assert_eq!(epsilon_floor(&q(1, 1), 3), 2);
        assert_eq!(epsilon_floor(&q(1, 6), 2), 0);
    }

    #[test]
    fn minimal_exponents() {
        assert_eq!(
            min_exponent_from_bfunction(&roots(&[(-1, 1), (-5, 6), (-7, 6)])).unwrap(),
            MinimalExponent::Finite(q(5, 6))
        );
        assert_eq!(
            min_exponent_from_bfunction(&roots(&[(-1, 1)])).unwrap(),
            MinimalExponent::Infinite
        );
        assert_eq!(
            min_exponent_from_bfunction(&BFunction::from_multiplicities([(q(-1, 1), 2)])).unwrap(),
            MinimalExponent::Finite(q(1, 1))
        );
        assert_eq!(
            min_exponent_from_bfunction(&roots(&[(-1, 2)])).unwrap_err(),
            Error::MissingRootMinusOne
        );
    }

    #[test]
    fn sandwich() {
        let cusp = roots(&[(-1, 1), (-5, 6), (-7, 6)]);
        let (lo, hi) = sandwich_for_shifted(&cusp, 0).unwrap();
        assert_eq!(lo, roots(&[(-5, 6), (-7, 6)]));
        assert_eq!(hi, roots(&[(-5, 6), (-7, 6), (-1, 1)]));
        let (lo, _) = sandwich_for_shifted(&cusp, 1).unwrap();
        assert_eq!(lo, roots(&[(1, 6), (-1, 6)]));
        let (lo, hi) = sandwich_for_shifted(&roots(&[(-1, 1), (-1, 2)]), 0).unwrap();
        assert_eq!(lo, roots(&[(-1, 2)]));
        assert_eq!(hi, roots(&[(-1, 1), (-1, 2)]));
        assert!(lo.divides(&hi));
    }

    #[test]
    fn saito_check() {
        let cusp = roots(&[(-1, 1), (-5, 6), (-7, 6)]);
        let c = saito_criterion_check(&cusp, &cusp_res()).unwrap();
        assert_eq!(c.m, Some(0));
        assert_eq!(c.alpha, Some(q(5, 6)));
        assert!(c.confirmed);

        let smooth = ResolutionData::from_monomial(&[1], &[0]).unwrap();
        let c = saito_criterion_check(&roots(&[(-1, 1)]), &smooth).unwrap();
        assert_eq!(c.bound, MinExponentBound::Unbounded);
        assert!(c.confirmed);

        let sq = BFunction::from_multiplicities([(q(-1, 1), 2)]);

        let x2y = ResolutionData::from_monomial(&[2, 1], &[0, 0]).unwrap();
        assert!(matches!(
            saito_criterion_check(&sq, &x2y),
            Err(Error::HypothesisViolated(_))
        ));
    }

    #[test]
    fn ideal_of_power() {
        let i = MonomialIdealSNC::of_power(&[2, 3], &q(9, 10));
        assert_eq!(i.exponents, vec![1, 2]);
        assert!(i.contains_monomial(&[1, 2]));
        assert!(!i.contains_monomial(&[0, 2]));
    }

    #[test]
    fn grid() {
        let g = exponent_grid(2, 1);
        assert_eq!(g, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
    }
}
