//! Monic polynomials in `s` that split over ℚ, stored as root multisets.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use super::rational::Rational;
use super::upoly::UPoly;
use crate::error::{Error, Result};

/// `∏ (s - root)^multiplicity`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BFunction {
    roots: BTreeMap<Rational, u32>,
}

impl BFunction {
    /// The constant polynomial 1.
    pub fn one() -> Self {
        BFunction::default()
    }

    pub fn from_roots<I: IntoIterator<Item = Rational>>(roots: I) -> Self {
        let mut b = BFunction::one();
        for r in roots {
            b.push_root(r, 1);
        }
        b
    }

    pub fn from_multiplicities<I: IntoIterator<Item = (Rational, u32)>>(roots: I) -> Self {
        let mut b = BFunction::one();
        for (r, m) in roots {
            b.push_root(r, m);
        }
        b
    }

    pub fn push_root(&mut self, root: Rational, mult: u32) {
        if mult > 0 {
            *self.roots.entry(root).or_insert(0) += mult;
        }
    }

    pub fn degree(&self) -> u32 {
        self.roots.values().sum()
    }

    pub fn is_one(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn multiplicity(&self, root: &Rational) -> u32 {
        self.roots.get(root).copied().unwrap_or(0)
    }

    /// Distinct roots with multiplicities, largest root first.
    pub fn roots(&self) -> impl Iterator<Item = (&Rational, u32)> {
        self.roots.iter().rev().map(|(r, m)| (r, *m))
    }

    /// Every root repeated according to multiplicity, largest first.
    pub fn root_list(&self) -> Vec<Rational> {
        self.roots()
            .flat_map(|(r, m)| std::iter::repeat_n(r.clone(), m as usize))
            .collect()
    }

    pub fn largest_root(&self) -> Option<&Rational> {
        self.roots.keys().next_back()
    }

    /// Multiset containment: `self` divides `other`.
    pub fn divides(&self, other: &BFunction) -> bool {
        self.roots.iter().all(|(r, m)| other.multiplicity(r) >= *m)
    }

    /// Removes one copy of `root`; `None` when it is not a root.
    pub fn without_root(&self, root: &Rational) -> Option<BFunction> {
        let m = self.multiplicity(root);
        if m == 0 {
            return None;
        }
        let mut out = self.clone();
        if m == 1 {
            out.roots.remove(root);
        } else {
            out.roots.insert(root.clone(), m - 1);
        }
        Some(out)
    }

    /// `b(s - shift)`: every root moves by `+shift`.
    pub fn shifted(&self, shift: &Rational) -> BFunction {
        BFunction {
            roots: self.roots.iter().map(|(r, m)| (r + shift, *m)).collect(),
        }
    }

    /// Product of two b-functions (multiset sum).
    pub fn times(&self, other: &BFunction) -> BFunction {
        let mut out = self.clone();
        for (r, m) in &other.roots {
            out.push_root(r.clone(), *m);
        }
        out
    }

    pub fn to_upoly(&self) -> UPoly {
        self.roots
            .iter()
            .flat_map(|(r, m)| std::iter::repeat_n(r, *m as usize))
            .fold(UPoly::one(), |acc, r| &acc * &UPoly::linear(r))
    }

    /// Factored rendering such as `(s+5/6)(s+1)^2`.
    pub fn factored(&self) -> String {
        if self.is_one() {
            return "1".to_string();
        }
        let mut out = String::new();
        for (r, m) in self.roots() {
            let c = -r;
            let lin = if c.is_zero() {
                "s".to_string()
            } else if c.is_negative() {
                format!("s-{}", c.abs())
            } else {
                format!("s+{c}")
            };
            out.push('(');
            out.push_str(&lin);
            out.push(')');
            if m > 1 {
                out.push_str(&format!("^{m}"));
            }
        }
        out
    }
}

impl fmt::Display for BFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.factored())
    }
}

impl fmt::Debug for BFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BFunction({})", self.factored())
    }
}

/// Serialized as `[[root, multiplicity], ...]`, largest root first.
impl Serialize for BFunction {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.roots.len()))?;
        for (r, m) in self.roots() {
            seq.serialize_element(&(r, m))?;
        }
        seq.end()
    }
}

/// Factors a monic polynomial that splits over ℚ into its root multiset.
///
/// Candidate roots come from the rational-root theorem applied to the
/// primitive integer form; each root found is divided out to full
/// multiplicity.
pub fn factor_rational_roots(p: &UPoly) -> Result<BFunction> {
    if !p.is_monic() {
        return Err(Error::InvalidInput(
            "polynomial must be nonzero and monic".into(),
        ));
    }
    let mut rest = p.clone();
    let mut out = BFunction::one();

    // s = 0 first, so the constant term of the remainder is nonzero.
    let zero = Rational::zero();
    while rest.degree().unwrap_or(0) > 0 && rest.coeffs()[0].is_zero() {
        rest = rest.div_rem(&UPoly::linear(&zero)).0;
        out.push_root(zero.clone(), 1);
    }

    while rest.degree().unwrap_or(0) > 0 {
        let ints = primitive_integer_form(&rest);
        let lead = ints.last().unwrap().abs();
        let constant = ints[0].abs();
        let mut found = None;
        'search: for den in divisors(&lead) {
            for num in divisors(&constant) {
                for sign in [-1, 1] {
                    let cand = Rational::from_bigints(num.clone() * sign, den.clone());
                    if is_root(&ints, &cand) {
                        found = Some(cand);
                        break 'search;
                    }
                }
            }
        }
        let Some(root) = found else { break };
        let lin = UPoly::linear(&root);
        loop {
            let (quot, rem) = rest.div_rem(&lin);
            if !rem.is_zero() {
                break;
            }
            rest = quot;
            out.push_root(root.clone(), 1);
        }
    }

    match rest.degree() {
        Some(0) => Ok(out),
        Some(d) => Err(Error::IrreducibleRemainder { degree: d }),
        None => unreachable!("monic input cannot reduce to zero"),
    }
}

/// Integer coefficients with gcd 1 and positive leading coefficient.
fn primitive_integer_form(p: &UPoly) -> Vec<BigInt> {
    let lcm = p
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p
        .coeffs()
        .iter()
        .map(|c| c.numer() * (&lcm / c.denom()))
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    let sign = if ints.last().unwrap().is_negative() {
        -1
    } else {
        1
    };
    ints.into_iter().map(|c| c / &g * sign).collect()
}

fn is_root(ints: &[BigInt], cand: &Rational) -> bool {
    // Σ c_i p^i q^(d-i) == 0
    let (p, qd) = (cand.numer(), cand.denom());
    let d = ints.len() - 1;
    let mut acc = BigInt::zero();
    let mut qpow = BigInt::one();
    let mut terms = Vec::with_capacity(d + 1);
    for _ in 0..=d {
        terms.push(qpow.clone());
        qpow *= qd;
    }
    let mut ppow = BigInt::one();
    for (i, c) in ints.iter().enumerate() {
        acc += c * &ppow * &terms[d - i];
        ppow *= p;
    }
    acc.is_zero()
}

/// Positive divisors of a nonzero integer, ascending.
fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut n = n.abs();
    let mut factors: Vec<(BigInt, u32)> = Vec::new();
    let mut p = BigInt::from(2);
    while &p * &p <= n {
        let mut e = 0;
        while (&n % &p).is_zero() {
            n /= &p;
            e += 1;
        }
        if e > 0 {
            factors.push((p.clone(), e));
        }
        p += 1;
    }
    if n > BigInt::one() {
        factors.push((n, 1));
    }
    let mut divs = vec![BigInt::one()];
    for (p, e) in factors {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut pk = BigInt::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= &p;
            }
        }
        divs = next;
    }
    divs.sort();
    divs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::q;

    #[test]
    fn linear_factor() {
        let b = factor_rational_roots(&UPoly::from_ints(&[1, 1])).unwrap();
        assert_eq!(b, BFunction::from_roots([Rational::integer(-1)]));
    }

    #[test]
    fn quadratic_with_half_root() {
        let p = UPoly::new(vec![q(1, 2), q(3, 2), Rational::one()]);
        let b = factor_rational_roots(&p).unwrap();
        assert_eq!(b, BFunction::from_roots([q(-1, 1), q(-1, 2)]));
    }

    #[test]
    fn irreducible_quadratic() {
        let err = factor_rational_roots(&UPoly::from_ints(&[1, 0, 1])).unwrap_err();
        assert_eq!(err, Error::IrreducibleRemainder { degree: 2 });
    }

    #[test]
    fn multiplicities_and_zero_root() {
        let b = BFunction::from_multiplicities([(q(-7, 6), 2), (q(0, 1), 1), (q(3, 4), 1)]);
        assert_eq!(factor_rational_roots(&b.to_upoly()).unwrap(), b);
    }

    #[test]
    fn rejects_non_monic() {
        assert!(factor_rational_roots(&UPoly::from_ints(&[1, 2])).is_err());
    }

    #[test]
    fn divisibility_and_rendering() {
        let cusp = BFunction::from_roots([q(-1, 1), q(-5, 6), q(-7, 6)]);
        let red = cusp.without_root(&q(-1, 1)).unwrap();
        assert!(red.divides(&cusp));
        assert!(!cusp.divides(&red));
        assert_eq!(cusp.factored(), "(s+5/6)(s+1)(s+7/6)");
        assert_eq!(red.shifted(&q(1, 1)).factored(), "(s-1/6)(s+1/6)");
        let sq = BFunction::from_multiplicities([(q(-1, 1), 2)]);
        assert_eq!(sq.factored(), "(s+1)^2");
        assert_eq!(sq.degree(), 2);
        assert_eq!(
            serde_json::to_string(&cusp).unwrap(),
            r#"[["-5/6",1],["-1",1],["-7/6",1]]"#
        );
    }
}
