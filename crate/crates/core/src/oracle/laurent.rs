//! Exact Laurent polynomials in one variable over arbitrary-precision integers.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `Σ c_e x^e` with `e ∈ Z`, `c_e ∈ Z`. Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    pub fn monomial(coeff: impl Into<BigInt>, exp: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, coeff.into());
        p
    }

    pub fn from_terms<C: Into<BigInt>>(terms: impl IntoIterator<Item = (i64, C)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    /// The loop value `d = -A^2 - A^{-2}`.
    pub fn loop_value() -> Self {
        Self::from_terms([(2, -1), (-2, -1)])
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_default()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// `Some((c, e))` when the polynomial is a single term `c x^e`.
    pub fn as_monomial(&self) -> Option<(&BigInt, i64)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(&e, c)| (c, e))
        } else {
            None
        }
    }

    fn add_term(&mut self, exp: i64, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(exp).or_default();
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&exp);
        }
    }

    /// Multiplies by `x^shift`.
    pub fn shift(&self, shift: i64) -> Self {
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(&e, c)| (e + shift, c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Substitutes `x -> x^{-1}`.
    pub fn invert_variable(&self) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, c)| (-e, c.clone())).collect(),
        }
    }

    /// Exact division by `d = -A^2 - A^{-2}`, or `None` if `d` does not divide.
    pub fn div_loop_value(&self) -> Option<Self> {
        // p / d = p * (-A^2) / (1 + A^4); 1 + A^4 has unit constant term so we
        // divide from the lowest exponent upward.
        let mut rem = self.shift(2);
        let mut quot = Self::zero();
        while let Some(lo) = rem.min_exp() {
            let hi = rem.max_exp().unwrap();
            if lo + 4 > hi {
                return None;
            }
            let c = rem.coeff(lo);
            quot.add_term(lo, -c.clone());
            rem.add_term(lo, -c.clone());
            rem.add_term(lo + 4, -c);
        }
        Some(quot)
    }

    /// Rewrites a polynomial in `A` as one in `t = A^{-4}`.
    pub fn to_t(&self) -> Result<Self> {
        let mut out = Self::zero();
        for (&e, c) in &self.terms {
            if e % 4 != 0 {
                return Err(Error::NotLaurentInT(e));
            }
            out.add_term(-e / 4, c.clone());
        }
        Ok(out)
    }

    pub fn eval(&self, x: Complex64) -> Complex64 {
        self.terms
            .iter()
            .map(|(&e, c)| x.powi(e as i32) * c.to_f64().unwrap_or(f64::NAN))
            .sum()
    }

    pub fn to_json(&self, variable: &str) -> PolyJson {
        PolyJson {
            variable: variable.to_string(),
            terms: self
                .terms
                .iter()
                .map(|(&e, c)| (e, c.to_string()))
                .collect(),
        }
    }

    pub fn from_json(json: &PolyJson) -> Result<Self> {
        let mut p = Self::zero();
        for (e, c) in &json.terms {
            let c: BigInt = c
                .parse()
                .map_err(|_| Error::Parse(format!("coefficient {c:?} is not an integer")))?;
            p.add_term(*e, c);
        }
        Ok(p)
    }

    pub fn display(&self, variable: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (i, (&e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let unit = mag.is_one();
            match e {
                0 => s.push_str(&mag.to_string()),
                _ => {
                    if !unit {
                        s.push_str(&mag.to_string());
                        s.push('*');
                    }
                    if e == 1 {
                        s.push_str(variable);
                    } else {
                        s.push_str(&format!("{variable}^{e}"));
                    }
                }
            }
        }
        s
    }
}

/// `{"variable": "A", "terms": [[exponent, "coefficient"], ...]}`
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct PolyJson {
    pub variable: String,
    pub terms: Vec<(i64, String)>,
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display("A"))
    }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;

    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;

    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, -c.clone());
        }
        out
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;

    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (&e1, c1) in &self.terms {
            for (&e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;

    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, c)| (e, -c)).collect(),
        }
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: LaurentPoly) -> LaurentPoly {
        &self + &rhs
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
        prop::collection::vec((-12i64..12, -5i64..6), 0..6).prop_map(LaurentPoly::from_terms)
    }

    #[test]
    fn no_zero_coefficients_stored() {
        let p = LaurentPoly::from_terms([(1, 2), (1, -2), (3, 1)]);
        assert_eq!(p.num_terms(), 1);
        assert!((&p - &p).is_zero());
    }

    #[test]
    fn loop_value_squared() {
        let d = LaurentPoly::loop_value();
        assert_eq!(&d * &d, LaurentPoly::from_terms([(4, 1), (0, 2), (-4, 1)]));
    }

    #[test]
    fn division_by_loop_value() {
        let d = LaurentPoly::loop_value();
        assert_eq!(d.div_loop_value(), Some(LaurentPoly::one()));
        let p = LaurentPoly::from_terms([(5, 3), (-1, 1)]);
        assert_eq!((&p * &d).div_loop_value(), Some(p));
        assert_eq!(LaurentPoly::one().div_loop_value(), None);
        assert_eq!(
            LaurentPoly::from_terms([(0, 1), (8, 1)]).div_loop_value(),
            None
        );
        assert_eq!(
            LaurentPoly::zero().div_loop_value(),
            Some(LaurentPoly::zero())
        );
    }

    #[test]
    fn t_conversion() {
        let p = LaurentPoly::from_terms([(4, 1), (12, 1), (16, -1)]);
        let t = p.to_t().unwrap();
        assert_eq!(t, LaurentPoly::from_terms([(-1, 1), (-3, 1), (-4, -1)]));
        assert!(matches!(
            LaurentPoly::from_terms([(2, 1)]).to_t(),
            Err(Error::NotLaurentInT(2))
        ));
    }

    #[test]
    fn big_coefficients_survive_json() {
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        let p = LaurentPoly::monomial(big.clone(), -3) + LaurentPoly::monomial(1, 2);
        let j = p.to_json("A");
        assert_eq!(j.terms[0], (-3, big.to_string()));
        let s = serde_json::to_string(&j).unwrap();
        assert_eq!(
            s,
            r#"{"variable":"A","terms":[[-3,"123456789012345678901234567890"],[2,"1"]]}"#
        );
        assert_eq!(LaurentPoly::from_json(&j).unwrap(), p);
    }

    #[test]
    fn display() {
        let p = LaurentPoly::from_terms([(4, 1), (12, 1), (16, -1), (0, 2)]);
        assert_eq!(p.display("A"), "-A^16 + A^12 + A^4 + 2");
        assert_eq!(LaurentPoly::from_terms([(-1, 3)]).display("t"), "3*t^-1");
        assert_eq!(LaurentPoly::zero().display("t"), "0");
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
        }

        #[test]
        fn eval_is_a_homomorphism(a in arb_poly(), b in arb_poly(), th in 0.0f64..std::f64::consts::TAU) {
            let x = Complex64::from_polar(1.0, th);
            let lhs = (&a * &b).eval(x);
            let rhs = a.eval(x) * b.eval(x);
            prop_assert!((lhs - rhs).norm() < 1e-9 * (1.0 + rhs.norm()));
        }
    }
}
