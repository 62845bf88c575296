//! The Temperley-Lieb algebra `TL_n(d)` over `Z[A, A^{-1}]` with
//! `d = -A^2 - A^{-2}`, and its diagrammatic Markov trace.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use num_complex::Complex64;

use super::laurent::LaurentPoly;
use super::matching::PlanarMatching;
use crate::error::{Error, Result};

/// A formal combination of planar matchings with Laurent coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TLElement {
    n: usize,
    terms: BTreeMap<PlanarMatching, LaurentPoly>,
}

impl TLElement {
    pub fn zero(n: usize) -> Self {
        TLElement {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_matching(PlanarMatching::identity(n), LaurentPoly::one())
    }

    pub fn generator(n: usize, i: usize) -> Result<Self> {
        Ok(Self::from_matching(
            PlanarMatching::generator(n, i)?,
            LaurentPoly::one(),
        ))
    }

    pub fn from_matching(m: PlanarMatching, coeff: LaurentPoly) -> Self {
        let mut x = Self::zero(m.strands());
        x.add_term(m, coeff);
        x
    }

    /// Product `E_{w_1} E_{w_2} ...` of generators; the empty word is `1`.
    pub fn generator_word(n: usize, word: &[usize]) -> Result<Self> {
        let mut acc = Self::identity(n);
        for &i in word {
            acc = acc.mul(&Self::generator(n, i)?)?;
        }
        Ok(acc)
    }

    pub fn strands(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PlanarMatching, &LaurentPoly)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &PlanarMatching) -> LaurentPoly {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, m: PlanarMatching, coeff: LaurentPoly) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Occupied(mut slot) => {
                let sum = slot.get() + &coeff;
                if sum.is_zero() {
                    slot.remove();
                } else {
                    *slot.get_mut() = sum;
                }
            }
            Entry::Vacant(slot) => {
                slot.insert(coeff);
            }
        }
    }

    pub fn add(&self, other: &TLElement) -> Result<TLElement> {
        self.check_width(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &LaurentPoly) -> TLElement {
        let mut out = Self::zero(self.n);
        for (m, k) in &self.terms {
            out.add_term(m.clone(), k * c);
        }
        out
    }

    /// Stacks `self` above `other`; every closed loop contributes a factor `d`.
    pub fn mul(&self, other: &TLElement) -> Result<TLElement> {
        self.check_width(other)?;
        let d = LaurentPoly::loop_value();
        let mut d_pows = vec![LaurentPoly::one()];
        let mut out = Self::zero(self.n);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let s = m1.stack(m2);
                while d_pows.len() <= s.loops as usize {
                    let next = d_pows.last().unwrap() * &d;
                    d_pows.push(next);
                }
                let c = &(c1 * c2) * &d_pows[s.loops as usize];
                out.add_term(s.matching, c);
            }
        }
        Ok(out)
    }

    /// Includes `TL_n` into `TL_{n+1}` by adding a through-strand on the right.
    pub fn embed(&self) -> TLElement {
        let mut out = Self::zero(self.n + 1);
        for (m, c) in &self.terms {
            out.add_term(m.embed(), c.clone());
        }
        out
    }

    /// Diagrammatic Markov trace: each matching with `c` closure loops
    /// contributes `coeff * d^{c - n}`.
    pub fn markov_trace(&self) -> TraceValue {
        let n = self.n as u32;
        let d = LaurentPoly::loop_value();
        let mut numerator = LaurentPoly::zero();
        for (m, c) in &self.terms {
            let loops = m.closure_loops();
            numerator = &numerator + &(c * &d.pow(loops));
        }
        TraceValue::new(numerator, n)
    }

    fn check_width(&self, other: &TLElement) -> Result<()> {
        if self.n != other.n {
            return Err(Error::StrandMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }
}

/// An element `numerator / d^d_power` of `Z[A^{±1}, d^{-1}]`, kept in lowest
/// terms so that equality is structural.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceValue {
    numerator: LaurentPoly,
    d_power: u32,
}

impl TraceValue {
    pub fn new(numerator: LaurentPoly, d_power: u32) -> Self {
        let mut v = TraceValue { numerator, d_power };
        v.reduce();
        v
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.numerator
    }

    pub fn d_power(&self) -> u32 {
        self.d_power
    }

    fn reduce(&mut self) {
        if self.numerator.is_zero() {
            self.d_power = 0;
            return;
        }
        while self.d_power > 0 {
            match self.numerator.div_loop_value() {
                Some(q) => {
                    self.numerator = q;
                    self.d_power -= 1;
                }
                None => break,
            }
        }
    }

    pub fn div_loop_value(&self) -> TraceValue {
        TraceValue::new(self.numerator.clone(), self.d_power + 1)
    }

    pub fn mul_loop_power(&self, k: u32) -> TraceValue {
        let d = LaurentPoly::loop_value();
        TraceValue::new(&self.numerator * &d.pow(k), self.d_power)
    }

    pub fn scale(&self, c: &LaurentPoly) -> TraceValue {
        TraceValue::new(&self.numerator * c, self.d_power)
    }

    /// The polynomial, if the denominator has cancelled completely.
    pub fn into_poly(self) -> Result<LaurentPoly> {
        if self.d_power != 0 {
            return Err(Error::UncancelledDenominator(self.d_power));
        }
        Ok(self.numerator)
    }

    pub fn eval(&self, a: Complex64) -> Complex64 {
        let d = -a * a - (a * a).inv();
        self.numerator.eval(a) / d.powi(self.d_power as i32)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(n: usize, i: usize) -> TLElement {
        TLElement::generator(n, i).unwrap()
    }

    fn d() -> LaurentPoly {
        LaurentPoly::loop_value()
    }

    #[test]
    fn constructors() {
        let id = TLElement::identity(2);
        assert_eq!(id.num_terms(), 1);
        assert_eq!(id.terms().next().unwrap().0.pairs(), vec![(1, 3), (2, 4)]);
        assert_eq!(
            e(2, 1).terms().next().unwrap().0.pairs(),
            vec![(1, 2), (3, 4)]
        );
        assert_eq!(
            e(3, 2).terms().next().unwrap().0.pairs(),
            vec![(1, 4), (2, 3), (5, 6)]
        );
        assert!(TLElement::generator(3, 3).is_err());
    }

    #[test]
    fn generator_squares_to_d_times_itself() {
        let e1 = e(2, 1);
        assert_eq!(e1.mul(&e1).unwrap(), e1.scale(&d()));
    }

    #[test]
    fn neighbouring_generators() {
        let (e1, e2) = (e(3, 1), e(3, 2));
        assert_eq!(e1.mul(&e2).unwrap().mul(&e1).unwrap(), e1);
        assert_eq!(e2.mul(&e1).unwrap().mul(&e2).unwrap(), e2);
    }

    #[test]
    fn distant_generators_stack_to_single_matching() {
        let p = e(4, 1).mul(&e(4, 3)).unwrap();
        assert_eq!(p.num_terms(), 1);
        let (m, c) = p.terms().next().unwrap();
        assert_eq!(m.pairs(), vec![(1, 2), (3, 4), (5, 6), (7, 8)]);
        assert_eq!(c, &LaurentPoly::one());
        assert_eq!(p, e(4, 3).mul(&e(4, 1)).unwrap());
    }

    #[test]
    fn identity_is_neutral() {
        let x = e(3, 1)
            .scale(&LaurentPoly::monomial(3, -2))
            .add(&e(3, 2).mul(&e(3, 1)).unwrap())
            .unwrap();
        let id = TLElement::identity(3);
        assert_eq!(id.mul(&x).unwrap(), x);
        assert_eq!(x.mul(&id).unwrap(), x);
    }

    #[test]
    fn width_mismatch_is_an_error() {
        assert!(e(2, 1).mul(&e(3, 1)).is_err());
        assert!(e(2, 1).add(&e(3, 1)).is_err());
    }

    #[test]
    fn trace_examples() {
        assert_eq!(
            TLElement::identity(4).markov_trace(),
            TraceValue::new(LaurentPoly::one(), 0)
        );
        for n in 2..6 {
            for i in 1..n {
                assert_eq!(
                    e(n, i).markov_trace(),
                    TraceValue::new(LaurentPoly::one(), 1),
                    "n={n} i={i}"
                );
            }
        }
        let e1e3 = e(4, 1).mul(&e(4, 3)).unwrap();
        assert_eq!(e1e3.markov_trace(), TraceValue::new(LaurentPoly::one(), 2));
    }

    #[test]
    fn trace_value_reduces_to_lowest_terms() {
        let v = TraceValue::new(&d() * &d(), 3);
        assert_eq!(v.d_power(), 1);
        assert_eq!(v.numerator(), &LaurentPoly::one());
        assert_eq!(TraceValue::new(LaurentPoly::zero(), 4).d_power(), 0);
        assert!(TraceValue::new(LaurentPoly::one(), 1).into_poly().is_err());
    }

    #[test]
    fn trace_value_eval() {
        let a = Complex64::from_polar(1.0, 0.3);
        let dv = -a * a - (a * a).inv();
        let v = TraceValue::new(LaurentPoly::monomial(2, 1), 2);
        assert!((v.eval(a) - 2.0 * a / (dv * dv)).norm() < 1e-12);
    }
}
