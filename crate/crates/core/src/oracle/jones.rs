//! Exact Jones polynomials of braid closures through the Temperley-Lieb
//! diagram algebra.

use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::laurent::LaurentPoly;
use super::tl::{TLElement, TraceValue};
use crate::braid::BraidWord;
use crate::error::Result;

/// Image of a braid under `b_i -> A E_i + A^{-1} 1`,
/// `b_i^{-1} -> A^{-1} E_i + A 1`.
pub fn jones_rep_tl(beta: &BraidWord) -> TLElement {
    let n = beta.strands();
    let id = TLElement::identity(n);
    let mut acc = id.clone();
    for l in beta.letters() {
        let e = TLElement::generator(n, l.index).expect("braid word letters are in range");
        let s = l.exponent as i64;
        let factor = e
            .scale(&LaurentPoly::monomial(1, s))
            .add(&id.scale(&LaurentPoly::monomial(1, -s)))
            .expect("same width");
        acc = acc.mul(&factor).expect("same width");
    }
    acc
}

/// `d^{n-1} Tr(ρ_A(β))`, the unnormalized bracket of the closure.
pub fn closure_bracket(beta: &BraidWord) -> Result<LaurentPoly> {
    let n = beta.strands() as u32;
    jones_rep_tl(beta)
        .markov_trace()
        .mul_loop_power(n - 1)
        .into_poly()
}

/// The per-crossing normalization `s = sign * A^exp`; the Jones polynomial is
/// `s^{writhe} * bracket`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct WritheFactor {
    pub sign: i8,
    pub exp: i64,
}

impl WritheFactor {
    pub fn pow(self, w: i64) -> LaurentPoly {
        let sign = if self.sign < 0 && w.rem_euclid(2) == 1 {
            -1
        } else {
            1
        };
        LaurentPoly::monomial(sign, self.exp * w)
    }

    pub fn eval(self, a: num_complex::Complex64, w: i64) -> num_complex::Complex64 {
        let sign = if self.sign < 0 && w.rem_euclid(2) == 1 {
            -1.0
        } else {
            1.0
        };
        a.powi((self.exp * w) as i32) * sign
    }

    pub fn label(self) -> String {
        format!("{}A^{}", if self.sign < 0 { "-" } else { "" }, self.exp)
    }
}

/// Calibrates the writhe factor once: the closure of `b_1 ∈ B_2` is the
/// unknot, so `s * bracket(b_1) = 1`; the closure of `b_1^{-1}` must agree.
pub fn writhe_factor() -> WritheFactor {
    static FACTOR: OnceLock<WritheFactor> = OnceLock::new();
    *FACTOR.get_or_init(|| {
        let pos = closure_bracket(&BraidWord::from_signed(2, &[1]).unwrap()).unwrap();
        let neg = closure_bracket(&BraidWord::from_signed(2, &[-1]).unwrap()).unwrap();
        let (c, e) = pos
            .as_monomial()
            .expect("bracket of a one-crossing unknot is a monomial");
        let sign: i8 = if c == &1.into() {
            1
        } else if c == &(-1).into() {
            -1
        } else {
            panic!("bracket of a one-crossing unknot has coefficient {c}");
        };
        let s = WritheFactor { sign, exp: -e };
        assert_eq!(
            &s.pow(-1) * &neg,
            LaurentPoly::one(),
            "writhe factor does not normalize the negative stabilization"
        );
        s
    })
}

/// Exact Jones polynomial of a braid closure, as a Laurent polynomial in `A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JonesPolynomial {
    pub in_a: LaurentPoly,
    pub writhe: i64,
    pub strands: usize,
    pub components: usize,
}

impl JonesPolynomial {
    /// The same invariant in `t = A^{-4}`; fails for closures whose
    /// polynomial has half-integer powers of `t` (even component counts).
    pub fn in_t(&self) -> Result<LaurentPoly> {
        self.in_a.to_t()
    }

    pub fn eval_a(&self, a: num_complex::Complex64) -> num_complex::Complex64 {
        self.in_a.eval(a)
    }
}

pub fn jones_polynomial_exact(beta: &BraidWord) -> Result<JonesPolynomial> {
    let bracket = closure_bracket(beta)?;
    let w = beta.writhe();
    Ok(JonesPolynomial {
        in_a: &writhe_factor().pow(w) * &bracket,
        writhe: w,
        strands: beta.strands(),
        components: beta.closure_components(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationCheck {
    pub relation: String,
    pub passed: bool,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct RelationReport {
    pub checks: Vec<RelationCheck>,
}

impl RelationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    fn push(&mut self, relation: String, passed: bool) {
        self.checks.push(RelationCheck { relation, passed });
    }
}

/// Random product of up to `max_len` generators of `TL_n`.
pub fn random_generator_word(rng: &mut impl Rng, n: usize, max_len: usize) -> Vec<usize> {
    if n < 2 {
        return Vec::new();
    }
    let len = rng.random_range(0..=max_len);
    (0..len).map(|_| rng.random_range(1..n)).collect()
}

/// Checks the defining relations of `TL_n(d)` symbolically. Every relation
/// instance is checked bare and inside `sample_count` random contexts
/// `X (lhs) Y = X (rhs) Y`.
pub fn verify_tl_relations(n: usize, sample_count: usize) -> RelationReport {
    let mut report = RelationReport::default();
    if n < 2 {
        return report;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x7e11_0000 + n as u64);
    let d = LaurentPoly::loop_value();
    let e = |i: usize| TLElement::generator(n, i).unwrap();
    let contexts: Vec<(TLElement, TLElement)> =
        std::iter::once((TLElement::identity(n), TLElement::identity(n)))
            .chain((0..sample_count).map(|_| {
                let x =
                    TLElement::generator_word(n, &random_generator_word(&mut rng, n, 4)).unwrap();
                let y =
                    TLElement::generator_word(n, &random_generator_word(&mut rng, n, 4)).unwrap();
                (x, y)
            }))
            .collect();
    let holds = |lhs: &TLElement, rhs: &TLElement| {
        contexts.iter().all(|(x, y)| {
            let l = x.mul(lhs).unwrap().mul(y).unwrap();
            let r = x.mul(rhs).unwrap().mul(y).unwrap();
            l == r
        })
    };

    for i in 1..n {
        let sq = e(i).mul(&e(i)).unwrap();
        report.push(format!("E{i}^2 = d E{i}"), holds(&sq, &e(i).scale(&d)));
    }
    for i in 1..n {
        for j in [i.wrapping_sub(1), i + 1] {
            if j == 0 || j >= n {
                continue;
            }
            let lhs = e(i).mul(&e(j)).unwrap().mul(&e(i)).unwrap();
            report.push(format!("E{i} E{j} E{i} = E{i}"), holds(&lhs, &e(i)));
        }
    }
    for i in 1..n {
        for j in (i + 2)..n {
            let lhs = e(i).mul(&e(j)).unwrap();
            let rhs = e(j).mul(&e(i)).unwrap();
            report.push(format!("E{i} E{j} = E{j} E{i}"), holds(&lhs, &rhs));
        }
    }
    report
}

/// Checks the three Markov trace axioms on `samples` random generator words
/// in `TL_n`: normalization, cyclicity and `Tr(X E_n) = Tr(X) / d` in
/// `TL_{n+1}`.
pub fn verify_markov_axioms(n: usize, samples: usize, seed: u64) -> RelationReport {
    let mut report = RelationReport::default();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    report.push(
        format!("Tr_{n}(1) = 1"),
        TLElement::identity(n).markov_trace() == TraceValue::new(LaurentPoly::one(), 0),
    );
    let mut cyclic = true;
    let mut markov = true;
    for _ in 0..samples {
        let x = TLElement::generator_word(n, &random_generator_word(&mut rng, n, 6)).unwrap();
        let y = TLElement::generator_word(n, &random_generator_word(&mut rng, n, 6)).unwrap();
        let coeff = LaurentPoly::monomial(rng.random_range(-3i64..=3), rng.random_range(-4i64..=4));
        let x = x.add(&y.scale(&coeff)).unwrap();
        cyclic &= x.mul(&y).unwrap().markov_trace() == y.mul(&x).unwrap().markov_trace();
        let en = TLElement::generator(n + 1, n).unwrap();
        let lhs = x.embed().mul(&en).unwrap().markov_trace();
        markov &= lhs == x.markov_trace().div_loop_value();
    }
    report.push(
        format!("Tr_{n}(XY) = Tr_{n}(YX) on {samples} samples"),
        cyclic,
    );
    report.push(
        format!("Tr_{}(X E_{n}) = Tr_{n}(X)/d on {samples} samples", n + 1),
        markov,
    );
    report
}
