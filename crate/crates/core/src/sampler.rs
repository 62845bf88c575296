//! Simulated execution phase: Hadamard-test sampling of the diagonal matrix
//! elements `⟨p|U^{(m)}|p⟩` and the triple loop that turns them into a Jones
//! value estimate.
//!
//! Bits are drawn at the amplitude level: `⟨p|U|p⟩` is read off the dense
//! sector operator and a Bernoulli bit with the Hadamard-test bias is drawn.
//! [`hadamard_circuit_check`] verifies once, by explicit statevector
//! simulation, that the circuit produces exactly those biases.
//!
//! # Random streams
//!
//! Every `(sector m, path index p, test kind)` triple gets its own ChaCha8
//! stream: the generator is keyed by the master seed and its 64-bit stream
//! number is `splitmix64(m ‖ p ‖ kind)`. Estimates therefore do not depend
//! on the order in which paths are visited or on the number of threads.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::braid::BraidWord;
use crate::error::{Error, Result};
use crate::jones_eval::{
    global_gates, result_for, weighted_trace, EvaluationResult, Method, SamplingInfo,
};
use crate::path_model::{ModelParams, PathBasis, SectorOperator};

const PROBABILITY_SLACK: f64 = 1e-9;
const MAX_CIRCUIT_DIM: usize = 64;

#[derive(Clone, Debug, Serialize)]
pub struct SamplerConfig {
    pub epsilon: f64,
    pub delta: f64,
    /// Explicit iteration count; derived from `epsilon`/`delta` when absent.
    pub iterations: Option<u64>,
    pub seed: u64,
}

impl SamplerConfig {
    pub fn new(epsilon: f64, delta: f64, seed: u64) -> Self {
        SamplerConfig {
            epsilon,
            delta,
            iterations: None,
            seed,
        }
    }

    pub fn resolved_iterations(&self) -> Result<u64> {
        match self.iterations {
            Some(0) => Err(Error::InvalidSampler(
                "iterations must be at least 1".into(),
            )),
            Some(it) => Ok(it),
            None => iterations_for(self.epsilon, self.delta),
        }
    }
}

/// `ceil(ln(2/δ) / (2ε²))`.
pub fn iterations_for(epsilon: f64, delta: f64) -> Result<u64> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::InvalidSampler(format!(
            "epsilon {epsilon} not in (0, 1)"
        )));
    }
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::InvalidSampler(format!(
            "delta {delta} not in (0, 1)"
        )));
    }
    let it = ((2.0 / delta).ln() / (2.0 * epsilon * epsilon)).ceil();
    Ok((it as u64).max(1))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TestKind {
    Re = 0,
    Im = 1,
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Stream for one `(m, p, kind)` task under `seed`.
pub fn stream_rng(seed: u64, m: usize, p: usize, kind: TestKind) -> ChaCha8Rng {
    let id = splitmix64(splitmix64(splitmix64(m as u64) ^ p as u64) ^ kind as u64);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(id);
    rng
}

fn diagonal(u: &SectorOperator, p: usize) -> Complex64 {
    u.matrix[(p, p)]
}

fn checked_probability(p: f64) -> Result<f64> {
    if !(-PROBABILITY_SLACK..=1.0 + PROBABILITY_SLACK).contains(&p) || p.is_nan() {
        return Err(Error::InvalidProbability(p));
    }
    Ok(p.clamp(0.0, 1.0))
}

fn draw(prob_zero: f64, rng: &mut impl Rng) -> u8 {
    if rng.random::<f64>() < prob_zero {
        0
    } else {
        1
    }
}

/// One run of the real-part Hadamard test: 0 with probability `1/2 + Re⟨p|U|p⟩/2`.
pub fn hadamard_test_re(u: &SectorOperator, p: usize, rng: &mut impl Rng) -> Result<u8> {
    let prob_zero = checked_probability(0.5 + 0.5 * diagonal(u, p).re)?;
    Ok(draw(prob_zero, rng))
}

/// One run of the imaginary-part Hadamard test: 0 with probability
/// `1/2 - Im⟨p|U|p⟩/2`.
pub fn hadamard_test_im(u: &SectorOperator, p: usize, rng: &mut impl Rng) -> Result<u8> {
    let prob_zero = checked_probability(0.5 - 0.5 * diagonal(u, p).im)?;
    Ok(draw(prob_zero, rng))
}

fn estimate_with(
    u: &SectorOperator,
    p: usize,
    iterations: u64,
    re_rng: &mut impl Rng,
    im_rng: &mut impl Rng,
) -> Result<Complex64> {
    let mut re = 0i64;
    let mut im = 0i64;
    for _ in 0..iterations {
        // (#0 - #1) for the real test, (#1 - #0) for the imaginary test
        re += if hadamard_test_re(u, p, re_rng)? == 0 {
            1
        } else {
            -1
        };
        im -= if hadamard_test_im(u, p, im_rng)? == 0 {
            1
        } else {
            -1
        };
    }
    Ok(Complex64::new(re as f64, im as f64) / iterations as f64)
}

/// Frequency estimate of `⟨p|U|p⟩` from `iterations` runs of each test.
pub fn estimate_bracket(
    u: &SectorOperator,
    p: usize,
    iterations: u64,
    rng: &mut impl Rng,
) -> Result<Complex64> {
    if iterations == 0 {
        return Err(Error::InvalidSampler(
            "iterations must be at least 1".into(),
        ));
    }
    let mut re = 0i64;
    let mut im = 0i64;
    for _ in 0..iterations {
        re += if hadamard_test_re(u, p, rng)? == 0 {
            1
        } else {
            -1
        };
        im -= if hadamard_test_im(u, p, rng)? == 0 {
            1
        } else {
            -1
        };
    }
    Ok(Complex64::new(re as f64, im as f64) / iterations as f64)
}

#[derive(Clone, Debug, Serialize)]
pub struct SampleReport {
    /// Sampled result; `jones_value` is the estimate.
    pub estimate: EvaluationResult,
    pub exact_value: Complex64,
    pub abs_error: f64,
    /// `|s^w| d^{n-1} ε √2`, the error bound when every bracket is within ε
    /// per component.
    pub error_bound: f64,
    /// The execution-phase pseudocode's literal output `Σ_m λ_m Trace_m`.
    pub raw_output: Complex64,
}

/// Runs the execution phase: for every sector `m`, every path `p` in it, and
/// `iterations` rounds, sample both Hadamard tests; accumulate
/// `Σ_m λ_m Σ_p estimate(p)`, then divide by `N` and apply the prefactor.
pub fn ajk_execute(beta: &BraidWord, k: usize, config: &SamplerConfig) -> Result<SampleReport> {
    let iterations = config.resolved_iterations()?;
    let basis = PathBasis::enumerate(ModelParams::new(beta.strands(), k)?);
    let gates = global_gates(&basis, beta)?;

    let tasks: Vec<(usize, usize)> = gates
        .iter()
        .enumerate()
        .flat_map(|(g, op)| (0..op.dim()).map(move |p| (g, p)))
        .collect();
    let estimates: Vec<Complex64> = tasks
        .par_iter()
        .map(|&(g, p)| {
            let op = &gates[g];
            let mut re_rng = stream_rng(config.seed, op.m, p, TestKind::Re);
            let mut im_rng = stream_rng(config.seed, op.m, p, TestKind::Im);
            estimate_with(op, p, iterations, &mut re_rng, &mut im_rng)
        })
        .collect::<Result<_>>()?;

    let mut raw = Complex64::new(0.0, 0.0);
    let mut next = estimates.iter();
    for op in &gates {
        let trace_m: Complex64 = next.by_ref().take(op.dim()).sum();
        raw += trace_m * basis.params.lambda[op.m];
    }
    let sampled_trace = raw / basis.normalization();

    let mut estimate = result_for(&basis, beta, Method::Sampled, sampled_trace);
    estimate.sampling = Some(SamplingInfo {
        iterations,
        epsilon: config.iterations.is_none().then_some(config.epsilon),
        delta: config.iterations.is_none().then_some(config.delta),
        seed: config.seed,
        raw_trace: raw,
    });
    let exact_value = estimate.prefactor * weighted_trace(&basis, &gates)?;
    let abs_error = (estimate.jones_value - exact_value).norm();
    let error_bound = estimate.prefactor.norm() * config.epsilon * std::f64::consts::SQRT_2;
    Ok(SampleReport {
        estimate,
        exact_value,
        abs_error,
        error_bound,
        raw_output: raw,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct CircuitReport {
    pub dim: usize,
    pub path_index: usize,
    pub re_prob_zero_circuit: f64,
    pub re_prob_zero_formula: f64,
    pub im_prob_zero_circuit: f64,
    pub im_prob_zero_formula: f64,
    pub residual: f64,
}

impl CircuitReport {
    pub fn passed(&self, tol: f64) -> bool {
        self.residual <= tol
    }
}

/// Simulates the Hadamard-test circuit on `|0⟩ ⊗ |p⟩` by explicit
/// statevector evolution (`H`, controlled-`U`, optional phase `diag(1, i)`,
/// `H`) and compares the ancilla's `Prob(0)` with the closed forms.
pub fn hadamard_circuit_check(u: &SectorOperator, p: usize) -> Result<CircuitReport> {
    let dim = u.dim();
    if dim > MAX_CIRCUIT_DIM {
        return Err(Error::DimensionTooLarge(dim));
    }
    let run = |phase: bool| -> f64 {
        // index = ancilla * dim + system
        let mut psi = vec![Complex64::new(0.0, 0.0); 2 * dim];
        psi[p] = Complex64::new(1.0, 0.0);
        hadamard_on_ancilla(&mut psi, dim);
        let upper: Vec<Complex64> = (0..dim)
            .map(|r| (0..dim).map(|c| u.matrix[(r, c)] * psi[dim + c]).sum())
            .collect();
        psi[dim..].copy_from_slice(&upper);
        if phase {
            for x in &mut psi[dim..] {
                *x *= Complex64::i();
            }
        }
        hadamard_on_ancilla(&mut psi, dim);
        psi[..dim].iter().map(|x| x.norm_sqr()).sum()
    };
    let a = diagonal(u, p);
    let re_circuit = run(false);
    let im_circuit = run(true);
    let re_formula = 0.5 + 0.5 * a.re;
    let im_formula = 0.5 - 0.5 * a.im;
    Ok(CircuitReport {
        dim,
        path_index: p,
        re_prob_zero_circuit: re_circuit,
        re_prob_zero_formula: re_formula,
        im_prob_zero_circuit: im_circuit,
        im_prob_zero_formula: im_formula,
        residual: (re_circuit - re_formula)
            .abs()
            .max((im_circuit - im_formula).abs()),
    })
}

fn hadamard_on_ancilla(psi: &mut [Complex64], dim: usize) {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    for j in 0..dim {
        let (x0, x1) = (psi[j], psi[dim + j]);
        psi[j] = (x0 + x1) * h;
        psi[dim + j] = (x0 - x1) * h;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::{array, Array2};

    fn scalar_op(z: Complex64, dim: usize) -> SectorOperator {
        SectorOperator {
            m: 1,
            matrix: Array2::eye(dim).mapv(|x: Complex64| x * z),
        }
    }

    fn frequency_of_zero(u: &SectorOperator, im: bool, draws: usize, seed: u64) -> f64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let zeros = (0..draws)
            .filter(|_| {
                let bit = if im {
                    hadamard_test_im(u, 0, &mut rng).unwrap()
                } else {
                    hadamard_test_re(u, 0, &mut rng).unwrap()
                };
                bit == 0
            })
            .count();
        zeros as f64 / draws as f64
    }

    #[test]
    fn deterministic_tests() {
        let one = Complex64::new(1.0, 0.0);
        let i = Complex64::i();
        assert_eq!(frequency_of_zero(&scalar_op(one, 2), false, 1000, 1), 1.0);
        assert_eq!(frequency_of_zero(&scalar_op(-one, 2), false, 1000, 1), 0.0);
        assert_eq!(frequency_of_zero(&scalar_op(i, 2), true, 1000, 1), 0.0);
        assert_eq!(frequency_of_zero(&scalar_op(-i, 2), true, 1000, 1), 1.0);
    }

    #[test]
    fn balanced_tests() {
        // 3σ for p = 1/2 over 10^4 draws is 0.015
        let f = frequency_of_zero(&scalar_op(Complex64::i(), 1), false, 10_000, 2);
        assert!((f - 0.5).abs() <= 0.015, "{f}");
        let f = frequency_of_zero(&scalar_op(Complex64::new(1.0, 0.0), 1), true, 10_000, 3);
        assert!((f - 0.5).abs() <= 0.015, "{f}");
    }

    #[test]
    fn non_unitary_input_is_rejected() {
        let u = scalar_op(Complex64::new(1.5, 0.0), 1);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert!(matches!(
            hadamard_test_re(&u, 0, &mut rng),
            Err(Error::InvalidProbability(_))
        ));
    }

    #[test]
    fn iteration_counts() {
        assert_eq!(iterations_for(0.1, 0.05).unwrap(), 185);
        assert_eq!(iterations_for(0.05, 0.01).unwrap(), 1060);
        let coarse = iterations_for(0.999, 0.5).unwrap();
        assert!((1..=2).contains(&coarse), "{coarse}");
        assert!(iterations_for(0.0, 0.1).is_err());
        assert!(iterations_for(1.0, 0.1).is_err());
        assert!(iterations_for(0.1, 1.0).is_err());
        assert!(iterations_for(0.1, 0.0).is_err());
    }

    #[test]
    fn identity_bracket_has_exact_real_part() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let est =
            estimate_bracket(&scalar_op(Complex64::new(1.0, 0.0), 3), 1, 500, &mut rng).unwrap();
        assert_eq!(est.re, 1.0);
        assert!(est.im.abs() < 0.2);
        let est =
            estimate_bracket(&scalar_op(Complex64::new(-1.0, 0.0), 3), 1, 500, &mut rng).unwrap();
        assert_eq!(est.re, -1.0);
        assert!(estimate_bracket(&scalar_op(Complex64::new(1.0, 0.0), 1), 0, 0, &mut rng).is_err());
    }

    #[test]
    fn seeded_bracket_golden() {
        let u = scalar_op(Complex64::new(0.6, 0.8), 1);
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        let est = estimate_bracket(&u, 0, 100_000, &mut rng).unwrap();
        assert!(
            (est.re - 0.6).abs() < 0.01 && (est.im - 0.8).abs() < 0.01,
            "{est}"
        );
        // regression value recorded from this implementation
        assert_eq!((est.re, est.im), GOLDEN_BRACKET);
    }

    const GOLDEN_BRACKET: (f64, f64) = (0.60316, 0.79764);

    #[test]
    fn streams_are_distinct_and_reproducible() {
        let mut a = stream_rng(5, 2, 0, TestKind::Re);
        let mut b = stream_rng(5, 2, 0, TestKind::Re);
        let mut c = stream_rng(5, 2, 0, TestKind::Im);
        let mut d = stream_rng(5, 2, 1, TestKind::Re);
        let xa: u64 = a.random();
        assert_eq!(xa, b.random::<u64>());
        assert_ne!(xa, c.random::<u64>());
        assert_ne!(xa, d.random::<u64>());
    }

    #[test]
    fn circuit_matches_formulas() {
        let id = scalar_op(Complex64::new(1.0, 0.0), 2);
        let r = hadamard_circuit_check(&id, 1).unwrap();
        assert!((r.re_prob_zero_circuit - 1.0).abs() < 1e-12);
        let neg = scalar_op(Complex64::new(-1.0, 0.0), 2);
        let r = hadamard_circuit_check(&neg, 0).unwrap();
        assert!(r.re_prob_zero_circuit.abs() < 1e-12);

        // a generic 2x2 unitary: rotation times phases
        let (c, s) = (0.3f64.cos(), 0.3f64.sin());
        let ph = Complex64::from_polar(1.0, 0.7);
        let u = SectorOperator {
            m: 1,
            matrix: array![
                [ph * c, Complex64::new(-s, 0.0)],
                [ph * s, Complex64::new(c, 0.0)]
            ],
        };
        assert!(u.unitarity_residual() < 1e-15);
        for p in 0..2 {
            let r = hadamard_circuit_check(&u, p).unwrap();
            assert!(r.passed(1e-12), "{r:?}");
        }
        let big = scalar_op(Complex64::new(1.0, 0.0), 65);
        assert!(hadamard_circuit_check(&big, 0).is_err());
    }
}
