//! Exact classical evaluation of `V(e^{2πi/k})` through the path model.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::braid::BraidWord;
use crate::error::{Error, Result};
use crate::oracle::writhe_factor;
use crate::path_model::{AChoice, ModelParams, PathBasis, SectorOperator};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    ExactPathModel,
    Oracle,
    Sampled,
}

#[derive(Clone, Debug, Serialize)]
pub struct SamplingInfo {
    pub iterations: u64,
    pub epsilon: Option<f64>,
    pub delta: Option<f64>,
    pub seed: u64,
    /// `Σ_m λ_m Σ_p ⟨p|U|p⟩` estimate, before the `1/N` and prefactor.
    pub raw_trace: Complex64,
}

#[derive(Clone, Debug, Serialize)]
pub struct EvaluationResult {
    pub method: Method,
    pub k: usize,
    pub n: usize,
    pub word: Vec<i64>,
    pub writhe: i64,
    pub a: Complex64,
    pub a_choice: AChoice,
    pub d: f64,
    /// Per-crossing factor `s` in `V = s^w d^{n-1} Tr`.
    pub writhe_factor: String,
    pub prefactor: Complex64,
    pub normalization: f64,
    pub weighted_trace: Complex64,
    pub jones_value: Complex64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sampling: Option<SamplingInfo>,
}

impl EvaluationResult {
    /// Recomputes `prefactor * weighted_trace` from the stored fields.
    pub fn recomputed_value(&self) -> Complex64 {
        self.prefactor * self.weighted_trace
    }
}

/// `s^w d^{n-1}` at the numeric `A`.
pub fn prefactor(params: &ModelParams, writhe: i64) -> Complex64 {
    writhe_factor().eval(params.a, writhe) * params.d.powi(params.n as i32 - 1)
}

/// `(1/N) Σ_m λ_m Tr U^{(m)}`; `ops` must cover exactly the nonempty sectors.
pub fn weighted_trace(basis: &PathBasis, ops: &[SectorOperator]) -> Result<Complex64> {
    let mut sum = Complex64::new(0.0, 0.0);
    for (m, paths) in basis.sectors() {
        let op = ops
            .iter()
            .find(|o| o.m == m)
            .ok_or(Error::MissingSector(m))?;
        if op.dim() != paths.len() {
            return Err(Error::MissingSector(m));
        }
        sum += op.trace() * basis.params.lambda[m];
    }
    if let Some(extra) = ops.iter().find(|o| basis.sector(o.m).is_none()) {
        return Err(Error::EmptySector(extra.m));
    }
    Ok(sum / basis.normalization())
}

/// Global gates for every nonempty sector, computed in parallel and returned
/// in sector order.
pub fn global_gates(basis: &PathBasis, beta: &BraidWord) -> Result<Vec<SectorOperator>> {
    let sectors: Vec<usize> = basis.sectors().map(|(m, _)| m).collect();
    sectors
        .par_iter()
        .map(|&m| basis.global_gate(beta, m))
        .collect()
}

pub fn jones_value_exact(beta: &BraidWord, k: usize) -> Result<EvaluationResult> {
    jones_value_with(beta, k, AChoice::Constrained)
}

pub fn jones_value_with(beta: &BraidWord, k: usize, choice: AChoice) -> Result<EvaluationResult> {
    let params = ModelParams::with_choice(beta.strands(), k, choice)?;
    let basis = PathBasis::enumerate(params);
    let gates = global_gates(&basis, beta)?;
    let trace = weighted_trace(&basis, &gates)?;
    Ok(result_for(&basis, beta, Method::ExactPathModel, trace))
}

pub(crate) fn result_for(
    basis: &PathBasis,
    beta: &BraidWord,
    method: Method,
    weighted_trace: Complex64,
) -> EvaluationResult {
    let params = &basis.params;
    let pre = prefactor(params, beta.writhe());
    EvaluationResult {
        method,
        k: params.k,
        n: params.n,
        word: beta.to_signed(),
        writhe: beta.writhe(),
        a: params.a,
        a_choice: params.a_choice,
        d: params.d,
        writhe_factor: writhe_factor().label(),
        prefactor: pre,
        normalization: basis.normalization(),
        weighted_trace,
        jones_value: pre * weighted_trace,
        sampling: None,
    }
}

/// The oracle polynomial evaluated at the same numeric `A`, packaged like a
/// path-model result.
pub fn oracle_value(beta: &BraidWord, k: usize) -> Result<EvaluationResult> {
    let poly = crate::oracle::jones_polynomial_exact(beta)?;
    let params = ModelParams::new(beta.strands(), k)?;
    let basis = PathBasis::enumerate(params);
    let v = poly.eval_a(basis.params.a);
    let pre = prefactor(&basis.params, beta.writhe());
    let mut r = result_for(&basis, beta, Method::Oracle, v / pre);
    r.jones_value = v;
    Ok(r)
}

/// Weighted trace of `Φ_{w_1} Φ_{w_2} ...`.
pub fn markov_trace_pathmodel(basis: &PathBasis, word: &[usize]) -> Result<Complex64> {
    let mut ops = Vec::new();
    for (m, paths) in basis.sectors() {
        let mut acc = SectorOperator::identity(m, paths.len());
        for &i in word {
            acc = acc.mul(&basis.phi_sector(i, m)?);
        }
        ops.push(acc);
    }
    weighted_trace(basis, &ops)
}
