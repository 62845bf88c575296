//! Relation, axiom and invariance suites run by `ajl verify`.

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::braid::BraidWord;
use crate::error::Result;
use crate::jones_eval::{jones_value_exact, markov_trace_pathmodel};
use crate::oracle::jones::random_generator_word;
use crate::oracle::{jones_polynomial_exact, verify_markov_axioms, verify_tl_relations, TLElement};
use crate::path_model::{max_abs_diff, PathBasis, SectorOperator};
use crate::sampler::hadamard_circuit_check;
use crate::tolerances::Tolerances;

#[derive(Clone, Debug, Serialize)]
pub struct SuiteResult {
    pub name: String,
    pub passed: bool,
    pub cases: usize,
    /// Largest residual seen; `null` for exact symbolic suites.
    pub max_residual: Option<f64>,
    pub tolerance: Option<f64>,
}

impl SuiteResult {
    fn exact(name: impl Into<String>, passed: bool, cases: usize) -> Self {
        SuiteResult {
            name: name.into(),
            passed,
            cases,
            max_residual: None,
            tolerance: None,
        }
    }

    fn numeric(name: impl Into<String>, residual: f64, tolerance: f64, cases: usize) -> Self {
        SuiteResult {
            name: name.into(),
            passed: residual <= tolerance,
            cases,
            max_residual: Some(residual),
            tolerance: Some(tolerance),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub n: usize,
    pub k: usize,
    pub seed: u64,
    pub all_passed: bool,
    pub suites: Vec<SuiteResult>,
}

/// Residuals of the path-model representation at one `(n, k)`.
#[derive(Clone, Copy, Debug, Default, Serialize)]
pub struct RepresentationResiduals {
    pub hermiticity: f64,
    pub square: f64,
    pub neighbour: f64,
    pub commutation: f64,
    pub spectrum: f64,
    pub unitarity: f64,
    pub braid_relation: f64,
    pub cross_sector: f64,
}

pub fn representation_residuals(basis: &PathBasis) -> Result<RepresentationResiduals> {
    let n = basis.n();
    let d = basis.params.d;
    let mut r = RepresentationResiduals::default();
    let upd = |slot: &mut f64, v: f64| *slot = slot.max(v);

    for i in 1..n {
        let full = basis.phi_full(i)?;
        for (a, &p) in basis.paths().iter().enumerate() {
            for (b, &q) in basis.paths().iter().enumerate() {
                if basis.sector_of(p) != basis.sector_of(q) {
                    upd(&mut r.cross_sector, full[(a, b)].abs());
                }
            }
        }
    }

    for (m, ps) in basis.sectors() {
        let dim = ps.len();
        let eye = SectorOperator::identity(m, dim);
        let phis: Vec<SectorOperator> = (1..n)
            .map(|i| basis.phi_sector(i, m))
            .collect::<Result<_>>()?;
        for (idx, phi) in phis.iter().enumerate() {
            let i = idx + 1;
            upd(
                &mut r.hermiticity,
                max_abs_diff(&phi.matrix, &phi.dagger().matrix),
            );
            let sq = phi.mul(phi);
            upd(
                &mut r.square,
                max_abs_diff(&sq.matrix, &phi.matrix.mapv(|x| x * d)),
            );
            let real = DMatrix::from_fn(dim, dim, |a, b| phi.matrix[(a, b)].re);
            for ev in real.symmetric_eigen().eigenvalues.iter() {
                upd(&mut r.spectrum, ev.abs().min((ev - d).abs()));
            }
            for (jdx, other) in phis.iter().enumerate() {
                let j = jdx + 1;
                if i.abs_diff(j) == 1 {
                    let tri = phi.mul(other).mul(phi);
                    upd(&mut r.neighbour, max_abs_diff(&tri.matrix, &phi.matrix));
                } else if i.abs_diff(j) >= 2 {
                    upd(
                        &mut r.commutation,
                        max_abs_diff(&phi.mul(other).matrix, &other.mul(phi).matrix),
                    );
                }
            }
        }
        let units: Vec<SectorOperator> = (1..n)
            .map(|i| basis.braid_gen_unitary(i, 1, m))
            .collect::<Result<_>>()?;
        for (idx, u) in units.iter().enumerate() {
            upd(&mut r.unitarity, u.unitarity_residual());
            let inv = basis.braid_gen_unitary(idx + 1, -1, m)?;
            upd(
                &mut r.unitarity,
                max_abs_diff(&u.mul(&inv).matrix, &eye.matrix),
            );
            if let Some(next) = units.get(idx + 1) {
                let lhs = u.mul(next).mul(u);
                let rhs = next.mul(u).mul(next);
                upd(
                    &mut r.braid_relation,
                    max_abs_diff(&lhs.matrix, &rhs.matrix),
                );
            }
        }
    }
    Ok(r)
}

pub fn random_braid(rng: &mut impl Rng, n: usize, max_len: usize) -> BraidWord {
    if n < 2 {
        return BraidWord::identity(n.max(1)).unwrap();
    }
    let len = rng.random_range(0..=max_len);
    let tokens: Vec<i64> = (0..len)
        .map(|_| {
            let i = rng.random_range(1..n as i64);
            if rng.random_bool(0.5) {
                i
            } else {
                -i
            }
        })
        .collect();
    BraidWord::from_signed(n, &tokens).unwrap()
}

/// Runs every suite at strand count `n` and root-of-unity order `k`.
pub fn run_all(
    n: usize,
    k: usize,
    samples: usize,
    seed: u64,
    tol: &Tolerances,
) -> Result<VerifyReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut suites = Vec::new();

    let mut relations_ok = true;
    let mut relation_cases = 0;
    for m in 2..=n.max(2) {
        let rep = verify_tl_relations(m, samples.min(10));
        relation_cases += rep.checks.len();
        relations_ok &= rep.all_passed();
    }
    suites.push(SuiteResult::exact(
        "tl-relations (symbolic)",
        relations_ok,
        relation_cases,
    ));

    let mut axioms_ok = true;
    let mut axiom_cases = 0;
    for m in 1..=n {
        let rep = verify_markov_axioms(m, samples, rng.random());
        axiom_cases += samples;
        axioms_ok &= rep.all_passed();
    }
    suites.push(SuiteResult::exact(
        "markov-trace-axioms (symbolic)",
        axioms_ok,
        axiom_cases,
    ));

    let basis = PathBasis::new(n, k)?;
    let r = representation_residuals(&basis)?;
    suites.push(SuiteResult::numeric(
        "phi-hermiticity",
        r.hermiticity,
        tol.hermiticity,
        n - 1,
    ));
    suites.push(SuiteResult::numeric(
        "phi-square",
        r.square,
        tol.tl_relation,
        n - 1,
    ));
    suites.push(SuiteResult::numeric(
        "phi-neighbour",
        r.neighbour,
        tol.tl_relation,
        n - 1,
    ));
    suites.push(SuiteResult::numeric(
        "phi-commutation",
        r.commutation,
        tol.commutation,
        n - 1,
    ));
    suites.push(SuiteResult::numeric(
        "phi-spectrum",
        r.spectrum,
        tol.spectrum,
        n - 1,
    ));
    suites.push(SuiteResult::numeric(
        "sector-preservation",
        r.cross_sector,
        0.0,
        n - 1,
    ));
    suites.push(SuiteResult::numeric(
        "generator-unitarity",
        r.unitarity,
        tol.unitarity,
        n - 1,
    ));
    suites.push(SuiteResult::numeric(
        "braid-relation",
        r.braid_relation,
        tol.braid_relation,
        n - 1,
    ));

    let mut worst = 0.0f64;
    for _ in 0..samples {
        let word = random_generator_word(&mut rng, n, 10);
        let numeric = markov_trace_pathmodel(&basis, &word)?;
        let symbolic = TLElement::generator_word(n, &word)?
            .markov_trace()
            .eval(basis.params.a);
        worst = worst.max((numeric - symbolic).norm());
    }
    suites.push(SuiteResult::numeric(
        "compatible-trace",
        worst,
        tol.trace,
        samples,
    ));

    let mut worst = 0.0f64;
    let mut worst_unitary = 0.0f64;
    for _ in 0..samples {
        let beta = random_braid(&mut rng, n, 8);
        let exact = jones_value_exact(&beta, k)?.jones_value;
        let oracle = jones_polynomial_exact(&beta)?.eval_a(basis.params.a);
        worst = worst.max((exact - oracle).norm());
        for (m, _) in basis.sectors() {
            worst_unitary = worst_unitary.max(basis.global_gate(&beta, m)?.unitarity_residual());
        }
    }
    suites.push(SuiteResult::numeric(
        "oracle-equivalence",
        worst,
        tol.jones,
        samples,
    ));
    suites.push(SuiteResult::numeric(
        "global-gate-unitarity",
        worst_unitary,
        tol.global_unitarity,
        samples,
    ));

    let mut worst = 0.0f64;
    for _ in 0..samples {
        let beta = random_braid(&mut rng, n, 6);
        let alpha = random_braid(&mut rng, n, 3);
        let base = jones_value_exact(&beta, k)?.jones_value;
        for moved in [
            beta.markov_conjugate(&alpha)?,
            beta.markov_stabilize(1)?,
            beta.markov_stabilize(-1)?,
        ] {
            let v = jones_value_exact(&moved, k)?.jones_value;
            worst = worst.max((v - base).norm());
        }
    }
    suites.push(SuiteResult::numeric(
        "markov-move-invariance",
        worst,
        tol.jones,
        samples,
    ));

    let mut worst = 0.0f64;
    let mut cases = 0;
    if basis.sectors().all(|(_, ps)| ps.len() <= 64) {
        for _ in 0..samples.min(10) {
            let beta = random_braid(&mut rng, n, 4);
            for (m, ps) in basis.sectors() {
                let gate = basis.global_gate(&beta, m)?;
                for p in 0..ps.len() {
                    worst = worst.max(hadamard_circuit_check(&gate, p)?.residual);
                    cases += 1;
                }
            }
        }
    }
    suites.push(SuiteResult::numeric(
        "hadamard-circuit",
        worst,
        tol.circuit,
        cases,
    ));

    Ok(VerifyReport {
        n,
        k,
        seed,
        all_passed: suites.iter().all(|s| s.passed),
        suites,
    })
}
