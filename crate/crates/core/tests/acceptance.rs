//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each, and
//! exits non-zero if any criterion fails.

use std::f64::consts::PI;
use std::process::Command;
use std::time::{Duration, Instant};

use ajl_jones::jones_eval::{jones_value_exact, markov_trace_pathmodel};
use ajl_jones::oracle::jones::random_generator_word;
use ajl_jones::oracle::{
    jones_polynomial_exact, verify_markov_axioms, verify_tl_relations, TLElement,
};
use ajl_jones::path_model::{choose_a, PathBasis};
use ajl_jones::sampler::{ajk_execute, hadamard_circuit_check, SamplerConfig};
use ajl_jones::verify::{random_braid, representation_residuals};
use ajl_jones::BraidWord;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

fn w(text: &str, n: usize) -> BraidWord {
    BraidWord::parse(text, n).unwrap()
}

fn root_of_unity(k: usize) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI / k as f64)
}

/// The oracle's invariant at `t = e^{2πi/k}`: through the `t`-polynomial for
/// knots, through the `A`-polynomial for links (half-integer `t` powers).
fn oracle_at(beta: &BraidWord, k: usize) -> Complex64 {
    let poly = jones_polynomial_exact(beta).unwrap();
    match poly.in_t() {
        Ok(p) => p.eval(root_of_unity(k)),
        Err(_) => poly.eval_a(choose_a(k).unwrap()),
    }
}

fn named_braids() -> Vec<(&'static str, BraidWord)> {
    vec![
        ("unknot b1", w("1", 2)),
        ("Hopf b1^2", w("1 1", 2)),
        ("trefoil b1^3", w("1 1 1", 2)),
        ("figure-eight (b1 b2^-1)^2", w("1 -2 1 -2", 3)),
    ]
}

type Criterion = (
    &'static str,
    &'static str,
    Option<Duration>,
    fn() -> Outcome,
);

fn criterion_1() -> Outcome {
    let mut failures = Vec::new();
    for n in 2..=6 {
        let rel = verify_tl_relations(n, 5);
        if !rel.all_passed() {
            failures.push(format!("relations n={n}"));
        }
        let ax = verify_markov_axioms(n, 50, 1000 + n as u64);
        if !ax.all_passed() {
            failures.push(format!("axioms n={n}"));
        }
    }
    outcome(
        failures.is_empty(),
        if failures.is_empty() {
            "TL relations n=2..6 and three trace axioms on 50 words per n hold symbolically".into()
        } else {
            format!("failed: {}", failures.join(", "))
        },
    )
}

fn criterion_2() -> Outcome {
    let (mut phi, mut braid, mut unit) = (0.0f64, 0.0f64, 0.0f64);
    for n in 1..=8 {
        for k in 3..=8 {
            let r = representation_residuals(&PathBasis::new(n, k).unwrap()).unwrap();
            phi = phi
                .max(r.square)
                .max(r.neighbour)
                .max(r.commutation)
                .max(r.hermiticity);
            braid = braid.max(r.braid_relation);
            unit = unit.max(r.unitarity);
        }
    }
    outcome(
        phi <= 1e-10 && braid <= 1e-10 && unit <= 1e-12,
        format!("max Φ residual {phi:.2e}, braid {braid:.2e}, unitarity {unit:.2e}"),
    )
}

fn criterion_3() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let n = rng.random_range(2..=5);
        let k = rng.random_range(3..=8);
        let word = random_generator_word(&mut rng, n, 10);
        let basis = PathBasis::new(n, k).unwrap();
        let numeric = markov_trace_pathmodel(&basis, &word).unwrap();
        let symbolic = TLElement::generator_word(n, &word).unwrap().markov_trace();
        worst = worst.max((numeric - symbolic.eval(basis.params.a)).norm());
    }
    outcome(worst <= 1e-10, format!("100 words, max |Δ| {worst:.2e}"))
}

fn criterion_4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut braids: Vec<BraidWord> = named_braids().into_iter().map(|(_, b)| b).collect();
    for _ in 0..20 {
        let n = rng.random_range(2..=4);
        braids.push(random_braid(&mut rng, n, 8));
    }
    let mut worst = 0.0f64;
    for beta in &braids {
        for k in 3..=10 {
            let v = jones_value_exact(beta, k).unwrap().jones_value;
            worst = worst.max((v - oracle_at(beta, k)).norm());
        }
    }
    outcome(
        worst <= 1e-9,
        format!("{} braids × k=3..10, max |Δ| {worst:.2e}", braids.len()),
    )
}

fn criterion_5() -> Outcome {
    let mut unknot = 0.0f64;
    for (text, n) in [("1", 2), ("1 2", 3), ("-1 2 3", 4), ("", 1)] {
        for k in 3..=10 {
            unknot =
                unknot.max((jones_value_exact(&w(text, n), k).unwrap().jones_value - 1.0).norm());
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut knots: Vec<BraidWord> = named_braids().into_iter().map(|(_, b)| b).collect();
    for _ in 0..20 {
        let n = rng.random_range(2..=4);
        knots.push(random_braid(&mut rng, n, 8));
    }
    knots.retain(|b| b.closure_components() == 1);
    let at_three = knots
        .iter()
        .map(|b| (jones_value_exact(b, 3).unwrap().jones_value - 1.0).norm())
        .fold(0.0f64, f64::max);
    let mut markov = 0.0f64;
    for _ in 0..50 {
        let n = rng.random_range(1..=4);
        let k = rng.random_range(3..=10);
        let beta = random_braid(&mut rng, n, 6);
        let alpha = random_braid(&mut rng, n, 4);
        let base = jones_value_exact(&beta, k).unwrap().jones_value;
        for moved in [
            beta.markov_conjugate(&alpha).unwrap(),
            beta.markov_stabilize(1).unwrap(),
            beta.markov_stabilize(-1).unwrap(),
        ] {
            markov = markov.max((jones_value_exact(&moved, k).unwrap().jones_value - base).norm());
        }
    }
    outcome(
        unknot <= 1e-9 && at_three <= 1e-9 && markov <= 1e-9,
        format!(
            "unknot {unknot:.2e}; V(k=3)=1 on {} knots {at_three:.2e}; Markov moves on 50 cases {markov:.2e}",
            knots.len()
        ),
    )
}

fn criterion_6a() -> Outcome {
    let trefoil = w("1 1 1", 2);
    let mut within = 0;
    let mut worst_ratio = 0.0f64;
    for seed in 0..100u64 {
        let r = ajk_execute(&trefoil, 5, &SamplerConfig::new(0.05, 0.05, seed)).unwrap();
        if r.abs_error <= r.error_bound {
            within += 1;
        }
        worst_ratio = worst_ratio.max(r.abs_error / r.error_bound);
    }
    outcome(
        within >= 95,
        format!("{within}/100 trefoil runs at k=5 within the scaled bound (worst error/bound {worst_ratio:.3})"),
    )
}

fn criterion_6b() -> Outcome {
    let mut worst = 0.0f64;
    let mut worst_re = 0.0f64;
    let mut worst_im = 0.0f64;
    let mut runs = 0;
    for (n, k) in [(1, 3), (2, 5), (3, 4), (4, 6)] {
        for seed in 0..5u64 {
            let r = ajk_execute(
                &BraidWord::identity(n).unwrap(),
                k,
                &SamplerConfig::new(0.05, 0.05, seed),
            )
            .unwrap();
            let diff = r.estimate.jones_value - r.exact_value;
            worst = worst.max(r.abs_error);
            worst_re = worst_re.max(diff.re.abs());
            worst_im = worst_im.max(diff.im.abs());
            runs += 1;
        }
    }
    outcome(
        worst == 0.0,
        format!(
            "{runs} identity runs, max |error| {worst:.3e} (real part {worst_re:.1e}, imaginary part {worst_im:.3e}); \
             the imaginary Hadamard test has Prob(0) = 1/2 when U = I, so its estimate is a fair-coin average"
        ),
    )
}

/// Every word of length ≤ `max_len` over the generators of `B_n`.
fn all_words(n: usize, max_len: usize) -> Vec<BraidWord> {
    let tokens: Vec<i64> = (1..n as i64).flat_map(|i| [i, -i]).collect();
    let mut layer: Vec<Vec<i64>> = vec![Vec::new()];
    let mut out = vec![BraidWord::identity(n).unwrap()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w| tokens.iter().map(move |&t| [w.as_slice(), &[t]].concat()))
            .collect();
        out.extend(layer.iter().map(|t| BraidWord::from_signed(n, t).unwrap()));
    }
    out
}

fn criterion_7() -> Outcome {
    let mut worst = 0.0f64;
    let mut checks = 0;
    for n in 1..=3 {
        for beta in all_words(n, 4) {
            for k in 3..=5 {
                let basis = PathBasis::new(n, k).unwrap();
                for (m, ps) in basis.sectors() {
                    let u = basis.global_gate(&beta, m).unwrap();
                    for p in 0..ps.len() {
                        worst = worst.max(hadamard_circuit_check(&u, p).unwrap().residual);
                        checks += 1;
                    }
                }
            }
        }
    }
    outcome(
        worst <= 1e-12,
        format!("{checks} (gate, path) pairs, QRe and QIm, max residual {worst:.2e}"),
    )
}

fn criterion_8() -> Outcome {
    let invocations: [&[&str]; 7] = [
        &[
            "sample",
            "--braid",
            "1 1 1",
            "--strands",
            "2",
            "--k",
            "5",
            "--seed",
            "42",
        ],
        &[
            "sample",
            "--braid",
            "1 -2 3 -2 1",
            "--strands",
            "4",
            "--k",
            "7",
            "--seed",
            "3",
            "--epsilon",
            "0.1",
        ],
        &[
            "sample",
            "--braid",
            "1 2",
            "--strands",
            "3",
            "--k",
            "4",
            "--seed",
            "9",
            "--raw",
        ],
        &[
            "evaluate",
            "--braid",
            "1 -2 1 -2",
            "--strands",
            "3",
            "--sweep-k",
            "3..10",
        ],
        &["exact", "--braid", "1 1 1", "--strands", "2"],
        &["paths", "--n", "10", "--k", "6"],
        &["verify", "--k", "5", "--n", "4", "--seed", "8"],
    ];
    let run = |args: &[&str], threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_ajl"))
            .args(args)
            .env("RAYON_NUM_THREADS", threads)
            .output()
            .unwrap()
    };
    let mut mismatches = Vec::new();
    for args in invocations {
        let reference = run(args, "1");
        if !reference.status.success() {
            mismatches.push(format!("{} exited {:?}", args[0], reference.status.code()));
            continue;
        }
        for threads in ["1", "2", "4", "8"] {
            if run(args, threads).stdout != reference.stdout {
                mismatches.push(format!("{} with {threads} threads", args.join(" ")));
            }
        }
    }
    outcome(
        mismatches.is_empty(),
        if mismatches.is_empty() {
            format!(
                "{} invocations × threads 1,1,2,4,8 byte-identical",
                invocations.len()
            )
        } else {
            format!("differences: {}", mismatches.join("; "))
        },
    )
}

fn main() {
    let criteria: [Criterion; 9] = [
        (
            "1",
            "oracle self-consistency",
            Some(Duration::from_secs(10)),
            criterion_1,
        ),
        (
            "2",
            "representation validity",
            Some(Duration::from_secs(60)),
            criterion_2,
        ),
        ("3", "compatible trace", None, criterion_3),
        (
            "4",
            "end-to-end oracle equivalence",
            Some(Duration::from_secs(60)),
            criterion_4,
        ),
        ("5", "knot-theory sanity", None, criterion_5),
        (
            "6a",
            "sampler error bound",
            Some(Duration::from_secs(300)),
            criterion_6a,
        ),
        (
            "6b",
            "identity braid has zero sampling error",
            None,
            criterion_6b,
        ),
        ("7", "Hadamard-test circuit identity", None, criterion_7),
        (
            "8",
            "CLI determinism across runs and thread counts",
            None,
            criterion_8,
        ),
    ];
    let mut failed = 0;
    for (id, name, limit, check) in criteria {
        let start = Instant::now();
        let mut result = check();
        let elapsed = start.elapsed();
        if let Some(limit) = limit {
            if elapsed > limit {
                result.passed = false;
                result
                    .detail
                    .push_str(&format!("; exceeded {}s limit", limit.as_secs()));
            }
        }
        let tag = if result.passed { "PASS" } else { "FAIL" };
        println!(
            "{tag} criterion {id} ({name}): {} [{:.2}s]",
            result.detail,
            elapsed.as_secs_f64()
        );
        failed += usize::from(!result.passed);
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
