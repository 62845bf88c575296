//! Command-line front end. `main.rs` only forwards `std::env::args` to
//! [`run_from`] and writes the returned streams.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;
use serde_json::{json, Value};

use crate::braid::{BraidJson, BraidWord};
use crate::error::{Error, Result};
use crate::jones_eval::jones_value_with;
use crate::oracle::jones_polynomial_exact;
use crate::path_model::{choose_a, AChoice, PathBasis};
use crate::sampler::{ajk_execute, SamplerConfig};
use crate::tolerances::{Tolerances, PROFILE_ENV};
use crate::verify::run_all;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "ajl",
    version,
    about = "Jones polynomial evaluation at roots of unity"
)]
pub struct Cli {
    /// Tolerance profile: strict or relaxed. Defaults to $AJL_TOLERANCE_PROFILE, then strict.
    #[arg(long, global = true)]
    pub profile: Option<String>,

    /// Override one tolerance, e.g. --tol jones=1e-8. Repeatable.
    #[arg(long = "tol", global = true, value_name = "KEY=VALUE")]
    pub tol: Vec<String>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Path-basis dimensions per endpoint sector.
    Paths {
        #[arg(long, alias = "strands")]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    /// Exact Jones polynomial from the diagram-algebra oracle.
    Exact {
        #[command(flatten)]
        braid: BraidInput,
        /// Also evaluate at t = e^{2πi/k} for every k in a..b (inclusive).
        #[arg(long, value_name = "A..B")]
        sweep_k: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Exact evaluation through the path-model representation.
    Evaluate {
        #[command(flatten)]
        braid: BraidInput,
        #[arg(long, required_unless_present = "sweep_k")]
        k: Option<usize>,
        #[arg(long, value_name = "A..B", conflicts_with = "k")]
        sweep_k: Option<String>,
        #[arg(long, value_enum, default_value_t = AChoiceArg::Constrained)]
        a_choice: AChoiceArg,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Simulated Hadamard-test sampling.
    Sample {
        #[command(flatten)]
        braid: BraidInput,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 0.05)]
        epsilon: f64,
        #[arg(long, default_value_t = 0.05)]
        delta: f64,
        /// Fixed iteration count instead of the Hoeffding count from epsilon/delta.
        #[arg(long)]
        iterations: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Report the unnormalized Σ_m λ_m Trace_m as the primary value.
        #[arg(long)]
        raw: bool,
    },
    /// Relation, axiom and invariance suites.
    Verify {
        #[arg(long)]
        k: usize,
        #[arg(long, alias = "strands")]
        n: usize,
        /// Random cases per suite.
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Args)]
pub struct BraidInput {
    /// Braid word, e.g. "1 -2 1".
    #[arg(long, allow_hyphen_values = true)]
    pub braid: Option<String>,
    /// JSON file {"strands": n, "word": [...]}.
    #[arg(long)]
    pub braid_file: Option<PathBuf>,
    #[arg(long)]
    pub strands: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum AChoiceArg {
    Constrained,
    Literal,
    Conjugate,
}

impl From<AChoiceArg> for AChoice {
    fn from(a: AChoiceArg) -> Self {
        match a {
            AChoiceArg::Constrained => AChoice::Constrained,
            AChoiceArg::Literal => AChoice::Literal,
            AChoiceArg::Conjugate => AChoice::Conjugate,
        }
    }
}

/// Exit status plus the two output streams.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunOutput {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

impl RunOutput {
    fn usage(msg: impl std::fmt::Display) -> Self {
        RunOutput {
            status: EXIT_USAGE,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_from<I, T>(args: I) -> RunOutput
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => {
            let status = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                RunOutput {
                    status,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                RunOutput {
                    status,
                    stdout: text,
                    stderr: String::new(),
                }
            }
        }
    }
}

pub fn run(cli: &Cli) -> RunOutput {
    let tol = match tolerances(cli) {
        Ok(t) => t,
        Err(msg) => return RunOutput::usage(msg),
    };
    match dispatch(&cli.command, &tol) {
        Ok((status, stdout)) => RunOutput {
            status,
            stdout,
            stderr: if status == EXIT_FAILED {
                "verification failed\n".to_string()
            } else {
                String::new()
            },
        },
        Err(e) => RunOutput::usage(e),
    }
}

fn tolerances(cli: &Cli) -> std::result::Result<Tolerances, String> {
    let mut tol = match &cli.profile {
        Some(name) => Tolerances::profile(name)
            .ok_or_else(|| format!("unknown tolerance profile '{name}'"))?,
        None => match std::env::var(PROFILE_ENV) {
            Ok(name) => Tolerances::profile(&name)
                .ok_or_else(|| format!("unknown tolerance profile '{name}' in {PROFILE_ENV}"))?,
            Err(_) => Tolerances::default(),
        },
    };
    for item in &cli.tol {
        let (key, value) = item
            .split_once('=')
            .ok_or_else(|| format!("--tol expects KEY=VALUE, got '{item}'"))?;
        let value: f64 = value
            .trim()
            .parse()
            .map_err(|_| format!("--tol {key}: '{value}' is not a number"))?;
        if !tol.set(key.trim(), value) {
            return Err(format!("--tol: unknown tolerance '{key}'"));
        }
    }
    Ok(tol)
}

impl BraidInput {
    pub fn resolve(&self) -> Result<BraidWord> {
        match (&self.braid, &self.braid_file) {
            (Some(_), Some(_)) => Err(Error::Parse(
                "give either --braid or --braid-file, not both".into(),
            )),
            (None, None) => Err(Error::Parse(
                "a braid is required: --braid or --braid-file".into(),
            )),
            (Some(text), None) => {
                let strands = self
                    .strands
                    .ok_or_else(|| Error::Parse("--braid needs --strands".into()))?;
                BraidWord::parse(text, strands)
            }
            (None, Some(path)) => {
                let raw = std::fs::read_to_string(path)
                    .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
                let json: BraidJson = serde_json::from_str(&raw)
                    .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
                if let Some(s) = self.strands {
                    if s != json.strands {
                        return Err(Error::StrandMismatch {
                            left: s,
                            right: json.strands,
                        });
                    }
                }
                BraidWord::try_from(json)
            }
        }
    }
}

/// Parses `a..b` or `a..=b`, both inclusive.
pub fn parse_k_range(text: &str) -> Result<std::ops::RangeInclusive<usize>> {
    let bad = || Error::Parse(format!("bad k range '{text}', expected a..b"));
    let (lo, hi) = text.split_once("..").ok_or_else(bad)?;
    let hi = hi.strip_prefix('=').unwrap_or(hi);
    let lo: usize = lo.trim().parse().map_err(|_| bad())?;
    let hi: usize = hi.trim().parse().map_err(|_| bad())?;
    if lo < 3 {
        return Err(Error::InvalidK(lo));
    }
    if hi < lo {
        return Err(bad());
    }
    Ok(lo..=hi)
}

#[derive(Serialize)]
struct SweepRow {
    k: usize,
    value: Complex64,
    abs: f64,
}

fn sweep_output(word: &BraidWord, rows: &[SweepRow], format: Format) -> Result<String> {
    match format {
        Format::Json => Ok(to_json(&json!({
            "strands": word.strands(),
            "word": word.to_signed(),
            "sweep": rows,
        }))),
        Format::Csv => {
            let mut out = String::from("k,re,im,abs\n");
            for r in rows {
                writeln!(out, "{},{},{},{}", r.k, r.value.re, r.value.im, r.abs).unwrap();
            }
            Ok(out)
        }
    }
}

fn require_json(format: Format) -> Result<()> {
    match format {
        Format::Json => Ok(()),
        Format::Csv => Err(Error::Parse(
            "csv output is only available with --sweep-k".into(),
        )),
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("output is serializable");
    s.push('\n');
    s
}

fn dispatch(cmd: &Command, tol: &Tolerances) -> Result<(i32, String)> {
    match cmd {
        Command::Paths { n, k } => {
            let basis = PathBasis::new(*n, *k)?;
            let dims: serde_json::Map<String, Value> = basis
                .sector_dims()
                .into_iter()
                .map(|(m, d)| (m.to_string(), json!(d)))
                .collect();
            Ok((
                EXIT_OK,
                to_json(&json!({ "n": n, "k": k, "dims": dims, "total": basis.dim() })),
            ))
        }
        Command::Exact {
            braid,
            sweep_k,
            format,
        } => {
            let word = braid.resolve()?;
            let poly = jones_polynomial_exact(&word)?;
            if let Some(range) = sweep_k {
                let rows = parse_k_range(range)?
                    .map(|k| {
                        let value = poly.eval_a(choose_a(k)?);
                        Ok(SweepRow {
                            k,
                            value,
                            abs: value.norm(),
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                return Ok((EXIT_OK, sweep_output(&word, &rows, *format)?));
            }
            require_json(*format)?;
            let (in_t, t_reason) = match poly.in_t() {
                Ok(p) => (Some(p), None),
                Err(e) => (None, Some(e.to_string())),
            };
            let out = json!({
                "strands": word.strands(),
                "word": word.to_signed(),
                "writhe": poly.writhe,
                "components": poly.components,
                "writhe_factor": crate::oracle::writhe_factor().label(),
                "polynomial_a": poly.in_a.to_json("A"),
                "polynomial_a_text": poly.in_a.display("A"),
                "polynomial_t": in_t.as_ref().map(|p| p.to_json("t")),
                "polynomial_t_text": in_t.as_ref().map(|p| p.display("t")),
                "polynomial_t_unavailable": t_reason,
            });
            Ok((EXIT_OK, to_json(&out)))
        }
        Command::Evaluate {
            braid,
            k,
            sweep_k,
            a_choice,
            format,
        } => {
            let word = braid.resolve()?;
            let choice = AChoice::from(*a_choice);
            if let Some(range) = sweep_k {
                let rows = parse_k_range(range)?
                    .map(|k| {
                        let value = jones_value_with(&word, k, choice)?.jones_value;
                        Ok(SweepRow {
                            k,
                            value,
                            abs: value.norm(),
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                return Ok((EXIT_OK, sweep_output(&word, &rows, *format)?));
            }
            require_json(*format)?;
            let k = k.expect("clap enforces --k without --sweep-k");
            Ok((EXIT_OK, to_json(&jones_value_with(&word, k, choice)?)))
        }
        Command::Sample {
            braid,
            k,
            epsilon,
            delta,
            iterations,
            seed,
            raw,
        } => {
            let word = braid.resolve()?;
            let config = SamplerConfig {
                epsilon: *epsilon,
                delta: *delta,
                iterations: *iterations,
                seed: *seed,
            };
            let report = ajk_execute(&word, *k, &config)?;
            if *raw {
                let info = report
                    .estimate
                    .sampling
                    .as_ref()
                    .expect("sampled results carry sampling info");
                return Ok((
                    EXIT_OK,
                    to_json(&json!({
                        "raw_output": report.raw_output,
                        "iterations": info.iterations,
                        "seed": info.seed,
                        "k": k,
                        "word": word.to_signed(),
                        "strands": word.strands(),
                    })),
                ));
            }
            Ok((EXIT_OK, to_json(&report)))
        }
        Command::Verify {
            k,
            n,
            samples,
            seed,
        } => {
            let report = run_all(*n, *k, *samples, *seed, tol)?;
            let status = if report.all_passed {
                EXIT_OK
            } else {
                EXIT_FAILED
            };
            Ok((
                status,
                to_json(&json!({ "tolerances": tol, "report": report })),
            ))
        }
    }
}
