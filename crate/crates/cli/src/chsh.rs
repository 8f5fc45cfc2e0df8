use clap::{Args as ClapArgs, ValueEnum};
use serde_json::json;

use qcorr_core::nonlocality::{
    classical_max, classical_min, random_scenario, seesaw_optimize, SeesawConfig,
};
use qcorr_core::random::sample_rng;
use qcorr_core::TSIRELSON_BOUND;

use crate::output::{num, nums, par_map, to_json};
use crate::{usage, CliError, Format, Outcome, Status};

/// Slack on `2√2` before a scan or seesaw value counts as a violation.
pub const BOUND_TOL: f64 = 1e-9;

#[derive(ClapArgs, Debug, Clone)]
pub struct Args {
    #[arg(long, value_enum, default_value_t = Mode::Classical)]
    pub mode: Mode,
    /// Local dimension of each party.
    #[arg(long, default_value_t = 2)]
    pub dim: usize,
    /// Local dimension of Bob's system, if different from Alice's.
    #[arg(long)]
    pub dim_b: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Seesaw stopping threshold on the per-iteration improvement.
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    #[arg(long, default_value_t = 500)]
    pub max_iters: usize,
    /// Number of random scenarios for `--mode scan`.
    #[arg(long, default_value_t = 10_000)]
    pub samples: u64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Classical,
    Seesaw,
    Scan,
}

/// CHSH value of random scenario `index` of a scan.
pub fn scan_sample(seed: u64, index: u64, dims: (usize, usize)) -> qcorr_core::Result<f64> {
    let mut rng = sample_rng(seed, index);
    random_scenario(&mut rng, dims)?.chsh_value()
}

pub fn run(a: &Args) -> Result<Outcome, CliError> {
    if a.format != Format::Json {
        return Err(usage("chsh reports are JSON only"));
    }
    let dims = (a.dim, a.dim_b.unwrap_or(a.dim));
    let check_dims = |min: usize| {
        if dims.0 < min || dims.1 < min || dims.0 > 8 || dims.1 > 8 {
            Err(usage(format!(
                "local dimensions must lie in {min}..=8, got {}x{}",
                dims.0, dims.1
            )))
        } else {
            Ok(())
        }
    };
    match a.mode {
        Mode::Classical => {
            let (value, w) = classical_max();
            let (min, _) = classical_min();
            let doc = json!({
                "mode": "classical",
                "value": value,
                "min": min,
                "strategies": 16,
                "witness": { "a1": w.a[0], "a2": w.a[1], "b1": w.b[0], "b2": w.b[1] },
            });
            Ok(Outcome {
                body: to_json(&doc),
                status: if value == 2 {
                    Status::Ok
                } else {
                    Status::CheckFailed
                },
                summary: Some(format!(
                    "classical CHSH maximum over 16 strategies: {value}"
                )),
            })
        }
        Mode::Seesaw => {
            check_dims(2)?;
            if !(a.tol.is_finite() && a.tol >= 0.0) || a.max_iters == 0 {
                return Err(usage("--tol must be nonnegative and --max-iters positive"));
            }
            let cfg = SeesawConfig {
                dims,
                seed: a.seed,
                tol: a.tol,
                max_iters: a.max_iters,
            };
            let r = seesaw_optimize(&cfg)?;
            let within = r.value <= TSIRELSON_BOUND + BOUND_TOL;
            let doc = json!({
                "mode": "seesaw",
                "seed": a.seed,
                "dims": [dims.0, dims.1],
                "value": num(r.value),
                "bound": num(TSIRELSON_BOUND),
                "gap": num(TSIRELSON_BOUND - r.value),
                "converged": r.converged,
                "iterations": r.iterations,
                "value_trace": nums(&r.trace),
            });
            let status = if !within {
                Status::CheckFailed
            } else if !r.converged {
                Status::NoConvergence
            } else {
                Status::Ok
            };
            Ok(Outcome {
                body: to_json(&doc),
                status,
                summary: Some(format!(
                    "seesaw {}x{} seed {}: {:.12} after {} iterations{}",
                    dims.0,
                    dims.1,
                    a.seed,
                    r.value,
                    r.iterations,
                    if r.converged { "" } else { " (not converged)" }
                )),
            })
        }
        Mode::Scan => {
            check_dims(1)?;
            let values = par_map(a.samples, |i| scan_sample(a.seed, i, dims))
                .into_iter()
                .collect::<qcorr_core::Result<Vec<f64>>>()?;
            let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            let min = values.iter().copied().fold(f64::INFINITY, f64::min);
            let passed = values
                .iter()
                .all(|v| v.abs() <= TSIRELSON_BOUND + BOUND_TOL);
            let doc = json!({
                "mode": "scan",
                "seed": a.seed,
                "samples": a.samples,
                "dims": [dims.0, dims.1],
                "max_witnessed": num(max),
                "min_witnessed": num(min),
                "bound": num(TSIRELSON_BOUND),
                "passed": passed,
            });
            Ok(Outcome {
                body: to_json(&doc),
                status: if passed {
                    Status::Ok
                } else {
                    Status::CheckFailed
                },
                summary: Some(format!(
                    "scan of {} scenarios: max CHSH {max:.9}, bound {TSIRELSON_BOUND:.9}: {}",
                    a.samples,
                    if passed { "pass" } else { "FAIL" }
                )),
            })
        }
    }
}
