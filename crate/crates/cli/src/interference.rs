use clap::{Args as ClapArgs, ValueEnum};
use serde_json::json;

use qcorr_core::interference::{
    interference_sweep, phase_family, phase_grid, sorkin_term, PHASE_GRID_POINTS,
};
use qcorr_core::random::{random_event, random_orthogonal_events, random_state, sample_rng};
use qcorr_core::SlitConfiguration;

use crate::output::{fmt17, num, nums, par_map, to_json};
use crate::{usage, CliError, Format, Outcome, Status};

#[derive(ClapArgs, Debug, Clone)]
pub struct Args {
    /// Interference order n (number of slits).
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u8).range(2..=5))]
    pub order: u8,
    /// Hilbert-space dimension.
    #[arg(long, default_value_t = 4)]
    pub dim: usize,
    /// Number of random configurations.
    #[arg(long, default_value_t = 1000)]
    pub samples: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Replace random sampling by a deterministic parameter sweep.
    #[arg(long)]
    pub sweep: Option<Sweep>,
    /// Grid points for `--sweep phase` over [0, 2π].
    #[arg(long, default_value_t = PHASE_GRID_POINTS)]
    pub points: usize,
    /// Pass threshold on |I_n| for n ≥ 3 (default 1e-10 for n = 3, 1e-9 above).
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Sweep {
    Phase,
}

pub const MAX_DIM: usize = 64;

fn random_configuration(seed: u64, index: u64, dim: usize, order: usize) -> SlitConfiguration {
    let mut rng = sample_rng(seed, index);
    let slits = random_orthogonal_events(&mut rng, dim, order);
    let detector = random_event(&mut rng, dim);
    let state = random_state(&mut rng, dim);
    SlitConfiguration::new(slits, detector, state).expect("random slits are orthogonal")
}

/// `I_order` for sample `index` of a run.
pub fn sample_term(seed: u64, index: u64, dim: usize, order: usize) -> qcorr_core::Result<f64> {
    sorkin_term(&random_configuration(seed, index, dim, order), order)
}

pub fn run(a: &Args) -> Result<Outcome, CliError> {
    let order = usize::from(a.order);
    if a.dim < order {
        return Err(usage(format!(
            "dimension {} cannot hold {order} orthogonal nonzero slits",
            a.dim
        )));
    }
    if a.dim > MAX_DIM {
        return Err(usage(format!("dimension {} exceeds {MAX_DIM}", a.dim)));
    }
    if a.format == Format::Text {
        return Err(usage("interference supports --format csv or json"));
    }
    let tol = a.tol.unwrap_or(if order == 3 { 1e-10 } else { 1e-9 });
    if !(tol.is_finite() && tol > 0.0) {
        return Err(usage("--tol must be positive"));
    }
    let checked = order >= 3;

    let (rows, header, label): (Vec<(f64, f64)>, &str, &str) = match a.sweep {
        Some(Sweep::Phase) => {
            if a.points == 0 {
                return Err(usage("--points must be positive"));
            }
            let rows =
                interference_sweep(phase_family(a.dim, order)?, &phase_grid(a.points), order)?;
            (rows, "parameter,value", "sweep")
        }
        None => {
            let values = par_map(a.samples, |i| sample_term(a.seed, i, a.dim, order));
            let rows = values
                .into_iter()
                .enumerate()
                .map(|(i, v)| v.map(|v| (i as f64, v.abs())))
                .collect::<qcorr_core::Result<Vec<_>>>()?;
            (rows, "sample,abs_value", "samples")
        }
    };

    let max_abs = rows.iter().map(|r| r.1.abs()).fold(0.0, f64::max);
    let passed = !checked || max_abs <= tol;
    let body = match a.format {
        Format::Json => {
            let values: Vec<f64> = rows.iter().map(|r| r.1).collect();
            let mut doc = json!({
                "order": order,
                "dim": a.dim,
                "mode": label,
                "seed": a.seed,
            });
            let obj = doc.as_object_mut().expect("object");
            match a.sweep {
                Some(_) => {
                    let params: Vec<f64> = rows.iter().map(|r| r.0).collect();
                    obj.insert("points".into(), json!(rows.len()));
                    obj.insert("parameters".into(), json!(nums(&params)));
                }
                None => {
                    obj.insert("samples".into(), json!(rows.len()));
                }
            }
            obj.insert("values".into(), json!(nums(&values)));
            obj.insert("max_abs".into(), json!(num(max_abs)));
            obj.insert("tolerance".into(), json!(num(tol)));
            obj.insert("checked".into(), json!(checked));
            obj.insert("passed".into(), json!(passed));
            to_json(&doc)
        }
        _ => {
            let mut out = String::with_capacity(32 * (rows.len() + 1));
            out.push_str(header);
            out.push('\n');
            for (p, v) in &rows {
                let p = match a.sweep {
                    Some(_) => fmt17(*p).unwrap_or_default(),
                    None => format!("{}", *p as u64),
                };
                out.push_str(&format!(
                    "{p},{}\n",
                    fmt17(*v).unwrap_or_else(|| "nan".into())
                ));
            }
            out
        }
    };
    let summary = format!(
        "I{order} {label}: {} rows, max |I{order}| = {max_abs:.3e}{}",
        rows.len(),
        if checked {
            format!(
                ", tolerance {tol:e}: {}",
                if passed { "pass" } else { "FAIL" }
            )
        } else {
            String::new()
        }
    );
    Ok(Outcome {
        body,
        status: if passed {
            Status::Ok
        } else {
            Status::CheckFailed
        },
        summary: Some(summary),
    })
}
