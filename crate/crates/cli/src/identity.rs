use clap::{Args as ClapArgs, ValueEnum};
use serde_json::{json, Value};

use qcorr_core::free_algebra::{verify_sos_identity_variant, IdentityReport, SosVariant};
use qcorr_core::nonlocality::{
    embedded_optimal_observables, inequality_extremes, inequality_sample, summarize_inequality,
    InequalityReport,
};

use crate::output::{num, par_map, to_json};
use crate::{usage, CliError, Format, Outcome, Status};

#[derive(ClapArgs, Debug, Clone)]
pub struct Args {
    #[arg(long, value_enum, default_value_t = Mode::Exact)]
    pub mode: Mode,
    /// Matrix dimension for the numeric check.
    #[arg(long, default_value_t = 4)]
    pub dim: usize,
    #[arg(long, default_value_t = 10_000)]
    pub samples: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output format; defaults to text for `exact` and JSON otherwise.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Exact,
    Numeric,
    Both,
}

fn variant_name(v: SosVariant) -> &'static str {
    match v {
        SosVariant::Upper => "upper",
        SosVariant::SignFlipped => "sign-flipped",
    }
}

fn exact_json(r: &IdentityReport) -> Value {
    let rows: Vec<Value> = r
        .rows
        .iter()
        .map(|row| {
            json!({
                "monomial": row.monomial.to_string(),
                "lhs": row.lhs.to_string(),
                "rhs": row.rhs.to_string(),
                "difference": row.difference.to_string(),
            })
        })
        .collect();
    json!({
        "variant": variant_name(r.variant),
        "holds": r.holds(),
        "cancelled": r.rows.iter().filter(|row| row.difference.is_zero()).count(),
        "slots": r.rows.len(),
        "rows": rows,
    })
}

fn numeric_report(a: &Args) -> Result<(InequalityReport, f64), CliError> {
    let extremes = par_map(a.samples, |i| inequality_sample(a.seed, i, a.dim))
        .into_iter()
        .collect::<qcorr_core::Result<Vec<_>>>()?;
    let report = summarize_inequality(a.seed, a.dim, &extremes);
    let (ea, eb) = embedded_optimal_observables();
    let (_, witness) = inequality_extremes(&ea, &eb)?;
    Ok((report, witness))
}

fn numeric_json(r: &InequalityReport, witness: f64) -> Value {
    json!({
        "seed": r.seed,
        "samples": r.samples,
        "dims": [r.dim],
        "max_witnessed": num(r.max_witnessed),
        "min_witnessed": num(r.min_witnessed),
        "bound": num(r.bound),
        "violations": r.violations,
        "passed": r.holds(),
        "optimal_qubit_witness": num(witness),
    })
}

fn numeric_text(r: &InequalityReport, witness: f64) -> String {
    format!(
        "operator inequality, {} samples at dimension {} (seed {})\n\
         max witnessed eigenvalue: {:.16e}\n\
         min witnessed eigenvalue: {:.16e}\n\
         bound 4√2:                {:.16e}\n\
         optimal qubit witness:    {:.16e}\n\
         violations: {}\n\
         inequality holds: {}\n",
        r.samples,
        r.dim,
        r.seed,
        r.max_witnessed,
        r.min_witnessed,
        r.bound,
        witness,
        r.violations,
        r.holds()
    )
}

pub fn run(a: &Args) -> Result<Outcome, CliError> {
    let format = a.format.unwrap_or(match a.mode {
        Mode::Exact => Format::Text,
        _ => Format::Json,
    });
    if format == Format::Csv {
        return Err(usage("identity supports --format text or json"));
    }
    let wants_numeric = matches!(a.mode, Mode::Numeric | Mode::Both);
    if wants_numeric && !(2..=16).contains(&a.dim) {
        return Err(usage(format!("--dim must lie in 2..=16, got {}", a.dim)));
    }

    let exact = matches!(a.mode, Mode::Exact | Mode::Both)
        .then(|| [SosVariant::Upper, SosVariant::SignFlipped].map(verify_sos_identity_variant));
    let numeric = if wants_numeric {
        Some(numeric_report(a)?)
    } else {
        None
    };

    let exact_ok = exact
        .as_ref()
        .is_none_or(|rs| rs.iter().all(IdentityReport::holds));
    let numeric_ok = numeric.as_ref().is_none_or(|(r, _)| r.holds());

    let body = match format {
        Format::Json => {
            let mut doc = json!({ "mode": format!("{:?}", a.mode).to_lowercase() });
            let obj = doc.as_object_mut().expect("object");
            if let Some(rs) = &exact {
                obj.insert(
                    "exact".into(),
                    Value::Array(rs.iter().map(exact_json).collect()),
                );
            }
            if let Some((r, w)) = &numeric {
                obj.insert("numeric".into(), numeric_json(r, *w));
            }
            obj.insert("passed".into(), json!(exact_ok && numeric_ok));
            to_json(&doc)
        }
        _ => {
            let mut out = String::new();
            if let Some(rs) = &exact {
                for r in rs {
                    out.push_str(&r.to_string());
                    out.push_str("\n\n");
                }
            }
            if let Some((r, w)) = &numeric {
                out.push_str(&numeric_text(r, *w));
            }
            out
        }
    };
    let mut summary = Vec::new();
    if exact.is_some() {
        summary.push(format!(
            "exact identity: {}",
            if exact_ok { "holds" } else { "FAILS" }
        ));
    }
    if let Some((r, _)) = &numeric {
        summary.push(format!(
            "numeric: max eigenvalue {:.9} vs bound {:.9}: {}",
            r.max_witnessed,
            r.bound,
            if r.holds() { "pass" } else { "FAIL" }
        ));
    }
    Ok(Outcome {
        body,
        status: if exact_ok && numeric_ok {
            Status::Ok
        } else {
            Status::CheckFailed
        },
        summary: Some(summary.join("; ")),
    })
}
