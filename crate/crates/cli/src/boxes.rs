//! Behavior tables on the command line.
//!
//! Table files are JSON objects `{"p": {"x,y|k,l": number, ...}}` with all
//! sixteen keys present, `x, y ∈ {+1, -1}` and `k, l ∈ {1, 2}`.

use std::path::Path;
use std::str::FromStr;

use clap::Args as ClapArgs;
use serde::Deserialize;
use serde_json::{json, Map, Value};

use qcorr_core::nonlocality::{
    behavior_chsh, classify_behavior, max_chsh_symmetry, BehaviorTable, OUTCOMES,
};

use crate::output::{num, to_json};
use crate::{usage, CliError, Format, Outcome, Status};

#[derive(ClapArgs, Debug, Clone)]
pub struct Args {
    /// pr | local | uniform | mixed:λ (λ·PR + (1−λ)·uniform) | file:PATH
    #[arg(long = "box", default_value = "pr")]
    pub kind: BoxKind,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Clone, Debug, PartialEq)]
pub enum BoxKind {
    Pr,
    Local,
    Uniform,
    Mixed(f64),
    File(String),
}

impl FromStr for BoxKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "pr" => Ok(BoxKind::Pr),
            "local" => Ok(BoxKind::Local),
            "uniform" => Ok(BoxKind::Uniform),
            _ => {
                if let Some(w) = s.strip_prefix("mixed:") {
                    let lambda: f64 = w.parse().map_err(|_| format!("bad mixing weight `{w}`"))?;
                    if !(0.0..=1.0).contains(&lambda) {
                        return Err(format!("mixing weight {lambda} outside [0, 1]"));
                    }
                    Ok(BoxKind::Mixed(lambda))
                } else if let Some(p) = s.strip_prefix("file:") {
                    Ok(BoxKind::File(p.to_string()))
                } else {
                    Err(format!(
                        "unknown box `{s}` (pr, local, uniform, mixed:λ, file:PATH)"
                    ))
                }
            }
        }
    }
}

impl BoxKind {
    fn label(&self) -> String {
        match self {
            BoxKind::Pr => "pr".into(),
            BoxKind::Local => "local".into(),
            BoxKind::Uniform => "uniform".into(),
            BoxKind::Mixed(l) => format!("mixed:{l}"),
            BoxKind::File(p) => format!("file:{p}"),
        }
    }
}

/// `"+1,-1|1,2"` style key.
pub fn table_key(x: i8, y: i8, k: usize, l: usize) -> String {
    format!("{x:+},{y:+}|{},{}", k + 1, l + 1)
}

fn parse_outcome(s: &str) -> Option<i8> {
    match s.trim() {
        "+1" | "1" => Some(1),
        "-1" | "−1" => Some(-1),
        _ => None,
    }
}

fn parse_setting(s: &str) -> Option<usize> {
    match s.trim() {
        "1" => Some(0),
        "2" => Some(1),
        _ => None,
    }
}

fn parse_key(key: &str) -> Option<(i8, i8, usize, usize)> {
    let (outs, settings) = key.split_once('|')?;
    let (x, y) = outs.split_once(',')?;
    let (k, l) = settings.split_once(',')?;
    Some((
        parse_outcome(x)?,
        parse_outcome(y)?,
        parse_setting(k)?,
        parse_setting(l)?,
    ))
}

#[derive(Deserialize)]
struct TableFile {
    p: Map<String, Value>,
}

/// Parse and validate a behavior table from JSON text.
pub fn parse_table(text: &str) -> Result<BehaviorTable, CliError> {
    let file: TableFile =
        serde_json::from_str(text).map_err(|e| usage(format!("malformed table file: {e}")))?;
    let mut p = [[[[f64::NAN; 2]; 2]; 2]; 2];
    let idx = |o: i8| usize::from(o != 1);
    for (key, value) in &file.p {
        let (x, y, k, l) = parse_key(key).ok_or_else(|| usage(format!("bad table key `{key}`")))?;
        let v = value
            .as_f64()
            .ok_or_else(|| usage(format!("value for `{key}` is not a number")))?;
        let slot = &mut p[k][l][idx(x)][idx(y)];
        if !slot.is_nan() {
            return Err(usage(format!(
                "duplicate entry for {}",
                table_key(x, y, k, l)
            )));
        }
        *slot = v;
    }
    for (k, pk) in p.iter().enumerate() {
        for (l, pkl) in pk.iter().enumerate() {
            for x in OUTCOMES {
                for y in OUTCOMES {
                    if pkl[idx(x)][idx(y)].is_nan() {
                        return Err(usage(format!("missing entry {}", table_key(x, y, k, l))));
                    }
                }
            }
        }
    }
    BehaviorTable::new(p).map_err(|e| usage(format!("invalid behavior table: {e}")))
}

pub fn load_table(path: &Path) -> Result<BehaviorTable, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    parse_table(&text)
}

pub fn build_table(kind: &BoxKind) -> Result<BehaviorTable, CliError> {
    Ok(match kind {
        BoxKind::Pr => BehaviorTable::pr_box(),
        BoxKind::Local => BehaviorTable::local(),
        BoxKind::Uniform => BehaviorTable::uniform(),
        BoxKind::Mixed(l) => BehaviorTable::pr_box().mix(*l, &BehaviorTable::uniform())?,
        BoxKind::File(p) => load_table(Path::new(p))?,
    })
}

/// `{"p": {...}}` in the file format, keys in setting-major order.
pub fn table_json(t: &BehaviorTable) -> Value {
    let mut p = Map::new();
    for k in 0..2 {
        for l in 0..2 {
            for x in OUTCOMES {
                for y in OUTCOMES {
                    p.insert(table_key(x, y, k, l), json!(num(t.get(x, y, k, l))));
                }
            }
        }
    }
    Value::Object(p)
}

pub fn run(a: &Args) -> Result<Outcome, CliError> {
    if a.format != Format::Json {
        return Err(usage("boxes reports are JSON only"));
    }
    let table = build_table(&a.kind)?;
    let value = behavior_chsh(&table)?;
    let best = max_chsh_symmetry(&table)?;
    let class = classify_behavior(&table)?;
    let correlators: Vec<Value> = [(0, 0), (0, 1), (1, 0), (1, 1)]
        .iter()
        .map(|&(k, l)| json!(num(table.correlator(k, l))))
        .collect();
    let doc = json!({
        "box": a.kind.label(),
        "p": table_json(&table),
        "correlators": correlators,
        "chsh": num(value),
        "max_chsh_symmetry": num(best),
        "no_signaling": true,
        "classification": class.as_str(),
    });
    Ok(Outcome {
        body: to_json(&doc),
        status: Status::Ok,
        summary: Some(format!("{}: CHSH {value}, {class}", a.kind.label())),
    })
}
