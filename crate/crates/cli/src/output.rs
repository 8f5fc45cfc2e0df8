//! Deterministic number formatting and order-preserving parallel maps.

use std::io;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::ser::{Formatter, PrettyFormatter};
use serde_json::Value;

/// JSON number, or `null` if not finite.
pub fn num(x: f64) -> Value {
    serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
}

pub fn nums(xs: &[f64]) -> Vec<Value> {
    xs.iter().map(|&x| num(x)).collect()
}

/// `d.dddddddddddddddde±x`, or `None` for NaN and infinities.
pub fn fmt17(x: f64) -> Option<String> {
    x.is_finite().then(|| format!("{x:.16e}"))
}

/// Pretty printer that writes every float with 17 significant digits.
struct Sci17<'a>(PrettyFormatter<'a>);

impl Formatter for Sci17<'_> {
    fn write_f64<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        w.write_all(format!("{value:.16e}").as_bytes())
    }
    fn write_f32<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(w, f64::from(value))
    }
    fn begin_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_array(w)
    }
    fn end_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array(w)
    }
    fn begin_array_value<W: ?Sized + io::Write>(
        &mut self,
        w: &mut W,
        first: bool,
    ) -> io::Result<()> {
        self.0.begin_array_value(w, first)
    }
    fn end_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array_value(w)
    }
    fn begin_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object(w)
    }
    fn end_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object(w)
    }
    fn begin_object_key<W: ?Sized + io::Write>(
        &mut self,
        w: &mut W,
        first: bool,
    ) -> io::Result<()> {
        self.0.begin_object_key(w, first)
    }
    fn begin_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object_value(w)
    }
    fn end_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object_value(w)
    }
}

/// Pretty JSON with 17-digit floats and a trailing newline.
pub fn to_json(value: &Value) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, Sci17(PrettyFormatter::new()));
    value.serialize(&mut ser).expect("JSON values serialize");
    buf.push(b'\n');
    String::from_utf8(buf).expect("JSON is UTF-8")
}

/// Thread count from `QCORR_THREADS`; `None` lets rayon decide.
pub fn thread_limit() -> Option<usize> {
    std::env::var("QCORR_THREADS")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
}

/// `f(0), …, f(n−1)` evaluated in parallel, returned in index order.
pub fn par_map<T, F>(n: u64, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64) -> T + Sync + Send,
{
    let run = || (0..n).into_par_iter().map(&f).collect();
    match thread_limit() {
        Some(threads) => rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .expect("thread pool")
            .install(run),
        None => run(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_significant_digits() {
        assert_eq!(
            fmt17(qcorr_core::TSIRELSON_BOUND).unwrap(),
            "2.8284271247461903e0"
        );
        assert_eq!(fmt17(-0.5).unwrap(), "-5.0000000000000000e-1");
        assert_eq!(fmt17(f64::NAN), None);
        let parsed: f64 = fmt17(0.1).unwrap().parse().unwrap();
        assert_eq!(parsed, 0.1);
        assert_eq!(num(f64::INFINITY), Value::Null);
        let doc = serde_json::json!({ "a": 0.5, "b": [2, num(-1.0)], "c": 1 });
        assert_eq!(
            to_json(&doc),
            "{\n  \"a\": 5.0000000000000000e-1,\n  \"b\": [\n    2,\n    -1.0000000000000000e0\n  ],\n  \"c\": 1\n}\n"
        );
        let back: Value = serde_json::from_str(&to_json(&doc)).unwrap();
        assert_eq!(back["a"], 0.5);
    }

    #[test]
    fn par_map_keeps_order() {
        let v = par_map(1000, |i| i * 2);
        assert!(v.iter().enumerate().all(|(i, &x)| x == 2 * i as u64));
    }
}
