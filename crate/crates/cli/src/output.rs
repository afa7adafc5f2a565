//! Row serialization: fixed-header CSV and newline-delimited JSON.
//!
//! Reals are written as `{:.16e}` (17 significant digits, round-trip exact)
//! so identical inputs give byte-identical output.

use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;
use serde_json::value::RawValue;

use record_inaccuracy::oracle::GENERATOR;
use record_inaccuracy::MeasureResult;

pub const CSV_HEADER: [&str; 10] = [
    "measure",
    "dist",
    "params",
    "side",
    "n",
    "k",
    "method",
    "value",
    "abs_error_estimate",
    "seed",
];

#[derive(Debug, Clone)]
pub struct OutputRecord {
    pub measure: &'static str,
    pub dist: String,
    pub params: Vec<(&'static str, f64)>,
    pub side: &'static str,
    pub n: u32,
    pub k: u32,
    pub outcome: Result<MeasureResult, String>,
    /// Present for stochastic evaluations.
    pub seed: Option<u64>,
}

impl OutputRecord {
    fn method(&self) -> &'static str {
        match &self.outcome {
            Ok(r) => r.method.as_str(),
            Err(_) => "error",
        }
    }

    fn params_cell(&self) -> String {
        self.params
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(";")
    }
}

pub fn real(v: f64) -> String {
    format!("{v:.16e}")
}

fn raw_real(v: f64) -> Box<RawValue> {
    let text = if v.is_finite() { real(v) } else { "null".to_string() };
    RawValue::from_string(text).expect("formatted reals are valid JSON")
}

struct Params<'a>(&'a [(&'static str, f64)]);

impl Serialize for Params<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in self.0 {
            map.serialize_entry(k, &raw_real(*v))?;
        }
        map.end()
    }
}

#[derive(Serialize)]
struct JsonRow<'a> {
    measure: &'a str,
    dist: &'a str,
    params: Params<'a>,
    side: &'a str,
    n: u32,
    k: u32,
    method: &'a str,
    value: Option<Box<RawValue>>,
    abs_error_estimate: Option<Box<RawValue>>,
    seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    generator: Option<&'a str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<&'a str>,
}

pub fn write_json(rows: &[OutputRecord]) -> String {
    let mut out = String::new();
    for r in rows {
        let (value, err_est, error) = match &r.outcome {
            Ok(m) => (Some(raw_real(m.value)), Some(raw_real(m.abs_error_estimate)), None),
            Err(e) => (None, None, Some(e.as_str())),
        };
        let row = JsonRow {
            measure: r.measure,
            dist: &r.dist,
            params: Params(&r.params),
            side: r.side,
            n: r.n,
            k: r.k,
            method: r.method(),
            value,
            abs_error_estimate: err_est,
            seed: r.seed,
            generator: r.seed.map(|_| GENERATOR),
            error,
        };
        out.push_str(&serde_json::to_string(&row).expect("rows serialize"));
        out.push('\n');
    }
    out
}

pub fn write_csv(rows: &[OutputRecord]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER).expect("in-memory write");
    for r in rows {
        let (value, err_est) = match &r.outcome {
            Ok(m) => (real(m.value), real(m.abs_error_estimate)),
            Err(_) => (String::new(), String::new()),
        };
        w.write_record([
            r.measure.to_string(),
            r.dist.clone(),
            r.params_cell(),
            r.side.to_string(),
            r.n.to_string(),
            r.k.to_string(),
            r.method().to_string(),
            value,
            err_est,
            r.seed.map(|s| s.to_string()).unwrap_or_default(),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv output is utf-8")
}
