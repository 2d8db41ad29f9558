//! Report types and their json / csv / text renderings.

use std::io::Write;
use std::path::Path;

use braidimage::group::{CensusBounds, Certificate, ProductReport};
use serde::Serialize;
use serde_json::Value;

use crate::args::Format;
use crate::Failure;

#[derive(Debug, Clone, Serialize)]
pub struct ParamsOut {
    pub p: u64,
    pub d: u32,
    pub modulus: Vec<u64>,
    pub alpha: u64,
    pub alpha_order: u64,
    pub e: u64,
    pub n: usize,
    pub r: Option<usize>,
    pub dim: Option<usize>,
}

/// The `certify` / `census` report. Field order is the serialization order.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub params: ParamsOut,
    pub case: String,
    pub order: Option<u64>,
    pub det_image_order: Option<u64>,
    pub transvection_count: Option<u64>,
    pub bounds: Option<CensusBounds>,
    pub verdict: String,
    pub runtime_ms: u64,
    pub capped: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub projective: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub abs_irreducible: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Certificate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub product: Option<ProductReport>,
}

pub const REPORT_COLUMNS: [&str; 13] = [
    "p",
    "d",
    "alpha",
    "n",
    "r",
    "dim",
    "case",
    "order",
    "det_image_order",
    "transvection_count",
    "verdict",
    "capped",
    "runtime_ms",
];

fn opt<T: ToString>(x: Option<T>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

impl Report {
    pub fn csv_row(&self) -> Vec<String> {
        let p = &self.params;
        vec![
            p.p.to_string(),
            p.d.to_string(),
            p.alpha.to_string(),
            p.n.to_string(),
            opt(p.r),
            opt(p.dim),
            self.case.clone(),
            opt(self.order),
            opt(self.det_image_order),
            opt(self.transvection_count),
            self.verdict.clone(),
            self.capped.to_string(),
            self.runtime_ms.to_string(),
        ]
    }
}

pub fn to_json(v: &impl Serialize) -> Result<String, Failure> {
    serde_json::to_string_pretty(v).map_err(|e| Failure::Internal(e.to_string()))
}

/// One `key: value` line per top-level field.
pub fn to_text(v: &impl Serialize) -> Result<String, Failure> {
    let value = serde_json::to_value(v).map_err(|e| Failure::Internal(e.to_string()))?;
    let mut s = String::new();
    if let Value::Object(map) = value {
        for (k, v) in map {
            let shown = match v {
                Value::String(x) => x,
                Value::Null => "-".to_string(),
                other => other.to_string(),
            };
            s.push_str(&format!("{k}: {shown}\n"));
        }
    }
    Ok(s)
}

pub fn csv_table(header: &[&str], rows: &[Vec<String>]) -> Result<String, Failure> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let err = |e: csv::Error| Failure::Internal(e.to_string());
    w.write_record(header).map_err(err)?;
    for r in rows {
        w.write_record(r).map_err(err)?;
    }
    let bytes = w.into_inner().map_err(|e| Failure::Internal(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Failure::Internal(e.to_string()))
}

pub fn render_report(r: &Report, format: Format) -> Result<String, Failure> {
    match format {
        Format::Json => Ok(to_json(r)? + "\n"),
        Format::Text => to_text(r),
        Format::Csv => csv_table(&REPORT_COLUMNS, &[r.csv_row()]),
    }
}

pub fn emit(text: &str, path: Option<&Path>) -> Result<(), Failure> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure::Usage(format!("cannot write {}: {e}", p.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes()).map_err(|e| Failure::Internal(e.to_string()))
        }
    }
}
