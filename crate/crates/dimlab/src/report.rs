//! Report records and persistence: measure reports, relation check results,
//! stable fingerprints, and the JSON-lines / TSV writers.
//!
//! Records serialize deterministically; wall-clock time lives in the single
//! `elapsed_ms` field so consumers can strip it when diffing runs.

use std::fmt;

use num_rational::Rational64;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::core::{ConceptClass, ExplicitBooleanFunction};

/// An exact measure value: integer, exact rational, or a short text marker.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Value {
    Int(i64),
    Rational { numer: i64, denom: i64 },
    Text(String),
}

impl Value {
    pub fn rational(r: Rational64) -> Value {
        if r.is_integer() {
            Value::Int(r.to_integer())
        } else {
            Value::Rational { numer: *r.numer(), denom: *r.denom() }
        }
    }

    pub fn as_rational(&self) -> Option<Rational64> {
        match self {
            Value::Int(i) => Some(Rational64::from_integer(*i)),
            Value::Rational { numer, denom } => Some(Rational64::new(*numer, *denom)),
            Value::Text(_) => None,
        }
    }
}

impl From<usize> for Value {
    fn from(v: usize) -> Self {
        Value::Int(v as i64)
    }
}

impl From<i64> for Value {
    fn from(v: i64) -> Self {
        Value::Int(v)
    }
}

impl From<Rational64> for Value {
    fn from(r: Rational64) -> Self {
        Value::rational(r)
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Int(i) => write!(f, "{i}"),
            Value::Rational { numer, denom } => write!(f, "{numer}/{denom}"),
            Value::Text(t) => write!(f, "{t}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scope {
    PerInput,
    BSide,
    Global,
    Average,
}

/// One computed measure with provenance.
#[derive(Debug, Clone, Serialize)]
pub struct MeasureEntry {
    pub name: String,
    pub value: Value,
    pub scope: Scope,
    pub method: String,
    pub elapsed_ms: f64,
}

/// A batch of measures for one subject (class or function).
#[derive(Debug, Clone, Serialize)]
pub struct MeasureReport {
    pub kind: &'static str,
    pub subject: String,
    pub fingerprint: String,
    pub entries: Vec<MeasureEntry>,
}

impl MeasureReport {
    pub fn entry(&self, name: &str) -> Option<&MeasureEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    pub fn value(&self, name: &str) -> Option<&Value> {
        self.entry(name).map(|e| &e.value)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Holds,
    Violated,
    Skipped,
}

/// Outcome of one relation check on one class.
#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub id: &'static str,
    pub class: String,
    pub relation: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lhs: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rhs: Option<Value>,
    pub status: CheckStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skip_reason: Option<String>,
    /// For violated per-member relations: the offending concept or input.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    pub elapsed_ms: f64,
}

impl CheckResult {
    pub fn holds(&self) -> bool {
        self.status == CheckStatus::Holds
    }
}

/// Stable hash of a class: n plus every concept bitstring in canonical order.
pub fn class_fingerprint(class: &ConceptClass) -> String {
    let mut h = Sha256::new();
    h.update((class.n() as u64).to_le_bytes());
    for c in class.concepts() {
        h.update(c.to_bitstring().as_bytes());
    }
    hex16(&h.finalize())
}

/// Stable hash of a function: variable count plus the table bits.
pub fn function_fingerprint(f: &ExplicitBooleanFunction) -> String {
    let mut h = Sha256::new();
    h.update((f.vars() as u64).to_le_bytes());
    for w in f.table().words() {
        h.update(w.to_le_bytes());
    }
    hex16(&h.finalize())
}

fn hex16(digest: &[u8]) -> String {
    digest.iter().take(8).map(|b| format!("{b:02x}")).collect()
}

/// One JSON object per line.
pub fn write_jsonl<T: Serialize>(items: &[T], out: &mut impl std::io::Write) -> std::io::Result<()> {
    for item in items {
        serde_json::to_writer(&mut *out, item)?;
        out.write_all(b"\n")?;
    }
    Ok(())
}

pub fn measure_report_tsv(report: &MeasureReport) -> String {
    let mut s = String::from("name\tvalue\tscope\tmethod\n");
    for e in &report.entries {
        let scope = match e.scope {
            Scope::PerInput => "per-input",
            Scope::BSide => "b-side",
            Scope::Global => "global",
            Scope::Average => "average",
        };
        s.push_str(&format!("{}\t{}\t{}\t{}\n", e.name, e.value, scope, e.method));
    }
    s
}

/// Plain-text table of check results, one row per check.
pub fn render_check_table(results: &[CheckResult]) -> String {
    let mut rows: Vec<[String; 5]> = vec![[
        "check".into(),
        "class".into(),
        "lhs".into(),
        "rhs".into(),
        "status".into(),
    ]];
    for r in results {
        let status = match r.status {
            CheckStatus::Holds => "holds".to_string(),
            CheckStatus::Violated => "VIOLATED".to_string(),
            CheckStatus::Skipped => {
                format!("skipped ({})", r.skip_reason.as_deref().unwrap_or(""))
            }
        };
        rows.push([
            r.id.to_string(),
            r.class.clone(),
            r.lhs.as_ref().map_or(String::new(), |v| v.to_string()),
            r.rhs.as_ref().map_or(String::new(), |v| v.to_string()),
            status,
        ]);
    }
    let mut widths = [0usize; 5];
    for row in &rows {
        for (w, cell) in widths.iter_mut().zip(row.iter()) {
            *w = (*w).max(cell.len());
        }
    }
    let mut out = String::new();
    for row in &rows {
        for (i, cell) in row.iter().enumerate() {
            out.push_str(&format!("{:<width$}  ", cell, width = widths[i]));
        }
        out.push('\n');
    }
    out
}
