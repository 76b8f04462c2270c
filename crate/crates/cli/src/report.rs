//! Report documents and their JSON, CSV and text renderings.
//!
//! JSON floats are written with 17 significant digits so every f64 survives
//! a round trip; non-finite values become `null`.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::{self, Write};

use serde::{Deserialize, Serialize};
use serde_json::ser::{Formatter, PrettyFormatter};
use umbra_core::{Branch, FormulaId, QuadratureSpec, VerificationRecord};

use crate::CliError;

pub const REPORT_VERSION: &str = concat!("umbra ", env!("CARGO_PKG_VERSION"));

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Eval,
    Verify,
    Table,
    Sample,
}

/// Echo of the settings that determine the records; output paths are left
/// out so the same run written to two files stays byte-identical.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub command: Command,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub umbra: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub func: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub x_grid: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub suite: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub tol: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub samples: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub construction: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub quadrature: Option<QuadratureSpec>,
}

/// One evaluated closed form.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalRow {
    pub umbra: String,
    pub func: String,
    pub x: f64,
    pub value: Option<f64>,
    pub branch: Option<Branch>,
    pub formula_id: Option<FormulaId>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub oracle: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub abs_err: Option<f64>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SampleRow {
    pub index: usize,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Record {
    Verification(VerificationRecord),
    Eval(EvalRow),
    Sample(SampleRow),
}

impl Record {
    /// Pass for verification records, no error for evaluations.
    pub fn ok(&self) -> bool {
        match self {
            Record::Verification(r) => r.pass,
            Record::Eval(r) => r.error.is_none(),
            Record::Sample(_) => true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub version: String,
    pub config: ConfigEcho,
    pub records: Vec<Record>,
    pub summary: Summary,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub wall_time_seconds: Option<f64>,
}

impl ReportDocument {
    pub fn new(config: ConfigEcho, records: Vec<Record>) -> Self {
        let passed = records.iter().filter(|r| r.ok()).count();
        ReportDocument {
            version: REPORT_VERSION.to_string(),
            config,
            summary: Summary {
                total: records.len(),
                passed,
                failed: records.len() - passed,
            },
            records,
            wall_time_seconds: None,
        }
    }

    pub fn all_ok(&self) -> bool {
        self.summary.failed == 0
    }
}

struct Sig17<'a>(PrettyFormatter<'a>);

impl Formatter for Sig17<'_> {
    fn write_f64<W: ?Sized + Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        write!(writer, "{value:.16e}")
    }

    fn begin_array<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_array(w)
    }
    fn end_array<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array(w)
    }
    fn begin_array_value<W: ?Sized + Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_array_value(w, first)
    }
    fn end_array_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array_value(w)
    }
    fn begin_object<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object(w)
    }
    fn end_object<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object(w)
    }
    fn begin_object_key<W: ?Sized + Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_object_key(w, first)
    }
    fn begin_object_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object_value(w)
    }
    fn end_object_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object_value(w)
    }
}

pub fn to_json(doc: &ReportDocument) -> Result<String, CliError> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, Sig17(PrettyFormatter::new()));
    doc.serialize(&mut ser)?;
    buf.push(b'\n');
    Ok(String::from_utf8(buf).expect("serde_json writes UTF-8"))
}

fn num(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        String::new()
    }
}

fn opt_num(v: Option<f64>) -> String {
    v.map(num).unwrap_or_default()
}

fn join_inputs(inputs: &BTreeMap<String, f64>) -> String {
    inputs
        .iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(";")
}

fn debug_name<T: std::fmt::Debug>(v: &Option<T>) -> String {
    v.as_ref().map(|v| format!("{v:?}")).unwrap_or_default()
}

pub fn to_csv(doc: &ReportDocument) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    match doc.config.command {
        Command::Verify => {
            w.write_record([
                "identity_id", "inputs", "closed_form", "oracle", "oracle_kind", "abs_err", "rel_err",
                "tolerance", "mc_std_err", "oracle_imag", "seed", "pass", "error",
            ])?;
        }
        Command::Eval | Command::Table => {
            w.write_record(["umbra", "func", "x", "value", "branch", "formula_id", "oracle", "abs_err", "error"])?;
        }
        Command::Sample => w.write_record(["index", "value"])?,
    }
    for record in &doc.records {
        match record {
            Record::Verification(r) => w.write_record([
                r.identity_id.clone(),
                join_inputs(&r.inputs),
                num(r.closed_form),
                num(r.oracle),
                format!("{:?}", r.oracle_kind),
                num(r.abs_err),
                num(r.rel_err),
                num(r.tolerance),
                opt_num(r.mc_std_err),
                opt_num(r.oracle_imag),
                r.seed.map(|s| s.to_string()).unwrap_or_default(),
                r.pass.to_string(),
                r.error.clone().unwrap_or_default(),
            ])?,
            Record::Eval(r) => w.write_record([
                r.umbra.clone(),
                r.func.clone(),
                num(r.x),
                opt_num(r.value),
                debug_name(&r.branch),
                debug_name(&r.formula_id),
                opt_num(r.oracle),
                opt_num(r.abs_err),
                r.error.clone().unwrap_or_default(),
            ])?,
            Record::Sample(r) => w.write_record([r.index.to_string(), num(r.value)])?,
        }
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv writes UTF-8"))
}

pub fn to_text(doc: &ReportDocument) -> String {
    let mut out = String::new();
    for record in &doc.records {
        let _ = match record {
            Record::Verification(r) => {
                let status = if r.pass { "PASS" } else { "FAIL" };
                let detail = match &r.error {
                    Some(e) => format!("error: {e}"),
                    None => format!(
                        "closed={:.15} oracle={:.15} err={:.2e} ({:?})",
                        r.closed_form, r.oracle, r.abs_err, r.oracle_kind
                    ),
                };
                writeln!(out, "{status} {:<36} {:<18} {detail}", r.identity_id, join_inputs(&r.inputs))
            }
            Record::Eval(r) => match (&r.value, &r.error) {
                (Some(v), _) => {
                    let branch = debug_name(&r.branch);
                    let check = match (r.oracle, r.abs_err) {
                        (Some(o), Some(e)) => format!("  oracle={o:.15} err={e:.2e}"),
                        _ => String::new(),
                    };
                    writeln!(out, "{}({}) x={:<8} {v:.15} [{branch}]{check}", r.func, r.umbra, r.x)
                }
                (None, e) => writeln!(
                    out,
                    "{}({}) x={:<8} error: {}",
                    r.func,
                    r.umbra,
                    r.x,
                    e.as_deref().unwrap_or("unknown")
                ),
            },
            Record::Sample(r) => writeln!(out, "{:.17}", r.value),
        };
    }
    let s = doc.summary;
    let _ = writeln!(out, "total {} passed {} failed {}", s.total, s.passed, s.failed);
    if let Some(t) = doc.wall_time_seconds {
        let _ = writeln!(out, "wall time {t:.3}s");
    }
    out
}

pub fn render(doc: &ReportDocument, format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => to_json(doc),
        Format::Csv => to_csv(doc),
        Format::Text => Ok(to_text(doc)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use umbra_core::oracles::{inputs, OracleKind};

    fn doc() -> ReportDocument {
        let ok = VerificationRecord::deterministic("a", inputs([("x", 0.1)]), 1.0 / 3.0, 0.1 + 0.2, OracleKind::Series, 1.0);
        let bad = VerificationRecord::failed("b", inputs([("k", 2.0)]), OracleKind::Quadrature, "boom");
        let config = ConfigEcho {
            command: Command::Verify,
            umbra: None,
            func: None,
            x_grid: vec![],
            suite: Some("all".into()),
            tol: Some(1e-8),
            seed: Some(1),
            samples: None,
            construction: None,
            quadrature: None,
        };
        ReportDocument::new(config, vec![Record::Verification(ok), Record::Verification(bad)])
    }

    #[test]
    fn summary_counts() {
        let d = doc();
        assert_eq!(d.summary, Summary { total: 2, passed: 1, failed: 1 });
        assert!(!d.all_ok());
    }

    #[test]
    fn json_round_trip_is_lossless() {
        let d = doc();
        let text = to_json(&d).unwrap();
        assert!(text.contains("3.3333333333333331e-1"));
        let back: ReportDocument = serde_json::from_str(&text).unwrap();
        let (Record::Verification(a), Record::Verification(b)) = (&back.records[0], &d.records[0]) else {
            panic!("wrong record type");
        };
        assert_eq!(a, b);
        let Record::Verification(f) = &back.records[1] else {
            panic!("wrong record type");
        };
        assert!(f.closed_form.is_nan() && f.error.as_deref() == Some("boom"));
        assert_eq!(to_json(&back).unwrap(), text);
    }

    #[test]
    fn csv_has_header_and_error_column() {
        let text = to_csv(&doc()).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 3);
        assert!(lines[0].starts_with("identity_id,inputs,closed_form"));
        assert!(lines[2].starts_with("b,k=2,,,Quadrature"));
        assert!(lines[2].ends_with(",false,boom"));
    }
}
