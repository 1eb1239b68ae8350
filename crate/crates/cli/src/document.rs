//! The report document and its JSON, CSV and text renderings.

use std::fmt::Write as _;
use std::time::Duration;

use hopfcheck_core::{LawReport, Status};
use serde::{Deserialize, Serialize};

use crate::args::{Format, RunConfig};
use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Overall {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub version: String,
    pub config: RunConfig,
    pub reports: Vec<LawReport>,
    pub overall: Overall,
    pub duration_ms: u64,
}

impl ReportDocument {
    /// Sorts the reports by `(instance, law)`; the run fails iff some report
    /// is unexpected.
    pub fn new(config: RunConfig, mut reports: Vec<LawReport>, elapsed: Duration) -> Self {
        reports.sort_by(|a, b| (&a.instance, &a.law).cmp(&(&b.instance, &b.law)));
        let overall = if reports.iter().all(|r| r.expected) {
            Overall::Pass
        } else {
            Overall::Fail
        };
        Self {
            version: env!("CARGO_PKG_VERSION").to_string(),
            config,
            reports,
            overall,
            duration_ms: elapsed.as_millis() as u64,
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self.overall {
            Overall::Pass => 0,
            Overall::Fail => 1,
        }
    }

    pub fn unexpected(&self) -> impl Iterator<Item = &LawReport> {
        self.reports.iter().filter(|r| !r.expected)
    }
}

#[derive(Serialize)]
struct CsvRow<'a> {
    law: &'a str,
    instance: &'a str,
    status: Status,
    samples: u64,
    tolerance: Option<f64>,
    max_residual: f64,
    seed: u64,
    duration_ms: u64,
    expected: bool,
    /// The witness as compact JSON, empty when there is none.
    witness: String,
}

pub fn emit(doc: &ReportDocument, format: Format) -> Result<Vec<u8>, CliError> {
    match format {
        Format::Json => {
            let mut out =
                serde_json::to_vec_pretty(doc).map_err(|e| CliError::Check(e.to_string()))?;
            out.push(b'\n');
            Ok(out)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for r in &doc.reports {
                let witness = match &r.witness {
                    Some(w) => {
                        serde_json::to_string(w).map_err(|e| CliError::Check(e.to_string()))?
                    }
                    None => String::new(),
                };
                w.serialize(CsvRow {
                    law: &r.law,
                    instance: &r.instance,
                    status: r.status,
                    samples: r.samples,
                    tolerance: r.tolerance,
                    max_residual: r.max_residual,
                    seed: r.seed,
                    duration_ms: r.duration_ms,
                    expected: r.expected,
                    witness,
                })
                .map_err(|e| CliError::Check(e.to_string()))?;
            }
            if doc.reports.is_empty() {
                w.write_record(CSV_HEADER)
                    .map_err(|e| CliError::Check(e.to_string()))?;
            }
            w.into_inner().map_err(|e| CliError::Check(e.to_string()))
        }
        Format::Text => Ok(text(doc).into_bytes()),
    }
}

pub const CSV_HEADER: [&str; 10] = [
    "law",
    "instance",
    "status",
    "samples",
    "tolerance",
    "max_residual",
    "seed",
    "duration_ms",
    "expected",
    "witness",
];

fn status_name(s: Status) -> &'static str {
    match s {
        Status::HoldsExact => "holds-exact",
        Status::HoldsSampled => "holds-sampled",
        Status::Fails => "fails",
    }
}

fn text(doc: &ReportDocument) -> String {
    let c = &doc.config;
    let mut s = format!(
        "hopfcheck {} {}: mode {}, {} samples, seed {}",
        doc.version, c.subcommand, c.mode, c.samples, c.seed
    );
    if let Some(t) = c.tolerance {
        let _ = write!(s, ", tolerance {t:e}");
    }
    s.push('\n');
    let law_w = doc.reports.iter().map(|r| r.law.len()).max().unwrap_or(0);
    let inst_w = doc
        .reports
        .iter()
        .map(|r| r.instance.len())
        .max()
        .unwrap_or(0);
    for r in &doc.reports {
        let mark = if r.expected { "ok " } else { "BAD" };
        let note = match (r.status, r.expected) {
            (Status::Fails, true) => " (expected)",
            (Status::Fails, false) => " (unexpected)",
            (_, false) => " (expected to fail)",
            _ => "",
        };
        let _ = writeln!(
            s,
            "{mark} {:inst_w$}  {:law_w$}  {}{note}  n={} max_residual={:e}",
            r.instance,
            r.law,
            status_name(r.status),
            r.samples,
            r.max_residual
        );
        if let Some(w) = &r.witness {
            let seq = |v: &[String]| format!("[{}]", v.join(", "));
            let inputs: Vec<String> = w.inputs.iter().map(|i| seq(i)).collect();
            let _ = writeln!(s, "      inputs {}", inputs.join(" "));
            let _ = writeln!(s, "      lhs    {}", seq(&w.lhs));
            let _ = writeln!(s, "      rhs    {}", seq(&w.rhs));
        }
    }
    let bad = doc.unexpected().count();
    let _ = writeln!(
        s,
        "{}: {} reports, {} unexpected, {} ms",
        match doc.overall {
            Overall::Pass => "pass",
            Overall::Fail => "FAIL",
        },
        doc.reports.len(),
        bad,
        doc.duration_ms
    );
    s
}
