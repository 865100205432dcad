use std::str::FromStr;

use serde::Serialize;

use crate::arith::format_rational;
use crate::error::{Error, Result};

use super::{BenchRow, Status, VerificationReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Csv,
    Text,
}

impl FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(ReportFormat::Json),
            "csv" => Ok(ReportFormat::Csv),
            "text" => Ok(ReportFormat::Text),
            other => Err(Error::domain(format!("unknown report format {other:?}"))),
        }
    }
}

/// Describes the run. Timings are left out unless `timings` is set, so two
/// runs with the same inputs produce identical bytes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RunMeta {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub seed: Option<u64>,
    #[serde(skip)]
    pub timings: bool,
}

impl RunMeta {
    pub fn new(command: impl Into<String>, seed: Option<u64>) -> Self {
        RunMeta {
            tool: "hankel".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            command: command.into(),
            seed,
            timings: false,
        }
    }
}

#[derive(Serialize)]
struct Totals {
    cases: usize,
    pass: usize,
    fail: usize,
    rhs_undefined: usize,
    skipped: usize,
}

impl Totals {
    fn of(reports: &[VerificationReport]) -> Self {
        let count = |s: Status| reports.iter().filter(|r| r.status == s).count();
        Totals {
            cases: reports.len(),
            pass: count(Status::Pass),
            fail: count(Status::Fail),
            rhs_undefined: count(Status::RhsUndefined),
            skipped: count(Status::Skipped),
        }
    }
}

#[derive(Serialize)]
struct JsonMeta<'a> {
    #[serde(flatten)]
    meta: &'a RunMeta,
    totals: Totals,
}

#[derive(Serialize)]
struct Row<'a> {
    id: String,
    params: &'a super::Params,
    lhs: Option<String>,
    rhs: Option<String>,
    status: Status,
    engine: &'a str,
    elapsed_ms: Option<f64>,
    note: Option<&'a str>,
}

fn row<'a>(r: &'a VerificationReport, meta: &RunMeta) -> Row<'a> {
    Row {
        id: r.case.id.name(),
        params: &r.case.params,
        lhs: r.lhs.as_ref().map(format_rational),
        rhs: r.rhs.as_ref().map(format_rational),
        status: r.status,
        engine: &r.engine,
        elapsed_ms: meta.timings.then_some(r.elapsed.as_secs_f64() * 1e3),
        note: r.note.as_deref(),
    }
}

#[derive(Serialize)]
struct Document<'a> {
    run_meta: JsonMeta<'a>,
    cases: Vec<Row<'a>>,
}

pub fn emit_report(
    reports: &[VerificationReport],
    format: ReportFormat,
    meta: &RunMeta,
) -> Result<Vec<u8>> {
    match format {
        ReportFormat::Json => {
            let doc = Document {
                run_meta: JsonMeta {
                    meta,
                    totals: Totals::of(reports),
                },
                cases: reports.iter().map(|r| row(r, meta)).collect(),
            };
            let mut out =
                serde_json::to_vec_pretty(&doc).map_err(|e| Error::Contract(e.to_string()))?;
            out.push(b'\n');
            Ok(out)
        }
        ReportFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record([
                "id",
                "params",
                "lhs",
                "rhs",
                "status",
                "engine",
                "elapsed_ms",
                "note",
            ])
            .map_err(csv_err)?;
            for r in reports {
                let x = row(r, meta);
                w.write_record([
                    x.id,
                    x.params.to_string(),
                    x.lhs.unwrap_or_default(),
                    x.rhs.unwrap_or_default(),
                    r.status.label().to_string(),
                    x.engine.to_string(),
                    x.elapsed_ms.map(|t| format!("{t:.3}")).unwrap_or_default(),
                    x.note.unwrap_or_default().to_string(),
                ])
                .map_err(csv_err)?;
            }
            w.into_inner().map_err(|e| Error::Contract(e.to_string()))
        }
        ReportFormat::Text => {
            let mut out = String::new();
            for r in reports {
                let x = row(r, meta);
                out.push_str(&format!(
                    "{:<13} {} [{}]",
                    r.status.label().to_uppercase(),
                    x.id,
                    x.params
                ));
                match (&x.lhs, &x.rhs) {
                    (Some(l), Some(rh)) if r.status == Status::Pass => {
                        out.push_str(&format!(" = {l}"))
                    }
                    (Some(l), Some(rh)) => out.push_str(&format!(" lhs={l} rhs={rh}")),
                    (Some(l), None) => out.push_str(&format!(" lhs={l}")),
                    _ => {}
                }
                if !x.engine.is_empty() {
                    out.push_str(&format!(" via {}", x.engine));
                }
                if let Some(t) = x.elapsed_ms {
                    out.push_str(&format!(" in {t:.3} ms"));
                }
                if let Some(note) = x.note {
                    out.push_str(&format!(" ({note})"));
                }
                out.push('\n');
            }
            let t = Totals::of(reports);
            out.push_str(&format!(
                "{} cases: {} pass, {} fail, {} rhs-undefined, {} skipped\n",
                t.cases, t.pass, t.fail, t.rhs_undefined, t.skipped
            ));
            Ok(out.into_bytes())
        }
    }
}

fn csv_err(e: csv::Error) -> Error {
    Error::Contract(e.to_string())
}

/// 1 if any case failed, else 2 if any case had invalid parameters, else 0.
pub fn exit_code(reports: &[VerificationReport]) -> i32 {
    if reports.iter().any(|r| r.status == Status::Fail) {
        1
    } else if reports.iter().any(|r| r.status == Status::Skipped) {
        2
    } else {
        0
    }
}

#[derive(Serialize)]
struct BenchJson {
    n: u32,
    engine: String,
    value: String,
    median_ms: Option<f64>,
}

/// Bench rows as a table in the chosen format.
pub fn emit_bench(rows: &[BenchRow], format: ReportFormat) -> Result<Vec<u8>> {
    let items: Vec<BenchJson> = rows
        .iter()
        .map(|r| BenchJson {
            n: r.n,
            engine: r.engine.name().into(),
            value: format_rational(&r.value),
            median_ms: r.median.map(|d| d.as_secs_f64() * 1e3),
        })
        .collect();
    match format {
        ReportFormat::Json => {
            let mut out =
                serde_json::to_vec_pretty(&items).map_err(|e| Error::Contract(e.to_string()))?;
            out.push(b'\n');
            Ok(out)
        }
        ReportFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for item in &items {
                w.serialize(item).map_err(csv_err)?;
            }
            w.into_inner().map_err(|e| Error::Contract(e.to_string()))
        }
        ReportFormat::Text => {
            let mut out = format!("{:>3}  {:<14} {:>12}  value\n", "n", "engine", "median_ms");
            for item in &items {
                let t = item
                    .median_ms
                    .map_or("-".to_string(), |t| format!("{t:.4}"));
                out.push_str(&format!(
                    "{:>3}  {:<14} {:>12}  {}\n",
                    item.n, item.engine, t, item.value
                ));
            }
            Ok(out.into_bytes())
        }
    }
}
