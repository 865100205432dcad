//! Identity registry, grid verification and benchmarking.

mod bench;
mod grid;
mod params;
mod registry;
mod report;

use std::time::{Duration, Instant};

use serde::Serialize;

use crate::arith::{rat_int, Rational};
use crate::closed_forms::ClosedFormId;
use crate::determinants::{default_engine, det_with, DetStats, Engine};
use crate::error::Error;
use crate::lgv::{count_nonintersecting, EnumerationCap};

pub use bench::{bench, BenchRow};
pub use grid::{expand_grid, run_grid, GridSpec};
pub use params::Params;
pub use registry::{entry, registry, IdentityEntry, Lhs, Shape};
pub use report::{emit_bench, emit_report, exit_code, ReportFormat, RunMeta};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityCase {
    pub id: ClosedFormId,
    pub params: Params,
    /// `None` picks fraction-free elimination for integer matrices and
    /// rational elimination otherwise.
    pub engine: Option<Engine>,
}

impl IdentityCase {
    pub fn new(id: ClosedFormId, params: Params) -> Self {
        IdentityCase {
            id,
            params,
            engine: None,
        }
    }

    pub fn with_engine(mut self, engine: Option<Engine>) -> Self {
        self.engine = engine;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    /// The determinant was computed but the closed form is singular here.
    RhsUndefined,
    /// Parameters were rejected before anything was computed.
    Skipped,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::RhsUndefined => "rhs-undefined",
            Status::Skipped => "skipped",
        }
    }
}

#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub case: IdentityCase,
    pub lhs: Option<Rational>,
    pub rhs: Option<Rational>,
    pub status: Status,
    /// Engine name, or `enumeration` for brute-force family counts.
    pub engine: String,
    pub stats: Option<DetStats>,
    pub elapsed: Duration,
    pub note: Option<String>,
}

impl VerificationReport {
    fn skipped(case: IdentityCase, reason: &Error, start: Instant) -> Self {
        VerificationReport {
            engine: case
                .engine
                .map(|e| e.name().to_string())
                .unwrap_or_default(),
            case,
            lhs: None,
            rhs: None,
            status: Status::Skipped,
            stats: None,
            elapsed: start.elapsed(),
            note: Some(reason.to_string()),
        }
    }
}

/// Builds the determinant side, evaluates it with the requested engine,
/// evaluates the closed form and compares them exactly.
pub fn run_case(case: &IdentityCase) -> VerificationReport {
    let start = Instant::now();
    let entry = entry(case.id);
    if let Err(e) = entry.validate(&case.params) {
        return VerificationReport::skipped(case.clone(), &e, start);
    }
    let lhs = match entry.lhs(&case.params) {
        Ok(l) => l,
        Err(e) => return VerificationReport::skipped(case.clone(), &e, start),
    };
    let (value, engine, stats) = match lhs {
        Lhs::Matrix(m) => {
            let engine = case.engine.unwrap_or_else(|| default_engine(&m));
            match det_with(&m, engine) {
                Ok(r) => (r.value, engine.name().to_string(), Some(r.stats)),
                Err(e) => return VerificationReport::skipped(case.clone(), &e, start),
            }
        }
        Lhs::Families(cfg) => match count_nonintersecting(&cfg, EnumerationCap::default()) {
            Ok(v) => (rat_int(v), "enumeration".to_string(), None),
            Err(e) => return VerificationReport::skipped(case.clone(), &e, start),
        },
    };
    let (rhs, status, note) = match entry.rhs(&case.params) {
        Ok(r) => {
            let status = if r == value {
                Status::Pass
            } else {
                Status::Fail
            };
            (Some(r), status, None)
        }
        Err(e) => (None, Status::RhsUndefined, Some(e.to_string())),
    };
    VerificationReport {
        case: case.clone(),
        lhs: Some(value),
        rhs,
        status,
        engine,
        stats,
        elapsed: start.elapsed(),
        note,
    }
}
