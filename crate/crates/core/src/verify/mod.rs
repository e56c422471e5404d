//! Suites of identity and derivative checks, run over grids and collected into a report.

mod checks;
mod eval;
mod grid;
mod report;

pub use checks::AuxCheck;
pub use eval::{eval_function, format_g15, format_value, EvalError, FUNCTIONS};
pub use grid::{parse_complex, parse_grid, GridLine};
pub use report::{strip_volatile, ComplexValue, Report, ReportRow, Summary};

use std::fmt;
use std::path::Path;
use std::str::FromStr;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use serde::Serialize;

use crate::identities::{check_identity, default_grid, relative_residual, IdentityId, ParamPoint};

/// A named group of checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SuiteName {
    Beta,
    Hyper,
    Bessel,
    Wright,
    MittagLeffler,
    All,
}

impl SuiteName {
    pub const ALL: [SuiteName; 6] =
        [SuiteName::Beta, SuiteName::Hyper, SuiteName::Bessel, SuiteName::Wright, SuiteName::MittagLeffler, SuiteName::All];

    pub fn name(self) -> &'static str {
        match self {
            SuiteName::Beta => "beta",
            SuiteName::Hyper => "hyper",
            SuiteName::Bessel => "bessel",
            SuiteName::Wright => "wright",
            SuiteName::MittagLeffler => "mittag-leffler",
            SuiteName::All => "all",
        }
    }

    /// The checks this suite runs, in registry order.
    pub fn checks(self) -> Vec<CheckId> {
        all_checks().into_iter().filter(|c| self == SuiteName::All || c.suite() == self).collect()
    }
}

impl fmt::Display for SuiteName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SuiteName {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Self::ALL.iter().copied().find(|x| x.name() == s).ok_or_else(|| {
            let names: Vec<&str> = Self::ALL.iter().map(|x| x.name()).collect();
            format!("unknown suite `{s}`; expected one of {}", names.join(", "))
        })
    }
}

/// Anything a suite can check: an identity or a derivative closed form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CheckId {
    Identity(IdentityId),
    Aux(AuxCheck),
}

/// Every check, identities first.
pub fn all_checks() -> Vec<CheckId> {
    IdentityId::ALL.iter().map(|&i| CheckId::Identity(i)).chain(AuxCheck::ALL.iter().map(|&a| CheckId::Aux(a))).collect()
}

impl CheckId {
    pub fn from_name(name: &str) -> Option<Self> {
        IdentityId::from_name(name).map(CheckId::Identity).or_else(|| AuxCheck::from_name(name).map(CheckId::Aux))
    }

    pub fn name(self) -> &'static str {
        match self {
            CheckId::Identity(i) => i.name(),
            CheckId::Aux(a) => a.name(),
        }
    }

    pub fn param_names(self) -> &'static [&'static str] {
        match self {
            CheckId::Identity(i) => i.param_names(),
            CheckId::Aux(a) => a.param_names(),
        }
    }

    pub fn default_tol(self) -> f64 {
        match self {
            CheckId::Identity(i) => i.default_tol(),
            CheckId::Aux(a) => a.default_tol(),
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            CheckId::Identity(i) => i.description(),
            CheckId::Aux(a) => a.description(),
        }
    }

    pub fn default_grid(self) -> Vec<ParamPoint> {
        match self {
            CheckId::Identity(i) => default_grid(i),
            CheckId::Aux(a) => a.default_grid(),
        }
    }

    /// The suite this check belongs to.
    pub fn suite(self) -> SuiteName {
        use AuxCheck::*;
        use IdentityId::*;
        match self {
            CheckId::Identity(F32Unity | F32_112) => SuiteName::Hyper,
            CheckId::Identity(SumJ | SumI | SumJPlusI | SumJMinusI) => SuiteName::Bessel,
            CheckId::Identity(_) => SuiteName::Beta,
            CheckId::Aux(DJnuClosed | DInuClosed | DJnuZero | DInuZero) => SuiteName::Bessel,
            CheckId::Aux(WrightDbetaAlpha1 | WrightDalphaAlpha1 | WrightDbetaUnit | WrightDalphaUnit | WrightDerivLink) => {
                SuiteName::Wright
            }
            CheckId::Aux(_) => SuiteName::MittagLeffler,
        }
    }

    /// Runs the check at one point; evaluation errors become failed rows.
    pub fn run(self, p: &ParamPoint, tol: f64) -> ReportRow {
        let start = Instant::now();
        let mut row = match self {
            CheckId::Identity(id) => ReportRow::from_identity(self.suite(), check_identity(id, p, tol)),
            CheckId::Aux(a) => {
                let mut row = ReportRow::failed(self.suite(), a.name(), p, tol, String::new());
                match a.evaluate(p) {
                    Ok((l, r)) => {
                        row.lhs = l.value.into();
                        row.rhs = r.value.into();
                        row.abs_err = (l.value - r.value).norm();
                        row.rel_err = relative_residual(l.value, r.value);
                        row.pass = row.rel_err <= tol;
                        row.lhs_terms = l.terms;
                        row.rhs_terms = r.terms;
                        row.error = None;
                    }
                    Err(e) => row.error = Some(e.to_string()),
                }
                row
            }
        };
        row.runtime_ms = start.elapsed().as_secs_f64() * 1e3;
        row
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Options for [`run_suite`].
#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    /// Replaces every check's own tolerance.
    pub tol_override: Option<f64>,
    /// Points to run instead of the default grids.
    pub grid: Option<Vec<GridLine>>,
    /// Worker threads; 0 and 1 both run on the calling thread.
    pub jobs: usize,
}

/// Problems found before any check runs.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ConfigError {
    #[error("grid line {line}: {reason}")]
    Grid { line: usize, reason: String },
    #[error("cannot read grid file: {0}")]
    Io(String),
    #[error("tolerance must be positive, got {0}")]
    Tolerance(f64),
}

/// Reads and parses a grid file.
pub fn load_grid(path: &Path) -> Result<Vec<GridLine>, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|e| ConfigError::Io(format!("{}: {e}", path.display())))?;
    parse_grid(&text)
}

/// The (check, point) pairs a suite will run.
///
/// A grid line naming a check runs only that check, which must belong to the
/// suite. A line without a name runs every check of the suite whose parameter
/// names are exactly the line's keys.
pub fn plan(suite: SuiteName, grid: Option<&[GridLine]>) -> Result<Vec<(CheckId, ParamPoint)>, ConfigError> {
    let checks = suite.checks();
    let Some(lines) = grid else {
        return Ok(checks.iter().flat_map(|&c| c.default_grid().into_iter().map(move |p| (c, p))).collect());
    };
    let mut out = Vec::new();
    for line in lines {
        match line.check {
            Some(c) => {
                if !checks.contains(&c) {
                    return Err(ConfigError::Grid {
                        line: line.line,
                        reason: format!("{c} is not part of suite {suite}"),
                    });
                }
                out.push((c, line.point.clone()));
            }
            None => {
                let keys: Vec<&str> = line.point.0.keys().map(String::as_str).collect();
                for &c in &checks {
                    let mut names = c.param_names().to_vec();
                    names.sort_unstable();
                    if names == keys {
                        out.push((c, line.point.clone()));
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Runs every check of a suite and returns the sorted report.
pub fn run_suite(suite: SuiteName, opts: &RunOptions) -> Result<Report, ConfigError> {
    if let Some(t) = opts.tol_override {
        if !(t > 0.0) {
            return Err(ConfigError::Tolerance(t));
        }
    }
    let started_at = chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Millis, true);
    let work = plan(suite, opts.grid.as_deref())?;
    let run_one = |(c, p): &(CheckId, ParamPoint)| c.run(p, opts.tol_override.unwrap_or_else(|| c.default_tol()));
    let rows = if opts.jobs <= 1 {
        work.iter().map(run_one).collect()
    } else {
        let next = AtomicUsize::new(0);
        let slots: Mutex<Vec<Option<ReportRow>>> = Mutex::new(vec![None; work.len()]);
        std::thread::scope(|s| {
            for _ in 0..opts.jobs.min(work.len().max(1)) {
                s.spawn(|| loop {
                    let i = next.fetch_add(1, Ordering::Relaxed);
                    if i >= work.len() {
                        break;
                    }
                    let row = run_one(&work[i]);
                    slots.lock().expect("worker panicked")[i] = Some(row);
                });
            }
        });
        slots.into_inner().expect("worker panicked").into_iter().map(|r| r.expect("every slot filled")).collect()
    };
    Ok(Report::new(suite, opts.tol_override, started_at, rows))
}
