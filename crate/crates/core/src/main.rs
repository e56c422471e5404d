use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use psisum::identities::IdentityId;
use psisum::verify::{
    all_checks, eval_function, format_value, load_grid, run_suite, CheckId, EvalError, RunOptions, SuiteName, FUNCTIONS,
};

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(name = "psisum", version, about = "Check closed forms of digamma-weighted series against brute-force oracles")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a suite of checks and report every row.
    Check {
        #[arg(long, value_enum)]
        suite: Suite,
        /// Tolerance applied to every check instead of its own.
        #[arg(long)]
        tol: Option<f64>,
        /// Grid file replacing the default grids.
        #[arg(long)]
        grid: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Write the report here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Worker threads.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Evaluate one function, e.g. `psisum eval digamma z=0.5`.
    Eval {
        name: String,
        /// Arguments as key=value.
        args: Vec<String>,
    },
    /// List the identities, derivative checks and evaluable functions.
    List,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Beta,
    Hyper,
    Bessel,
    Wright,
    MittagLeffler,
    All,
}

impl From<Suite> for SuiteName {
    fn from(s: Suite) -> Self {
        match s {
            Suite::Beta => SuiteName::Beta,
            Suite::Hyper => SuiteName::Hyper,
            Suite::Bessel => SuiteName::Bessel,
            Suite::Wright => SuiteName::Wright,
            Suite::MittagLeffler => SuiteName::MittagLeffler,
            Suite::All => SuiteName::All,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

fn usage(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("psisum: {msg}");
    ExitCode::from(EXIT_USAGE)
}

fn check(suite: Suite, tol: Option<f64>, grid: Option<PathBuf>, format: Format, out: Option<PathBuf>, jobs: usize) -> ExitCode {
    let grid = match grid.map(|p| load_grid(&p)).transpose() {
        Ok(g) => g,
        Err(e) => return usage(e),
    };
    let report = match run_suite(suite.into(), &RunOptions { tol_override: tol, grid, jobs }) {
        Ok(r) => r,
        Err(e) => return usage(e),
    };
    let text = match format {
        Format::Json => report.to_json() + "\n",
        Format::Csv => report.to_csv(),
        Format::Text => report.to_text(),
    };
    let written = match &out {
        Some(path) => std::fs::write(path, &text).map_err(|e| format!("{}: {e}", path.display())),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        return usage(format!("cannot write report: {e}"));
    }
    if out.is_some() {
        let s = report.summary;
        eprintln!("{} checks: {} passed, {} failed, {} errors", s.total, s.pass, s.fail, s.error);
    }
    if report.all_passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_FAIL)
    }
}

fn eval(name: &str, raw: &[String]) -> ExitCode {
    let mut args = Vec::new();
    for a in raw {
        match a.split_once('=') {
            Some((k, v)) => args.push((k.to_string(), v.to_string())),
            None => return usage(format!("argument `{a}` is not key=value")),
        }
    }
    match eval_function(name, &args) {
        Ok(v) => {
            println!("{}", format_value(v));
            ExitCode::SUCCESS
        }
        Err(EvalError::Usage(m)) => usage(m),
        Err(EvalError::Math(e)) => {
            eprintln!("psisum: {e}");
            ExitCode::from(EXIT_FAIL)
        }
    }
}

fn list() -> ExitCode {
    let mut lines = vec!["Identities (left side by direct summation or quadrature, right side closed form):".to_string()];
    for &id in IdentityId::ALL {
        let suite = CheckId::Identity(id).suite();
        lines.push(format!("  {:<16} [{}] tol {:.0e}  suite {suite}", id.name(), id.param_names().join(", "), id.default_tol()));
        lines.push(format!("      {}", id.description()));
    }
    lines.push(String::new());
    lines.push("Derivative checks (oracle = closed form):".into());
    for c in all_checks().into_iter().filter(|c| matches!(c, CheckId::Aux(_))) {
        lines.push(format!("  {:<21} [{}] tol {:.0e}  suite {}", c.name(), c.param_names().join(", "), c.default_tol(), c.suite()));
        lines.push(format!("      {}", c.description()));
    }
    lines.push(String::new());
    lines.push("Functions for `psisum eval`:".into());
    for f in FUNCTIONS {
        lines.push(format!("  {:<20} {:<24} {}", f.name, f.args.join(" "), f.description));
    }
    lines.push(String::new());
    // A closed pipe (`psisum list | head`) is not an error.
    let _ = std::io::stdout().write_all(lines.join("\n").as_bytes());
    ExitCode::SUCCESS
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Check { suite, tol, grid, format, out, jobs } => check(suite, tol, grid, format, out, jobs),
        Command::Eval { name, args } => eval(&name, &args),
        Command::List => list(),
    }
}
