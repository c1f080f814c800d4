use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

mod commands;

/// Noncommutative Painlevé II toolkit: symbolic Lax derivation,
/// quasideterminants and Darboux dressing.
#[derive(Debug, Parser)]
#[command(name = "ncpainleve", version)]
struct Cli {
    /// Report format. Text is rendered from the JSON report.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,

    /// Write the report here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run a symbolic derivation.
    Derive {
        #[arg(value_enum)]
        target: DeriveTarget,
    },
    /// Evaluate every quasideterminant of a matrix read from JSON.
    Quasidet {
        /// JSON array of rows; entries are exact scalars or blocks.
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Carrier::Auto)]
        carrier: Carrier,
        /// Singularity cutoff for block inversion, relative to the largest entry.
        #[arg(long, default_value_t = 1e-12)]
        tolerance: f64,
    },
    /// Run a dressing configuration and report residuals.
    Darboux {
        #[arg(long)]
        config: PathBuf,
        /// Worker threads for pointwise work; 0 picks the machine default.
        #[arg(long, default_value_t = 0)]
        threads: usize,
        /// Overrides tolerances.consistency from the config.
        #[arg(long)]
        consistency_tol: Option<f64>,
        /// Overrides tolerances.riccati from the config.
        #[arg(long)]
        riccati_tol: Option<f64>,
    },
    /// Run the acceptance criteria. Exits 1 if any criterion fails.
    Selftest {
        #[arg(long, default_value_t = ncpainleve::selftest::DEFAULT_SEED)]
        seed: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DeriveTarget {
    Qpii,
    Riccati,
    Symmetric,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Carrier {
    Auto,
    Exact,
    Matrix,
}

/// A failure carrying the module it came from.
pub struct Failure {
    module: &'static str,
    error: String,
    message: String,
}

impl Failure {
    pub fn new<E: std::fmt::Debug + std::fmt::Display>(module: &'static str, e: E) -> Self {
        let debug = format!("{e:?}");
        let error = debug
            .split(|c: char| !c.is_alphanumeric() && c != '_')
            .next()
            .unwrap_or_default()
            .to_string();
        Failure {
            module,
            error,
            message: e.to_string(),
        }
    }

    fn to_json(&self) -> Value {
        json!({
            "status": "error",
            "module": self.module,
            "error": self.error,
            "message": self.message,
        })
    }
}

/// A finished report and whether it counts as success.
pub struct Outcome {
    report: Value,
    ok: bool,
}

fn render(v: &Value, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(v).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Text => ncpainleve::report::render_text(v),
    }
}

fn emit(text: &str, output: Option<&PathBuf>) -> Result<(), String> {
    match output {
        Some(path) => std::fs::write(path, text).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Derive { target } => commands::derive(target),
        Command::Quasidet {
            input,
            carrier,
            tolerance,
        } => commands::quasidet(&input, carrier, tolerance),
        Command::Darboux {
            config,
            threads,
            consistency_tol,
            riccati_tol,
        } => commands::darboux(&config, threads, consistency_tol, riccati_tol),
        Command::Selftest { seed } => commands::selftest(seed),
    };
    let (report, code) = match result {
        Ok(Outcome { report, ok }) => (report, if ok { 0 } else { 1 }),
        Err(f) => {
            eprintln!("error: {}: {}", f.module, f.message);
            (f.to_json(), 1)
        }
    };
    if let Err(e) = emit(&render(&report, cli.format), cli.output.as_ref()) {
        eprintln!("error: cannot write report: {e}");
        return ExitCode::from(1);
    }
    ExitCode::from(code)
}
