//! Command-line front end for `qcpower-core`: JSON channel and state specs
//! in, JSON or CSV results out.

pub mod commands;
pub mod error;
pub mod format;
pub mod schema;

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, ValueEnum};

pub use commands::{Output, Settings};
pub use error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Classify,
    Measure,
    Create,
    Power,
    Qmax,
    NearestCc,
    ScanAd,
    CompareGeometric,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Parser)]
#[command(name = "qcpower", version, about = "Quantum correlations created by local qubit channels")]
pub struct RunConfig {
    pub command: Command,
    /// JSON input file.
    #[arg(long, conflicts_with = "inline")]
    pub input: Option<PathBuf>,
    /// JSON input given directly.
    #[arg(long)]
    pub inline: Option<String>,
    /// Defaults to csv for sweeps and json otherwise.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    #[arg(long, default_value_t = 64)]
    pub order: usize,
    /// Use Monte Carlo with this many samples instead of quadrature.
    #[arg(long)]
    pub mc_samples: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, default_value_t = 0.0)]
    pub gamma_min: f64,
    #[arg(long, default_value_t = 1.0)]
    pub gamma_max: f64,
    /// Sweep length (scan-ad: 11, compare-geometric: 21).
    #[arg(long)]
    pub steps: Option<usize>,
    #[arg(long, default_value_t = 0.5)]
    pub p0: f64,
    /// Also run the brute-force nearest-CC search with this many fidelity
    /// evaluations.
    #[arg(long)]
    pub oracle_budget: Option<usize>,
}

impl RunConfig {
    fn settings(&self) -> Settings {
        Settings { order: self.order, mc_samples: self.mc_samples, seed: self.seed, tol: self.tol }
    }

    fn input_text(&self) -> CliResult<String> {
        match (&self.input, &self.inline) {
            (Some(path), _) => Ok(std::fs::read_to_string(path)?),
            (None, Some(text)) => Ok(text.clone()),
            (None, None) => Err(CliError::Parse("this command needs --input or --inline".into())),
        }
    }
}

pub fn execute(cfg: &RunConfig) -> CliResult<Output> {
    let s = cfg.settings();
    match cfg.command {
        Command::Classify => commands::classify(&schema::parse_json(&cfg.input_text()?)?, &s),
        Command::Measure => commands::measure(&schema::parse_json(&cfg.input_text()?)?, &s),
        Command::Create => commands::create(&schema::parse_json(&cfg.input_text()?)?, &s),
        Command::Power => commands::power(&schema::parse_json(&cfg.input_text()?)?, &s),
        Command::Qmax => commands::qmax(&schema::parse_json(&cfg.input_text()?)?, &s),
        Command::NearestCc => commands::nearest_cc(&schema::parse_json(&cfg.input_text()?)?, &s, cfg.oracle_budget),
        Command::ScanAd => commands::scan_ad(cfg.gamma_min, cfg.gamma_max, cfg.steps.unwrap_or(11), &s),
        Command::CompareGeometric => commands::compare_geometric(cfg.p0, cfg.steps.unwrap_or(21)),
    }
}

pub fn render(out: &Output, format: Format) -> String {
    match (out, format) {
        (Output::Json(v), _) => {
            let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
            s.push('\n');
            s
        }
        (Output::Table { header, rows }, Format::Csv) => format::csv(header, rows),
        (Output::Table { header, rows }, Format::Json) => {
            let rows: Vec<serde_json::Value> = rows
                .iter()
                .map(|r| header.iter().zip(r).map(|(h, x)| (h.to_string(), serde_json::json!(x))).collect())
                .collect();
            render(&Output::Json(serde_json::json!({ "rows": rows })), Format::Json)
        }
    }
}

/// Runs one invocation and writes the result; returns the process exit code.
pub fn run(cfg: &RunConfig) -> i32 {
    let result = execute(cfg).and_then(|out| {
        let default = match out {
            Output::Table { .. } => Format::Csv,
            Output::Json(_) => Format::Json,
        };
        let text = render(&out, cfg.format.unwrap_or(default));
        match &cfg.output {
            Some(path) => std::fs::write(path, text)?,
            None => std::io::stdout().write_all(text.as_bytes())?,
        }
        Ok(())
    });
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("qcpower: {e}");
            e.exit_code()
        }
    }
}
