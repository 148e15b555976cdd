//! Command-line front end for `hsk-core`: part and field files, seeded
//! verification suites and JSON/CSV reports.
//!
//! Exit codes are a stable contract: 0 when every check passes, 1 on a
//! tolerance breach, 2 on bad input.

pub mod error;
pub mod formats;
pub mod suites;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hsk_core::fields::MAX_DEGREE;
use hsk_core::Tolerances;
use serde::Serialize;

pub use error::InputError;
use formats::{canned_parts, load_fields, load_part, NamedPart};
use suites::{Check, Outcome, SuiteConfig, Table};

pub const DEFAULT_TOL: f64 = 1e-10;

#[derive(Debug, Parser)]
#[command(name = "hsk", version, about = "Numerical verification of second-gradient continuum identities")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CommandKind {
    VerifyPvp,
    Reconstruct,
    Classify,
    Invariance,
    Nsalpha,
    Scan,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Virtual-power identity over parts and seeded field samples.
    VerifyPvp(Common),
    /// Hyperstress and stress recovered from their contact actions.
    Reconstruct(Common),
    /// Spherical hyperstresses versus edge-force probes.
    Classify(Common),
    /// Observer invariance of the internal power and the contact actions.
    Invariance(Common),
    /// Navier–Stokes-α hyperstress identities.
    Nsalpha(Common),
    /// Edge force on a coordinate edge as the basis turns about an axis.
    Scan {
        #[command(flatten)]
        common: Common,
        /// Rotation axis, 1 to 3.
        #[arg(long, default_value_t = 3)]
        axis: usize,
        /// Number of angles in [0, π).
        #[arg(long, default_value_t = 16)]
        points: usize,
    },
}

impl Command {
    pub fn kind(&self) -> CommandKind {
        match self {
            Command::VerifyPvp(_) => CommandKind::VerifyPvp,
            Command::Reconstruct(_) => CommandKind::Reconstruct,
            Command::Classify(_) => CommandKind::Classify,
            Command::Invariance(_) => CommandKind::Invariance,
            Command::Nsalpha(_) => CommandKind::Nsalpha,
            Command::Scan { .. } => CommandKind::Scan,
        }
    }

    pub fn common(&self) -> &Common {
        match self {
            Command::VerifyPvp(c)
            | Command::Reconstruct(c)
            | Command::Classify(c)
            | Command::Invariance(c)
            | Command::Nsalpha(c) => c,
            Command::Scan { common, .. } => common,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Part file (JSON); repeatable. Defaults to the built-in parts.
    #[arg(long = "part", value_name = "FILE")]
    pub parts: Vec<PathBuf>,
    /// Field spec: explicit polynomials or {"random": {"seed": s, "degree": d}}.
    #[arg(long, value_name = "FILE")]
    pub fields: Option<PathBuf>,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Polynomial degree of random stress and hyperstress fields.
    #[arg(long, default_value_t = 2)]
    pub degree: usize,
    /// Number of random field samples.
    #[arg(long, default_value_t = 20)]
    pub samples: usize,
    /// Threshold applied to every residual.
    #[arg(long, env = "HSK_DEFAULT_TOL", default_value_t = DEFAULT_TOL)]
    pub tol: f64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Plant a small deliberate defect; the run is expected to fail.
    #[arg(long)]
    pub inject_defect: bool,
    /// Use identically zero inputs.
    #[arg(long)]
    pub zero: bool,
}

/// Options echoed into every report.
#[derive(Debug, Clone, Serialize)]
pub struct ConfigEcho {
    pub parts: Vec<String>,
    pub fields: Option<String>,
    pub seed: u64,
    pub degree: usize,
    pub samples: usize,
    pub tol: f64,
    pub format: Format,
    pub inject_defect: bool,
    pub zero: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub axis: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub points: Option<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: CommandKind,
    pub config: ConfigEcho,
    pub passed: bool,
    pub checks: Vec<Check>,
    pub details: serde_json::Value,
    #[serde(skip)]
    pub table: Table,
}

impl Report {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("report serializes");
                s.push('\n');
                s
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.table.header).expect("in-memory write");
                for row in &self.table.rows {
                    w.write_record(row).expect("in-memory write");
                }
                String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv output is utf-8")
            }
        }
    }
}

fn validate(common: &Common) -> Result<(), InputError> {
    if common.tol.is_nan() || common.tol <= 0.0 || common.tol.is_infinite() {
        return Err(InputError::option(format!("--tol must be a positive finite number, got {}", common.tol)));
    }
    if common.degree > MAX_DEGREE {
        return Err(InputError::option(format!("--degree {} exceeds {MAX_DEGREE}", common.degree)));
    }
    if common.samples == 0 {
        return Err(InputError::option("--samples must be at least 1"));
    }
    Ok(())
}

fn load_parts(paths: &[PathBuf], tol: &Tolerances) -> Result<Vec<NamedPart>, InputError> {
    if paths.is_empty() {
        return Ok(canned_parts(tol));
    }
    paths.iter().map(|p| load_part(p, tol)).collect()
}

/// Runs one subcommand. Input problems are errors; failed checks are not.
pub fn run(cli: &Cli) -> Result<Report, InputError> {
    let command = &cli.command;
    let common = command.common();
    validate(common)?;
    let cfg = SuiteConfig {
        seed: common.seed,
        samples: common.samples,
        degree: common.degree,
        tol: common.tol,
        inject_defect: common.inject_defect,
        zero: common.zero,
    };
    let mut axis_echo = None;
    let mut points_echo = None;
    let outcome: Outcome = match command {
        Command::VerifyPvp(_) => {
            let parts = load_parts(&common.parts, &Tolerances::DEFAULT)?;
            let fields = common.fields.as_deref().map(load_fields).transpose()?;
            suites::pvp(&cfg, &parts, fields.as_ref())
        }
        Command::Reconstruct(_) => suites::reconstruct(&cfg),
        Command::Classify(_) => suites::classify(&cfg),
        Command::Invariance(_) => suites::invariance(&cfg),
        Command::Nsalpha(_) => suites::nsalpha(&cfg),
        Command::Scan { axis, points, .. } => {
            if !(1..=3).contains(axis) {
                return Err(InputError::option(format!("--axis must be 1, 2 or 3, got {axis}")));
            }
            if *points == 0 {
                return Err(InputError::option("--points must be at least 1"));
            }
            axis_echo = Some(*axis);
            points_echo = Some(*points);
            suites::scan(&cfg, axis - 1, *points).map_err(InputError::option)?
        }
    };
    let config = ConfigEcho {
        parts: common.parts.iter().map(|p| p.display().to_string()).collect(),
        fields: common.fields.as_ref().map(|p| p.display().to_string()),
        seed: common.seed,
        degree: common.degree,
        samples: common.samples,
        tol: common.tol,
        format: common.format,
        inject_defect: common.inject_defect,
        zero: common.zero,
        axis: axis_echo,
        points: points_echo,
    };
    Ok(Report {
        tool: "hsk",
        version: env!("CARGO_PKG_VERSION"),
        command: command.kind(),
        config,
        passed: outcome.passed(),
        checks: outcome.checks,
        details: outcome.details,
        table: outcome.table,
    })
}
