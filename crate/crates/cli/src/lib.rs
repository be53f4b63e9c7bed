//! Command-line front end for `matlift`.
//!
//! [`run`] parses arguments, executes one command and returns the exit code,
//! the text written to stdout/stderr, and the JSON report. Exit code 0 means
//! every check passed, 1 means a mathematical check failed, 2 means the input
//! or the command line was malformed.

mod commands;
pub mod report;

use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

pub use report::{Check, Report};

#[derive(Debug, Parser)]
#[command(name = "matlift", version, about = "Matroid lifts, K(r,t) certificates and gain-graph lifts")]
pub struct Cli {
    /// Also write the JSON report to this path.
    #[arg(long, global = true, value_name = "PATH")]
    pub json: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate a .ckt matroid and audit its axioms.
    Check { matroid: PathBuf },
    /// Rank of a set (1-based labels, e.g. 1,2,5).
    Rank { matroid: PathBuf, set: String },
    #[command(subcommand)]
    Lift(LiftCommand),
    #[command(subcommand)]
    Rep(RepCommand),
    #[command(subcommand)]
    Krt(KrtCommand),
    #[command(subcommand)]
    Gain(GainCommand),
    /// Test two .ckt matroids for isomorphism.
    Iso {
        first: PathBuf,
        second: PathBuf,
        #[arg(long, default_value_t = matlift::matroid::DEFAULT_ISO_BUDGET)]
        budget: u64,
    },
}

#[derive(Debug, Subcommand)]
pub enum LiftCommand {
    /// Elementary lift from a linear class of circuits.
    Elementary {
        matroid: PathBuf,
        /// 1-based circuit indices (canonical order), or a file listing circuits.
        #[arg(long)]
        class: String,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// The lift M^N from a .lift file.
    General {
        spec: PathBuf,
        /// Check the perfect-collection condition.
        #[arg(long, conflicts_with = "check_star_prime")]
        check_star: bool,
        /// Check the modular-pair condition (the default).
        #[arg(long)]
        check_star_prime: bool,
        /// Evaluate the rank formula even if the condition fails.
        #[arg(long)]
        force: bool,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum RepCommand {
    /// Build the overlay N with (K/X)^N = K\X from a represented K.
    Witness {
        matrix: PathBuf,
        /// 1-based column labels of X.
        #[arg(long)]
        x: String,
        /// Replace a dependent X by a basis of it first.
        #[arg(long)]
        reduce: bool,
    },
}

#[derive(Debug, Clone, Copy, Args)]
pub struct KrtParams {
    pub r: usize,
    pub t: usize,
}

#[derive(Debug, Subcommand)]
pub enum KrtCommand {
    /// Construct K(r,t) and list its circuit-hyperplanes.
    Build {
        #[command(flatten)]
        params: KrtParams,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Non-representability certificate for K(r,t).
    Certify {
        #[command(flatten)]
        params: KrtParams,
    },
    /// Ingleton check via the sparse paving pair criterion.
    Ingleton {
        #[command(flatten)]
        params: KrtParams,
    },
    /// Search for Vámos-like rank-4 minors on 8 elements.
    VamosScan {
        #[command(flatten)]
        params: KrtParams,
    },
}

#[derive(Debug, Subcommand)]
pub enum GainCommand {
    /// The full gain graph, its graphic matroid and balanced-cycle lift.
    Build {
        /// A .grp file or builtin:<name> (z4, z2^2, s3, d4, q8, ...).
        group: String,
        n: usize,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Rank-2 lift of M(K_3^Γ) from the primitive partition.
    Lift3 {
        group: String,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Nontrivial partitions and the primitive partition.
    Partitions { group: String },
}

#[derive(Debug, Default)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
    pub report: Option<Report>,
}

/// Runs one command line (without the program name).
pub fn run<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let args: Vec<String> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(std::iter::once("matlift".to_string()).chain(args.iter().cloned())) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, ..Outcome::default() }
            } else {
                Outcome { code, stderr: text, ..Outcome::default() }
            };
        }
    };
    let echo = strip_json_flag(&args);
    let start = Instant::now();
    let result = commands::dispatch(&cli.command);
    let elapsed = start.elapsed().as_millis() as u64;
    let (mut report, text) = match result {
        Ok(done) => done,
        Err(commands::Failure::Usage(msg)) => {
            return Outcome { code: 2, stderr: format!("error: {msg}\n"), ..Outcome::default() };
        }
        Err(commands::Failure::Math(report)) => (*report, String::new()),
    };
    report.command = echo;
    report.wall_time_ms = elapsed;
    let mut stdout = text;
    for c in &report.checks {
        let status = if c.pass { "PASS" } else { "FAIL" };
        if c.witness.is_null() || c.pass {
            stdout.push_str(&format!("{status} {}\n", c.name));
        } else {
            stdout.push_str(&format!("{status} {}: {}\n", c.name, c.witness));
        }
    }
    stdout.push_str(&format!("{}\n", report.conclusion));
    let code = if report.all_pass() { 0 } else { 1 };
    let mut stderr = String::new();
    if let Some(path) = &cli.json {
        let body = serde_json::to_string_pretty(&report).expect("report serializes");
        if let Err(e) = std::fs::write(path, body + "\n") {
            stderr = format!("error: cannot write {}: {e}\n", path.display());
            return Outcome { code: 2, stdout, stderr, report: Some(report) };
        }
    }
    Outcome { code, stdout, stderr, report: Some(report) }
}

fn strip_json_flag(args: &[String]) -> Vec<String> {
    let mut out = Vec::new();
    let mut skip = false;
    for a in args {
        if skip {
            skip = false;
            continue;
        }
        if a == "--json" {
            skip = true;
            continue;
        }
        if a.starts_with("--json=") {
            continue;
        }
        out.push(a.clone());
    }
    out
}
