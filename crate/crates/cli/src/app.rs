//! Argument parsing and dispatch. JSON goes to stdout or `--out`; summaries
//! and timings go to stderr.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::commands::{self, Outcome, Settings};
use crate::corpus::{self, Params, Verdict};
use crate::error::{CliError, CliResult};
use crate::job::Job;
use crate::report;

#[derive(Debug, Parser)]
#[command(name = "gorenstein", version, about = "Resolutions, Gorenstein certificates and Pfaffian formats")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// A TOML file holding a `[ring]` table for jobs that omit one.
    #[arg(long, global = true, value_name = "FILE")]
    pub ring: Option<PathBuf>,
    /// The job file.
    #[arg(long = "in", global = true, value_name = "FILE")]
    pub input: Option<PathBuf>,
    /// Write the JSON here instead of stdout; a directory for `corpus all`.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Seed for the pseudorandom corpus choices.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[arg(long, global = true, value_name = "K")]
    pub max_length: Option<usize>,
    /// `QQ` or `Fp:P`, overriding the job's field.
    #[arg(long, global = true)]
    pub field: Option<String>,
    /// The expected twist; a different one is an error.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub twist: Option<i32>,
    /// Include differentials and duality maps.
    #[arg(long, global = true)]
    pub dump: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Minimal free resolution and Betti table.
    Resolve,
    /// Gorenstein certificate: a symmetric resolution with its checks.
    Certify {
        #[arg(long, value_enum, default_value_t = Method::Multiplication)]
        method: Method,
    },
    /// Pfaffians of a skew matrix, and the Buchsbaum-Eisenbud complex for odd size.
    Pfaffian,
    /// Whether the cokernel of a presentation matrix carries a ring structure.
    RankCondition,
    /// Run a corpus case, or `all`.
    Corpus {
        name: String,
        /// Include the generated job files in the report.
        #[arg(long)]
        jobs: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Multiplication,
    Averaging,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Resolve => "resolve",
            Command::Certify { .. } => "certify",
            Command::Pfaffian => "pfaffian",
            Command::RankCondition => "rank-condition",
            Command::Corpus { .. } => "corpus",
        }
    }
}

/// Runs one invocation and returns the exit code.
pub fn run(cli: &Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> u8 {
    let command = cli.command.name();
    let start = Instant::now();
    let result = match &cli.command {
        Command::Corpus { name, jobs } => run_corpus(cli, name, *jobs, stdout, stderr),
        _ => run_job(cli).and_then(|outcome| {
            let _ = writeln!(stderr, "{command}: {}", outcome.summary);
            emit(cli.global.out.as_deref(), &outcome.json, stdout).map(|()| 0)
        }),
    };
    let code = match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "{command}: error: {e}");
            let _ = write_json(stdout, &e.to_json(command));
            e.exit_code()
        }
    };
    let _ = writeln!(stderr, "{command}: {:.2} s", start.elapsed().as_secs_f64());
    code
}

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn run_job(cli: &Cli) -> CliResult<Outcome> {
    let g = &cli.global;
    let path = g.input.as_deref().ok_or_else(|| CliError::Input("--in FILE is required".into()))?;
    let mut job = Job::parse(&read(path)?).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    if let Some(ring) = &g.ring {
        job = job.with_ring_file(&read(ring)?)?;
    }
    let settings = Settings {
        field: g.field.clone(),
        twist: g.twist,
        max_length: g.max_length,
        dump: g.dump,
        averaging: matches!(cli.command, Command::Certify { method: Method::Averaging }),
    };
    match cli.command {
        Command::Resolve => commands::resolve(&job, &settings),
        Command::Certify { .. } => commands::certify(&job, &settings),
        Command::Pfaffian => commands::pfaffians(&job, &settings),
        Command::RankCondition => commands::rank_condition(&job, &settings),
        Command::Corpus { .. } => unreachable!("handled by run_corpus"),
    }
}

fn run_corpus(cli: &Cli, name: &str, with_jobs: bool, stdout: &mut dyn Write, stderr: &mut dyn Write) -> CliResult<u8> {
    let params = match cli.global.seed {
        Some(seed) => Params::from_seed(seed)?,
        None => Params::committed(),
    };
    if params.rerolls > 0 {
        let _ = writeln!(stderr, "corpus: seed {:?} redrawn {} times for a general choice", params.seed, params.rerolls);
    }
    let reports = if name == "all" { corpus::run_all(&params) } else { vec![corpus::run(name, &params)?] };
    for r in &reports {
        let count = |v| r.expectations.iter().filter(|e| e.verdict() == v).count();
        let _ = writeln!(
            stderr,
            "corpus {}: {} ({} pass, {} known discrepancies, {} fail){}",
            r.name,
            if r.passed() { "pass" } else { "FAIL" },
            count(Verdict::Pass),
            count(Verdict::KnownDiscrepancy),
            count(Verdict::Fail),
            r.error.as_deref().map(|e| format!(": {e}")).unwrap_or_default(),
        );
    }
    let cases: Vec<Value> = reports.iter().map(|r| r.to_json(&params, with_jobs)).collect();
    let passed = reports.iter().all(|r| r.passed());
    match cli.global.out.as_deref() {
        Some(dir) if name == "all" => {
            fs::create_dir_all(dir).map_err(|e| CliError::Input(format!("{}: {e}", dir.display())))?;
            for (r, case) in reports.iter().zip(&cases) {
                write_atomically(&dir.join(format!("{}.json", r.name)), &pretty(&report::envelope("corpus", case.clone())))?;
            }
            let index = json!({ "passed": passed, "cases": reports.iter().map(|r| json!({ "case": r.name, "passed": r.passed() })).collect::<Vec<_>>() });
            write_atomically(&dir.join("index.json"), &pretty(&report::envelope("corpus", index)))?;
        }
        out => {
            let body = if name == "all" { json!({ "passed": passed, "cases": cases }) } else { cases[0].clone() };
            emit(out, &report::envelope("corpus", body), stdout)?;
        }
    }
    Ok(if passed { 0 } else { 2 })
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn write_json(w: &mut dyn Write, v: &Value) -> io::Result<()> {
    w.write_all(pretty(v).as_bytes())
}

fn emit(out: Option<&Path>, v: &Value, stdout: &mut dyn Write) -> CliResult<()> {
    match out {
        Some(path) => write_atomically(path, &pretty(v)),
        None => write_json(stdout, v).map_err(|e| CliError::Input(format!("stdout: {e}"))),
    }
}

/// Writes to a sibling temporary file and renames it into place.
fn write_atomically(path: &Path, text: &str) -> CliResult<()> {
    let fail = |e: io::Error| CliError::Input(format!("{}: {e}", path.display()));
    let name = path.file_name().ok_or_else(|| CliError::Input(format!("{}: not a file path", path.display())))?;
    let tmp = path.with_file_name(format!(".{}.tmp{}", name.to_string_lossy(), std::process::id()));
    fs::write(&tmp, text).map_err(fail)?;
    fs::rename(&tmp, path).map_err(fail)
}
