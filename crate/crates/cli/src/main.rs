use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use serde_json::{Map, Value};

use takiff::suite::{act_eval, run_suite, JobConfig};
use takiff::{Family, Report};

#[derive(Parser)]
#[command(name = "takiff", version, about = "Exact verification engine for Takiff sl2 modules")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite and emit a JSON report.
    Verify {
        suite: String,
        #[command(flatten)]
        job: JobArgs,
    },
    /// Shorthand for `verify irreducible`.
    Irreducible(JobArgs),
    /// Shorthand for `verify lemma51`.
    Lemma51(JobArgs),
    /// Shorthand for `verify singular`.
    Singular(JobArgs),
    /// Induced-module checks.
    Induced {
        #[command(subcommand)]
        command: InducedCommand,
    },
    /// Apply a generator word to a polynomial of a family module.
    Act {
        #[command(flatten)]
        job: JobArgs,
        /// Word such as `e*f`; the leftmost generator acts last.
        #[arg(long)]
        expr: String,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        target: String,
    },
}

#[derive(Subcommand)]
enum InducedCommand {
    /// Shorthand for `verify induced`.
    Verify(JobArgs),
}

#[derive(Args, Clone, Default)]
struct JobArgs {
    /// JSON file with job fields; flags override it.
    #[arg(long)]
    params: Option<PathBuf>,
    #[arg(long)]
    family: Option<Family>,
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    a: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    b: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    beta: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    eta: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    theta: Option<String>,
    #[arg(long)]
    depth: Option<u32>,
    #[arg(long)]
    seeds: Option<usize>,
    #[arg(long)]
    rng: Option<u64>,
    #[arg(long, allow_hyphen_values = true)]
    g: Option<String>,
    #[arg(long)]
    r: Option<u32>,
    #[arg(long)]
    max_level: Option<u32>,
    /// Whittaker type `mu1,mu2`; repeat for a grid.
    #[arg(long = "mu", allow_hyphen_values = true)]
    mu: Vec<String>,
    /// Record wall-clock durations (reports are then no longer byte-stable).
    #[arg(long)]
    timing: bool,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl JobArgs {
    fn config(&self, suite: &str) -> anyhow::Result<JobConfig> {
        let mut fields = match &self.params {
            Some(path) => {
                let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
                match serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))? {
                    Value::Object(map) => map,
                    _ => bail!("{} must hold a JSON object", path.display()),
                }
            }
            None => Map::new(),
        };
        fields.insert("suite".into(), suite.into());
        let mut set = |key: &str, v: Option<Value>| {
            if let Some(v) = v {
                fields.insert(key.into(), v);
            }
        };
        set("family", self.family.map(|f| f.name().into()));
        set("lambda", self.lambda.clone().map(Value::from));
        set("a", self.a.clone().map(Value::from));
        set("b", self.b.clone().map(Value::from));
        set("beta", self.beta.clone().map(Value::from));
        set("alpha", self.alpha.clone().map(Value::from));
        set("eta", self.eta.clone().map(Value::from));
        set("theta", self.theta.clone().map(Value::from));
        set("depth", self.depth.map(Value::from));
        set("seeds", self.seeds.map(Value::from));
        set("rng", self.rng.map(Value::from));
        set("g", self.g.clone().map(Value::from));
        set("r", self.r.map(Value::from));
        set("max_level", self.max_level.map(Value::from));
        if self.timing {
            set("timing", Some(true.into()));
        }
        if !self.mu.is_empty() {
            let mut grid = Vec::new();
            for pair in &self.mu {
                let Some((x, y)) = pair.split_once(',') else {
                    bail!("--mu expects `mu1,mu2`, got {pair}");
                };
                grid.push(Value::from(vec![x.trim(), y.trim()]));
            }
            set("grid", Some(grid.into()));
        }
        serde_json::from_value(Value::Object(fields)).context("invalid job configuration")
    }
}

/// Prints a line; a closed pipe (as with `| head`) is not an error.
fn print_line(text: &str) -> anyhow::Result<()> {
    match writeln!(io::stdout().lock(), "{text}") {
        Err(e) if e.kind() != io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

fn emit(report: &Report, out: Option<&PathBuf>) -> anyhow::Result<ExitCode> {
    let json = report.to_json();
    match out {
        Some(path) => {
            fs::write(path, format!("{json}\n")).with_context(|| format!("writing {}", path.display()))?;
            eprintln!(
                "{}: {} checks, {} failed, {} errors -> {}",
                report.suite,
                report.checks.len(),
                report.count(takiff::Status::Fail),
                report.count(takiff::Status::Error),
                path.display()
            );
        }
        None => print_line(&json)?,
    }
    Ok(if report.ok() { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

fn run_job(suite: &str, job: &JobArgs) -> anyhow::Result<ExitCode> {
    let config = job.config(suite)?;
    emit(&run_suite(&config), job.out.as_ref())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Verify { suite, job } => run_job(suite, job),
        Command::Irreducible(job) => run_job("irreducible", job),
        Command::Lemma51(job) => run_job("lemma51", job),
        Command::Singular(job) => run_job("singular", job),
        Command::Induced { command: InducedCommand::Verify(job) } => run_job("induced", job),
        Command::Act { job, expr, target } => job
            .config("axioms")
            .and_then(|c| Ok(c.params()?))
            .and_then(|p| Ok(act_eval(&p, expr, target)?))
            .and_then(|value| print_line(&value.to_string()))
            .map(|()| ExitCode::SUCCESS),
    };
    result.unwrap_or_else(|e| {
        eprintln!("error: {e:#}");
        ExitCode::from(2)
    })
}
