//! The `nwalk` command line.
//!
//! [`run`] parses arguments and returns the exit code with both output
//! streams, so tests can drive it without spawning a process. Exit codes:
//! 0 on success, 1 on usage errors (bad flags, malformed step sets or
//! weights), 2 when a verification reports a mismatch.

mod commands;
pub mod registry;
pub mod render;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VERIFY: i32 = 2;

/// Default truncation order for series output.
pub const DEFAULT_ORDER: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Parser, Debug)]
#[command(name = "nwalk", version, about = "Enumerate, classify, simulate and cross-check nondeterministic lattice walks")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Exact (weighted) counts of a walk class for every length 0..=n.
    Count(CountArgs),
    /// Generating-function coefficients from the DP, an automaton or a closed form.
    Series(SeriesArgs),
    /// Classify a single N-walk.
    Classify(ClassifyArgs),
    /// Monte Carlo estimates and histograms.
    Simulate(SimulateArgs),
    /// Infer reach-set types and export the type automaton.
    Automaton(AutomatonArgs),
    /// Two-term asymptotics next to the exact count.
    Asym(AsymArgs),
    /// Encapsulation feasibility of network paths.
    Feasible(FeasibleArgs),
    /// Compare DP counts with the built-in table of closed formulas.
    OracleCheck(OracleArgs),
    /// Weighted Dyck series and the excursion regime.
    Dyck(DyckArgs),
    /// Motzkin closed-form checks.
    Motzkin(MotzkinArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Args, Debug)]
struct OutputArgs {
    /// Output format [default: text; json for `automaton`].
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Shorthand for `--format json`.
    #[arg(long, conflicts_with = "format")]
    json: bool,
    /// Write the output here instead of stdout.
    #[arg(long, short = 'o')]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Family {
    Dyck,
    Motzkin,
}

#[derive(Args, Debug)]
struct StepArgs {
    /// Step set: semicolon-separated integer sets, e.g. '{-1};{1};{-1,1}'.
    #[arg(long, conflicts_with = "family")]
    steps: Option<String>,
    /// Named step set [default: dyck].
    #[arg(long, value_enum)]
    family: Option<Family>,
    /// Comma-separated rational weights, one per step, e.g. 1/3,1/3,1/3.
    #[arg(long)]
    weights: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ClassArg {
    Walk,
    Bridge,
    Meander,
    Excursion,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    /// Progression model, then a type automaton, then full reach sets.
    Auto,
    Full,
    Compressed,
}

#[derive(Args, Debug)]
struct CountArgs {
    #[command(flatten)]
    steps: StepArgs,
    #[arg(long, value_enum, default_value_t = ClassArg::Walk)]
    class: ClassArg,
    /// Largest length.
    #[arg(short = 'n', long = "length")]
    n: usize,
    #[arg(long, value_enum, default_value_t = Mode::Auto)]
    mode: Mode,
    /// Cross-check against exhaustive enumeration (exit 2 on mismatch).
    #[arg(long)]
    verify: bool,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Source {
    Dp,
    Automaton,
    ClosedForm,
}

#[derive(Args, Debug)]
struct SeriesArgs {
    #[command(flatten)]
    steps: StepArgs,
    #[arg(long, value_enum, default_value_t = ClassArg::Bridge)]
    class: ClassArg,
    /// Number of coefficients.
    #[arg(long, env = "NWALK_ORDER", default_value_t = DEFAULT_ORDER)]
    order: usize,
    #[arg(long, value_enum, default_value_t = Source::Dp)]
    source: Source,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
struct ClassifyArgs {
    /// The walk, e.g. '{2};{-1,1};{-2,0};{0,1,2}'.
    #[arg(long, allow_hyphen_values = true)]
    walk: String,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
struct SimulateArgs {
    #[command(flatten)]
    steps: StepArgs,
    /// Walk length.
    #[arg(short = 'n', long = "length")]
    n: usize,
    #[arg(long, default_value_t = 100_000)]
    runs: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// `returns`, `final_max`, or a class name for a probability estimate.
    #[arg(long, default_value = "excursion")]
    stat: String,
    /// Histogram over all walks instead of excursions only.
    #[arg(long)]
    unconditioned: bool,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum VariantArg {
    Walk,
    Meander,
}

#[derive(Args, Debug)]
struct AutomatonArgs {
    #[command(flatten)]
    steps: StepArgs,
    #[arg(long, value_enum, default_value_t = VariantArg::Walk)]
    variant: VariantArg,
    /// Reach sets are explored up to this norm.
    #[arg(long)]
    max_norm: Option<i64>,
    /// Give up beyond this many types.
    #[arg(long)]
    max_states: Option<usize>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
struct AsymArgs {
    #[arg(long, value_enum, default_value_t = Family::Dyck)]
    family: Family,
    #[arg(long, value_enum, default_value_t = ClassArg::Excursion)]
    class: ClassArg,
    #[arg(short = 'n', long = "length")]
    n: u32,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
struct FeasibleArgs {
    /// Edge list: one "nodeA nodeB" per line.
    #[arg(long, requires = "caps")]
    topology: Option<PathBuf>,
    /// Capabilities: one "node KIND" per line.
    #[arg(long, requires = "topology")]
    caps: Option<PathBuf>,
    /// Comma-separated node names along the path.
    #[arg(long, requires = "topology", conflicts_with_all = ["kinds", "dist"])]
    path: Option<String>,
    /// Comma-separated node kinds (encap, decap, both, passive).
    #[arg(long, conflicts_with = "dist")]
    kinds: Option<String>,
    /// Random paths: kind=weight pairs, e.g. encap=1/3,decap=1/3,both=1/3.
    #[arg(long)]
    dist: Option<String>,
    /// Path length for --dist.
    #[arg(short = 'n', long = "length", default_value_t = 100)]
    n: usize,
    #[arg(long, default_value_t = 100_000)]
    runs: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
struct OracleArgs {
    /// Row id, or `all`.
    #[arg(long, default_value = "all")]
    row: String,
    /// Largest length compared.
    #[arg(short = 'n', long = "length", default_value_t = 14)]
    n: usize,
    /// List the rows without checking.
    #[arg(long)]
    list: bool,
    /// Include the DP counts of every selected row.
    #[arg(long)]
    dump: bool,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
struct DyckArgs {
    #[arg(long, value_enum, default_value_t = ClassArg::Excursion)]
    class: ClassArg,
    /// Weights of {-1}, {1}, {-1,1} [default: 1,1,1].
    #[arg(long)]
    weights: Option<String>,
    #[arg(long, env = "NWALK_ORDER", default_value_t = DEFAULT_ORDER)]
    order: usize,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum MotzkinCheck {
    ClosedForms,
}

#[derive(Args, Debug)]
struct MotzkinArgs {
    #[arg(long, value_enum, default_value_t = MotzkinCheck::ClosedForms)]
    check: MotzkinCheck,
    #[arg(long, default_value_t = 20)]
    order: usize,
    #[command(flatten)]
    output: OutputArgs,
}

/// What a command produced, before formatting.
struct Report {
    text: String,
    json: Value,
    csv: Option<String>,
    /// Diagnostics for stderr.
    note: String,
    /// A verification found a mismatch.
    failed: bool,
}

impl Report {
    fn new(text: String, json: Value) -> Self {
        Report { text, json, csv: None, note: String::new(), failed: false }
    }
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    /// A check that could not complete (nothing to report but the reason).
    Verify(String),
}

impl CliError {
    fn usage(e: impl std::fmt::Display) -> Self {
        CliError::Usage(e.to_string())
    }
}

type CmdResult = Result<Report, CliError>;

/// Runs the CLI on `args` (including the program name).
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let (stdout, stderr) = if code == EXIT_OK { (rendered, String::new()) } else { (String::new(), rendered) };
            return Outcome { code, stdout, stderr };
        }
    };
    let (result, output, default_format) = match &cli.command {
        Command::Count(a) => (commands::count(a), &a.output, Format::Text),
        Command::Series(a) => (commands::series(a), &a.output, Format::Text),
        Command::Classify(a) => (commands::classify(a), &a.output, Format::Text),
        Command::Simulate(a) => (commands::simulate(a), &a.output, Format::Text),
        Command::Automaton(a) => (commands::automaton(a), &a.output, Format::Json),
        Command::Asym(a) => (commands::asym(a), &a.output, Format::Text),
        Command::Feasible(a) => (commands::feasible(a), &a.output, Format::Text),
        Command::OracleCheck(a) => (commands::oracle_check(a), &a.output, Format::Text),
        Command::Dyck(a) => (commands::dyck(a), &a.output, Format::Text),
        Command::Motzkin(a) => (commands::motzkin(a), &a.output, Format::Text),
    };
    let report = match result {
        Ok(r) => r,
        Err(CliError::Usage(m)) => return Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: format!("error: {m}\n") },
        Err(CliError::Verify(m)) => return Outcome { code: EXIT_VERIFY, stdout: String::new(), stderr: format!("error: {m}\n") },
    };
    let format = if output.json { Format::Json } else { output.format.unwrap_or(default_format) };
    let mut body = match format {
        Format::Text => report.text,
        Format::Json => serde_json::to_string(&report.json).expect("JSON values serialize"),
        Format::Csv => match report.csv {
            Some(c) => c,
            None => {
                return Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: "error: this command has no CSV output\n".into() }
            }
        },
    };
    if !body.ends_with('\n') {
        body.push('\n');
    }
    let mut stderr = report.note;
    let stdout = match &output.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &body) {
                return Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: format!("error: {}: {e}\n", path.display()) };
            }
            stderr.push_str(&format!("wrote {}\n", path.display()));
            String::new()
        }
        None => body,
    };
    Outcome { code: if report.failed { EXIT_VERIFY } else { EXIT_OK }, stdout, stderr }
}
