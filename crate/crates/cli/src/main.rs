//! `fol2nar` command-line front end.
//!
//! Exit codes: 0 success, 1 I/O or usage failure, 2 FOL parse error,
//! 3 unsupported pattern or quantifier, 4 engine failure or bad engine configuration,
//! 5 schema error in an instance or predictions file.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fol2nar::engine::{EngineConfig, ENGINE_PATH_ENV};

#[derive(Parser, Debug)]
#[command(
    name = "fol2nar",
    version,
    about = "Compile first-order logic to Narsese and validate benchmark instances"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compile FOL premises and a conclusion into a Narsese program.
    Compile(CompileArgs),
    /// Label every instance of a file by compiling and executing it.
    Run(BatchArgs),
    /// Label every instance and report which ones match their gold label.
    Validate(ValidateArgs),
    /// Label a premise set with both reference oracles and compare them.
    Oracle(OracleArgs),
    /// Count instances by split and difficulty.
    Stats(StatsArgs),
    /// Score predictions against gold labels.
    Score(ScoreArgs),
    /// Write (context, claim, letter label) records for classification training.
    Export(ExportArgs),
}

#[derive(Args, Debug)]
struct FolInput {
    /// File with one FOL formula per line; the last line is the conclusion
    /// unless --query is given. Blank lines and lines starting with `#` are skipped.
    file: Option<PathBuf>,
    /// Premise formula (repeatable, appended after the file's lines).
    #[arg(long = "premise", short = 'p')]
    premises: Vec<String>,
    /// Conclusion formula.
    #[arg(long, short = 'q')]
    query: Option<String>,
}

#[derive(Args, Debug)]
struct CompileArgs {
    #[command(flatten)]
    input: FolInput,
    /// Append fallback and source-map details as a trailing comment block.
    #[arg(long)]
    report: bool,
    /// Write the program here instead of stdout.
    #[arg(long, short = 'o')]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct OracleArgs {
    #[command(flatten)]
    input: FolInput,
    /// Extra individual added to the grounding domain (repeatable).
    #[arg(long = "domain")]
    domain: Vec<String>,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Engine,
    Chase,
    Models,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    JsonLines,
}

#[derive(Args, Debug)]
struct EngineArgs {
    /// Engine executable.
    #[arg(long = "engine", env = ENGINE_PATH_ENV)]
    engine: Option<PathBuf>,
    /// Cycles run after the judgments, before the question.
    #[arg(long, default_value_t = 20)]
    cycles: u32,
    /// Cycles run after the question.
    #[arg(long, default_value_t = 20)]
    post_cycles: u32,
    /// Minimum answer frequency for True.
    #[arg(long, default_value_t = 0.50)]
    true_threshold: f64,
    /// Maximum answer frequency for False.
    #[arg(long, default_value_t = 0.05)]
    false_threshold: f64,
    /// Per-instance wall-clock limit in milliseconds.
    #[arg(long, default_value_t = 10_000)]
    timeout_ms: u64,
}

impl EngineArgs {
    fn config(&self) -> EngineConfig {
        let mut cfg = EngineConfig::default();
        if let Some(p) = &self.engine {
            cfg.executable_path = p.clone();
        }
        cfg.pre_query_cycles = self.cycles;
        cfg.post_query_cycles = self.post_cycles;
        cfg.true_threshold = self.true_threshold;
        cfg.false_threshold = self.false_threshold;
        cfg.timeout = Duration::from_millis(self.timeout_ms);
        cfg
    }
}

#[derive(Args, Debug)]
struct BatchArgs {
    /// JSON Lines instance file.
    instances: PathBuf,
    #[arg(long, value_enum, default_value_t = Mode::Engine)]
    mode: Mode,
    #[command(flatten)]
    engine: EngineArgs,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Worker threads (0 = one per core).
    #[arg(long, default_value_t = 0)]
    jobs: usize,
}

#[derive(Args, Debug)]
struct ValidateArgs {
    #[command(flatten)]
    batch: BatchArgs,
    /// Write the retained instances to this file.
    #[arg(long)]
    retained_out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct StatsArgs {
    instances: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
}

#[derive(Args, Debug)]
struct ScoreArgs {
    instances: PathBuf,
    /// JSON Lines with `id`, `label` (True/False/Uncertain or A/B/C) and
    /// optional boolean `executed`.
    #[arg(long)]
    predictions: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
}

#[derive(Args, Debug)]
struct ExportArgs {
    instances: PathBuf,
    #[arg(long, short = 'o')]
    output: PathBuf,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Compile(a) => commands::compile(&a.input, a.report, a.output.as_deref()),
        Command::Run(a) => commands::run(&a),
        Command::Validate(a) => commands::validate(&a.batch, a.retained_out.as_deref()),
        Command::Oracle(a) => commands::oracle(&a.input, &a.domain, a.format),
        Command::Stats(a) => commands::stats(&a.instances, a.format),
        Command::Score(a) => commands::score(&a.instances, &a.predictions, a.format),
        Command::Export(a) => commands::export(&a.instances, &a.output),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
