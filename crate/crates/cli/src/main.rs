//! `daboost` experiment harness.
//!
//! Exit codes: 0 success, 1 usage error, 2 data error, 3 runtime error.

mod commands;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "daboost", version, about = "Boosting experiments on the exponential loss")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run one engine and write its per-round curve table.
    Run(RunArgs),
    /// Majority-vote toy problem: rounds until AdaBoost and DABoost reach 0% training error.
    Toy(ToyArgs),
    /// Run AdaBoost and DABoost side by side and write a merged curve table.
    Compare(CompareArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AlgoArg {
    Adaboost,
    Gradproj,
    Daboost,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Csv,
    Libsvm,
    Toy,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Reweight,
    Resample,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StepRuleArg {
    Log,
    Sqrt,
}

#[derive(Debug, Args)]
pub struct DataArgs {
    /// Input file (required unless --format toy).
    #[arg(long)]
    pub data: Option<std::path::PathBuf>,
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    pub format: FormatArg,
    /// CSV label column: a 0-based index or "last".
    #[arg(long, default_value = "last")]
    pub label_col: String,
    /// CSV label token mapped to +1.
    #[arg(long, default_value = "1")]
    pub positive_label: String,
    #[arg(long, default_value_t = ',')]
    pub delimiter: char,
    /// CSV file has a header row.
    #[arg(long)]
    pub header: bool,
    /// Hold out this fraction of the data as a test set.
    #[arg(long)]
    pub test_fraction: Option<f64>,
    /// Sample count for --format toy.
    #[arg(long, default_value_t = daboost::data::TOY_DEFAULT_N)]
    pub n: usize,
    /// Dimensionality for --format toy.
    #[arg(long, default_value_t = daboost::data::TOY_DEFAULT_DIM)]
    pub dim: usize,
}

#[derive(Debug, Args)]
pub struct BoostArgs {
    #[arg(long, default_value_t = 100)]
    pub rounds: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = ModeArg::Reweight)]
    pub mode: ModeArg,
    #[arg(long, value_enum, default_value_t = StepRuleArg::Log)]
    pub step_rule: StepRuleArg,
    /// Constant per-round importance of the DABoost accumulator.
    #[arg(long, default_value_t = 1.0)]
    pub lambda: f64,
    /// Keep boosting after a weak hypothesis makes no weighted mistakes.
    #[arg(long)]
    pub no_early_stop: bool,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    #[arg(long, value_enum, default_value_t = AlgoArg::Adaboost)]
    pub algo: AlgoArg,
    #[command(flatten)]
    pub data: DataArgs,
    #[command(flatten)]
    pub boost: BoostArgs,
    /// Curve table output (CSV).
    #[arg(long)]
    pub out: std::path::PathBuf,
    /// Optional text dump of the trained ensemble.
    #[arg(long)]
    pub model_out: Option<std::path::PathBuf>,
}

#[derive(Debug, Args)]
pub struct ToyArgs {
    #[arg(long, default_value_t = daboost::data::TOY_DEFAULT_N)]
    pub n: usize,
    #[arg(long, default_value_t = daboost::data::TOY_DEFAULT_DIM)]
    pub dim: usize,
    #[arg(long, default_value_t = 10)]
    pub rounds: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = StepRuleArg::Log)]
    pub step_rule: StepRuleArg,
    /// Optional merged curve table output (CSV).
    #[arg(long)]
    pub out: Option<std::path::PathBuf>,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    #[command(flatten)]
    pub data: DataArgs,
    #[command(flatten)]
    pub boost: BoostArgs,
    /// Merged curve table output (CSV).
    #[arg(long)]
    pub out: std::path::PathBuf,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(commands::EXIT_USAGE),
            };
        }
    };
    let result = match cli.command {
        Command::Run(args) => commands::run(&args),
        Command::Toy(args) => commands::toy(&args),
        Command::Compare(args) => commands::compare(&args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
