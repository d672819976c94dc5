use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use daboost::data::{self, CsvSchema, LabelColumn};
use daboost::eval::{curve_table, write_merged_csv, CurveTable};
use daboost::{
    run_boosting, Algorithm, BoostConfig, BoostError, BoostRun, Dataset, StepRule, Stump, WeightingMode,
};

use crate::{AlgoArg, BoostArgs, CompareArgs, DataArgs, FormatArg, ModeArg, RunArgs, StepRuleArg, ToyArgs};

pub const EXIT_USAGE: u8 = 1;
pub const EXIT_DATA: u8 = 2;
pub const EXIT_RUNTIME: u8 = 3;

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn data(e: BoostError) -> Self {
        let code = match e {
            BoostError::Config(_) => EXIT_USAGE,
            _ => EXIT_DATA,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }

    fn runtime(e: impl std::fmt::Display) -> Self {
        CliError {
            code: EXIT_RUNTIME,
            message: e.to_string(),
        }
    }
}

type CliResult<T = ()> = Result<T, CliError>;

impl From<AlgoArg> for Algorithm {
    fn from(a: AlgoArg) -> Self {
        match a {
            AlgoArg::Adaboost => Algorithm::AdaBoost,
            AlgoArg::Gradproj => Algorithm::GradientProjection,
            AlgoArg::Daboost => Algorithm::DaBoost,
        }
    }
}

impl From<StepRuleArg> for StepRule {
    fn from(s: StepRuleArg) -> Self {
        match s {
            StepRuleArg::Log => StepRule::Log,
            StepRuleArg::Sqrt => StepRule::Sqrt,
        }
    }
}

impl From<ModeArg> for WeightingMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Reweight => WeightingMode::Reweight,
            ModeArg::Resample => WeightingMode::Resample,
        }
    }
}

fn boost_config(algorithm: Algorithm, args: &BoostArgs) -> CliResult<BoostConfig> {
    let config = BoostConfig {
        rounds: args.rounds,
        algorithm,
        weighting_mode: args.mode.into(),
        seed: args.seed,
        lambda: args.lambda,
        step_rule: args.step_rule.into(),
        stop_on_zero_error: !args.no_early_stop,
        ..BoostConfig::default()
    };
    config.validate().map_err(|e| CliError::usage(e.to_string()))?;
    Ok(config)
}

fn csv_schema(args: &DataArgs) -> CliResult<CsvSchema> {
    let label_column = match args.label_col.as_str() {
        "last" => LabelColumn::Last,
        s => LabelColumn::Index(
            s.parse()
                .map_err(|_| CliError::usage(format!("--label-col must be an index or 'last', got '{s}'")))?,
        ),
    };
    if !args.delimiter.is_ascii() {
        return Err(CliError::usage("--delimiter must be a single ASCII character"));
    }
    Ok(CsvSchema {
        label_column,
        positive_label: args.positive_label.clone(),
        delimiter: args.delimiter as u8,
        has_header: args.header,
    })
}

/// Loads (or generates) the data and splits off the test set if asked.
fn load(args: &DataArgs, seed: u64) -> CliResult<(Dataset, Option<Dataset>)> {
    let full = match args.format {
        FormatArg::Toy => data::generate_majority_toy(args.n, args.dim, seed).map_err(CliError::data)?,
        FormatArg::Csv | FormatArg::Libsvm => {
            let path = args
                .data
                .as_ref()
                .ok_or_else(|| CliError::usage("--data is required unless --format toy"))?;
            if args.format == FormatArg::Csv {
                data::load_csv(path, &csv_schema(args)?)
            } else {
                data::load_libsvm(path)
            }
            .map_err(CliError::data)?
        }
    };
    match args.test_fraction {
        None => Ok((full, None)),
        Some(f) => {
            let (train, test) = data::train_test_split(&full, f, seed).map_err(CliError::data)?;
            Ok((train, Some(test)))
        }
    }
}

fn create(path: &Path) -> CliResult<BufWriter<File>> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| CliError::runtime(format!("cannot create {}: {e}", path.display())))
}

fn write_with(path: &Path, f: impl FnOnce(&mut BufWriter<File>) -> io::Result<()>) -> CliResult {
    let mut out = create(path)?;
    f(&mut out).map_err(|e| CliError::runtime(format!("writing {}: {e}", path.display())))
}

fn boost(config: &BoostConfig, train: &Dataset, test: Option<&Dataset>) -> CliResult<BoostRun<Stump>> {
    run_boosting(config, train, test).map_err(CliError::runtime)
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map_or_else(|| "n/a".to_string(), |v| v.to_string())
}

/// One line per term: coefficient, feature, threshold, polarity.
fn write_model<W: Write>(run: &BoostRun<Stump>, mut out: W) -> io::Result<()> {
    writeln!(out, "# coefficient feature threshold polarity")?;
    for (c, s) in run.ensemble.terms() {
        writeln!(out, "{c} {} {} {}", s.feature, s.threshold, s.polarity)?;
    }
    out.flush()
}

pub fn run(args: &RunArgs) -> CliResult {
    let config = boost_config(args.algo.into(), &args.boost)?;
    let (train, test) = load(&args.data, args.boost.seed)?;
    let run = boost(&config, &train, test.as_ref())?;
    let table = curve_table(&run.records);
    write_with(&args.out, |w| table.write_csv(w))?;
    if let Some(path) = &args.model_out {
        write_with(path, |w| write_model(&run, w))?;
    }

    let last = run.records.last();
    println!("algorithm: {}", config.algorithm);
    println!("rounds: {}", run.records.len());
    println!("stop: {:?}", run.stop);
    println!("final train error: {}", fmt_opt(last.map(|r| r.train_error)));
    println!("final test error: {}", fmt_opt(last.and_then(|r| r.test_error)));
    Ok(())
}

/// First round whose training error is exactly zero.
fn zero_error_round(table: &CurveTable) -> Option<usize> {
    table.rows.iter().find(|r| r.train_error == 0.0).map(|r| r.round)
}

pub fn toy(args: &ToyArgs) -> CliResult {
    let data = data::generate_majority_toy(args.n, args.dim, args.seed).map_err(CliError::data)?;
    let boost_args = BoostArgs {
        rounds: args.rounds,
        seed: args.seed,
        mode: ModeArg::Reweight,
        step_rule: args.step_rule,
        lambda: 1.0,
        no_early_stop: false,
    };
    let mut tables = Vec::new();
    for algo in [Algorithm::AdaBoost, Algorithm::DaBoost] {
        let run = boost(&boost_config(algo, &boost_args)?, &data, None)?;
        let table = curve_table(&run.records);
        match zero_error_round(&table) {
            Some(t) => println!("{algo}: 0% training error at round {t}"),
            None => println!(
                "{algo}: training error {} after {} rounds",
                fmt_opt(table.rows.last().map(|r| r.train_error)),
                table.len()
            ),
        }
        tables.push((algo.to_string(), table));
    }
    if let Some(path) = &args.out {
        let named: Vec<(&str, &CurveTable)> = tables.iter().map(|(n, t)| (n.as_str(), t)).collect();
        write_with(path, |w| write_merged_csv(&named, w))?;
    }
    Ok(())
}

pub fn compare(args: &CompareArgs) -> CliResult {
    let (train, test) = load(&args.data, args.boost.seed)?;
    let mut tables = Vec::new();
    for algo in [Algorithm::AdaBoost, Algorithm::DaBoost] {
        let config = boost_config(algo, &args.boost)?;
        let run = boost(&config, &train, test.as_ref())?;
        tables.push((algo.to_string(), curve_table(&run.records)));
    }
    let named: Vec<(&str, &CurveTable)> = tables.iter().map(|(n, t)| (n.as_str(), t)).collect();
    write_with(&args.out, |w| write_merged_csv(&named, w))?;

    for (name, table) in &tables {
        let best = table
            .rows
            .iter()
            .filter_map(|r| r.test_error.map(|e| (e, r.round)))
            .fold(None, |acc: Option<(f64, usize)>, (e, t)| match acc {
                Some((b, _)) if b <= e => acc,
                _ => Some((e, t)),
            });
        println!(
            "{name}: rounds {}, final train error {}, best test error {}, best test round {}",
            table.len(),
            fmt_opt(table.rows.last().map(|r| r.train_error)),
            fmt_opt(best.map(|b| b.0)),
            best.map_or_else(|| "n/a".to_string(), |b| b.1.to_string()),
        );
    }
    Ok(())
}
