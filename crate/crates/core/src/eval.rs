//! Error metrics, the product-of-normalizers training-error bound, and the
//! per-round curve tables the CLI writes out.

use std::io::{self, Write};

use crate::error::Result;
use crate::model::{Dataset, Ensemble, Hypothesis, RoundRecord};
use crate::par::Execution;

/// Column list of every curve CSV.
pub const CURVE_COLUMNS: [&str; 8] = [
    "round",
    "epsilon",
    "step",
    "z",
    "train_error",
    "test_error",
    "exp_loss",
    "bound",
];

/// Fraction of samples the ensemble misclassifies.
pub fn zero_one_error<H: Hypothesis + Sync>(ensemble: &Ensemble<H>, data: &Dataset) -> Result<f64> {
    zero_one_error_with(ensemble, data, Execution::default())
}

pub fn zero_one_error_with<H: Hypothesis + Sync>(
    ensemble: &Ensemble<H>,
    data: &Dataset,
    execution: Execution,
) -> Result<f64> {
    ensemble.check_dim(data.dim())?;
    let wrong = execution.map_range(data.len(), |i| ensemble.predict_unchecked(data.row(i)) != data.label(i));
    Ok(wrong.iter().filter(|&&w| w).count() as f64 / data.len() as f64)
}

/// Running product `Π_{s≤t} Z_s`, one entry per record. `None` when any
/// record lacks a normalizer (DABoost runs).
pub fn loss_bound(records: &[RoundRecord]) -> Option<Vec<f64>> {
    let mut acc = 1.0;
    records
        .iter()
        .map(|r| {
            acc *= r.z?;
            Some(acc)
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct CurveRow {
    pub round: usize,
    pub epsilon: f64,
    pub step: f64,
    pub z: Option<f64>,
    pub train_error: f64,
    pub test_error: Option<f64>,
    pub exp_loss: f64,
    pub bound: Option<f64>,
}

impl CurveRow {
    fn cells(&self) -> [String; 8] {
        [
            self.round.to_string(),
            self.epsilon.to_string(),
            self.step.to_string(),
            cell(self.z),
            self.train_error.to_string(),
            cell(self.test_error),
            self.exp_loss.to_string(),
            cell(self.bound),
        ]
    }
}

fn cell(v: Option<f64>) -> String {
    v.map(|v| v.to_string()).unwrap_or_default()
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct CurveTable {
    pub rows: Vec<CurveRow>,
}

/// One row per record, in round order.
pub fn curve_table(records: &[RoundRecord]) -> CurveTable {
    let bounds = loss_bound(records);
    let mut rows: Vec<CurveRow> = records
        .iter()
        .enumerate()
        .map(|(k, r)| CurveRow {
            round: r.round,
            epsilon: r.epsilon,
            step: r.step,
            z: r.z,
            train_error: r.train_error,
            test_error: r.test_error,
            exp_loss: r.exp_loss,
            bound: bounds.as_ref().map(|b| b[k]),
        })
        .collect();
    rows.sort_by_key(|r| r.round);
    CurveTable { rows }
}

impl CurveTable {
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "{}", CURVE_COLUMNS.join(","))?;
        for row in &self.rows {
            writeln!(out, "{}", row.cells().join(","))?;
        }
        out.flush()
    }
}

/// Side-by-side curves of several runs. Each engine contributes every
/// curve column except `round`, prefixed with its name. Rows run to the
/// longest run; shorter runs leave their cells empty.
pub fn write_merged_csv<W: Write>(tables: &[(&str, &CurveTable)], mut out: W) -> io::Result<()> {
    let mut header = vec!["round".to_string()];
    for (name, _) in tables {
        header.extend(CURVE_COLUMNS[1..].iter().map(|c| format!("{name}_{c}")));
    }
    writeln!(out, "{}", header.join(","))?;
    let rounds = tables.iter().map(|(_, t)| t.len()).max().unwrap_or(0);
    for k in 0..rounds {
        let mut line = vec![(k + 1).to_string()];
        for (_, t) in tables {
            match t.rows.get(k) {
                Some(row) => line.extend(row.cells().into_iter().skip(1)),
                None => line.extend(std::iter::repeat_n(String::new(), CURVE_COLUMNS.len() - 1)),
            }
        }
        writeln!(out, "{}", line.join(","))?;
    }
    out.flush()
}
