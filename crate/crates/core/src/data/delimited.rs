use std::collections::HashMap;
use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use crate::error::{BoostError, Result};
use crate::model::{Dataset, Label};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LabelColumn {
    Index(usize),
    #[default]
    Last,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CsvSchema {
    pub label_column: LabelColumn,
    /// Label token mapped to +1. The only other token present maps to -1.
    pub positive_label: String,
    pub delimiter: u8,
    pub has_header: bool,
}

impl CsvSchema {
    pub fn new(positive_label: impl Into<String>) -> Self {
        CsvSchema {
            label_column: LabelColumn::Last,
            positive_label: positive_label.into(),
            delimiter: b',',
            has_header: false,
        }
    }
}

pub fn load_csv(path: impl AsRef<Path>, schema: &CsvSchema) -> Result<Dataset> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| BoostError::io(path, e))?;
    parse_csv(file, schema)
}

enum Column {
    Numeric,
    /// Tokens integer-coded in order of first appearance.
    Categorical(HashMap<String, f64>),
}

/// Parses delimited text. A feature column whose first value is not a
/// number is treated as categorical; any other column must be numeric on
/// every row.
pub fn parse_csv<R: Read>(reader: R, schema: &CsvSchema) -> Result<Dataset> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .delimiter(schema.delimiter)
        .trim(csv::Trim::All)
        .from_reader(reader);

    let mut width = None;
    let mut label_idx = 0;
    let mut columns: Vec<Column> = Vec::new();
    let mut features = Vec::new();
    let mut tokens: Vec<String> = Vec::new();
    let mut raw_labels: Vec<usize> = Vec::new();

    let mut record = csv::StringRecord::new();
    let mut first = true;
    loop {
        let more = rdr.read_record(&mut record).map_err(|e| csv_error(&e))?;
        if !more {
            break;
        }
        let line = record.position().map_or(0, |p| p.line() as usize);
        if std::mem::take(&mut first) && schema.has_header {
            continue;
        }
        if record.len() == 1 && record[0].is_empty() {
            continue;
        }
        let w = *width.get_or_insert_with(|| record.len());
        if record.len() != w {
            return Err(BoostError::Parse {
                line,
                column: None,
                message: format!("expected {w} fields, found {}", record.len()),
            });
        }
        if columns.is_empty() {
            if w < 2 {
                return Err(BoostError::Schema(
                    "need at least one feature column and a label column".into(),
                ));
            }
            label_idx = match schema.label_column {
                LabelColumn::Last => w - 1,
                LabelColumn::Index(i) if i < w => i,
                LabelColumn::Index(i) => {
                    return Err(BoostError::Schema(format!(
                        "label column {i} out of range for {w} columns"
                    )))
                }
            };
            columns = (0..w)
                .map(|c| {
                    if c != label_idx && record[c].parse::<f64>().is_err() {
                        Column::Categorical(HashMap::new())
                    } else {
                        Column::Numeric
                    }
                })
                .collect();
        }

        for (c, field) in record.iter().enumerate() {
            if c == label_idx {
                let pos = match tokens.iter().position(|t| t == field) {
                    Some(p) => p,
                    None => {
                        tokens.push(field.to_string());
                        if tokens.len() > 2 {
                            return Err(BoostError::Schema(format!(
                                "more than two label values: {}",
                                tokens.join(", ")
                            )));
                        }
                        tokens.len() - 1
                    }
                };
                raw_labels.push(pos);
                continue;
            }
            let value = match &mut columns[c] {
                Column::Numeric => field.parse::<f64>().ok().filter(|v| v.is_finite()).ok_or_else(|| {
                    BoostError::Parse {
                        line,
                        column: Some(c + 1),
                        message: format!("'{field}' is not a finite number"),
                    }
                })?,
                Column::Categorical(codes) => {
                    let next = codes.len() as f64;
                    *codes.entry(field.to_string()).or_insert(next)
                }
            };
            features.push(value);
        }
    }

    let Some(w) = width else {
        return Err(BoostError::invalid("file contains no data rows"));
    };
    if tokens.len() != 2 {
        return Err(BoostError::Schema(format!(
            "expected exactly two label values, found {}",
            tokens.len()
        )));
    }
    let Some(positive) = tokens.iter().position(|t| *t == schema.positive_label) else {
        return Err(BoostError::Schema(format!(
            "positive label '{}' not among label values {}",
            schema.positive_label,
            tokens.join(", ")
        )));
    };
    let labels = raw_labels
        .into_iter()
        .map(|t| if t == positive { Label::Pos } else { Label::Neg })
        .collect();
    Dataset::from_parts(w - 1, features, labels)
}

fn csv_error(e: &csv::Error) -> BoostError {
    let line = e.position().map_or(0, |p| p.line() as usize);
    BoostError::Parse {
        line,
        column: None,
        message: e.to_string(),
    }
}

/// Writes features followed by a `+1`/`-1` label column, no header. Reads
/// back with `CsvSchema::new("+1")`.
pub fn write_csv<W: Write>(data: &Dataset, mut out: W) -> std::io::Result<()> {
    for (x, y) in data.rows() {
        for v in x {
            write!(out, "{v},")?;
        }
        writeln!(out, "{y}")?;
    }
    out.flush()
}
