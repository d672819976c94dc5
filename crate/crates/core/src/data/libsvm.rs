use std::fs::File;
use std::io::{BufRead, BufReader, Read, Write};
use std::path::Path;

use crate::error::{BoostError, Result};
use crate::model::{Dataset, Label};

pub fn load_libsvm(path: impl AsRef<Path>) -> Result<Dataset> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| BoostError::io(path, e))?;
    parse_libsvm(file)
}

/// Parses `<label> <index>:<value> ...` lines into a dense dataset.
///
/// Labels may be `+1`/`-1` or `1`/`0`. Indices are 1-based; the
/// dimensionality is the largest index seen and absent entries are 0.
/// Text after `#` is ignored.
pub fn parse_libsvm<R: Read>(reader: R) -> Result<Dataset> {
    let mut rows: Vec<(Label, Vec<(usize, f64)>)> = Vec::new();
    let mut dim = 0;
    for (n, line) in BufReader::new(reader).lines().enumerate() {
        let line_no = n + 1;
        let line = line.map_err(|e| parse_err(line_no, format!("read failed: {e}")))?;
        let content = line.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut parts = content.split_whitespace();
        let label_tok = parts.next().expect("non-empty line has a first token");
        let label = match label_tok.parse::<f64>() {
            Ok(1.0) => Label::Pos,
            Ok(v) if v == -1.0 || v == 0.0 => Label::Neg,
            _ => return Err(parse_err(line_no, format!("bad label '{label_tok}'"))),
        };
        let mut entries = Vec::new();
        for tok in parts {
            let (idx, val) = tok
                .split_once(':')
                .ok_or_else(|| parse_err(line_no, format!("expected index:value, got '{tok}'")))?;
            let idx: usize = idx
                .parse()
                .ok()
                .filter(|&i| i >= 1)
                .ok_or_else(|| parse_err(line_no, format!("bad feature index '{idx}'")))?;
            let val: f64 = val
                .parse()
                .ok()
                .filter(|v: &f64| v.is_finite())
                .ok_or_else(|| parse_err(line_no, format!("bad feature value '{val}'")))?;
            if entries.iter().any(|&(i, _)| i == idx) {
                return Err(parse_err(line_no, format!("feature index {idx} repeated")));
            }
            dim = dim.max(idx);
            entries.push((idx, val));
        }
        rows.push((label, entries));
    }
    if rows.is_empty() {
        return Err(BoostError::invalid("file contains no data rows"));
    }
    if dim == 0 {
        return Err(BoostError::invalid("file contains no features"));
    }
    let mut features = vec![0.0; rows.len() * dim];
    let mut labels = Vec::with_capacity(rows.len());
    for (r, (label, entries)) in rows.into_iter().enumerate() {
        for (idx, val) in entries {
            features[r * dim + idx - 1] = val;
        }
        labels.push(label);
    }
    Dataset::from_parts(dim, features, labels)
}

fn parse_err(line: usize, message: String) -> BoostError {
    BoostError::Parse {
        line,
        column: None,
        message,
    }
}

/// Writes non-zero entries of each row. The last feature is always written
/// so the dimensionality survives a reload.
pub fn write_libsvm<W: Write>(data: &Dataset, mut out: W) -> std::io::Result<()> {
    let last = data.dim() - 1;
    for (x, y) in data.rows() {
        write!(out, "{y}")?;
        for (j, v) in x.iter().enumerate() {
            if *v != 0.0 || j == last {
                write!(out, " {}:{v}", j + 1)?;
            }
        }
        writeln!(out)?;
    }
    out.flush()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> Result<Dataset> {
        parse_libsvm(text.as_bytes())
    }

    #[test]
    fn sparse_line_to_dense_row() {
        let d = parse("+1 1:0.5 3:1.0\n").unwrap();
        assert_eq!(d.dim(), 3);
        assert_eq!(d.row(0), &[0.5, 0.0, 1.0]);
        assert_eq!(d.label(0), Label::Pos);
    }

    #[test]
    fn zero_label_means_negative() {
        let d = parse("0 2:1\n1 1:1\n-1 1:2").unwrap();
        assert_eq!(d.labels(), &[Label::Neg, Label::Pos, Label::Neg]);
        assert_eq!(d.row(0), &[0.0, 1.0]);
    }

    #[test]
    fn values_are_preserved() {
        let d = parse("+1 1:0.6 2:0.8\n-1 2:1\n").unwrap();
        for i in 0..d.len() {
            let norm: f64 = d.row(i).iter().map(|v| v * v).sum();
            assert!((norm - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn comments_and_blank_lines_ignored() {
        let d = parse("# header\n\n+1 1:2 # trailing\n-1 2:3\n").unwrap();
        assert_eq!(d.len(), 2);
        assert_eq!(d.row(0), &[2.0, 0.0]);
    }

    #[test]
    fn malformed_lines_report_line_number() {
        for (text, bad_line) in [
            ("+1 1:1\n+1 2=3\n", 2),
            ("+1 0:1\n", 1),
            ("2 1:1\n", 1),
            ("+1 1:1\n\n-1 1:x\n", 3),
            ("+1 1:1 1:2\n", 1),
        ] {
            match parse(text) {
                Err(BoostError::Parse { line, .. }) => assert_eq!(line, bad_line, "{text:?}"),
                other => panic!("{text:?}: unexpected {other:?}"),
            }
        }
    }

    #[test]
    fn empty_input_rejected() {
        assert!(matches!(parse("# nothing\n"), Err(BoostError::InvalidInput(_))));
        assert!(matches!(parse("+1\n-1\n"), Err(BoostError::InvalidInput(_))));
    }
}
