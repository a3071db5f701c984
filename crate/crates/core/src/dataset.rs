//! `period,value` CSV ingestion.
//!
//! Blank lines and lines starting with `#` are skipped, surrounding whitespace
//! is trimmed and both LF and CRLF line endings are accepted. Periods must be
//! strictly increasing integers and values strictly positive, finite decimals.

use std::fmt;
use std::path::{Path, PathBuf};

use crate::series::{Label, Series, MIN_SAMPLES};

/// Errors raised while reading a dataset file.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum DatasetError {
    #[error("Io: {path}: {message}")]
    Io { path: String, message: String },
    #[error("MissingHeader: expected `period,value`, found `{found}`")]
    MissingHeader { found: String },
    #[error("ParseError: line {line}: {message}")]
    Line { line: u64, message: String },
    #[error("TooFewSamples: need at least {needed} rows, got {got}")]
    TooFewSamples { needed: usize, got: usize },
}

/// A parsed dataset: the source path (if any) and its rows in file order.
#[derive(Debug, Clone, PartialEq)]
pub struct DatasetFile {
    pub path: Option<PathBuf>,
    pub rows: Vec<(Label, f64)>,
}

impl DatasetFile {
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn labels(&self) -> Vec<Label> {
        self.rows.iter().map(|r| r.0).collect()
    }

    pub fn values(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.1).collect()
    }

    /// Converts the rows into an observed series.
    pub fn to_series(&self) -> Series<f64> {
        Series::observed(self.labels(), self.values())
            .expect("dataset invariants imply a valid series")
    }
}

impl fmt::Display for DatasetFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "period,value")?;
        for (p, v) in &self.rows {
            writeln!(f, "{p},{v}")?;
        }
        Ok(())
    }
}

/// Reads and parses a dataset file from disk.
pub fn parse_dataset(path: impl AsRef<Path>) -> Result<DatasetFile, DatasetError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| DatasetError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    let mut file = parse_dataset_str(&text)?;
    file.path = Some(path.to_path_buf());
    Ok(file)
}

/// Parses dataset text.
pub fn parse_dataset_str(text: &str) -> Result<DatasetFile, DatasetError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .flexible(true)
        .from_reader(text.as_bytes());

    let header = reader.headers().map_err(|e| line_error(e, 1))?.clone();
    if header.len() != 2 || &header[0] != "period" || &header[1] != "value" {
        return Err(DatasetError::MissingHeader {
            found: header.iter().collect::<Vec<_>>().join(","),
        });
    }

    let mut rows: Vec<(Label, f64)> = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| line_error(e, 0))?;
        let line = record.position().map(|p| p.line()).unwrap_or(0);
        if record.len() == 1 && record[0].is_empty() {
            continue;
        }
        if record.len() != 2 {
            return Err(DatasetError::Line {
                line,
                message: format!("expected 2 fields, found {}", record.len()),
            });
        }
        let period: Label = record[0].parse().map_err(|_| DatasetError::Line {
            line,
            message: format!("period `{}` is not an integer", &record[0]),
        })?;
        let value: f64 = record[1].parse().map_err(|_| DatasetError::Line {
            line,
            message: format!("value `{}` is not numeric", &record[1]),
        })?;
        if !value.is_finite() {
            return Err(DatasetError::Line {
                line,
                message: format!("value `{}` is not finite", &record[1]),
            });
        }
        if value <= 0.0 {
            return Err(DatasetError::Line {
                line,
                message: format!("value {value} is not strictly positive"),
            });
        }
        if let Some(&(prev, _)) = rows.last() {
            if period <= prev {
                return Err(DatasetError::Line {
                    line,
                    message: format!("period {period} does not increase on {prev}"),
                });
            }
        }
        rows.push((period, value));
    }

    if rows.len() < MIN_SAMPLES {
        return Err(DatasetError::TooFewSamples {
            needed: MIN_SAMPLES,
            got: rows.len(),
        });
    }
    Ok(DatasetFile { path: None, rows })
}

fn line_error(e: csv::Error, fallback: u64) -> DatasetError {
    let line = e.position().map(|p| p.line()).unwrap_or(fallback);
    DatasetError::Line {
        line,
        message: e.to_string(),
    }
}
