//! Embedded reference datasets and CSV ingestion.

use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

/// Remission times in months of 128 bladder cancer patients, in source order.
const BLADDER: [f64; 128] = [
    0.08, 2.09, 3.48, 4.87, 6.94, 8.66, 13.11, 23.63, 0.2, 2.23, 0.26, 0.31, 0.73, 0.52, 4.98,
    6.97, 9.02, 13.29, 0.4, 2.26, 3.57, 5.06, 7.09, 11.98, 4.51, 2.07, 0.22, 13.8, 25.74, 0.5,
    2.46, 3.64, 5.09, 7.26, 9.47, 14.24, 19.13, 6.54, 3.36, 0.82, 0.51, 2.54, 3.7, 5.17, 7.28,
    9.74, 14.76, 26.31, 0.81, 1.76, 8.53, 6.93, 0.62, 3.82, 5.32, 7.32, 10.06, 14.77, 32.15, 2.64,
    3.88, 5.32, 3.25, 12.03, 8.65, 0.39, 10.34, 14.83, 34.26, 0.9, 2.69, 4.18, 5.34, 7.59, 10.66,
    4.5, 20.28, 12.63, 0.96, 36.66, 1.05, 2.69, 4.23, 5.41, 7.62, 10.75, 16.62, 43.01, 6.25, 2.02,
    22.69, 0.19, 2.75, 4.26, 5.41, 7.63, 17.12, 46.12, 1.26, 2.83, 4.33, 8.37, 3.36, 5.49, 0.66,
    11.25, 17.14, 79.05, 1.35, 2.87, 5.62, 7.87, 11.64, 17.36, 12.02, 6.76, 0.4, 3.02, 4.34, 5.71,
    7.93, 11.79, 18.1, 1.46, 4.4, 5.85, 2.02, 12.07,
];

/// Waiting times in minutes of 100 bank customers.
const BANK: [f64; 100] = [
    0.8, 0.8, 1.3, 1.5, 1.8, 1.9, 1.9, 2.1, 2.6, 2.7, 2.9, 3.1, 3.2, 3.3, 3.5, 3.6, 4.0, 4.1, 4.2,
    4.2, 4.3, 4.3, 4.4, 4.4, 4.6, 4.7, 4.7, 4.8, 4.9, 4.9, 5.0, 5.3, 5.5, 5.7, 5.7, 6.1, 6.2, 6.2,
    6.2, 6.3, 6.7, 6.9, 7.1, 7.1, 7.1, 7.1, 7.4, 7.6, 7.7, 8.0, 8.2, 8.6, 8.6, 8.6, 8.8, 8.8, 8.9,
    8.9, 9.5, 9.6, 9.7, 9.8, 10.7, 10.9, 11.0, 11.0, 11.1, 11.2, 11.2, 11.5, 11.9, 12.4, 12.5,
    12.9, 13.0, 13.1, 13.3, 13.6, 13.7, 13.9, 14.1, 15.4, 15.4, 17.3, 17.3, 18.1, 18.2, 18.4, 18.9,
    19.0, 19.9, 20.6, 21.3, 21.4, 21.9, 23.0, 27.0, 31.6, 33.1, 38.5,
];

/// A named sample of strictly positive observations.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Dataset {
    name: String,
    values: Vec<f64>,
    source: String,
}

impl Dataset {
    pub fn new(
        name: impl Into<String>,
        values: Vec<f64>,
        source: impl Into<String>,
    ) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidData("dataset has no observations".into()));
        }
        if let Some((i, v)) = values
            .iter()
            .enumerate()
            .find(|(_, v)| !(**v > 0.0 && v.is_finite()))
        {
            return Err(Error::InvalidData(format!(
                "observation {} is {v}; values must be positive and finite",
                i + 1
            )));
        }
        Ok(Dataset {
            name: name.into(),
            values,
            source: source.into(),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// SHA-256 over the count and the sorted values, hex encoded. Independent
    /// of observation order and of name/source.
    pub fn digest(&self) -> String {
        let mut sorted = self.values.clone();
        sorted.sort_by(f64::total_cmp);
        let mut h = Sha256::new();
        h.update(format!("{}\n", sorted.len()));
        for v in &sorted {
            h.update(format!("{v:?}\n"));
        }
        h.finalize()
            .iter()
            .fold(String::with_capacity(64), |mut s, b| {
                let _ = write!(s, "{b:02x}");
                s
            })
    }

    /// One value per line, in stored order.
    pub fn to_csv(&self) -> String {
        self.values.iter().map(|v| format!("{v}\n")).collect()
    }
}

/// Embedded datasets.
pub fn builtin(name: &str) -> Result<Dataset> {
    match name.trim().to_ascii_lowercase().as_str() {
        "bladder" => Dataset::new(
            "bladder",
            BLADDER.to_vec(),
            "remission times (months) of 128 bladder cancer patients; Lee and Wang (2003)",
        ),
        "bank" => Dataset::new(
            "bank",
            BANK.to_vec(),
            "waiting times (minutes) of 100 bank customers; Ghitany et al. (2008)",
        ),
        _ => Err(Error::UnknownDataset(name.to_string())),
    }
}

pub const BUILTIN_NAMES: [&str; 2] = ["bladder", "bank"];

/// Which CSV column holds the observations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ColumnSelector {
    /// Zero-based position.
    Index(usize),
    /// Header name; requires a header row.
    Name(String),
}

impl Default for ColumnSelector {
    fn default() -> Self {
        ColumnSelector::Index(0)
    }
}

impl FromStr for ColumnSelector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.parse::<usize>() {
            Ok(i) => ColumnSelector::Index(i),
            Err(_) => ColumnSelector::Name(s.to_string()),
        })
    }
}

fn fields(line: &str) -> Vec<&str> {
    if line.contains(',') {
        line.split(',').map(str::trim).collect()
    } else {
        line.split_whitespace().collect()
    }
}

/// Parses CSV text: comma or whitespace delimited, optional header row
/// (detected by a non-numeric first token), blank lines and `#` comments
/// skipped.
pub fn parse_csv(name: &str, text: &str, column: &ColumnSelector) -> Result<Dataset> {
    let mut rows = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .peekable();

    let mut index = match column {
        ColumnSelector::Index(i) => Some(*i),
        ColumnSelector::Name(_) => None,
    };
    if let Some(&(line, first)) = rows.peek() {
        let cells = fields(first);
        let is_header = cells.first().is_some_and(|c| c.parse::<f64>().is_err());
        if is_header {
            if let ColumnSelector::Name(wanted) = column {
                let pos = cells
                    .iter()
                    .position(|c| c.trim_matches('"') == wanted)
                    .ok_or_else(|| Error::Parse {
                        line,
                        detail: format!("no column named `{wanted}` in header"),
                    })?;
                index = Some(pos);
            }
            rows.next();
        } else if let ColumnSelector::Name(wanted) = column {
            return Err(Error::Parse {
                line,
                detail: format!("column `{wanted}` requested but the file has no header row"),
            });
        }
    }
    let index = index.unwrap_or(0);

    let mut values = Vec::new();
    for (line, text) in rows {
        let cells = fields(text);
        let cell = cells.get(index).ok_or_else(|| Error::Parse {
            line,
            detail: format!("row has {} field(s), column {index} requested", cells.len()),
        })?;
        let v: f64 = cell.parse().map_err(|_| Error::Parse {
            line,
            detail: format!("`{cell}` is not a number"),
        })?;
        if !(v > 0.0 && v.is_finite()) {
            return Err(Error::InvalidDataAt {
                line,
                detail: format!("{v} is not a positive finite value"),
            });
        }
        values.push(v);
    }
    if values.is_empty() {
        return Err(Error::InvalidData(format!(
            "`{name}` contains no observations"
        )));
    }
    Dataset::new(name, values, format!("csv:{name}"))
}

/// Reads a dataset from a CSV file.
pub fn load_csv(path: impl AsRef<Path>, column: &ColumnSelector) -> Result<Dataset> {
    let path = path.as_ref();
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "data".into());
    let mut d = parse_csv(&name, &text, column)?;
    d.source = format!("file:{}", path.display());
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_shapes() {
        let b = builtin("bladder").unwrap();
        assert_eq!(b.len(), 128);
        let min = b.values().iter().cloned().fold(f64::INFINITY, f64::min);
        let max = b.values().iter().cloned().fold(0.0, f64::max);
        assert_eq!((min, max), (0.08, 79.05));
        let k = builtin("bank").unwrap();
        assert_eq!(k.len(), 100);
        assert_eq!(k.values()[0], 0.8);
        assert_eq!(k.values()[99], 38.5);
        let mean = k.values().iter().sum::<f64>() / 100.0;
        assert!((mean - 9.877).abs() < 1e-9);
        assert!(matches!(builtin("iris"), Err(Error::UnknownDataset(_))));
    }

    #[test]
    fn digests_are_frozen() {
        assert_eq!(
            builtin("bladder").unwrap().digest(),
            builtin("bladder").unwrap().digest()
        );
        assert_ne!(
            builtin("bladder").unwrap().digest(),
            builtin("bank").unwrap().digest()
        );
        let a = Dataset::new("a", vec![2.0, 1.0], "").unwrap();
        let b = Dataset::new("b", vec![1.0, 2.0], "x").unwrap();
        assert_eq!(a.digest(), b.digest());
    }

    #[test]
    fn plain_column() {
        let d = parse_csv("t", "1.0\n2.5\n", &ColumnSelector::default()).unwrap();
        assert_eq!(d.values(), &[1.0, 2.5]);
    }

    #[test]
    fn negative_value_reports_line() {
        let e = parse_csv("t", "-1.0\n", &ColumnSelector::default()).unwrap_err();
        assert_eq!(
            e,
            Error::InvalidDataAt {
                line: 1,
                detail: "-1 is not a positive finite value".into()
            }
        );
    }

    #[test]
    fn header_and_named_column() {
        let text = "id,time\n1,0.5\n\n2, 3.25\n# trailing comment\n";
        let d = parse_csv("t", text, &ColumnSelector::Name("time".into())).unwrap();
        assert_eq!(d.values(), &[0.5, 3.25]);
        let d = parse_csv("t", text, &ColumnSelector::Index(1)).unwrap();
        assert_eq!(d.values(), &[0.5, 3.25]);
        let e = parse_csv("t", text, &ColumnSelector::Name("x".into())).unwrap_err();
        assert!(matches!(e, Error::Parse { line: 1, .. }));
    }

    #[test]
    fn whitespace_delimited_and_bad_token() {
        let d = parse_csv("t", "1 4\n2\t5\n", &ColumnSelector::Index(1)).unwrap();
        assert_eq!(d.values(), &[4.0, 5.0]);
        let e = parse_csv("t", "1\n2\nabc\n", &ColumnSelector::default()).unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, .. }));
        let e = parse_csv("t", "1\nNaN\n", &ColumnSelector::default()).unwrap_err();
        assert!(matches!(e, Error::InvalidDataAt { line: 2, .. }));
    }

    #[test]
    fn builtin_round_trips_through_csv() {
        let b = builtin("bank").unwrap();
        let d = parse_csv("bank", &b.to_csv(), &ColumnSelector::default()).unwrap();
        assert_eq!(d.values(), b.values());
        assert_eq!(d.digest(), b.digest());
    }
}
