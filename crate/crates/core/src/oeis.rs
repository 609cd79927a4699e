//! OEIS b-file reading/writing and positionwise comparison of runs against
//! reference sequences.
//!
//! A b-file is plain text: lines starting with `#` are comments, blank lines
//! are skipped, every other line is `index value` separated by whitespace.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::engine::SequenceRun;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OeisError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("line {line}: expected index {expected}, found {found}")]
    NonConsecutive {
        line: usize,
        expected: i64,
        found: i64,
    },
    #[error("b-file has no entries")]
    Empty,
    #[error("invalid OEIS id {0:?} (expected 'A' followed by 6 digits)")]
    InvalidId(String),
    #[error("no overlapping positions between run (1..={run_len}) and b-file after shift {shift}")]
    EmptyOverlap { run_len: usize, shift: i64 },
}

pub fn is_valid_id(id: &str) -> bool {
    id.len() == 7 && id.starts_with('A') && id[1..].bytes().all(|b| b.is_ascii_digit())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BFile {
    pub sequence_id: Option<String>,
    pub offset: i64,
    pub entries: Vec<(i64, i128)>,
}

impl BFile {
    pub fn from_values(sequence_id: Option<String>, offset: i64, values: &[i128]) -> Self {
        let entries = values
            .iter()
            .enumerate()
            .map(|(i, &v)| (offset + i as i64, v))
            .collect();
        Self {
            sequence_id,
            offset,
            entries,
        }
    }

    pub fn values(&self) -> impl Iterator<Item = i128> + '_ {
        self.entries.iter().map(|&(_, v)| v)
    }

    pub fn get(&self, index: i64) -> Option<i128> {
        let i = index.checked_sub(self.offset)?;
        usize::try_from(i).ok().and_then(|i| self.entries.get(i)).map(|&(_, v)| v)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Picks the id out of a leading comment such as `# A111273 ...`.
fn id_from_comment(comment: &str) -> Option<String> {
    comment
        .split(|c: char| !c.is_ascii_alphanumeric())
        .find(|w| is_valid_id(w))
        .map(str::to_string)
}

pub fn parse_bfile(text: &str) -> Result<BFile, OeisError> {
    let mut entries: Vec<(i64, i128)> = Vec::new();
    let mut sequence_id = None;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            if sequence_id.is_none() && entries.is_empty() {
                sequence_id = id_from_comment(comment);
            }
            continue;
        }
        let tokens: Vec<_> = line.split_whitespace().collect();
        let [index, value] = tokens[..] else {
            return Err(OeisError::Parse {
                line: line_no,
                message: format!("expected 2 fields, found {}", tokens.len()),
            });
        };
        let parse_err = |what: &str, tok: &str| OeisError::Parse {
            line: line_no,
            message: format!("{what} {tok:?} is not an integer"),
        };
        let index: i64 = index.parse().map_err(|_| parse_err("index", index))?;
        let value: i128 = value.parse().map_err(|_| parse_err("value", value))?;
        if let Some(&(prev, _)) = entries.last() {
            if index != prev + 1 {
                return Err(OeisError::NonConsecutive {
                    line: line_no,
                    expected: prev + 1,
                    found: index,
                });
            }
        }
        entries.push((index, value));
    }
    let offset = entries.first().ok_or(OeisError::Empty)?.0;
    Ok(BFile {
        sequence_id,
        offset,
        entries,
    })
}

/// Serializes `a(1..=N)` as `n a(n)` lines, newline-terminated. With a
/// sequence id the output starts with a `# <id>` comment line.
pub fn write_bfile(run: &SequenceRun, sequence_id: Option<&str>) -> Result<String, OeisError> {
    let mut out = String::with_capacity(run.len() * 8);
    if let Some(id) = sequence_id {
        if !is_valid_id(id) {
            return Err(OeisError::InvalidId(id.to_string()));
        }
        writeln!(out, "# {id}").expect("writing to a String cannot fail");
    }
    for t in run.terms() {
        writeln!(out, "{} {}", t.n, t.a).expect("writing to a String cannot fail");
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    /// Run index `n`.
    pub index: i64,
    pub expected: i128,
    pub actual: i128,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComparisonResult {
    pub compared_length: usize,
    pub first_mismatch: Option<Mismatch>,
    pub applied_shift: i64,
}

impl ComparisonResult {
    pub fn matches(&self) -> bool {
        self.first_mismatch.is_none()
    }
}

/// Compares `values[k]` (run index `start + k`) against b-file entry
/// `index − shift`, over every position both sides define.
pub fn compare_values(
    values: &[i128],
    start: i64,
    bfile: &BFile,
    shift: i64,
) -> Result<ComparisonResult, OeisError> {
    let mut compared = 0;
    let mut first_mismatch = None;
    for (k, &actual) in values.iter().enumerate() {
        let index = start + k as i64;
        let Some(expected) = bfile.get(index - shift) else {
            continue;
        };
        compared += 1;
        if expected != actual && first_mismatch.is_none() {
            first_mismatch = Some(Mismatch {
                index,
                expected,
                actual,
            });
        }
    }
    if compared == 0 {
        return Err(OeisError::EmptyOverlap {
            run_len: values.len(),
            shift,
        });
    }
    Ok(ComparisonResult {
        compared_length: compared,
        first_mismatch,
        applied_shift: shift,
    })
}

/// Compares run term `a(n)` with b-file entry `n − shift`.
pub fn compare(run: &SequenceRun, bfile: &BFile, shift: i64) -> Result<ComparisonResult, OeisError> {
    let values: Vec<i128> = run.values().map(i128::from).collect();
    compare_values(&values, 1, bfile, shift)
}

/// Compares the run's `q(n)` column with a b-file.
pub fn compare_q(run: &SequenceRun, bfile: &BFile, shift: i64) -> Result<ComparisonResult, OeisError> {
    let values: Vec<i128> = run.terms().iter().map(|t| i128::from(t.q)).collect();
    compare_values(&values, 1, bfile, shift)
}

/// Compares the ascending fixed points of a run with a b-file listing, as
/// a sequence with offset 1.
pub fn compare_fixed_points(run: &SequenceRun, bfile: &BFile, shift: i64) -> Result<ComparisonResult, OeisError> {
    let values: Vec<i128> = crate::engine::fixed_points(run).into_iter().map(i128::from).collect();
    compare_values(&values, 1, bfile, shift)
}
