//! Materialized integer sequences and the plain-text sequence file format.
//!
//! File format: ASCII, one decimal integer per line, strictly increasing.
//! Lines starting with `#` are comments. The trailing newline is optional.

use std::fmt::Write as _;
use std::path::Path;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum SequenceError {
    #[error("element {value} at position {position} does not exceed its predecessor {previous}")]
    NotIncreasing {
        position: usize,
        value: u64,
        previous: u64,
    },
    #[error("element {value} exceeds the materialization limit {limit}")]
    BeyondLimit { value: u64, limit: u64 },
    #[error("line {line}: `{text}` is not a nonnegative decimal integer")]
    Parse { line: usize, text: String },
    #[error("line {line}: negative value `{text}`")]
    Negative { line: usize, text: String },
    #[error("line {line}: {value} does not exceed the previous value {previous}")]
    LineNotIncreasing {
        line: usize,
        value: u64,
        previous: u64,
    },
    #[error("Moser sequences need k >= 2, got {0}")]
    MoserBase(u64),
    #[error("unknown sequence spec `{0}`")]
    UnknownSpec(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

/// A strictly increasing set of nonnegative integers, complete up to `limit`:
/// for `n <= limit`, `n` is a member exactly when it is stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerSequence {
    elements: Vec<u64>,
    limit: u64,
}

impl IntegerSequence {
    pub fn new(elements: Vec<u64>, limit: u64) -> Result<Self, SequenceError> {
        for (position, w) in elements.windows(2).enumerate() {
            if w[1] <= w[0] {
                return Err(SequenceError::NotIncreasing {
                    position: position + 1,
                    value: w[1],
                    previous: w[0],
                });
            }
        }
        if let Some(&last) = elements.last() {
            if last > limit {
                return Err(SequenceError::BeyondLimit { value: last, limit });
            }
        }
        Ok(Self { elements, limit })
    }

    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Membership; authoritative only for `n <= limit`.
    pub fn contains(&self, n: u64) -> bool {
        self.elements.binary_search(&n).is_ok()
    }

    /// Elements `<= bound`.
    pub fn up_to(&self, bound: u64) -> &[u64] {
        let end = self.elements.partition_point(|&a| a <= bound);
        &self.elements[..end]
    }

    /// The same set, materialized only up to `limit` (which may not exceed the current one).
    pub fn restrict(&self, limit: u64) -> Self {
        Self {
            elements: self.up_to(limit).to_vec(),
            limit: limit.min(self.limit),
        }
    }

    pub fn parse_text(text: &str) -> Result<Self, SequenceError> {
        let mut elements: Vec<u64> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let trimmed = raw.trim();
            if trimmed.starts_with('#') {
                continue;
            }
            if trimmed.is_empty() {
                return Err(SequenceError::Parse {
                    line,
                    text: raw.to_string(),
                });
            }
            if trimmed.starts_with('-') && trimmed[1..].bytes().all(|b| b.is_ascii_digit()) {
                return Err(SequenceError::Negative {
                    line,
                    text: trimmed.to_string(),
                });
            }
            if !trimmed.bytes().all(|b| b.is_ascii_digit()) {
                return Err(SequenceError::Parse {
                    line,
                    text: trimmed.to_string(),
                });
            }
            let value: u64 = trimmed.parse().map_err(|_| SequenceError::Parse {
                line,
                text: trimmed.to_string(),
            })?;
            if let Some(&previous) = elements.last() {
                if value <= previous {
                    return Err(SequenceError::LineNotIncreasing {
                        line,
                        value,
                        previous,
                    });
                }
            }
            elements.push(value);
        }
        let limit = elements.last().copied().unwrap_or(0);
        Ok(Self { elements, limit })
    }

    /// Reads a sequence file; the limit is the last element.
    pub fn from_file(path: impl AsRef<Path>) -> Result<Self, SequenceError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| SequenceError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::parse_text(&text)
    }

    /// Serializes in the sequence file format, one element per line with a trailing newline.
    pub fn to_text(&self) -> String {
        let mut out = String::with_capacity(self.elements.len() * 8);
        for a in &self.elements {
            writeln!(out, "{a}").unwrap();
        }
        out
    }
}
