//! Configurations `{(k_1, m_1), …, (k_r, m_r)}` and their text grammar.
//!
//! The grammar is `term ("," term)*` with `term := k ":" m`, both decimal. Terms
//! must be given with strictly increasing `k`; mistakes are rejected rather than
//! normalized.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::Serialize;
use thiserror::Error;

/// One coefficient `k` together with its multiplicity `m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Term {
    pub k: u64,
    pub m: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("empty configuration")]
    Empty,
    #[error("malformed term {index} `{term}`: expected `k:m` with decimal k and m")]
    Malformed { index: usize, term: String },
    #[error("term {index} `{term}`: coefficient k must be positive")]
    ZeroCoefficient { index: usize, term: String },
    #[error("term {index} `{term}`: multiplicity m must be positive")]
    ZeroMultiplicity { index: usize, term: String },
    #[error("term {index} `{term}`: coefficient k repeats the previous term")]
    DuplicateCoefficient { index: usize, term: String },
    #[error("term {index} `{term}`: coefficients must be strictly increasing")]
    NotIncreasing { index: usize, term: String },
}

/// A validated configuration: non-empty, `0 < k_1 < … < k_r`, every `m_i >= 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Configuration {
    terms: Vec<Term>,
}

impl Configuration {
    pub fn new(terms: Vec<Term>) -> Result<Self, ConfigError> {
        if terms.is_empty() {
            return Err(ConfigError::Empty);
        }
        for (index, term) in terms.iter().enumerate() {
            let text = || format!("{}:{}", term.k, term.m);
            if term.k == 0 {
                return Err(ConfigError::ZeroCoefficient {
                    index,
                    term: text(),
                });
            }
            if term.m == 0 {
                return Err(ConfigError::ZeroMultiplicity {
                    index,
                    term: text(),
                });
            }
            if index > 0 {
                let prev = terms[index - 1].k;
                if term.k == prev {
                    return Err(ConfigError::DuplicateCoefficient {
                        index,
                        term: text(),
                    });
                }
                if term.k < prev {
                    return Err(ConfigError::NotIncreasing {
                        index,
                        term: text(),
                    });
                }
            }
        }
        Ok(Self { terms })
    }

    /// Builds a configuration from `(k, m)` pairs.
    pub fn from_pairs(pairs: &[(u64, u64)]) -> Result<Self, ConfigError> {
        Self::new(pairs.iter().map(|&(k, m)| Term { k, m }).collect())
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    /// `gcd(m_1, …, m_r)`.
    pub fn degree(&self) -> u64 {
        self.terms.iter().fold(0u64, |g, t| g.gcd(&t.m))
    }

    /// The configuration `{(k_i, m_i / s)}` with `s` the degree.
    pub fn reduced(&self) -> Configuration {
        let s = self.degree();
        Configuration {
            terms: self
                .terms
                .iter()
                .map(|t| Term { k: t.k, m: t.m / s })
                .collect(),
        }
    }

    /// Total number of summands `Σ m_i`.
    pub fn arity(&self) -> u64 {
        self.terms.iter().map(|t| t.m).sum()
    }

    /// The coefficient of every summand, in configuration order, each `k_i`
    /// repeated `m_i` times.
    pub fn flattened(&self) -> Vec<u64> {
        self.terms
            .iter()
            .flat_map(|t| std::iter::repeat_n(t.k, t.m as usize))
            .collect()
    }
}

pub fn parse_config(text: &str) -> Result<Configuration, ConfigError> {
    let text = text.trim();
    if text.is_empty() {
        return Err(ConfigError::Empty);
    }
    let mut terms = Vec::new();
    for (index, raw) in text.split(',').enumerate() {
        let malformed = || ConfigError::Malformed {
            index,
            term: raw.to_string(),
        };
        let (k, m) = raw.trim().split_once(':').ok_or_else(malformed)?;
        let parse = |s: &str| -> Option<u64> {
            let s = s.trim();
            if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
                return None;
            }
            s.parse().ok()
        };
        let k = parse(k).ok_or_else(malformed)?;
        let m = parse(m).ok_or_else(malformed)?;
        terms.push(Term { k, m });
    }
    Configuration::new(terms)
}

pub fn format_config(cfg: &Configuration) -> String {
    cfg.to_string()
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}:{}", t.k, t.m)?;
        }
        Ok(())
    }
}

impl FromStr for Configuration {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_config(s)
    }
}
