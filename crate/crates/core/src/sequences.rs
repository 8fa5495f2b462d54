//! Sequence generators.
//!
//! Conventions on zero: [`naturals`], [`squares`] and [`moser`] contain 0;
//! [`primes`] and [`mian_chowla`] do not.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use crate::sequence::{IntegerSequence, SequenceError};

/// `{0, 1, …, limit}`.
pub fn naturals(limit: u64) -> IntegerSequence {
    IntegerSequence::new((0..=limit).collect(), limit).expect("increasing")
}

/// Primes `<= limit`, by the sieve of Eratosthenes.
pub fn primes(limit: u64) -> IntegerSequence {
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for p in 2..=n {
        if composite[p] {
            continue;
        }
        out.push(p as u64);
        let mut q = p * p;
        while q <= n {
            composite[q] = true;
            q += p;
        }
    }
    IntegerSequence::new(out, limit).expect("increasing")
}

/// Squares `0, 1, 4, 9, …` up to `limit`.
pub fn squares(limit: u64) -> IntegerSequence {
    let elements = (0u64..)
        .map(|x| x * x)
        .take_while(|&sq| sq <= limit)
        .collect();
    IntegerSequence::new(elements, limit).expect("increasing")
}

/// The integers whose base-`k²` digits all lie in `{0, …, k−1}`.
///
/// Every `n >= 0` splits uniquely as `n = a + k·b` with `a, b` in this set: the
/// base-`k` digits of `n` in even positions form `a`, those in odd positions
/// form `b`.
pub fn moser(k: u64, limit: u64) -> Result<IntegerSequence, SequenceError> {
    if k < 2 {
        return Err(SequenceError::MoserBase(k));
    }
    let radix = k * k;
    let mut elements = vec![0u64];
    let mut place = 1u64;
    while place <= limit {
        let mut next = Vec::with_capacity(elements.len() * k as usize);
        for d in 0..k {
            for &x in &elements {
                let v = x + d * place;
                if v <= limit {
                    next.push(v);
                }
            }
        }
        elements = next;
        place = match place.checked_mul(radix) {
            Some(p) => p,
            None => break,
        };
    }
    elements.retain(|&x| x <= limit);
    elements.sort_unstable();
    Ok(IntegerSequence::new(elements, limit).expect("increasing"))
}

/// The Mian–Chowla sequence: start at 1 and greedily take the next integer
/// keeping every pairwise sum `a + a'` (including `a + a`) distinct.
pub fn mian_chowla(limit: u64) -> IntegerSequence {
    let n = limit as usize;
    let mut seen = vec![false; 2 * n + 1];
    let mut out: Vec<u64> = Vec::new();
    for c in 1..=n {
        let clashes = seen[2 * c] || out.iter().any(|&a| seen[c + a as usize]);
        if clashes {
            continue;
        }
        for &a in &out {
            seen[c + a as usize] = true;
        }
        seen[2 * c] = true;
        out.push(c as u64);
    }
    IntegerSequence::new(out, limit).expect("increasing")
}

/// A named sequence source, as accepted on the command line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SequenceSpec {
    Naturals,
    Primes,
    Squares,
    Moser(u64),
    MianChowla,
    File(PathBuf),
}

impl SequenceSpec {
    /// Materializes the sequence up to `limit`. File sequences carry their own
    /// limit (the last element) and are only cut down, never extended.
    pub fn materialize(&self, limit: u64) -> Result<IntegerSequence, SequenceError> {
        Ok(match self {
            SequenceSpec::Naturals => naturals(limit),
            SequenceSpec::Primes => primes(limit),
            SequenceSpec::Squares => squares(limit),
            SequenceSpec::Moser(k) => moser(*k, limit)?,
            SequenceSpec::MianChowla => mian_chowla(limit),
            SequenceSpec::File(path) => {
                let seq = IntegerSequence::from_file(path)?;
                if seq.limit() > limit {
                    seq.restrict(limit)
                } else {
                    seq
                }
            }
        })
    }
}

impl FromStr for SequenceSpec {
    type Err = SequenceError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "naturals" => return Ok(SequenceSpec::Naturals),
            "primes" => return Ok(SequenceSpec::Primes),
            "squares" => return Ok(SequenceSpec::Squares),
            "mianchowla" => return Ok(SequenceSpec::MianChowla),
            _ => {}
        }
        if let Some(k) = s.strip_prefix("moser:") {
            let k: u64 = k
                .parse()
                .map_err(|_| SequenceError::UnknownSpec(s.to_string()))?;
            if k < 2 {
                return Err(SequenceError::MoserBase(k));
            }
            return Ok(SequenceSpec::Moser(k));
        }
        if let Some(path) = s.strip_prefix("file:") {
            if !path.is_empty() {
                return Ok(SequenceSpec::File(PathBuf::from(path)));
            }
        }
        Err(SequenceError::UnknownSpec(s.to_string()))
    }
}

impl fmt::Display for SequenceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SequenceSpec::Naturals => f.write_str("naturals"),
            SequenceSpec::Primes => f.write_str("primes"),
            SequenceSpec::Squares => f.write_str("squares"),
            SequenceSpec::Moser(k) => write!(f, "moser:{k}"),
            SequenceSpec::MianChowla => f.write_str("mianchowla"),
            SequenceSpec::File(p) => write!(f, "file:{}", p.display()),
        }
    }
}
