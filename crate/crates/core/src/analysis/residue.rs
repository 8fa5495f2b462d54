use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::config::Configuration;
use crate::engine::rep_series;
use crate::error::{Error, Result};
use crate::sequence::IntegerSequence;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResidueViolation {
    pub n: u64,
    pub residue: u64,
    pub expected: u64,
}

fn is_prime(p: u64) -> bool {
    p >= 2
        && (2..)
            .take_while(|d| d * d <= p)
            .all(|d| !p.is_multiple_of(d))
}

/// Checks `r(n) ≡ [p | n and n/p ∈ A] (mod p)` for the configuration `{(1, p)}`
/// and every `n <= N`.
///
/// Cyclically rotating a `p`-tuple permutes solutions; the orbits have size `p`
/// except for constant tuples `(a, …, a)`, which exist exactly when `n = p·a`.
pub fn mod_p_residue_check(
    seq: &IntegerSequence,
    p: u64,
    order: usize,
) -> Result<Vec<ResidueViolation>> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let cfg = Configuration::from_pairs(&[(1, p)]).expect("valid");
    let table = rep_series(seq, &cfg, order)?;
    let modulus = BigInt::from(p);
    let mut violations = Vec::new();
    for n in 0..=order as u64 {
        let residue = match table.series().as_i64() {
            Some(v) => v[n as usize].rem_euclid(p as i64) as u64,
            None => table
                .value(n as usize)
                .mod_floor(&modulus)
                .to_u64()
                .unwrap(),
        };
        let expected = u64::from(n % p == 0 && seq.contains(n / p));
        if residue != expected {
            violations.push(ResidueViolation {
                n,
                residue,
                expected,
            });
        }
    }
    Ok(violations)
}
