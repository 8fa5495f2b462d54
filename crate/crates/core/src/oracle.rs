//! Brute-force representation counts.
//!
//! Plain nested enumeration of ordered tuples: summands are visited in
//! configuration order, elements ascending, and a branch is cut as soon as the
//! running weighted sum exceeds the target. Nothing here touches the series
//! engine. Intended for `N <= 256` with `Σ m_i <= 6`.

use num_bigint::BigInt;

use crate::config::Configuration;
use crate::error::{Error, Result};
use crate::sequence::IntegerSequence;
use crate::series::PowerSeries;
use crate::table::RepTable;

fn check_limit(seq: &IntegerSequence, n: u64) -> Result<()> {
    if seq.limit() < n {
        return Err(Error::InsufficientMaterialization {
            limit: seq.limit(),
            order: n as usize,
        });
    }
    Ok(())
}

/// Visits every ordered tuple whose weighted sum is at most `bound`, calling
/// `leaf` with that sum.
fn enumerate(
    elements: &[u64],
    coeffs: &[u64],
    partial: u64,
    bound: u64,
    leaf: &mut impl FnMut(u64),
) {
    let Some((&k, rest)) = coeffs.split_first() else {
        leaf(partial);
        return;
    };
    for &a in elements {
        let next = partial + k * a;
        if next > bound {
            break;
        }
        enumerate(elements, rest, next, bound, leaf);
    }
}

/// Number of ordered tuples `(a_{i,j}) ∈ A^{Σm}` with `Σ_i k_i Σ_j a_{i,j} = n`.
pub fn brute_rep_single(seq: &IntegerSequence, cfg: &Configuration, n: u64) -> Result<u64> {
    check_limit(seq, n)?;
    let elements = seq.up_to(n);
    let coeffs = cfg.flattened();
    let mut count = 0u64;
    enumerate(elements, &coeffs, 0, n, &mut |sum| {
        if sum == n {
            count += 1;
        }
    });
    Ok(count)
}

/// `brute_rep_single` for every `n <= order`, sharing one enumeration.
pub fn brute_rep(seq: &IntegerSequence, cfg: &Configuration, order: usize) -> Result<RepTable> {
    check_limit(seq, order as u64)?;
    let elements = seq.up_to(order as u64);
    let coeffs = cfg.flattened();
    let mut counts = vec![0u64; order + 1];
    enumerate(elements, &coeffs, 0, order as u64, &mut |sum| {
        counts[sum as usize] += 1;
    });
    let series = match counts.iter().all(|&c| c <= i64::MAX as u64) {
        true => PowerSeries::from_i64(counts.into_iter().map(|c| c as i64).collect()),
        false => PowerSeries::from_bigints(counts.into_iter().map(BigInt::from).collect()),
    };
    Ok(RepTable::new(cfg.clone(), series))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequences::{moser, naturals};

    fn cfg(pairs: &[(u64, u64)]) -> Configuration {
        Configuration::from_pairs(pairs).unwrap()
    }

    #[test]
    fn single_examples() {
        let zero = IntegerSequence::new(vec![0], 5).unwrap();
        assert_eq!(brute_rep_single(&zero, &cfg(&[(1, 2)]), 0).unwrap(), 1);
        let zero_one = IntegerSequence::new(vec![0, 1], 5).unwrap();
        assert_eq!(brute_rep_single(&zero_one, &cfg(&[(1, 2)]), 1).unwrap(), 2);
        assert_eq!(
            brute_rep_single(&naturals(10), &cfg(&[(1, 1), (2, 1)]), 4).unwrap(),
            3
        );
        assert!(brute_rep_single(&naturals(3), &cfg(&[(1, 1)]), 4).is_err());
    }

    #[test]
    fn table_examples() {
        let zero = IntegerSequence::new(vec![0], 2).unwrap();
        let t = brute_rep(&zero, &cfg(&[(1, 3)]), 2).unwrap();
        assert_eq!(t.series(), &PowerSeries::from_i64(vec![1, 0, 0]));
        let t = brute_rep(&naturals(3), &cfg(&[(1, 2)]), 3).unwrap();
        assert_eq!(t.series(), &PowerSeries::from_i64(vec![1, 2, 3, 4]));
        let t = brute_rep(&moser(2, 50).unwrap(), &cfg(&[(1, 1), (2, 1)]), 50).unwrap();
        assert_eq!(t.series(), &PowerSeries::from_i64(vec![1; 51]));
    }

    #[test]
    fn table_agrees_with_single() {
        let a = IntegerSequence::new(vec![0, 2, 3, 7, 11, 12], 40).unwrap();
        let c = cfg(&[(1, 2), (3, 1)]);
        let t = brute_rep(&a, &c, 40).unwrap();
        for n in 0..=40u64 {
            assert_eq!(
                t.value(n as usize),
                BigInt::from(brute_rep_single(&a, &c, n).unwrap())
            );
        }
    }

    #[test]
    fn extension_beyond_order_is_invisible() {
        let c = cfg(&[(1, 1), (2, 2)]);
        let a = IntegerSequence::new(vec![1, 4, 6, 9], 30).unwrap();
        let b = IntegerSequence::new(vec![1, 4, 6, 9, 31, 40], 40).unwrap();
        assert_eq!(
            brute_rep(&a, &c, 30).unwrap(),
            brute_rep(&b, &c, 30).unwrap()
        );
    }
}
