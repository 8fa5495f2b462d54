use serde::Serialize;

use super::PartialSumSeries;
use crate::error::{Error, Result};

/// Statistics over one block `[2^k, 2^{k+1})`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DyadicBlock {
    pub k: u32,
    pub block_lo: u64,
    pub block_hi: u64,
    /// `max |a_n|` over the block.
    pub max_abs: f64,
    /// `max_abs / 2^{k(1/4 − ε)}`.
    pub ratio: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Trend {
    NonDecreasing,
    NotNonDecreasing,
    /// Identically zero sums, or fewer than three complete blocks.
    NotApplicable,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DyadicReport {
    pub epsilon: f64,
    pub blocks: Vec<DyadicBlock>,
    /// Verdict over the last three complete blocks.
    pub trend: Trend,
}

/// Growth of the partial sums across complete dyadic blocks.
///
/// A non-decreasing ratio over the final blocks is only consistent with
/// `a_n` not being `O(n^{1/4−ε})`; it proves nothing about the limit.
pub fn ef_dyadic_report(a: &PartialSumSeries, epsilon: f64) -> Result<DyadicReport> {
    if !(epsilon > 0.0 && epsilon < 0.25) {
        return Err(Error::Epsilon(epsilon));
    }
    if a.len() < 8 {
        return Err(Error::PartialSumsTooShort {
            len: a.len(),
            minimum: 8,
        });
    }
    let n_max = a.len() as u64;
    let mut blocks = Vec::new();
    let mut k = 0u32;
    while (2u64 << k) - 1 <= n_max {
        let lo = 1u64 << k;
        let hi = (2u64 << k) - 1;
        let max_abs = (lo..=hi)
            .map(|n| a.get(n as usize).abs())
            .fold(0.0, f64::max);
        let ratio = max_abs / 2f64.powf(k as f64 * (0.25 - epsilon));
        blocks.push(DyadicBlock {
            k,
            block_lo: lo,
            block_hi: hi,
            max_abs,
            ratio,
        });
        k += 1;
    }
    let all_zero = blocks.iter().all(|b| b.max_abs == 0.0);
    let trend = if all_zero || blocks.len() < 3 {
        Trend::NotApplicable
    } else {
        let last = &blocks[blocks.len() - 3..];
        if last.windows(2).all(|w| w[0].ratio <= w[1].ratio) {
            Trend::NonDecreasing
        } else {
            Trend::NotNonDecreasing
        }
    };
    Ok(DyadicReport {
        epsilon,
        blocks,
        trend,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_sums_not_applicable() {
        let a = PartialSumSeries::from_f64(1.0, vec![0.0; 100]);
        let r = ef_dyadic_report(&a, 0.05).unwrap();
        assert_eq!(r.blocks.len(), 6);
        assert!(r.blocks.iter().all(|b| b.max_abs == 0.0));
        assert_eq!(r.trend, Trend::NotApplicable);
    }

    #[test]
    fn linear_sums_grow_geometrically() {
        let eps = 0.05;
        let a = PartialSumSeries::from_f64(1.0, (1..=4095).map(|n| n as f64).collect());
        let r = ef_dyadic_report(&a, eps).unwrap();
        assert_eq!(r.blocks.len(), 12);
        assert_eq!(r.blocks[11].block_hi, 4095);
        for w in r.blocks.windows(2) {
            // S_k = 2^{k+1} − 1, so the ratio grows by (2^{k+2}−1)/(2^{k+1}−1) · 2^{−1/4+ε}
            let k = w[0].k as f64;
            let expect =
                (2f64.powf(k + 2.0) - 1.0) / (2f64.powf(k + 1.0) - 1.0) * 2f64.powf(-(0.25 - eps));
            assert!((w[1].ratio / w[0].ratio - expect).abs() < 1e-12);
        }
        let tail = r.blocks[11].ratio / r.blocks[10].ratio;
        assert!((tail - 2f64.powf(0.75 + eps)).abs() < 1e-3);
        assert_eq!(r.trend, Trend::NonDecreasing);
    }

    #[test]
    fn incomplete_final_block_is_dropped() {
        let a = PartialSumSeries::from_f64(1.0, vec![1.0; 14]);
        let r = ef_dyadic_report(&a, 0.1).unwrap();
        assert_eq!(r.blocks.last().unwrap().block_hi, 7);
    }

    #[test]
    fn decreasing_ratio_detected() {
        let a = PartialSumSeries::from_f64(1.0, vec![5.0; 63]);
        let r = ef_dyadic_report(&a, 0.05).unwrap();
        assert_eq!(r.trend, Trend::NotNonDecreasing);
    }

    #[test]
    fn preconditions() {
        let a = PartialSumSeries::from_f64(1.0, vec![1.0; 20]);
        assert!(matches!(ef_dyadic_report(&a, 0.25), Err(Error::Epsilon(_))));
        assert!(matches!(ef_dyadic_report(&a, 0.0), Err(Error::Epsilon(_))));
        assert!(ef_dyadic_report(&a, f64::NAN).is_err());
        let short = PartialSumSeries::from_f64(1.0, vec![1.0; 7]);
        assert!(matches!(
            ef_dyadic_report(&short, 0.1),
            Err(Error::PartialSumsTooShort { .. })
        ));
    }
}
