//! Exact truncated power series.
//!
//! Coefficients are arbitrary-precision integers. Series whose coefficients all
//! fit in an `i64` are stored as a flat `Vec<i64>`; everything else falls back
//! to `BigInt`. The representation is canonical (small whenever possible), so
//! structural equality is value equality.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Repr {
    Small(Vec<i64>),
    Big(Vec<BigInt>),
}

/// `c_0 + c_1 z + … + c_N z^N`, truncated at order `N` (always `N + 1` stored coefficients).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerSeries {
    pub(crate) repr: Repr,
}

impl PowerSeries {
    pub fn zero(order: usize) -> Self {
        Self {
            repr: Repr::Small(vec![0; order + 1]),
        }
    }

    /// The unit series `1 + 0z + … + 0z^N`.
    pub fn one(order: usize) -> Self {
        let mut c = vec![0; order + 1];
        c[0] = 1;
        Self {
            repr: Repr::Small(c),
        }
    }

    /// # Panics
    /// If `coeffs` is empty.
    pub fn from_i64(coeffs: Vec<i64>) -> Self {
        assert!(
            !coeffs.is_empty(),
            "a series stores at least one coefficient"
        );
        Self {
            repr: Repr::Small(coeffs),
        }
    }

    /// # Panics
    /// If `coeffs` is empty.
    pub fn from_bigints(coeffs: Vec<BigInt>) -> Self {
        assert!(
            !coeffs.is_empty(),
            "a series stores at least one coefficient"
        );
        Self::canonical(Repr::Big(coeffs))
    }

    pub(crate) fn canonical(repr: Repr) -> Self {
        match repr {
            Repr::Big(v) => {
                if v.iter().all(|c| c.to_i64().is_some()) {
                    Self {
                        repr: Repr::Small(v.iter().map(|c| c.to_i64().unwrap()).collect()),
                    }
                } else {
                    Self { repr: Repr::Big(v) }
                }
            }
            small => Self { repr: small },
        }
    }

    pub fn order(&self) -> usize {
        self.len() - 1
    }

    /// Number of stored coefficients, `order + 1`.
    pub fn len(&self) -> usize {
        match &self.repr {
            Repr::Small(v) => v.len(),
            Repr::Big(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn coeff(&self, n: usize) -> BigInt {
        match &self.repr {
            Repr::Small(v) => BigInt::from(v[n]),
            Repr::Big(v) => v[n].clone(),
        }
    }

    pub fn coeff_f64(&self, n: usize) -> f64 {
        match &self.repr {
            Repr::Small(v) => v[n] as f64,
            Repr::Big(v) => v[n].to_f64().unwrap_or(f64::INFINITY),
        }
    }

    /// Borrow the coefficients when every one fits in an `i64`.
    pub fn as_i64(&self) -> Option<&[i64]> {
        match &self.repr {
            Repr::Small(v) => Some(v),
            Repr::Big(_) => None,
        }
    }

    pub fn to_bigints(&self) -> Vec<BigInt> {
        match &self.repr {
            Repr::Small(v) => v.iter().map(|&c| BigInt::from(c)).collect(),
            Repr::Big(v) => v.clone(),
        }
    }

    pub fn to_f64_vec(&self) -> Vec<f64> {
        (0..self.len()).map(|n| self.coeff_f64(n)).collect()
    }

    /// Truncates to `order`, or zero-extends if `order` exceeds the stored order.
    pub fn truncate(&self, order: usize) -> Self {
        let len = order + 1;
        match &self.repr {
            Repr::Small(v) => {
                let mut c: Vec<i64> = v.iter().copied().take(len).collect();
                c.resize(len, 0);
                Self::from_i64(c)
            }
            Repr::Big(v) => {
                let mut c: Vec<BigInt> = v.iter().take(len).cloned().collect();
                c.resize(len, BigInt::zero());
                Self::from_bigints(c)
            }
        }
    }

    pub fn is_nonnegative(&self) -> bool {
        match &self.repr {
            Repr::Small(v) => v.iter().all(|&c| c >= 0),
            Repr::Big(v) => v.iter().all(|c| !c.is_negative()),
        }
    }

    /// Index one past the last nonzero coefficient (0 for the zero series).
    pub fn support_len(&self) -> usize {
        match &self.repr {
            Repr::Small(v) => v.iter().rposition(|&c| c != 0).map_or(0, |i| i + 1),
            Repr::Big(v) => v.iter().rposition(|c| !c.is_zero()).map_or(0, |i| i + 1),
        }
    }

    /// Bit length of the largest coefficient magnitude.
    pub fn max_abs_bits(&self) -> u64 {
        match &self.repr {
            Repr::Small(v) => v
                .iter()
                .map(|&c| 64 - c.unsigned_abs().leading_zeros() as u64)
                .max()
                .unwrap_or(0),
            Repr::Big(v) => v.iter().map(|c| c.bits()).max().unwrap_or(0),
        }
    }

    /// Count of nonzero coefficients.
    pub fn nonzero_count(&self) -> usize {
        match &self.repr {
            Repr::Small(v) => v.iter().filter(|&&c| c != 0).count(),
            Repr::Big(v) => v.iter().filter(|c| !c.is_zero()).count(),
        }
    }
}
