use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::series::{PowerSeries, Repr};

fn bit_len(x: u64) -> u64 {
    64 - x.leading_zeros() as u64
}

/// Quadratic Cauchy product truncated at `order`. Accumulates in `i128` when
/// the coefficient bound allows it, in `BigInt` otherwise.
pub(crate) fn convolve(f: &PowerSeries, g: &PowerSeries, order: usize) -> PowerSeries {
    let lf = f.support_len().min(order + 1);
    let lg = g.support_len().min(order + 1);
    if lf == 0 || lg == 0 {
        return PowerSeries::zero(order);
    }
    let out_len = (lf + lg - 1).min(order + 1);
    let bound_bits = f.max_abs_bits() + g.max_abs_bits() + bit_len(lf.min(lg) as u64);

    if let (Repr::Small(a), Repr::Small(b)) = (&f.repr, &g.repr) {
        if bound_bits <= 126 {
            let mut acc = vec![0i128; out_len];
            for (i, &x) in a[..lf].iter().enumerate() {
                if x == 0 {
                    continue;
                }
                let x = x as i128;
                let span = lg.min(out_len - i);
                for (dst, &y) in acc[i..i + span].iter_mut().zip(&b[..span]) {
                    *dst += x * y as i128;
                }
            }
            let mut out: Vec<BigInt> = Vec::new();
            let small: Option<Vec<i64>> = acc.iter().map(|v| v.to_i64()).collect();
            return match small {
                Some(mut v) => {
                    v.resize(order + 1, 0);
                    PowerSeries::from_i64(v)
                }
                None => {
                    out.extend(acc.into_iter().map(BigInt::from));
                    out.resize(order + 1, BigInt::zero());
                    PowerSeries::from_bigints(out)
                }
            };
        }
    }

    let a = f.to_bigints();
    let b = g.to_bigints();
    let mut acc = vec![BigInt::zero(); order + 1];
    for (i, x) in a[..lf].iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        let span = lg.min(out_len - i);
        for (dst, y) in acc[i..i + span].iter_mut().zip(&b[..span]) {
            *dst += x * y;
        }
    }
    PowerSeries::from_bigints(acc)
}
