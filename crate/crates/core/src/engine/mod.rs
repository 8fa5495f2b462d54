//! Truncated power-series arithmetic and the representation product
//! `Σ r(n) z^n = Π_i f_A(z^{k_i})^{m_i}`.

mod ntt;
mod schoolbook;

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::config::Configuration;
use crate::error::{Error, Result};
use crate::sequence::IntegerSequence;
use crate::series::{PowerSeries, Repr};
use crate::table::RepTable;

/// Below this many nonzero input terms the quadratic product is used.
const SCHOOLBOOK_CUTOFF: usize = 64;

/// Which multiplication kernel [`multiply_with`] uses.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Multiplication {
    /// Transform for large operands, schoolbook for small ones.
    #[default]
    Auto,
    Schoolbook,
    /// Multi-prime NTT. Falls back to schoolbook if the coefficients are too
    /// large for the prime pool.
    Ntt,
}

/// Indicator series `Σ_{a ∈ A, a ≤ N} z^a`.
pub fn seq_series(seq: &IntegerSequence, order: usize) -> Result<PowerSeries> {
    if seq.limit() < order as u64 {
        return Err(Error::InsufficientMaterialization {
            limit: seq.limit(),
            order,
        });
    }
    let mut c = vec![0i64; order + 1];
    for &a in seq.up_to(order as u64) {
        c[a as usize] = 1;
    }
    Ok(PowerSeries::from_i64(c))
}

/// `f(z^k)` truncated at `order`.
pub fn substitute_power(f: &PowerSeries, k: u64, order: usize) -> Result<PowerSeries> {
    assert!(k > 0, "substitution exponent must be positive");
    let need = order / k as usize;
    if f.order() < need {
        return Err(Error::InsufficientOrder {
            have: f.order(),
            need,
        });
    }
    let k = k as usize;
    Ok(match &f.repr {
        Repr::Small(v) => {
            let mut c = vec![0i64; order + 1];
            for (n, &x) in v[..=need].iter().enumerate() {
                c[n * k] = x;
            }
            PowerSeries::from_i64(c)
        }
        Repr::Big(v) => {
            let mut c = vec![Default::default(); order + 1];
            for (n, x) in v[..=need].iter().enumerate() {
                c[n * k] = x.clone();
            }
            PowerSeries::from_bigints(c)
        }
    })
}

/// Exact Cauchy product truncated at `order`; inputs shorter than `order` are
/// zero-extended.
pub fn multiply(f: &PowerSeries, g: &PowerSeries, order: usize) -> PowerSeries {
    multiply_with(f, g, order, Multiplication::Auto)
}

pub fn multiply_with(
    f: &PowerSeries,
    g: &PowerSeries,
    order: usize,
    method: Multiplication,
) -> PowerSeries {
    let use_ntt = match method {
        Multiplication::Schoolbook => false,
        Multiplication::Ntt => true,
        Multiplication::Auto => {
            let lf = f.support_len().min(order + 1);
            let lg = g.support_len().min(order + 1);
            lf.min(lg) > SCHOOLBOOK_CUTOFF
                && f.nonzero_count().min(g.nonzero_count()) > SCHOOLBOOK_CUTOFF
        }
    };
    if use_ntt {
        if let Some(h) = ntt::convolve(f, g, order) {
            return h;
        }
    }
    schoolbook::convolve(f, g, order)
}

/// `f^m` truncated at `order`, by repeated squaring.
pub fn power(f: &PowerSeries, m: u64, order: usize) -> PowerSeries {
    let mut result: Option<PowerSeries> = None;
    let mut base = f.truncate(order);
    let mut e = m;
    while e > 0 {
        if e & 1 == 1 {
            result = Some(match result {
                None => base.clone(),
                Some(r) => multiply(&r, &base, order),
            });
        }
        e >>= 1;
        if e > 0 {
            base = multiply(&base, &base, order);
        }
    }
    result.unwrap_or_else(|| PowerSeries::one(order))
}

/// The representation table `r(0..=N)` of `A` under `cfg`.
///
/// Each factor `f_A(z^k)^m` is formed as `(f_A^m)(z^k)`, computing the power at
/// order `⌊N/k⌋` before spreading. The factors are then multiplied pairwise,
/// always combining the two with the smallest coefficients first.
pub fn rep_series(seq: &IntegerSequence, cfg: &Configuration, order: usize) -> Result<RepTable> {
    let base = seq_series(seq, order)?;
    let mut factors: Vec<Option<PowerSeries>> = Vec::with_capacity(cfg.terms().len());
    for term in cfg.terms() {
        let inner = order / term.k as usize;
        let powered = power(&base.truncate(inner), term.m, inner);
        factors.push(Some(substitute_power(&powered, term.k, order)?));
    }

    let key = |s: &PowerSeries| (s.max_abs_bits(), s.nonzero_count());
    let mut heap: BinaryHeap<Reverse<((u64, usize), usize)>> = factors
        .iter()
        .enumerate()
        .map(|(i, s)| Reverse((key(s.as_ref().unwrap()), i)))
        .collect();
    while heap.len() > 1 {
        let Reverse((_, i)) = heap.pop().unwrap();
        let Reverse((_, j)) = heap.pop().unwrap();
        let a = factors[i].take().unwrap();
        let b = factors[j].take().unwrap();
        let product = multiply(&a, &b, order);
        heap.push(Reverse((key(&product), i)));
        factors[i] = Some(product);
    }
    let Reverse((_, last)) = heap.pop().expect("configurations are non-empty");
    let series = factors[last].take().unwrap();
    Ok(RepTable::new(cfg.clone(), series))
}

/// `Σ_{n ≤ N} c_n x^n` in floating point over the stored coefficients only; the
/// tail beyond the truncation order is ignored.
pub fn evaluate(f: &PowerSeries, x: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&x) {
        return Err(Error::EvaluationPoint(x));
    }
    Ok((0..f.len())
        .rev()
        .fold(0.0, |acc, n| acc * x + f.coeff_f64(n)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequences::{naturals, primes};
    use num_bigint::BigInt;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn s(v: &[i64]) -> PowerSeries {
        PowerSeries::from_i64(v.to_vec())
    }

    fn binom(n: u64, k: u64) -> u64 {
        (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn seq_series_examples() {
        assert_eq!(seq_series(&naturals(10), 3).unwrap(), s(&[1, 1, 1, 1]));
        let p = IntegerSequence::new(vec![2, 3, 5, 7], 7).unwrap();
        assert_eq!(seq_series(&p, 5).unwrap(), s(&[0, 0, 1, 1, 0, 1]));
        let empty = IntegerSequence::new(vec![], 9).unwrap();
        assert_eq!(seq_series(&empty, 4).unwrap(), PowerSeries::zero(4));
        assert!(matches!(
            seq_series(&naturals(3), 4),
            Err(Error::InsufficientMaterialization { .. })
        ));
    }

    #[test]
    fn substitute_power_examples() {
        let f = s(&[1, 1, 1]);
        assert_eq!(substitute_power(&f, 1, 2).unwrap(), s(&[1, 1, 1]));
        assert_eq!(substitute_power(&f, 2, 5).unwrap(), s(&[1, 0, 1, 0, 1, 0]));
        assert_eq!(substitute_power(&s(&[0, 1]), 3, 2).unwrap(), s(&[0, 0, 0]));
        assert!(matches!(
            substitute_power(&f, 1, 3),
            Err(Error::InsufficientOrder { have: 2, need: 3 })
        ));
    }

    #[test]
    fn multiply_examples() {
        for method in [Multiplication::Schoolbook, Multiplication::Ntt] {
            assert_eq!(
                multiply_with(&s(&[1, 1]), &s(&[1, 1]), 2, method),
                s(&[1, 2, 1])
            );
            let ones = s(&[1; 5]);
            assert_eq!(multiply_with(&ones, &ones, 4, method), s(&[1, 2, 3, 4, 5]));
            // shorter inputs are zero-extended, longer truncated
            assert_eq!(
                multiply_with(&s(&[2]), &s(&[1, 1, 1]), 4, method),
                s(&[2, 2, 2, 0, 0])
            );
            assert_eq!(
                multiply_with(&s(&[1, 1, 1]), &s(&[1, 1, 1]), 1, method),
                s(&[1, 2])
            );
        }
    }

    #[test]
    fn ntt_matches_schoolbook_on_random_pairs() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for len in [1usize, 2, 3, 17, 100, 513, 4097] {
            let f: Vec<i64> = (0..len).map(|_| rng.gen_range(0..=1_000_000)).collect();
            let g: Vec<i64> = (0..len).map(|_| rng.gen_range(0..=1_000_000)).collect();
            let (f, g) = (s(&f), s(&g));
            let order = len - 1;
            assert_eq!(
                multiply_with(&f, &g, order, Multiplication::Ntt),
                multiply_with(&f, &g, order, Multiplication::Schoolbook),
                "len {len}"
            );
        }
    }

    #[test]
    fn ntt_handles_signed_and_wide_coefficients() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for bits in [10u32, 40, 62, 100, 300] {
            let gen = |rng: &mut ChaCha8Rng| -> BigInt {
                let mut x = BigInt::from(0);
                for _ in 0..bits.div_ceil(32) {
                    x = (x << 32) + rng.gen::<u32>();
                }
                x >>= (bits.div_ceil(32) * 32 - bits) as usize;
                if rng.gen_bool(0.5) {
                    -x
                } else {
                    x
                }
            };
            let f: Vec<BigInt> = (0..200).map(|_| gen(&mut rng)).collect();
            let g: Vec<BigInt> = (0..150).map(|_| gen(&mut rng)).collect();
            let (f, g) = (PowerSeries::from_bigints(f), PowerSeries::from_bigints(g));
            for order in [0usize, 99, 348, 400] {
                assert_eq!(
                    multiply_with(&f, &g, order, Multiplication::Ntt),
                    multiply_with(&f, &g, order, Multiplication::Schoolbook),
                    "bits {bits} order {order}"
                );
            }
        }
    }

    #[test]
    fn squaring_path_matches() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let f = s(&(0..300).map(|_| rng.gen_range(-50..50)).collect::<Vec<_>>());
        assert_eq!(
            multiply_with(&f, &f, 400, Multiplication::Ntt),
            multiply_with(&f, &f.clone(), 400, Multiplication::Schoolbook)
        );
    }

    #[test]
    fn power_examples() {
        assert_eq!(power(&s(&[3, 4, 5]), 0, 2), PowerSeries::one(2));
        assert_eq!(power(&s(&[1, 1]), 3, 3), s(&[1, 3, 3, 1]));
        // stars and bars: coefficient n of (1/(1-z))^4 counts 4-tuples summing to n
        let ones = s(&[1; 7]);
        let p = power(&ones, 4, 6);
        for n in 0..=6u64 {
            let mut count = 0;
            for a in 0..=n {
                for b in 0..=n - a {
                    for c in 0..=n - a - b {
                        let _d = n - a - b - c;
                        count += 1;
                    }
                }
            }
            assert_eq!(p.coeff(n as usize), BigInt::from(count));
            assert_eq!(count, binom(n + 3, 3));
        }
    }

    #[test]
    fn power_grows_past_i64() {
        let p = power(&s(&[1; 101]), 30, 100);
        assert!(p.as_i64().is_none());
        // C(100 + 29, 29)
        let expect: BigInt = (0..29u32).fold(BigInt::from(1), |acc, i| acc * (129 - i) / (i + 1));
        assert_eq!(p.coeff(100), expect);
        assert_eq!(
            p,
            multiply_with(
                &power(&s(&[1; 101]), 15, 100),
                &power(&s(&[1; 101]), 15, 100),
                100,
                Multiplication::Schoolbook
            )
        );
    }

    #[test]
    fn rep_series_examples() {
        let pair = Configuration::from_pairs(&[(1, 2)]).unwrap();
        let t = rep_series(&naturals(4), &pair, 4).unwrap();
        assert_eq!(t.series(), &s(&[1, 2, 3, 4, 5]));

        let zero_only = IntegerSequence::new(vec![0], 2).unwrap();
        let cfg = Configuration::from_pairs(&[(1, 2), (3, 1)]).unwrap();
        assert_eq!(
            rep_series(&zero_only, &cfg, 2).unwrap().series(),
            &s(&[1, 0, 0])
        );

        let t = rep_series(&primes(10), &pair, 10).unwrap();
        assert_eq!(t.value(10), BigInt::from(3));
    }

    #[test]
    fn evaluate_examples() {
        assert_eq!(evaluate(&s(&[1, 1, 1]), 0.0).unwrap(), 1.0);
        assert_eq!(evaluate(&s(&[1, 1]), 0.5).unwrap(), 1.5);
        let n = 200;
        let v = evaluate(&s(&vec![1; n + 1]), 0.9).unwrap();
        let closed = (1.0 - 0.9f64.powi(n as i32 + 1)) / 0.1;
        assert!((v - closed).abs() <= 1e-9 * closed);
        assert!(evaluate(&s(&[1]), 1.0).is_err());
        assert!(evaluate(&s(&[1]), -0.1).is_err());
        assert!(evaluate(&s(&[1]), f64::NAN).is_err());
    }

    fn arb_series(max_len: usize) -> impl Strategy<Value = PowerSeries> {
        prop::collection::vec(-1000i64..1000, 1..max_len).prop_map(PowerSeries::from_i64)
    }

    proptest! {
        #[test]
        fn multiply_commutes_and_associates(
            f in arb_series(90), g in arb_series(90), h in arb_series(90), order in 0usize..120
        ) {
            prop_assert_eq!(multiply(&f, &g, order), multiply(&g, &f, order));
            prop_assert_eq!(
                multiply(&f, &multiply(&g, &h, order), order),
                multiply(&multiply(&f, &g, order), &h, order)
            );
        }

        #[test]
        fn ntt_equals_schoolbook(f in arb_series(200), g in arb_series(200), order in 0usize..300) {
            prop_assert_eq!(
                multiply_with(&f, &g, order, Multiplication::Ntt),
                multiply_with(&f, &g, order, Multiplication::Schoolbook)
            );
        }

        #[test]
        fn nonnegative_inputs_stay_nonnegative(
            f in prop::collection::vec(0i64..100, 1..80), m in 0u64..5, order in 0usize..100
        ) {
            let f = PowerSeries::from_i64(f);
            prop_assert!(power(&f, m, order).is_nonnegative());
            prop_assert!(multiply(&f, &f, order).is_nonnegative());
        }
    }
}
