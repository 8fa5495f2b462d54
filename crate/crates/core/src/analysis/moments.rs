//! Coefficient-sum forms of the circle integrals over `|z| = r`.
//!
//! Every integral of `|G(z)|²` over the circle (normalized arc length) is
//! `Σ g_n² r^{2n}`, so the chain below needs no quadrature.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use super::{estimate_c, partial_sums, Accumulator, Powers, SumConstant};
use crate::config::Configuration;
use crate::engine::{evaluate, multiply, power, rep_series};
use crate::error::{Error, Result};
use crate::sequence::IntegerSequence;
use crate::series::{PowerSeries, Repr};
use crate::table::RepTable;

/// Relative slack allowed on every floating inequality.
pub const CHAIN_TOLERANCE: f64 = 1e-9;

/// Largest admissible `r^{2N}`.
pub const TAIL_BOUND: f64 = 1e-12;

/// `h_M = 1 + z + … + z^{M−1}`, truncated at `order`.
pub fn h_m_series(m: usize, order: usize) -> Result<PowerSeries> {
    if m == 0 {
        return Err(Error::KernelLength);
    }
    let mut v = vec![0i64; order + 1];
    for x in v.iter_mut().take(m) {
        *x = 1;
    }
    Ok(PowerSeries::from_i64(v))
}

/// `g·h_M` truncated at `order`, as a sliding window sum.
pub fn kernel_product(g: &PowerSeries, m: usize, order: usize) -> PowerSeries {
    match &g.repr {
        Repr::Small(v) => {
            let at = |j: usize| v.get(j).copied().unwrap_or(0) as i128;
            let mut acc: i128 = 0;
            let mut out = Vec::with_capacity(order + 1);
            let mut fits = true;
            for n in 0..=order {
                acc += at(n);
                if n >= m {
                    acc -= at(n - m);
                }
                fits &= i64::try_from(acc).is_ok();
                out.push(acc);
            }
            if fits {
                PowerSeries::from_i64(out.into_iter().map(|x| x as i64).collect())
            } else {
                PowerSeries::from_bigints(out.into_iter().map(BigInt::from).collect())
            }
        }
        Repr::Big(v) => {
            let zero = BigInt::zero();
            let at = |j: usize| v.get(j).unwrap_or(&zero);
            let mut acc = BigInt::zero();
            let mut out = Vec::with_capacity(order + 1);
            for n in 0..=order {
                acc += at(n);
                if n >= m {
                    acc -= at(n - m);
                }
                out.push(acc.clone());
            }
            PowerSeries::from_bigints(out)
        }
    }
}

/// Default radius: `r² = 1 − M^{−(2+8ε)}`.
pub fn schedule_r2(m: usize, epsilon: f64) -> f64 {
    1.0 - (m as f64).powf(-(2.0 + 8.0 * epsilon))
}

/// Smallest `N` with `r^{2N} < 1e−12`.
pub fn required_order(r2: f64) -> Result<usize> {
    if !(r2 > 0.0 && r2 < 1.0) {
        return Err(Error::Radius(r2));
    }
    let ln = (r2 - 1.0).ln_1p();
    let mut n = (TAIL_BOUND.ln() / ln).floor() as usize;
    while (n as f64 * ln).exp() >= TAIL_BOUND {
        n += 1;
    }
    Ok(n)
}

#[derive(Clone, Debug)]
pub struct MomentParams {
    /// Kernel length `M`.
    pub kernel_len: usize,
    pub epsilon: f64,
    /// Overrides the default radius schedule.
    pub r2: Option<f64>,
    /// Truncation order; defaults to [`required_order`].
    pub order: Option<usize>,
    /// Constant for the partial sums; defaults to [`estimate_c`].
    pub c: Option<f64>,
}

impl MomentParams {
    pub fn new(kernel_len: usize, epsilon: f64) -> Self {
        Self {
            kernel_len,
            epsilon,
            r2: None,
            order: None,
            c: None,
        }
    }

    pub fn r2(&self) -> f64 {
        self.r2
            .unwrap_or_else(|| schedule_r2(self.kernel_len, self.epsilon))
    }
}

/// Odd-degree (`s = 2k + 1`) part of the chain.
///
/// The left side `∫|F|^{2k+1}|h_M|²` is bracketed without quadrature:
/// `lhs_lower = Σ b_n b'_n r^{2n}` is the real inner product of `F^k h_M` and
/// `F^{k+1} h_M`, which cannot exceed the integral of `|F|^{2k+1}|h_M|²`;
/// `lhs_upper = (P_k P_{k+1})^{1/2}` by Cauchy–Schwarz.
#[derive(Clone, Debug, Serialize)]
pub struct HolderCheck {
    pub lhs_lower: f64,
    pub lhs_upper: f64,
    /// `P_{k+1} = Σ b'_n² r^{2n}`.
    pub parseval_next: f64,
    /// `P_k^{(2k+1)/2k} / h_M(r²)^{1/2k}`.
    pub holder_rhs: f64,
    /// `P_k^{(2k+1)/2k}`.
    pub numerator: f64,
    /// `(M r^{2M} F(r²)^k)^{(2k+1)/2k}`.
    pub numerator_bound: f64,
    /// `h_M(r²)^{1/2k}`.
    pub denominator: f64,
    /// `M^{1/2k}`.
    pub denominator_bound: f64,
    /// `M r^{2M(2k+1)/2k} F(r²)^{(2k+1)/2}`.
    pub bound2: f64,
    pub holder_ok: bool,
    pub numerator_ok: bool,
    pub denominator_ok: bool,
    pub bound2_ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CircleMomentReport {
    pub config: String,
    pub degree: u64,
    pub k: u64,
    pub kernel_len: usize,
    pub epsilon: f64,
    pub r2: f64,
    pub order: usize,
    pub required_order: usize,
    /// `r^{2N}`.
    pub tail: f64,
    /// `F(r²)`, `F` the series of the reduced configuration.
    pub f_r2: f64,
    /// `h_M(r²)`.
    pub h_r2: f64,
    /// `Σ b_n² r^{2n}`.
    pub lhs_parseval: f64,
    /// `(Σ b_n r^{2n}, F(r²)^k M r^{2M})`.
    pub lower_chain: (f64, f64),
    /// `F(r²)^k h_M(r²)`.
    pub product_form: f64,
    /// `M r^{2M}`.
    pub kernel_floor: f64,
    pub c: f64,
    pub rhs_log_term: f64,
    pub rhs_cs_term: f64,
    pub parseval_ok: bool,
    pub product_ok: bool,
    pub lower_chain_ok: bool,
    pub kernel_ok: bool,
    pub holder: Option<HolderCheck>,
    pub all_ok: bool,
}

fn at_least(a: f64, b: f64) -> bool {
    a >= b - CHAIN_TOLERANCE * b.abs()
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= CHAIN_TOLERANCE * a.abs().max(b.abs())
}

fn weighted(f: impl Fn(usize) -> f64, len: usize, r2: f64) -> f64 {
    let mut acc = Accumulator::default();
    for (n, w) in Powers::new(r2).take(len).enumerate() {
        acc.add(f(n) * w);
    }
    acc.value()
}

/// Evaluates the circle chain for `A` and `cfg`.
pub fn circle_moments(
    seq: &IntegerSequence,
    cfg: &Configuration,
    params: &MomentParams,
) -> Result<CircleMomentReport> {
    let s = cfg.degree();
    if s < 2 {
        return Err(Error::DegreeTooSmall {
            degree: s,
            required: 2,
        });
    }
    let (order, _) = resolve_order(params)?;
    let f = rep_series(seq, &cfg.reduced(), order)?.into_series();
    circle_moments_with_series(cfg, f, params)
}

fn resolve_order(params: &MomentParams) -> Result<(usize, usize)> {
    if params.kernel_len == 0 {
        return Err(Error::KernelLength);
    }
    if !(params.epsilon > 0.0 && params.epsilon < 0.25) {
        return Err(Error::Epsilon(params.epsilon));
    }
    let r2 = params.r2();
    let required = required_order(r2)?;
    let order = params.order.unwrap_or(required);
    if order < required {
        return Err(Error::TailNotNegligible {
            order,
            required,
            tail: (order as f64 * (r2 - 1.0).ln_1p()).exp(),
        });
    }
    Ok((order, required))
}

/// As [`circle_moments`], with `F` (the reduced series, to the chosen order)
/// supplied by the caller.
pub fn circle_moments_with_series(
    cfg: &Configuration,
    f: PowerSeries,
    params: &MomentParams,
) -> Result<CircleMomentReport> {
    let s = cfg.degree();
    if s < 2 {
        return Err(Error::DegreeTooSmall {
            degree: s,
            required: 2,
        });
    }
    let (order, required) = resolve_order(params)?;
    if f.order() < order {
        return Err(Error::InsufficientOrder {
            have: f.order(),
            need: order,
        });
    }
    let f = f.truncate(order);
    let m = params.kernel_len;
    let r2 = params.r2();
    let k = s / 2;
    let odd = s % 2 == 1;
    let len = order + 1;

    let fk = power(&f, k, order);
    let b = kernel_product(&fk, m, order);
    debug_assert!(b.is_nonnegative());
    let (full, next) = if odd {
        let fk1 = multiply(&fk, &f, order);
        (
            multiply(&fk, &fk1, order),
            Some(kernel_product(&fk1, m, order)),
        )
    } else {
        (multiply(&fk, &fk, order), None)
    };
    drop(fk);

    let f_r2 = evaluate(&f, r2)?;
    drop(f);
    let h_r2 = evaluate(&h_m_series(m, order)?, r2)?;
    let r2m = (m as f64 * (r2 - 1.0).ln_1p()).exp();
    let kernel_floor = m as f64 * r2m;
    let fk_r2 = f_r2.powi(k as i32);

    let bv = b.to_f64_vec();
    drop(b);
    let lhs_parseval = weighted(|n| bv[n] * bv[n], len, r2);
    let sum_b = weighted(|n| bv[n], len, r2);
    let product_form = fk_r2 * h_r2;
    let chain_floor = fk_r2 * kernel_floor;

    let holder = next.map(|next| {
        let nv = next.to_f64_vec();
        drop(next);
        let kk = k as f64;
        let expo = (2.0 * kk + 1.0) / (2.0 * kk);
        let lhs_lower = weighted(|n| bv[n] * nv[n], len, r2);
        let parseval_next = weighted(|n| nv[n] * nv[n], len, r2);
        let numerator = lhs_parseval.powf(expo);
        let denominator = h_r2.powf(1.0 / (2.0 * kk));
        let holder_rhs = numerator / denominator;
        let numerator_bound = chain_floor.powf(expo);
        let denominator_bound = (m as f64).powf(1.0 / (2.0 * kk));
        let bound2 = m as f64 * r2m.powf(expo) * f_r2.powf((2.0 * kk + 1.0) / 2.0);
        HolderCheck {
            lhs_lower,
            lhs_upper: (lhs_parseval * parseval_next).sqrt(),
            parseval_next,
            holder_rhs,
            numerator,
            numerator_bound,
            denominator,
            denominator_bound,
            bound2,
            holder_ok: at_least(lhs_lower, holder_rhs),
            numerator_ok: at_least(numerator, numerator_bound),
            denominator_ok: at_least(denominator_bound, denominator),
            bound2_ok: at_least(holder_rhs, bound2),
        }
    });
    drop(bv);

    let table = RepTable::new(cfg.clone(), full);
    let c = match params.c {
        Some(c) => c,
        None => estimate_c(&table)?,
    };
    let a = partial_sums(&table, SumConstant::Approx(c))?;
    drop(table);
    // a_0 = 0
    let sum_a2 = weighted(|n| if n == 0 { 0.0 } else { a.get(n).powi(2) }, len, r2);
    let rhs_log_term = 2.0 * c * (m as f64).powi(2) * -(1.0 - r2).ln();
    let rhs_cs_term = (m as f64).sqrt() * sum_a2.sqrt();

    let parseval_ok = at_least(lhs_parseval, sum_b);
    let product_ok = close(sum_b, product_form);
    let lower_chain_ok = at_least(sum_b, chain_floor);
    let kernel_ok = at_least(h_r2, kernel_floor);
    let all_ok = parseval_ok
        && product_ok
        && lower_chain_ok
        && kernel_ok
        && holder
            .as_ref()
            .is_none_or(|h| h.holder_ok && h.numerator_ok && h.denominator_ok && h.bound2_ok);

    Ok(CircleMomentReport {
        config: cfg.to_string(),
        degree: s,
        k,
        kernel_len: m,
        epsilon: params.epsilon,
        r2,
        order,
        required_order: required,
        tail: (order as f64 * (r2 - 1.0).ln_1p()).exp(),
        f_r2,
        h_r2,
        lhs_parseval,
        lower_chain: (sum_b, chain_floor),
        product_form,
        kernel_floor,
        c,
        rhs_log_term,
        rhs_cs_term,
        parseval_ok,
        product_ok,
        lower_chain_ok,
        kernel_ok,
        holder,
        all_ok,
    })
}
