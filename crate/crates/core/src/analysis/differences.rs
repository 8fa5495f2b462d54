use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use super::Verdict;
use crate::config::Configuration;
use crate::engine::rep_series;
use crate::error::{Error, Result};
use crate::polynomial::PolynomialSpec;
use crate::sequence::IntegerSequence;
use crate::table::RepTable;

fn delta(values: &[BigInt]) -> Vec<BigInt> {
    values.windows(2).map(|w| &w[1] - &w[0]).collect()
}

/// `Δ^t r(n)` for `n = 0..=N−t`.
pub fn finite_differences(table: &RepTable, order: usize) -> Result<Vec<BigInt>> {
    if order > table.order() {
        return Err(Error::DifferenceOrder {
            order,
            table_order: table.order(),
        });
    }
    let mut v = table.values();
    for _ in 0..order {
        v = delta(&v);
    }
    Ok(v)
}

/// A polynomial that reproduces the table on a window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyFit {
    pub degree: usize,
    pub polynomial: PolynomialSpec,
    pub window_start: usize,
    pub window_end: usize,
}

fn check_window(table: &RepTable, max_degree: usize, window_start: usize) -> Result<()> {
    let usable = (table.order() + 1).saturating_sub(window_start);
    if usable < max_degree + 2 {
        return Err(Error::WindowTooShort {
            window_start,
            order: table.order(),
            usable,
            needed: max_degree + 2,
        });
    }
    Ok(())
}

/// Smallest `d <= max_degree` with `Δ^{d+1} r(n) = 0` on `[W, N−d−1]`, together
/// with the polynomial recovered from the differences at `n = W`.
pub fn poly_tail_detect(
    table: &RepTable,
    max_degree: usize,
    window_start: usize,
) -> Result<Option<PolyFit>> {
    check_window(table, max_degree, window_start)?;
    let window = table.values().split_off(window_start);
    let mut heads = vec![window[0].clone()];
    let mut current = window;
    for d in 0..=max_degree {
        current = delta(&current);
        if current.iter().all(|x| x.is_zero()) {
            return Ok(Some(PolyFit {
                degree: d,
                polynomial: PolynomialSpec::from_newton(window_start as u64, &heads),
                window_start,
                window_end: table.order(),
            }));
        }
        heads.push(current[0].clone());
    }
    Ok(None)
}

/// A nonzero `Δ^{d+1} r(n)`: evidence that `r` is not a degree-`d` polynomial on the window.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub degree: usize,
    pub n: usize,
    #[serde(serialize_with = "crate::analysis::differences::as_string")]
    pub difference: BigInt,
}

pub(crate) fn as_string<S: serde::Serializer>(
    x: &BigInt,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

/// Outcome of a polynomial-tail search. `Pass` means no polynomial of degree
/// `<= max_degree` fits the window; `Fail` carries the fit found.
#[derive(Clone, Debug, Serialize)]
pub struct PolyTailReport {
    pub config: String,
    pub config_degree: u64,
    pub max_degree: usize,
    pub order: usize,
    pub window_start: usize,
    pub verdict: Verdict,
    /// Degree of the fit, when one was found.
    pub fit_degree: Option<usize>,
    /// The fitted polynomial, rendered.
    pub fit: Option<String>,
    pub witnesses: Vec<Witness>,
}

/// Runs [`poly_tail_detect`] and collects, for every degree `d <= max_degree`,
/// the first `n` in the window with `Δ^{d+1} r(n) ≠ 0`.
pub fn poly_tail_check(
    table: &RepTable,
    max_degree: usize,
    window_start: usize,
) -> Result<PolyTailReport> {
    let fit = poly_tail_detect(table, max_degree, window_start)?;
    let mut witnesses = Vec::new();
    let mut current = table.values().split_off(window_start);
    for d in 0..=max_degree {
        current = delta(&current);
        if let Some((i, x)) = current.iter().enumerate().find(|(_, x)| !x.is_zero()) {
            witnesses.push(Witness {
                degree: d,
                n: window_start + i,
                difference: x.clone(),
            });
        }
    }
    Ok(PolyTailReport {
        config: table.config().to_string(),
        config_degree: table.config().degree(),
        max_degree,
        order: table.order(),
        window_start,
        verdict: if fit.is_some() {
            Verdict::Fail
        } else {
            Verdict::Pass
        },
        fit_degree: fit.as_ref().map(|f| f.degree),
        fit: fit.map(|f| f.polynomial.to_string()),
        witnesses,
    })
}

/// Window check of the non-polynomial statement for a configuration of degree
/// `s >= 2`: searches for fits of degree `<= s − 2` on `[W, N]`.
///
/// `Pass` is consistency with the statement on this window. `Fail` means a
/// low-degree fit exists on the window, which points at a window too short or
/// a bug; it is never a refutation.
pub fn theorem1_check_table(table: &RepTable, window_start: usize) -> Result<PolyTailReport> {
    let s = table.config().degree();
    if s < 2 {
        return Err(Error::DegreeTooSmall {
            degree: s,
            required: 2,
        });
    }
    poly_tail_check(table, (s - 2) as usize, window_start)
}

pub fn theorem1_check(
    seq: &IntegerSequence,
    cfg: &Configuration,
    order: usize,
    window_start: usize,
) -> Result<PolyTailReport> {
    let s = cfg.degree();
    if s < 2 {
        return Err(Error::DegreeTooSmall {
            degree: s,
            required: 2,
        });
    }
    let table = rep_series(seq, cfg, order)?;
    theorem1_check_table(&table, window_start)
}
