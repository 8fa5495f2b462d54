//! Theorem-facing analyzers.
//!
//! The underlying results are statements about all sufficiently large `n`. A
//! finite computation can only check consistency on a window or exhibit
//! witnesses, so every verdict here is of that kind: `Pass` means no
//! counterexample was found in the inspected range, `Fail` reports the
//! offending window. Neither certifies nor refutes an asymptotic statement.

mod differences;
mod dyadic;
mod moments;
mod partial_sums;
mod rational_tail;
mod residue;

use serde::Serialize;

pub use differences::{
    finite_differences, poly_tail_check, poly_tail_detect, theorem1_check, theorem1_check_table,
    PolyFit, PolyTailReport, Witness,
};
pub use dyadic::{ef_dyadic_report, DyadicBlock, DyadicReport, Trend};
pub use moments::{
    circle_moments, circle_moments_with_series, h_m_series, kernel_product, required_order,
    schedule_r2, CircleMomentReport, HolderCheck, MomentParams, CHAIN_TOLERANCE,
};
pub use partial_sums::{estimate_c, partial_sums, PartialSumSeries, SumConstant};
pub use rational_tail::{eulerian_numerator, poly_tail_to_rational, RationalTailForm};
pub use residue::{mod_p_residue_check, ResidueViolation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Pass,
    Fail,
}

/// Compensated (Neumaier) summation.
#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct Accumulator {
    sum: f64,
    compensation: f64,
}

impl Accumulator {
    pub(crate) fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub(crate) fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

/// `x^n` for `n = 0, 1, …`, re-anchored with `exp` every 1024 steps so
/// rounding does not accumulate over long runs.
pub(crate) struct Powers {
    ln_x: f64,
    n: usize,
    current: f64,
    x: f64,
}

impl Powers {
    pub(crate) fn new(x: f64) -> Self {
        Self {
            ln_x: (x - 1.0).ln_1p(),
            n: 0,
            current: 1.0,
            x,
        }
    }
}

impl Iterator for Powers {
    type Item = f64;

    fn next(&mut self) -> Option<f64> {
        let out = if self.n.is_multiple_of(1024) {
            (self.n as f64 * self.ln_x).exp()
        } else {
            self.current * self.x
        };
        self.current = out;
        self.n += 1;
        Some(out)
    }
}
