use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::table::RepTable;

/// The constant `c` subtracted from each `r(j)`.
#[derive(Clone, Debug, PartialEq)]
pub enum SumConstant {
    Exact(BigRational),
    Approx(f64),
}

impl SumConstant {
    pub fn to_f64(&self) -> f64 {
        match self {
            SumConstant::Exact(c) => c.to_f64().unwrap_or(f64::NAN),
            SumConstant::Approx(c) => *c,
        }
    }

    fn is_positive(&self) -> bool {
        match self {
            SumConstant::Exact(c) => c.is_positive(),
            SumConstant::Approx(c) => *c > 0.0,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Values {
    Exact(Vec<BigRational>),
    Approx(Vec<f64>),
}

/// `a_n = Σ_{j=1}^{n} (r(j) − c)` for `n = 1..=N`.
#[derive(Clone, Debug, PartialEq)]
pub struct PartialSumSeries {
    c: SumConstant,
    values: Values,
}

impl PartialSumSeries {
    /// Builds a series directly from floating values `a_1, a_2, …`.
    pub fn from_f64(c: f64, values: Vec<f64>) -> Self {
        Self {
            c: SumConstant::Approx(c),
            values: Values::Approx(values),
        }
    }

    pub fn constant(&self) -> &SumConstant {
        &self.c
    }

    /// Number of terms; the last index is `len()`.
    pub fn len(&self) -> usize {
        match &self.values {
            Values::Exact(v) => v.len(),
            Values::Approx(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_exact(&self) -> bool {
        matches!(self.values, Values::Exact(_))
    }

    /// `a_n` for `1 <= n <= len()`.
    pub fn exact(&self, n: usize) -> Option<&BigRational> {
        match &self.values {
            Values::Exact(v) => v.get(n.checked_sub(1)?),
            Values::Approx(_) => None,
        }
    }

    /// `a_n` as a float, `1 <= n <= len()`.
    pub fn get(&self, n: usize) -> f64 {
        match &self.values {
            Values::Exact(v) => v[n - 1].to_f64().unwrap_or(f64::NAN),
            Values::Approx(v) => v[n - 1],
        }
    }

    pub fn to_f64_vec(&self) -> Vec<f64> {
        (1..=self.len()).map(|n| self.get(n)).collect()
    }
}

enum Running<'a> {
    Small(i128),
    Big(&'a BigInt),
}

/// Calls `f(n, R_n)` with `R_n = Σ_{j=1}^{n} r(j)` for `n = 0..=N`.
fn cumulative(table: &RepTable, mut f: impl FnMut(usize, Running<'_>)) {
    if let Some(v) = table.series().as_i64() {
        let mut acc: i128 = 0;
        f(0, Running::Small(0));
        for (n, &x) in v.iter().enumerate().skip(1) {
            acc += x as i128;
            f(n, Running::Small(acc));
        }
    } else {
        let mut acc = BigInt::zero();
        f(0, Running::Big(&acc));
        for n in 1..=table.order() {
            acc += table.value(n);
            f(n, Running::Big(&acc));
        }
    }
}

pub fn partial_sums(table: &RepTable, c: SumConstant) -> Result<PartialSumSeries> {
    if !c.is_positive() {
        return Err(Error::NonPositiveConstant(match &c {
            SumConstant::Exact(q) => q.to_string(),
            SumConstant::Approx(x) => x.to_string(),
        }));
    }
    let len = table.order();
    let values = match &c {
        SumConstant::Exact(q) => {
            let mut out = Vec::with_capacity(len);
            cumulative(table, |n, r| {
                if n > 0 {
                    let r = match r {
                        Running::Small(x) => BigInt::from(x),
                        Running::Big(x) => x.clone(),
                    };
                    out.push(BigRational::from_integer(r) - q * BigInt::from(n));
                }
            });
            Values::Exact(out)
        }
        SumConstant::Approx(x) => {
            let mut out = Vec::with_capacity(len);
            cumulative(table, |n, r| {
                if n > 0 {
                    // subtract the integer part exactly so large R_n keep the small difference
                    let t = x * n as f64;
                    let whole = t.floor();
                    let frac = t - whole;
                    let diff = match r {
                        Running::Small(r) => (r - whole as i128) as f64,
                        Running::Big(r) => (r - BigInt::from(whole as i128)).to_f64().unwrap(),
                    };
                    out.push(diff - frac);
                }
            });
            Values::Approx(out)
        }
    };
    Ok(PartialSumSeries { c, values })
}

/// Least-squares slope of `R_n` against `n` over `n ∈ [⌈N/2⌉, N]`.
pub fn estimate_c(table: &RepTable) -> Result<f64> {
    const MINIMUM: usize = 16;
    let order = table.order();
    if order < MINIMUM {
        return Err(Error::TableTooShort {
            order,
            minimum: MINIMUM,
        });
    }
    let lo = order.div_ceil(2);
    let m = BigInt::from(order - lo + 1);
    let (mut sx, mut sxx) = (BigInt::zero(), BigInt::zero());
    let (mut sy, mut sxy) = (BigInt::zero(), BigInt::zero());
    // i128 partial accumulators, flushed into the big ones before they can overflow
    let (mut py, mut pxy) = (0i128, 0i128);
    let mut last = BigInt::zero();
    cumulative(table, |n, r| {
        if n < lo {
            return;
        }
        let x = n as i128;
        sx += x;
        sxx += x * x;
        match r {
            Running::Small(y) if y.unsigned_abs() < 1 << 80 => {
                py += y;
                pxy += x * y;
                if pxy.unsigned_abs() > 1 << 120 {
                    sy += std::mem::take(&mut py);
                    sxy += std::mem::take(&mut pxy);
                }
                if n == order {
                    last = y.into();
                }
            }
            Running::Small(y) => {
                let y = BigInt::from(y);
                sxy += &y * x;
                sy += &y;
                last = y;
            }
            Running::Big(y) => {
                sxy += y * x;
                sy += y;
                last = y.clone();
            }
        }
    });
    sy += py;
    sxy += pxy;
    if last.is_zero() {
        return Err(Error::DegenerateTable);
    }
    let num = &m * sxy - &sx * &sy;
    let den = &m * sxx - &sx * &sx;
    Ok(BigRational::new(num, den).to_f64().unwrap())
}
