use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A polynomial `q(n) = q_0 + q_1 n + … + q_d n^d` in the index `n`.
///
/// Coefficients are exact rationals: integer-valued polynomials such as
/// `C(n+2, 2) = (n² + 3n + 2)/2` need them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolynomialSpec {
    coeffs: Vec<BigRational>,
}

impl PolynomialSpec {
    /// Rejects an overstated degree: `q_d = 0` with `d > 0`.
    pub fn new(coeffs: Vec<BigRational>) -> Result<Self> {
        let coeffs = if coeffs.is_empty() {
            vec![BigRational::zero()]
        } else {
            coeffs
        };
        let d = coeffs.len() - 1;
        if d > 0 && coeffs[d].is_zero() {
            return Err(Error::DegreeOverstated(d));
        }
        Ok(Self { coeffs })
    }

    pub fn from_integers(coeffs: &[i64]) -> Result<Self> {
        Self::new(
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(BigInt::from(c)))
                .collect(),
        )
    }

    /// Builds from coefficients, dropping trailing zeros first.
    pub fn normalized(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self::new(coeffs).expect("trailing zeros removed")
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn eval(&self, n: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * n + c)
    }

    pub fn eval_at(&self, n: u64) -> BigRational {
        self.eval(&BigRational::from_integer(BigInt::from(n)))
    }

    /// Newton forward form: `q(n) = Σ_j diffs[j] · C(n − start, j)`.
    pub fn from_newton(start: u64, diffs: &[BigInt]) -> Self {
        let start = BigRational::from_integer(BigInt::from(start));
        let mut result = vec![BigRational::zero(); diffs.len().max(1)];
        // basis = C(n - start, j) as a polynomial in n
        let mut basis = vec![BigRational::one()];
        for (j, dj) in diffs.iter().enumerate() {
            let dj = BigRational::from_integer(dj.clone());
            for (i, b) in basis.iter().enumerate() {
                result[i] += &dj * b;
            }
            // basis *= (n - start - j) / (j + 1)
            let shift = -(&start + BigRational::from_integer(BigInt::from(j)));
            let scale = BigRational::from_integer(BigInt::from(j + 1));
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            for (i, b) in basis.iter().enumerate() {
                next[i + 1] += b / &scale;
                next[i] += b * &shift / &scale;
            }
            basis = next;
        }
        Self::normalized(result)
    }
}

impl fmt::Display for PolynomialSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            match (first, c.is_negative()) {
                (true, true) => f.write_str("-")?,
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
                (true, false) => {}
            }
            first = false;
            let power = match i {
                0 => String::new(),
                1 => "n".to_string(),
                _ => format!("n^{i}"),
            };
            if i == 0 {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                f.write_str(&power)?;
            } else if mag.is_integer() {
                write!(f, "{mag}{power}")?;
            } else {
                write!(f, "({mag}){power}")?;
            }
        }
        Ok(())
    }
}
