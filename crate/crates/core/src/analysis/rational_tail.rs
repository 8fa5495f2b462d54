use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::polynomial::PolynomialSpec;

/// Numerator `Q_i` of `Σ_{n>=0} n^i z^n = Q_i(z) / (1 − z)^{i+1}`.
///
/// `Q_0 = 1` and `Q_i = z·(Q_{i−1}'·(1 − z) + i·Q_{i−1})`. Coefficients are the
/// Eulerian numbers shifted by one place, so `Q_i(1) = i!`.
pub fn eulerian_numerator(i: usize) -> Vec<BigInt> {
    let mut q = vec![BigInt::one()];
    for step in 1..=i {
        // t = Q'·(1 − z) + step·Q
        let mut t = vec![BigInt::zero(); q.len()];
        for (j, c) in q.iter().enumerate() {
            t[j] += c * BigInt::from(step);
            if j > 0 {
                let d = c * BigInt::from(j);
                t[j - 1] += &d;
                t[j] -= d;
            }
        }
        let mut next = vec![BigInt::zero()];
        next.extend(t);
        while next.len() > 1 && next.last().unwrap().is_zero() {
            next.pop();
        }
        q = next;
    }
    q
}

/// `head(z) + Q(z) / (1 − z)^{pole_order}`, the generating function of a
/// sequence that agrees with a polynomial of degree `pole_order − 1` past the head.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalTailForm {
    head: Vec<BigRational>,
    numerator: Vec<BigRational>,
    pole_order: usize,
}

impl RationalTailForm {
    /// Corrections `T_0`, one per head index.
    pub fn head(&self) -> &[BigRational] {
        &self.head
    }

    pub fn numerator(&self) -> &[BigRational] {
        &self.numerator
    }

    pub fn pole_order(&self) -> usize {
        self.pole_order
    }

    pub fn numerator_at_one(&self) -> BigRational {
        self.numerator.iter().sum()
    }

    /// Coefficients `0..=order` of the form.
    pub fn expand(&self, order: usize) -> Vec<BigRational> {
        let mut out = vec![BigRational::zero(); order + 1];
        for (o, c) in out.iter_mut().zip(&self.numerator) {
            *o = c.clone();
        }
        for _ in 0..self.pole_order {
            let mut acc = BigRational::zero();
            for o in out.iter_mut() {
                acc += &*o;
                *o = acc.clone();
            }
        }
        for (o, h) in out.iter_mut().zip(&self.head) {
            *o += h;
        }
        out
    }
}

/// Rewrites "values `head` followed by the polynomial `q`" as a rational form.
///
/// `head[n]` is the value at `n` for `n < head.len()`; from `head.len()` on the
/// value is `q(n)`. The pole order is `deg q + 1` and `Q(1) = q_d·d! ≠ 0`.
pub fn poly_tail_to_rational(q: &PolynomialSpec, head: &[BigInt]) -> Result<RationalTailForm> {
    if q.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let d = q.degree();
    if q.coeffs()[d].is_zero() {
        return Err(Error::DegreeOverstated(d));
    }
    // (1 − z)^j for j = 0..=d
    let mut one_minus = vec![vec![BigInt::one()]];
    for j in 1..=d {
        let prev: &Vec<BigInt> = &one_minus[j - 1];
        let mut next = vec![BigInt::zero(); j + 1];
        for (i, c) in prev.iter().enumerate() {
            next[i] += c;
            next[i + 1] -= c;
        }
        one_minus.push(next);
    }
    let mut numerator = vec![BigRational::zero(); d + 1];
    for (i, qi) in q.coeffs().iter().enumerate() {
        if qi.is_zero() {
            continue;
        }
        let e = eulerian_numerator(i);
        let w = &one_minus[d - i];
        for (a, ea) in e.iter().enumerate() {
            for (b, wb) in w.iter().enumerate() {
                numerator[a + b] += qi * BigRational::from_integer(ea * wb);
            }
        }
    }
    while numerator.len() > 1 && numerator.last().unwrap().is_zero() {
        numerator.pop();
    }
    let head = head
        .iter()
        .enumerate()
        .map(|(n, h)| BigRational::from_integer(h.clone()) - q.eval_at(n as u64))
        .collect();
    let form = RationalTailForm {
        head,
        numerator,
        pole_order: d + 1,
    };
    debug_assert!(!form.numerator_at_one().is_zero());
    Ok(form)
}
