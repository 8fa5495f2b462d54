//! Multi-prime number-theoretic transform with Chinese-remainder reconstruction.
//!
//! Every prime has the form `c·2^32 + 1` with `2^61 < p < 2^62`, so transforms up
//! to length `2^32` are available and residues can be added without overflow.
//! Arithmetic is in Montgomery form with `R = 2^64`. The number of primes used
//! for a product is derived from the bit lengths of the inputs: the CRT modulus
//! must exceed `2 · min(len_f, len_g) · max|f| · max|g|`.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::series::{PowerSeries, Repr};

const POOL_SIZE: usize = 48;
/// Every prime in the pool exceeds `2^PRIME_BITS`.
const PRIME_BITS: u64 = 61;
/// Transform stages at or below this length run chunk by chunk.
const BLOCK: usize = 1 << 14;

#[derive(Clone, Copy, Debug)]
pub(crate) struct Field {
    p: u64,
    /// `p^{-1} mod 2^64`
    pinv: u64,
    /// `R^2 mod p`
    r2: u64,
    /// Primitive `2^32`-th root of unity (plain form).
    root: u64,
}

impl Field {
    fn new(p: u64) -> Self {
        let mut pinv: u64 = 1;
        for _ in 0..6 {
            pinv = pinv.wrapping_mul(2u64.wrapping_sub(p.wrapping_mul(pinv)));
        }
        let r = ((1u128 << 64) % p as u128) as u64;
        let r2 = (r as u128 * r as u128 % p as u128) as u64;
        let root = two_power_root(p);
        Self { p, pinv, r2, root }
    }

    #[inline(always)]
    fn reduce(&self, x: u128) -> u64 {
        let m = (x as u64).wrapping_mul(self.pinv);
        let y = ((m as u128 * self.p as u128) >> 64) as u64;
        // both halves are below p < 2^62, so the sign bit of the difference is the borrow
        let out = ((x >> 64) as u64).wrapping_sub(y);
        out.wrapping_add(self.p & (((out as i64) >> 63) as u64))
    }

    #[inline(always)]
    fn mul(&self, a: u64, b: u64) -> u64 {
        self.reduce(a as u128 * b as u128)
    }

    #[inline(always)]
    fn add(&self, a: u64, b: u64) -> u64 {
        let d = (a + b).wrapping_sub(self.p);
        d.wrapping_add(self.p & (((d as i64) >> 63) as u64))
    }

    #[inline(always)]
    fn sub(&self, a: u64, b: u64) -> u64 {
        let d = a.wrapping_sub(b);
        d.wrapping_add(self.p & (((d as i64) >> 63) as u64))
    }

    fn to_mont(&self, a: u64) -> u64 {
        self.mul(a % self.p, self.r2)
    }

    #[cfg(test)]
    fn from_mont(&self, a: u64) -> u64 {
        self.reduce(a as u128)
    }

    fn pow_mont(&self, base: u64, mut e: u64) -> u64 {
        let mut acc = self.to_mont(1);
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        acc
    }

    fn residue_i64(&self, c: i64) -> u64 {
        let r = c.unsigned_abs() % self.p;
        if c < 0 && r != 0 {
            self.p - r
        } else {
            r
        }
    }

    fn residue_big(&self, c: &BigInt) -> u64 {
        c.mod_floor(&BigInt::from(self.p))
            .to_u64()
            .expect("reduced mod p")
    }

    /// Per-stage twiddles in Montgomery form: `t[h + j] = ω_{2h}^j` for every
    /// power of two `h < n` and `j < h`, so each butterfly stage reads a
    /// contiguous slice.
    fn twiddles(&self, log_n: u32) -> Vec<u64> {
        let n = 1usize << log_n;
        let mut t = vec![0u64; n.max(2)];
        if n < 2 {
            return t;
        }
        let half = n / 2;
        let w = self.pow_mont(self.to_mont(self.root), 1u64 << (32 - log_n));
        let mut cur = self.to_mont(1);
        for x in &mut t[half..n] {
            *x = cur;
            cur = self.mul(cur, w);
        }
        let mut h = half / 2;
        while h >= 1 {
            for j in 0..h {
                t[h + j] = t[2 * h + 2 * j];
            }
            h /= 2;
        }
        t
    }

    /// Decimation in frequency: natural order in, bit-reversed order out.
    fn forward(&self, a: &mut [u64], tw: &[u64]) {
        let n = a.len();
        let mut len = n;
        while len > BLOCK {
            self.forward_stage(a, tw, len);
            len /= 2;
        }
        // the remaining stages stay inside one cache-sized chunk
        for chunk in a.chunks_exact_mut(len) {
            let mut l = len;
            while l >= 2 {
                self.forward_stage(chunk, tw, l);
                l /= 2;
            }
        }
    }

    #[inline(always)]
    fn forward_stage(&self, a: &mut [u64], tw: &[u64], len: usize) {
        let half = len / 2;
        let w = &tw[half..len];
        for block in a.chunks_exact_mut(len) {
            let (lo, hi) = block.split_at_mut(half);
            for ((x, y), &t) in lo.iter_mut().zip(hi.iter_mut()).zip(w) {
                let u = *x;
                let v = *y;
                *x = self.add(u, v);
                *y = self.mul(self.sub(u, v), t);
            }
        }
    }

    /// Turns a [`Field::twiddles`] table into the inverse table
    /// `t[h + j] = ω_{2h}^{-j} = −ω_{2h}^{h − j}`.
    fn invert_twiddles(&self, tw: &mut [u64]) {
        let n = tw.len();
        let mut h = 1;
        while h < n {
            let seg = &mut tw[h + 1..2 * h];
            seg.reverse();
            for x in seg.iter_mut() {
                *x = self.p - *x;
            }
            h *= 2;
        }
    }

    /// Decimation in time over an inverted table: bit-reversed in, natural
    /// out (unscaled).
    fn inverse(&self, a: &mut [u64], itw: &[u64]) {
        let n = a.len();
        let first = n.min(BLOCK);
        for chunk in a.chunks_exact_mut(first) {
            let mut l = 2;
            while l <= first {
                self.inverse_stage(chunk, itw, l);
                l *= 2;
            }
        }
        let mut len = first * 2;
        while len <= n {
            self.inverse_stage(a, itw, len);
            len *= 2;
        }
    }

    #[inline(always)]
    fn inverse_stage(&self, a: &mut [u64], itw: &[u64], len: usize) {
        let half = len / 2;
        let w = &itw[half..len];
        for block in a.chunks_exact_mut(len) {
            let (lo, hi) = block.split_at_mut(half);
            for ((x, y), &t) in lo.iter_mut().zip(hi.iter_mut()).zip(w) {
                let u = *x;
                let v = self.mul(*y, t);
                *x = self.add(u, v);
                *y = self.sub(u, v);
            }
        }
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    (a as u128 * b as u128 % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin for 64-bit integers.
pub(crate) fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'bases: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

fn two_power_root(p: u64) -> u64 {
    let cofactor = (p - 1) >> 32;
    let mut factors = vec![2u64];
    let mut c = cofactor >> cofactor.trailing_zeros();
    let mut d = 3;
    while d * d <= c {
        if c.is_multiple_of(d) {
            factors.push(d);
            while c.is_multiple_of(d) {
                c /= d;
            }
        }
        d += 2;
    }
    if c > 1 {
        factors.push(c);
    }
    let generator = (2..)
        .find(|&g| factors.iter().all(|&q| pow_mod(g, (p - 1) / q, p) != 1))
        .expect("prime fields are cyclic");
    pow_mod(generator, cofactor, p)
}

fn pool() -> &'static [Field] {
    static POOL: OnceLock<Vec<Field>> = OnceLock::new();
    POOL.get_or_init(|| {
        let mut out = Vec::with_capacity(POOL_SIZE);
        let mut c: u64 = (1 << 30) - 1;
        while out.len() < POOL_SIZE {
            let p = (c << 32) | 1;
            if is_prime_u64(p) {
                out.push(Field::new(p));
            }
            c -= 1;
        }
        out
    })
}

#[cfg(test)]
pub(crate) fn pool_primes() -> Vec<u64> {
    pool().iter().map(|f| f.p).collect()
}

/// How many primes the CRT needs for a product with magnitude below `2^bound_bits`.
pub(crate) fn primes_needed(bound_bits: u64) -> usize {
    (bound_bits + 1).div_ceil(PRIME_BITS).max(1) as usize
}

fn bit_len(x: u64) -> u64 {
    64 - x.leading_zeros() as u64
}

fn load(field: &Field, src: &PowerSeries, len: usize, buf: &mut [u64]) {
    match &src.repr {
        Repr::Small(v) => {
            for (dst, &c) in buf.iter_mut().zip(&v[..len]) {
                *dst = field.mul(field.residue_i64(c), field.r2);
            }
        }
        Repr::Big(v) => {
            for (dst, c) in buf.iter_mut().zip(&v[..len]) {
                *dst = field.mul(field.residue_big(c), field.r2);
            }
        }
    }
    buf[len..].fill(0);
}

/// Residues of `f·g mod z^{out_len}` modulo one prime.
fn convolve_one(
    field: &Field,
    f: &PowerSeries,
    lf: usize,
    g: &PowerSeries,
    lg: usize,
    squaring: bool,
    log_n: u32,
    out_len: usize,
) -> Vec<u64> {
    let n = 1usize << log_n;
    let mut tw = field.twiddles(log_n);
    let mut a = vec![0u64; n];
    load(field, f, lf, &mut a);
    field.forward(&mut a, &tw);
    if squaring {
        for x in a.iter_mut() {
            *x = field.mul(*x, *x);
        }
    } else {
        let mut b = vec![0u64; n];
        load(field, g, lg, &mut b);
        field.forward(&mut b, &tw);
        for (x, y) in a.iter_mut().zip(&b) {
            *x = field.mul(*x, *y);
        }
    }
    field.invert_twiddles(&mut tw);
    field.inverse(&mut a, &tw);
    // x·R · (n^{-1}) · R^{-1} = x · n^{-1}, leaving Montgomery form.
    let n_inv = pow_mod(n as u64 % field.p, field.p - 2, field.p);
    a.truncate(out_len);
    for x in a.iter_mut() {
        *x = field.mul(*x, n_inv);
    }
    a
}

/// Exact product `f·g` truncated at `order` through the transform. Returns
/// `None` when the coefficient bound needs more primes than the pool holds.
pub(crate) fn convolve(f: &PowerSeries, g: &PowerSeries, order: usize) -> Option<PowerSeries> {
    let squaring = std::ptr::eq(f, g);
    let lf = f.support_len().min(order + 1);
    let lg = g.support_len().min(order + 1);
    if lf == 0 || lg == 0 {
        return Some(PowerSeries::zero(order));
    }
    let full_len = lf + lg - 1;
    let out_len = full_len.min(order + 1);
    let log_n = full_len.next_power_of_two().trailing_zeros();
    if log_n > 32 {
        return None;
    }

    let bound_bits = f.max_abs_bits() + g.max_abs_bits() + bit_len(lf.min(lg) as u64);
    let t = primes_needed(bound_bits);
    let fields = pool();
    if t > fields.len() {
        return None;
    }
    let fields = &fields[..t];
    let signed = !(f.is_nonnegative() && g.is_nonnegative());

    let residues: Vec<Vec<u64>> = fields
        .iter()
        .map(|field| convolve_one(field, f, lf, g, lg, squaring, log_n, out_len))
        .collect();

    let mut coeffs = reconstruct(fields, &residues, out_len, signed, bound_bits);
    coeffs.resize(order + 1);
    Some(coeffs.finish())
}

enum Coeffs {
    Small(Vec<i64>),
    Big(Vec<BigInt>),
}

impl Coeffs {
    fn resize(&mut self, len: usize) {
        match self {
            Coeffs::Small(v) => v.resize(len, 0),
            Coeffs::Big(v) => v.resize(len, BigInt::zero()),
        }
    }

    fn finish(self) -> PowerSeries {
        match self {
            Coeffs::Small(v) => PowerSeries::from_i64(v),
            Coeffs::Big(v) => PowerSeries::from_bigints(v),
        }
    }
}

/// Garner's mixed-radix reconstruction.
fn reconstruct(
    fields: &[Field],
    residues: &[Vec<u64>],
    len: usize,
    signed: bool,
    bound_bits: u64,
) -> Coeffs {
    let t = fields.len();
    if t == 1 {
        let p = fields[0].p;
        let half = p / 2;
        return Coeffs::Small(
            residues[0]
                .iter()
                .map(|&x| {
                    if signed && x > half {
                        x as i64 - p as i64
                    } else {
                        x as i64
                    }
                })
                .collect(),
        );
    }

    // prefix[i][j] = (p_0 ⋯ p_{j-1}) mod p_i in Montgomery form (j < i),
    // inv[i] = (p_0 ⋯ p_{i-1})^{-1} mod p_i in Montgomery form.
    let mut prefix: Vec<Vec<u64>> = vec![Vec::new(); t];
    let mut inv = vec![0u64; t];
    for i in 1..t {
        let fi = &fields[i];
        let mut acc = 1u64;
        for j in 0..i {
            prefix[i].push(fi.to_mont(acc));
            acc = mul_mod(acc, fields[j].p % fi.p, fi.p);
        }
        inv[i] = fi.to_mont(pow_mod(acc, fi.p - 2, fi.p));
    }

    let modulus: BigInt = fields.iter().map(|f| BigInt::from(f.p)).product();
    // Mixed-radix digits of (P - 1) / 2, most significant last.
    let half_digits: Vec<u64> = {
        let mut h: BigInt = (&modulus - 1u32) / 2u32;
        fields
            .iter()
            .map(|f| {
                let (q, r) = h.div_rem(&BigInt::from(f.p));
                h = q;
                r.to_u64().unwrap()
            })
            .collect()
    };
    let radix_wrapping: Vec<u64> = {
        let mut acc = 1u64;
        fields
            .iter()
            .map(|f| {
                let r = acc;
                acc = acc.wrapping_mul(f.p);
                r
            })
            .collect()
    };
    let modulus_wrapping = radix_wrapping[t - 1].wrapping_mul(fields[t - 1].p);

    let mut digits = vec![0u64; t];
    let small = bound_bits <= 62;
    let mut out_small = Vec::with_capacity(if small { len } else { 0 });
    let mut out_big = Vec::with_capacity(if small { 0 } else { len });
    for n in 0..len {
        digits[0] = residues[0][n];
        for i in 1..t {
            let fi = &fields[i];
            let mut acc = 0u64;
            for j in 0..i {
                acc = fi.add(acc, fi.mul(digits[j], prefix[i][j]));
            }
            digits[i] = fi.mul(fi.sub(residues[i][n], acc), inv[i]);
        }
        let negative = signed && {
            let mut gt = false;
            for i in (0..t).rev() {
                if digits[i] != half_digits[i] {
                    gt = digits[i] > half_digits[i];
                    break;
                }
            }
            gt
        };
        if small {
            let mut v = 0u64;
            for i in 0..t {
                v = v.wrapping_add(digits[i].wrapping_mul(radix_wrapping[i]));
            }
            if negative {
                v = v.wrapping_sub(modulus_wrapping);
            }
            out_small.push(v as i64);
        } else {
            let mut x = BigInt::from(digits[t - 1]);
            for i in (0..t - 1).rev() {
                x = x * fields[i].p + digits[i];
            }
            if negative {
                x -= &modulus;
            }
            out_big.push(x);
        }
    }
    if small {
        Coeffs::Small(out_small)
    } else {
        Coeffs::Big(out_big)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pool_primes_are_ntt_friendly() {
        let primes = pool_primes();
        assert_eq!(primes.len(), POOL_SIZE);
        for &p in &primes {
            assert!(is_prime_u64(p));
            assert!(p > 1 << 61 && p < 1 << 62);
            assert_eq!((p - 1) % (1 << 32), 0);
        }
        for f in pool().iter().take(3) {
            // root has order exactly 2^32
            assert_eq!(pow_mod(f.root, 1 << 32, f.p), 1);
            assert_eq!(pow_mod(f.root, 1 << 31, f.p), f.p - 1);
        }
    }

    #[test]
    fn miller_rabin_agrees_with_trial_division() {
        for n in 0..5000u64 {
            let trial = n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0);
            assert_eq!(is_prime_u64(n), trial, "{n}");
        }
        assert!(is_prime_u64(18446744073709551557));
        assert!(!is_prime_u64(18446744073709551555));
    }

    #[test]
    fn montgomery_round_trip() {
        let f = pool()[0];
        for a in [0u64, 1, 2, 12345, f.p - 1] {
            assert_eq!(f.from_mont(f.to_mont(a)), a);
        }
        let (a, b) = (987654321987u64, 123456789123u64);
        assert_eq!(
            f.from_mont(f.mul(f.to_mont(a), f.to_mont(b))),
            mul_mod(a, b, f.p)
        );
    }

    #[test]
    fn transform_round_trip() {
        let f = pool()[1];
        for log_n in [1u32, 5, 15, 16] {
            let n = 1u64 << log_n;
            let mut tw = f.twiddles(log_n);
            let orig: Vec<u64> = (0..n).map(|i| f.to_mont(i * i + 7)).collect();
            let mut a = orig.clone();
            f.forward(&mut a, &tw);
            f.invert_twiddles(&mut tw);
            f.inverse(&mut a, &tw);
            let n_inv = f.to_mont(pow_mod(n, f.p - 2, f.p));
            for (x, y) in a.iter().zip(&orig) {
                assert_eq!(f.mul(*x, n_inv), *y);
            }
        }
    }

    #[test]
    fn prime_count_grows_with_bound() {
        assert_eq!(primes_needed(10), 1);
        assert_eq!(primes_needed(60), 1);
        assert_eq!(primes_needed(61), 2);
        assert_eq!(primes_needed(200), 4);
    }

    #[test]
    fn multi_prime_signed_reconstruction() {
        let big: BigInt = BigInt::from(1u8) << 150;
        let f = PowerSeries::from_bigints(vec![big.clone(), -big.clone(), BigInt::from(3)]);
        let g = PowerSeries::from_bigints(vec![BigInt::from(-5), big.clone()]);
        let h = convolve(&f, &g, 3).unwrap();
        let expect: Vec<BigInt> = vec![
            -(big.clone() * 5u32),
            &big * &big + &big * 5u32,
            -(&big * &big) - 15u32,
            &big * 3u32,
        ];
        assert_eq!(h.to_bigints(), expect);
    }
}
