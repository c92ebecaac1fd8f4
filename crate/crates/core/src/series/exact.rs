//! Exact rational series kernels.
//!
//! Reducing every intermediate `BigRational` costs a big-integer gcd per
//! operation, which dominates at truncation orders in the thousands. These
//! kernels move each series to a common denominator, run the recurrence in
//! `BigInt`, and reduce once per output coefficient. When the denominator's
//! factorization is known (factorials, products of small primes) the final
//! reduction strips primes one at a time instead of taking a gcd.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::sieve_primes;

/// Positive integer stored as a product of known prime powers times an
/// unfactored residual.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Smooth {
    factors: Vec<(u64, u32)>,
    residual: BigInt,
}

impl Smooth {
    pub(crate) fn one() -> Self {
        Smooth {
            factors: Vec::new(),
            residual: BigInt::one(),
        }
    }

    /// Strips every prime of `primes` out of `n`; whatever is left becomes the residual.
    pub(crate) fn factor(n: &BigInt, primes: &[u64]) -> Self {
        let mut rest = n.abs();
        let mut factors = Vec::new();
        for &p in primes {
            if rest.is_one() {
                break;
            }
            let e = strip_prime(&mut rest, p, u32::MAX);
            if e > 0 {
                factors.push((p, e));
            }
        }
        Smooth {
            factors,
            residual: rest,
        }
    }

    /// Prime factorization of `n!` (Legendre).
    pub(crate) fn factorial(n: u64, primes: &[u64]) -> Self {
        let factors = primes
            .iter()
            .take_while(|&&p| p <= n)
            .map(|&p| {
                let mut e = 0u64;
                let mut pk = p;
                while pk <= n {
                    e += n / pk;
                    pk = match pk.checked_mul(p) {
                        Some(v) => v,
                        None => break,
                    };
                }
                (p, e as u32)
            })
            .collect();
        Smooth {
            factors,
            residual: BigInt::one(),
        }
    }

    fn merge(&self, other: &Self, combine: impl Fn(u32, u32) -> u32) -> Vec<(u64, u32)> {
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::with_capacity(self.factors.len().max(other.factors.len()));
        while i < self.factors.len() || j < other.factors.len() {
            let a = self.factors.get(i);
            let b = other.factors.get(j);
            match (a, b) {
                (Some(&(p, e)), Some(&(q, f))) if p == q => {
                    out.push((p, combine(e, f)));
                    i += 1;
                    j += 1;
                }
                (Some(&(p, e)), Some(&(q, _))) if p < q => {
                    out.push((p, combine(e, 0)));
                    i += 1;
                }
                (Some(&(p, e)), None) => {
                    out.push((p, combine(e, 0)));
                    i += 1;
                }
                (_, Some(&(q, f))) => {
                    out.push((q, combine(0, f)));
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        out.retain(|&(_, e)| e > 0);
        out
    }

    pub(crate) fn mul(&self, other: &Self) -> Self {
        Smooth {
            factors: self.merge(other, |a, b| a + b),
            residual: &self.residual * &other.residual,
        }
    }

    pub(crate) fn lcm(&self, other: &Self) -> Self {
        Smooth {
            factors: self.merge(other, |a, b| a.max(b)),
            residual: self.residual.lcm(&other.residual),
        }
    }

    pub(crate) fn pow(&self, k: u32) -> Self {
        Smooth {
            factors: self.factors.iter().map(|&(p, e)| (p, e * k)).collect(),
            residual: num_traits::pow(self.residual.clone(), k as usize),
        }
    }

    pub(crate) fn value(&self) -> BigInt {
        prime_power_product(&self.factors) * &self.residual
    }
}

fn prime_power_product(factors: &[(u64, u32)]) -> BigInt {
    // balanced split keeps operand sizes even
    match factors.len() {
        0 => BigInt::one(),
        1 => num_traits::pow(BigInt::from(factors[0].0), factors[0].1 as usize),
        n => prime_power_product(&factors[..n / 2]) * prime_power_product(&factors[n / 2..]),
    }
}

/// Largest power of `p` that fits in a u64, with its exponent.
fn word_power(p: u64) -> (u64, u32) {
    let mut block = p;
    let mut t = 1;
    while let Some(next) = block.checked_mul(p) {
        block = next;
        t += 1;
    }
    (block, t)
}

/// Divides `n` by `p` as long as it divides and at most `limit` times;
/// returns how many times it divided.
fn strip_prime(n: &mut BigInt, p: u64, limit: u32) -> u32 {
    let (block, t) = word_power(p);
    let mut count = 0u32;
    while limit - count >= t && (&*n % block).is_zero() {
        *n /= block;
        count += t;
    }
    while count < limit && (&*n % p).is_zero() {
        *n /= p;
        count += 1;
    }
    count
}

/// `num / den` in lowest terms.
pub(crate) fn reduce(mut num: BigInt, den: &Smooth) -> BigRational {
    if num.is_zero() {
        return BigRational::zero();
    }
    let mut left = Vec::with_capacity(den.factors.len());
    for &(p, e) in &den.factors {
        let removed = strip_prime(&mut num, p, e);
        if removed < e {
            left.push((p, e - removed));
        }
    }
    let mut residual = den.residual.clone();
    if !residual.is_one() {
        let g = num.gcd(&residual);
        num /= &g;
        residual /= g;
    }
    BigRational::new_raw(num, prime_power_product(&left) * residual)
}

/// `num / den` in lowest terms, trying exact division before the gcd.
fn reduce_plain(num: BigInt, den: BigInt) -> BigRational {
    if num.is_zero() {
        return BigRational::zero();
    }
    let (quo, rem) = num.div_rem(&den);
    if rem.is_zero() {
        BigRational::from_integer(quo)
    } else {
        BigRational::new(num, den)
    }
}

/// Rewrites `a` over the least common denominator: `a[i] = out[i] / lcd`.
pub(crate) fn common_denominator(a: &[BigRational]) -> (Vec<BigInt>, BigInt) {
    let mut lcd = BigInt::one();
    for x in a {
        if !(&lcd % x.denom()).is_zero() {
            lcd = lcd.lcm(x.denom());
        }
    }
    let scaled = a.iter().map(|x| x.numer() * (&lcd / x.denom())).collect();
    (scaled, lcd)
}

pub(crate) fn mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let (x, lx) = common_denominator(a);
    let (y, ly) = common_denominator(b);
    let den = lx * ly;
    (0..x.len())
        .map(|n| {
            let mut acc = BigInt::zero();
            for k in 0..=n {
                if !x[k].is_zero() && !y[n - k].is_zero() {
                    acc += &x[k] * &y[n - k];
                }
            }
            reduce_plain(acc, den.clone())
        })
        .collect()
}

/// With `a = α / L` over integers, `1/a = L·β(n) / α0^{n+1}` where
/// `β(0) = 1` and `β(n) = −∑_{k=1}^{n} α(k)·α0^{k−1}·β(n−k)`.
pub(crate) fn invert(a: &[BigRational]) -> Vec<BigRational> {
    let (alpha, lcd) = common_denominator(a);
    let a0 = alpha[0].clone();
    let mut beta: Vec<BigInt> = Vec::with_capacity(alpha.len());
    beta.push(BigInt::one());
    let mut out = vec![reduce_plain(lcd.clone(), a0.clone())];
    let mut a0_pow = a0.clone();
    for n in 1..alpha.len() {
        // Horner in α0 over k = n, n−1, …, 1
        let mut acc = &alpha[n] * &beta[0];
        for k in (1..n).rev() {
            acc *= &a0;
            if !alpha[k].is_zero() {
                acc += &alpha[k] * &beta[n - k];
            }
        }
        let b = -acc;
        a0_pow *= &a0;
        out.push(reduce_plain(&lcd * &b, a0_pow.clone()));
        beta.push(b);
    }
    out
}

/// `q·a'/a` via `a·g = q·a'`, solved for `g` one coefficient at a time
/// with `g` held over a running common denominator.
pub(crate) fn log_deriv(a: &[BigRational]) -> Vec<BigRational> {
    let len = a.len();
    let primes = small_primes(len);
    let lcd = a
        .iter()
        .fold(Smooth::one(), |acc, x| acc.lcm(&Smooth::factor(x.denom(), &primes)))
        .value();
    let alpha: Vec<BigInt> = a.iter().map(|x| x.numer() * (&lcd / x.denom())).collect();
    let a0 = &alpha[0];

    let mut out = vec![BigRational::zero(); len];
    // g(k) = scaled[k] / common
    let mut scaled = vec![BigInt::zero(); len];
    let mut common = BigInt::one();
    for n in 1..len {
        let mut x = &alpha[n] * BigInt::from(n) * &common;
        for k in 1..n {
            if !scaled[k].is_zero() && !alpha[n - k].is_zero() {
                x -= &scaled[k] * &alpha[n - k];
            }
        }
        let (quo, rem) = x.div_rem(a0);
        let g = if rem.is_zero() {
            reduce_plain(quo, common.clone())
        } else {
            BigRational::new(x, &common * a0)
        };
        let d = g.denom();
        if !(&common % d).is_zero() {
            let f = d / common.gcd(d);
            for s in scaled[1..n].iter_mut() {
                *s *= &f;
            }
            common *= f;
        }
        scaled[n] = g.numer() * (&common / g.denom());
        out[n] = g;
    }
    out
}

/// Primes used for trial-factoring denominators of a length-`len` series.
pub(crate) fn small_primes(len: usize) -> Vec<u64> {
    let bound = (2 * len as u64).max(1000);
    sieve_primes(bound).expect("bound is at least 1000").primes().to_vec()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn smooth_factor_and_value() {
        let primes = small_primes(10);
        let s = Smooth::factor(&big(360 * 1_000_003), &primes);
        assert_eq!(s.factors, vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(s.residual, big(1_000_003));
        assert_eq!(s.value(), big(360 * 1_000_003));
    }

    #[test]
    fn factorial_factorization() {
        let primes = small_primes(10);
        let f = Smooth::factorial(10, &primes);
        assert_eq!(f.value(), big(3_628_800));
        assert_eq!(Smooth::factorial(0, &primes).value(), big(1));
    }

    #[test]
    fn lcm_and_pow() {
        let primes = small_primes(10);
        let a = Smooth::factor(&big(12), &primes);
        let b = Smooth::factor(&big(90), &primes);
        assert_eq!(a.lcm(&b).value(), big(180));
        assert_eq!(a.mul(&b).value(), big(1080));
        assert_eq!(a.pow(3).value(), big(1728));
    }

    #[test]
    fn reduce_matches_bigrational_new() {
        let primes = small_primes(10);
        for (n, d) in [
            (6i64, 8i64),
            (-45, 60),
            (7, 1_000_003 * 4),
            (0, 5),
            (1_000_003 * 9, 1_000_003 * 6),
        ] {
            let r = reduce(big(n), &Smooth::factor(&big(d), &primes));
            assert_eq!(r, BigRational::new(big(n), big(d)), "{n}/{d}");
        }
        // large powers exercise the word-sized block path
        let n = num_traits::pow(big(2), 200) * big(3);
        let d = num_traits::pow(big(2), 150) * big(9);
        assert_eq!(reduce(n.clone(), &Smooth::factor(&d, &primes)), BigRational::new(n, d));
    }
}
