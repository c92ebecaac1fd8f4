//! Primes and the multiplicative functions built on them.
//!
//! [`PrimeTable`] keeps a smallest-prime-factor table next to the prime list,
//! so `mobius` and `sigma0` cost one factorization walk (O(log n)) for any
//! `n` up to the sieve bound. Larger arguments fall back to trial division.

use crate::error::{Error, Result};

/// All primes up to `bound`, plus the smallest prime factor of every
/// integer in `0..=bound`.
#[derive(Debug, Clone)]
pub struct PrimeTable {
    bound: u64,
    primes: Vec<u64>,
    spf: Vec<u32>,
}

/// Sieve of Eratosthenes (linear variant, which fills the smallest-prime-factor
/// table as a by-product).
pub fn sieve_primes(bound: u64) -> Result<PrimeTable> {
    if bound < 2 {
        return Err(Error::EmptyRange(format!(
            "no primes below {bound}; bound must be at least 2"
        )));
    }
    if bound > u32::MAX as u64 {
        return Err(Error::Domain(format!("sieve bound {bound} exceeds 2^32")));
    }
    let n = bound as usize;
    let mut spf = vec![0u32; n + 1];
    let mut primes: Vec<u64> = Vec::with_capacity(prime_count_estimate(bound));
    for i in 2..=n {
        if spf[i] == 0 {
            spf[i] = i as u32;
            primes.push(i as u64);
        }
        let si = spf[i] as u64;
        for &p in &primes {
            if p > si || (p as usize) * i > n {
                break;
            }
            spf[p as usize * i] = p as u32;
        }
    }
    Ok(PrimeTable { bound, primes, spf })
}

fn prime_count_estimate(bound: u64) -> usize {
    let x = bound as f64;
    (1.26 * x / x.ln().max(1.0)) as usize + 16
}

impl PrimeTable {
    pub fn bound(&self) -> u64 {
        self.bound
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    /// Primes `p <= x` (a prefix of the table).
    pub fn primes_up_to(&self, x: u64) -> &[u64] {
        let end = self.primes.partition_point(|&p| p <= x);
        &self.primes[..end]
    }

    /// π(x) for `x <= bound`.
    pub fn pi(&self, x: u64) -> usize {
        self.primes_up_to(x).len()
    }

    pub fn is_prime(&self, n: u64) -> bool {
        if n <= self.bound {
            n >= 2 && self.spf[n as usize] as u64 == n
        } else {
            is_prime(n)
        }
    }

    /// Prime factorization as ascending `(p, e)` pairs.
    pub fn factorize(&self, n: u64) -> Result<Vec<(u64, u32)>> {
        if n == 0 {
            return Err(Error::Domain("cannot factor 0".into()));
        }
        if n > self.bound {
            return Ok(trial_factorize(n));
        }
        let mut out: Vec<(u64, u32)> = Vec::new();
        let mut m = n as usize;
        while m > 1 {
            let p = self.spf[m] as usize;
            let mut e = 0;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            out.push((p as u64, e));
        }
        Ok(out)
    }

    pub fn mobius(&self, n: u64) -> Result<i8> {
        Ok(mobius_from_factors(&self.factorize(n)?))
    }

    pub fn sigma0(&self, n: u64) -> Result<u64> {
        Ok(sigma0_from_factors(&self.factorize(n)?))
    }

    /// Smallest prime factor of `2 <= n <= bound`.
    pub fn smallest_factor(&self, n: u64) -> Option<u64> {
        if n < 2 || n > self.bound {
            None
        } else {
            Some(self.spf[n as usize] as u64)
        }
    }
}

fn mobius_from_factors(factors: &[(u64, u32)]) -> i8 {
    if factors.iter().any(|&(_, e)| e > 1) {
        0
    } else if factors.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

fn sigma0_from_factors(factors: &[(u64, u32)]) -> u64 {
    factors.iter().map(|&(_, e)| e as u64 + 1).product()
}

pub(crate) fn trial_factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Deterministic primality by trial division.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Möbius function μ(n).
pub fn mobius(n: u64) -> Result<i8> {
    if n == 0 {
        return Err(Error::Domain("μ(0) is undefined".into()));
    }
    Ok(mobius_from_factors(&trial_factorize(n)))
}

/// Number of positive divisors σ0(n).
pub fn sigma0(n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::Domain("σ0(0) is undefined".into()));
    }
    Ok(sigma0_from_factors(&trial_factorize(n)))
}

/// ψ2(N) = ∏_{p | N} log(2N) / log p, with the empty product equal to 1.
pub fn psi2(level: u64) -> f64 {
    if level <= 1 {
        return 1.0;
    }
    let log_2n = (2.0 * level as f64).ln();
    trial_factorize(level)
        .iter()
        .map(|&(p, _)| log_2n / (p as f64).ln())
        .product()
}

/// Distinct prime divisors of `n`, ascending.
pub fn prime_divisors(n: u64) -> Vec<u64> {
    if n == 0 {
        return Vec::new();
    }
    trial_factorize(n).into_iter().map(|(p, _)| p).collect()
}
