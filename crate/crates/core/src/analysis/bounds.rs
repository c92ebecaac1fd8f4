//! Integral exponents and first sign changes of `c(n)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::arith::{psi2, sieve_primes};
use crate::error::{Error, Result};
use crate::exponents::ExponentSeries;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IntegralExponent {
    pub n: u64,
    pub c: i64,
    pub sigma0: u64,
}

/// Indices `n <= limit` with `c(n) ∈ ℤ \ {0}`, plus every `n` breaking
/// `|n·c(n)| <= √n·σ0(n)²`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IntegralityReport {
    pub level: u64,
    pub limit: u64,
    pub integral: Vec<IntegralExponent>,
    pub coefficient_bound_violations: Vec<u64>,
}

/// Scans `c(1..=limit)`. Each integral index must satisfy
/// `n <= 2√n·σ0(n)³` (checked exactly as `n <= 4·σ0(n)⁶`); a violation is an
/// integrity error.
pub fn integrality_scan(c: &ExponentSeries, limit: usize) -> Result<IntegralityReport> {
    if c.bound() < limit {
        return Err(Error::Shape(format!(
            "exponents known to n = {}, scan requested to {limit}",
            c.bound()
        )));
    }
    let table = sieve_primes((limit as u64).max(2))?;
    let mut integral = Vec::new();
    let mut violations = Vec::new();
    for (n, cn) in c.iter().take(limit) {
        let n64 = n as u64;
        let s = BigInt::from(table.sigma0(n64)?);
        // (n·c)² <= n·σ0⁴
        let weighted = cn * BigInt::from(n);
        let lhs = &weighted * &weighted;
        let rhs = BigRational::from_integer(BigInt::from(n) * s.pow(4));
        if lhs > rhs {
            violations.push(n64);
        }
        if cn.is_integer() && !cn.is_zero() {
            if BigInt::from(n) > BigInt::from(4) * s.pow(6) {
                return Err(Error::Integrity(format!(
                    "level {}: c({n}) = {cn} is integral but n > 2√n·σ0(n)³",
                    c.level()
                )));
            }
            let value = cn
                .to_integer()
                .to_i64()
                .ok_or_else(|| Error::Integrity(format!("c({n}) = {cn} overflows i64")))?;
            integral.push(IntegralExponent {
                n: n64,
                c: value,
                sigma0: s.to_u64().expect("σ0 fits"),
            });
        }
    }
    Ok(IntegralityReport {
        level: c.level(),
        limit: limit as u64,
        integral,
        coefficient_bound_violations: violations,
    })
}

/// First sign changes of `c(n)` against the constant-free parts of the
/// known bounds. `n0` evaluates
/// `N⁵·log¹⁰N·exp(log(N+1)/loglog(N+2))·max{ψ2(N), 4√N·log¹⁶(2N)}`
/// with implied constant 1; comparisons with it are informational.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub level: u64,
    pub limit: u64,
    /// Smallest `n > 1` with `c(n) > 0`.
    pub d1: Option<u64>,
    /// Smallest `n` with `c(n) < 0`.
    pub d2: Option<u64>,
    /// Smallest `n > 1` coprime to the level with `c(n) > 0`.
    pub d0: Option<u64>,
    /// `(4N)^{3/8}`.
    pub bound_38: f64,
    pub psi2: f64,
    pub n0: f64,
    pub d1_within_bound_38: Option<bool>,
    pub d0_within_bound_38: Option<bool>,
    /// No sign change of one kind inside `1..=limit`.
    pub inconclusive: bool,
}

pub fn n0_bound(level: u64) -> f64 {
    let n = level as f64;
    let log_n = n.ln();
    let growth = ((n + 1.0).ln() / (n + 2.0).ln().ln()).exp();
    let tail = psi2(level).max(4.0 * n.sqrt() * (2.0 * n).ln().powi(16));
    n.powi(5) * log_n.powi(10) * growth * tail
}

pub fn bound_38(level: u64) -> f64 {
    (4.0 * level as f64).powf(0.375)
}

/// Needs exponents past `(4N)^{3/8}`.
pub fn first_sign_change(c: &ExponentSeries) -> Result<BoundReport> {
    let level = c.level();
    let b38 = bound_38(level);
    if (c.bound() as f64) <= b38 {
        return Err(Error::Shape(format!(
            "level {level}: exponents known to n = {}, need n > (4N)^(3/8) = {b38:.4}",
            c.bound()
        )));
    }
    let d1 = c.iter().find(|(n, v)| *n > 1 && v.is_positive()).map(|(n, _)| n as u64);
    let d2 = c.iter().find(|(_, v)| v.is_negative()).map(|(n, _)| n as u64);
    let d0 = c
        .iter()
        .find(|(n, v)| *n > 1 && (*n as u64).gcd(&level) == 1 && v.is_positive())
        .map(|(n, _)| n as u64);
    Ok(BoundReport {
        level,
        limit: c.bound() as u64,
        d1,
        d2,
        d0,
        bound_38: b38,
        psi2: psi2(level),
        n0: n0_bound(level),
        d1_within_bound_38: d1.map(|d| d as f64 <= b38),
        d0_within_bound_38: d0.map(|d| d as f64 <= b38),
        inconclusive: d1.is_none() || d2.is_none(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eigen::{load_eigenform, FormSpec, LoadOptions};
    use crate::exponents::exponents_from_eigenform;

    fn exponents(level: u64, bound: usize) -> ExponentSeries {
        let g = load_eigenform(&FormSpec::Catalogue(level), bound, &LoadOptions::default()).unwrap();
        exponents_from_eigenform(&g, bound).unwrap()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn level_11_integral_exponents() {
        let r = integrality_scan(&exponents(11, 2000), 2000).unwrap();
        assert_eq!(r.integral[0], IntegralExponent { n: 1, c: -1, sigma0: 1 });
        assert!(r.integral.iter().any(|e| e.n == 4 && e.c == -1));
        assert!(r.integral.iter().all(|e| e.c != 0));
        assert!(r.coefficient_bound_violations.is_empty());
    }

    #[test]
    fn scan_flags_and_refuses() {
        // c(2) = 0 is skipped, c(3) = 1/3 is not integral
        let mut values = vec![q(-1, 1), q(0, 1), q(1, 3), q(0, 1), q(0, 1), q(2, 1)];
        let r = integrality_scan(&ExponentSeries::new(1, values.clone()), 6).unwrap();
        assert_eq!(r.integral.iter().map(|e| e.n).collect::<Vec<_>>(), vec![1, 6]);
        // (6·2)² = 144 <= 6·σ0(6)⁴ = 1536
        assert!(r.coefficient_bound_violations.is_empty());
        values[5] = q(100, 1);
        let r = integrality_scan(&ExponentSeries::new(1, values.clone()), 6).unwrap();
        assert_eq!(r.coefficient_bound_violations, vec![6]);
        // 257 is prime and 257 > 4·σ0(257)⁶ = 256
        let mut long = vec![q(0, 1); 257];
        long[256] = q(1, 1);
        assert!(matches!(
            integrality_scan(&ExponentSeries::new(1, long), 257),
            Err(Error::Integrity(_))
        ));
        assert!(integrality_scan(&ExponentSeries::new(1, values), 7).is_err());
    }

    #[test]
    fn first_sign_changes() {
        let r = first_sign_change(&exponents(11, 100)).unwrap();
        assert_eq!((r.d1, r.d2), (Some(2), Some(1)));
        // 44^0.375 = 4.133279305962497
        assert!((r.bound_38 - 4.133_279_305_962_497).abs() < 1e-12);
        assert_eq!(r.d1_within_bound_38, Some(true));
        assert!(!r.inconclusive);
        let r14 = first_sign_change(&exponents(14, 100)).unwrap();
        assert!((r14.bound_38 - 4.524_499_141_325_224).abs() < 1e-12);
        assert_eq!(r14.d2, Some(1));
        // 2 | 14, and b(3) = −2 gives c(3) = 1
        assert_eq!(r14.d0, Some(3));

        let flat = ExponentSeries::new(11, vec![q(-1, 1), q(-1, 1), q(0, 1), q(-1, 2), q(-1, 3)]);
        let r = first_sign_change(&flat).unwrap();
        assert!(r.d1.is_none() && r.inconclusive);
        assert!(matches!(first_sign_change(&exponents(11, 4)), Err(Error::Shape(_))));
    }

    #[test]
    fn n0_reference_values() {
        // independent evaluation of the expression
        let expected = [
            (11u64, 1.304_378_271_513_013_5e19, 1.289_064_826_317_887_9),
            (14, 4.337_470_802_019_525e20, 8.232_183_670_489_691),
            (24, 6.366_697_502_839_673e23, 19.679_838_557_864_48),
        ];
        for (n, n0, p2) in expected {
            assert!((n0_bound(n) / n0 - 1.0).abs() < 1e-12, "level {n}");
            assert!((psi2(n) - p2).abs() < 1e-12, "level {n}");
        }
    }
}
