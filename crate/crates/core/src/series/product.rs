//! Expansion of `∏_{n≥1} (1 − q^n)^{c(n)}` from its exponents.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::exact::{self, Smooth};
use super::PowerSeries;
use crate::error::{Error, Result};
use crate::exponents::ExponentSeries;

/// Fourier coefficients of `f = ∏_{n≥1}(1 − q^n)^{c(n)}` (normalized
/// `c0 = 1`, `h = 0`) up to `q^order`.
///
/// Log-differentiation gives `n·a(n) = −∑_{m=1}^{n} s(m)·a(n−m)` with
/// `s(m) = ∑_{d|m} d·c(d)`. Writing `s = S/D` over integers and
/// `a(n) = A(n) / (n!·D^n)` turns this into the integer recurrence
/// `A(n) = −∑_{j<n} S(n−j)·A(j)·D^{n−1−j}·(n−1)!/j!`, evaluated by Horner's
/// rule, so each step is a big-integer times a small one.
pub fn expand_product(c: &ExponentSeries, order: usize) -> Result<PowerSeries<BigRational>> {
    if c.bound() < order {
        return Err(Error::Shape(format!(
            "exponents known to n = {} but expansion requested to order {order}",
            c.bound()
        )));
    }
    if order == 0 {
        return Ok(PowerSeries::one(0));
    }

    // t(d) = d·c(d) over a common denominator D
    let weighted: Vec<BigRational> = (1..=order)
        .map(|d| c.get(d).expect("bound checked") * BigInt::from(d))
        .collect();
    let (t, lcd) = exact::common_denominator(&weighted);
    let mut s = vec![BigInt::zero(); order + 1];
    for d in 1..=order {
        if t[d - 1].is_zero() {
            continue;
        }
        for m in (d..=order).step_by(d) {
            s[m] += &t[d - 1];
        }
    }

    let primes = exact::small_primes(order + 1);
    let lcd_factors = Smooth::factor(&lcd, &primes);
    let unit_lcd = lcd.is_one();

    let mut scaled: Vec<BigInt> = Vec::with_capacity(order + 1);
    scaled.push(BigInt::one());
    let mut coeffs = Vec::with_capacity(order + 1);
    coeffs.push(BigRational::one());
    for n in 1..=order {
        let mut acc = &s[n] * &scaled[0];
        for j in 1..n {
            acc *= j as u64;
            if !unit_lcd {
                acc *= &lcd;
            }
            if !s[n - j].is_zero() {
                acc += &s[n - j] * &scaled[j];
            }
        }
        let a_n = -acc;
        let den = Smooth::factorial(n as u64, &primes).mul(&lcd_factors.pow(n as u32));
        coeffs.push(exact::reduce(a_n.clone(), &den));
        scaled.push(a_n);
    }
    PowerSeries::new(coeffs)
}
