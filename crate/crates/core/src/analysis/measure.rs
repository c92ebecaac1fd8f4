//! The Sato-Tate measure `(2/π)√(1−t²) dt` on `[−1, 1]`.

use num_traits::{Float, FloatConst};
use serde::Serialize;

use crate::error::{Error, Result};

/// Closed interval `[lo, hi]` inside `[−1, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        check_interval(lo, hi)?;
        Ok(Interval { lo, hi })
    }

    pub const FULL: Interval = Interval { lo: -1.0, hi: 1.0 };

    pub fn contains(&self, t: f64) -> bool {
        self.lo <= t && t <= self.hi
    }

    pub fn measure(&self) -> f64 {
        st_measure(self.lo, self.hi).expect("validated on construction")
    }
}

impl std::str::FromStr for Interval {
    type Err = Error;

    /// Parses `lo:hi`.
    fn from_str(s: &str) -> Result<Self> {
        let (lo, hi) = s
            .split_once(':')
            .ok_or_else(|| Error::Config(format!("interval `{s}` is not of the form lo:hi")))?;
        let parse = |v: &str| {
            v.trim()
                .parse::<f64>()
                .map_err(|_| Error::Config(format!("interval `{s}`: `{v}` is not a number")))
        };
        Interval::new(parse(lo)?, parse(hi)?)
    }
}

fn check_interval<F: Float>(a: F, b: F) -> Result<()> {
    let one = F::one();
    if !(a.is_finite() && b.is_finite() && -one <= a && a <= b && b <= one) {
        return Err(Error::Domain(format!(
            "[{}, {}] is not an interval inside [-1, 1]",
            a.to_f64().unwrap_or(f64::NAN),
            b.to_f64().unwrap_or(f64::NAN)
        )));
    }
    Ok(())
}

/// `(arcsin t + t√(1−t²)) / π`, an antiderivative of the density.
fn primitive<F: Float + FloatConst>(t: F) -> F {
    (t.asin() + t * (F::one() - t * t).sqrt()) / F::PI()
}

/// `μ_ST([a, b])`.
pub fn st_measure<F: Float + FloatConst>(a: F, b: F) -> Result<F> {
    check_interval(a, b)?;
    Ok(primitive(b) - primitive(a))
}

/// `B(p) = b(p) / (2√p)`, refusing coefficients outside the Deligne bound.
pub fn normalize_bp<F: Float>(bp: i64, p: u64) -> Result<F> {
    let b = bp as i128;
    if b * b > 4 * p as i128 {
        return Err(Error::Integrity(format!("|b({p})| = {} exceeds 2√{p}", b.abs())));
    }
    let two = F::one() + F::one();
    let (num, den) = (F::from(bp), F::from(p));
    match (num, den) {
        (Some(num), Some(den)) => Ok(num / (two * den.sqrt())),
        _ => Err(Error::Domain(format!("b({p}) = {bp} is not representable"))),
    }
}
