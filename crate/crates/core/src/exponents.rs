//! Conversion between eigenform coefficients `b(n)` and the q-exponents
//! `c(n)` of `f = ∏ (1 − q^n)^{c(n)}`:
//!
//! ```text
//! b(n) = −∑_{d|n} d·c(d)          n·c(n) = −∑_{d|n} μ(d)·b(n/d)
//! ```

use std::io::Write;
use std::path::Path;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::sieve_primes;
use crate::eigen::Eigenform;
use crate::error::{Error, Result};
use crate::series::PowerSeries;

/// Exponents `c(1..=M)` of a product expansion normalized to `c0 = 1`, `h = 0`.
///
/// Exponents coming from an integral eigenform satisfy `n·c(n) ∈ ℤ`;
/// arbitrary rational exponents are accepted too (see
/// [`ExponentSeries::has_integral_weights`]).
#[derive(Debug, Clone, PartialEq)]
pub struct ExponentSeries {
    level: u64,
    values: Vec<BigRational>,
}

impl ExponentSeries {
    /// `values[i]` is `c(i + 1)`.
    pub fn new(level: u64, values: Vec<BigRational>) -> Self {
        ExponentSeries { level, values }
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    /// Largest `n` with a known exponent.
    pub fn bound(&self) -> usize {
        self.values.len()
    }

    /// `c(n)` for `1 <= n <= bound`.
    pub fn get(&self, n: usize) -> Option<&BigRational> {
        n.checked_sub(1).and_then(|i| self.values.get(i))
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    /// `(n, c(n))` pairs in order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, &BigRational)> {
        self.values.iter().enumerate().map(|(i, c)| (i + 1, c))
    }

    pub fn truncate(&self, bound: usize) -> Result<Self> {
        if bound > self.bound() {
            return Err(Error::Shape(format!(
                "exponents known to {} but {bound} requested",
                self.bound()
            )));
        }
        Ok(ExponentSeries {
            level: self.level,
            values: self.values[..bound].to_vec(),
        })
    }

    /// Whether `n·c(n)` is an integer for every stored `n`.
    pub fn has_integral_weights(&self) -> bool {
        self.iter().all(|(n, c)| (c * BigInt::from(n)).is_integer())
    }

    /// Writes `n,num,den` rows with `c(n) = num/den` in lowest terms.
    pub fn write_csv<W: Write>(&self, out: W) -> csv::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["n", "num", "den"])?;
        for (n, c) in self.iter() {
            w.write_record([n.to_string(), c.numer().to_string(), c.denom().to_string()])?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn read_csv(path: &Path, level: u64) -> Result<Self> {
        let mut reader = csv::Reader::from_path(path).map_err(|e| Error::format(path, e.to_string()))?;
        let headers = reader.headers().map_err(|e| Error::format(path, e.to_string()))?;
        if headers != vec!["n", "num", "den"] {
            return Err(Error::format(path, "expected header n,num,den"));
        }
        let mut values = Vec::new();
        for (i, record) in reader.records().enumerate() {
            let record = record.map_err(|e| Error::format(path, e.to_string()))?;
            let field = |k: usize| -> Result<BigInt> {
                record[k]
                    .trim()
                    .parse::<BigInt>()
                    .map_err(|e| Error::format(path, format!("row {}: {e}", i + 1)))
            };
            let n = field(0)?;
            if n != BigInt::from(i + 1) {
                return Err(Error::format(path, format!("row {}: expected n = {}", i + 1, i + 1)));
            }
            let den = field(2)?;
            if den.is_zero() {
                return Err(Error::format(path, format!("row {}: zero denominator", i + 1)));
            }
            values.push(BigRational::new(field(1)?, den));
        }
        Ok(ExponentSeries { level, values })
    }
}

/// `c(n) = −(1/n)·∑_{d|n} μ(d)·b(n/d)` for `n <= bound`.
pub fn exponents_from_eigenform(g: &Eigenform, bound: usize) -> Result<ExponentSeries> {
    if g.bound() < bound {
        return Err(Error::Shape(format!(
            "eigenform known to n = {} but exponents requested to {bound}",
            g.bound()
        )));
    }
    let weighted = mobius_convolve(&g.coeffs()[..bound])?;
    let values = weighted
        .into_iter()
        .enumerate()
        .map(|(i, nc)| BigRational::new(BigInt::from(-nc), BigInt::from(i + 1)))
        .collect();
    Ok(ExponentSeries::new(g.level(), values))
}

/// `∑_{d|n} μ(d)·b(n/d)` for `n = 1..=b.len()`.
fn mobius_convolve(b: &[i64]) -> Result<Vec<i64>> {
    let len = b.len();
    if len == 0 {
        return Ok(Vec::new());
    }
    let table = sieve_primes((len as u64).max(2))?;
    let mut out = vec![0i64; len];
    for d in 1..=len {
        let mu = table.mobius(d as u64)?;
        if mu == 0 {
            continue;
        }
        for (k, &bk) in b.iter().enumerate().take(len / d) {
            out[d * (k + 1) - 1] += mu as i64 * bk;
        }
    }
    Ok(out)
}

/// `b(n) = −∑_{d|n} d·c(d)` for `n <= bound`.
pub fn eigenform_from_exponents(c: &ExponentSeries, bound: usize) -> Result<Vec<BigRational>> {
    if c.bound() < bound {
        return Err(Error::Shape(format!(
            "exponents known to n = {} but coefficients requested to {bound}",
            c.bound()
        )));
    }
    let mut out = vec![BigRational::zero(); bound];
    for d in 1..=bound {
        let c_d = c.get(d).expect("bound checked");
        if c_d.is_zero() {
            continue;
        }
        let t = -(c_d * BigInt::from(d));
        for m in (d..=bound).step_by(d) {
            out[m - 1] += &t;
        }
    }
    Ok(out)
}

/// Narrows coefficients to machine integers, failing on any non-integral value.
pub fn integral_coefficients(values: &[BigRational]) -> Result<Vec<i64>> {
    values
        .iter()
        .enumerate()
        .map(|(i, v)| {
            if !v.is_integer() {
                return Err(Error::Integrity(format!("b({}) = {v} is not an integer", i + 1)));
            }
            i64::try_from(v.to_integer()).map_err(|_| Error::Integrity(format!("b({}) = {v} overflows i64", i + 1)))
        })
        .collect()
}

/// `c(p) = (1 − b(p)) / p`.
pub fn prime_exponent(bp: i64, p: u64) -> BigRational {
    BigRational::new(BigInt::from(1 - bp), BigInt::from(p))
}

/// Recovers the exponents of a normalized series (`a(0) = 1`) through its
/// logarithmic derivative `∑ b(m) q^m` and Möbius inversion.
pub fn exponents_from_series(a: &PowerSeries<BigRational>, level: u64) -> Result<ExponentSeries> {
    if !a.coeffs()[0].is_one() {
        return Err(Error::Domain(format!(
            "series must be normalized with a(0) = 1, got {}",
            a.coeffs()[0]
        )));
    }
    let g = a.log_deriv()?;
    let bound = a.order();
    if bound == 0 {
        return Ok(ExponentSeries::new(level, Vec::new()));
    }
    let table = sieve_primes((bound as u64).max(2))?;
    let mut weighted = vec![BigRational::zero(); bound];
    for d in 1..=bound {
        let mu = table.mobius(d as u64)?;
        if mu == 0 {
            continue;
        }
        for k in 1..=bound / d {
            let term = &g.coeffs()[k];
            if mu > 0 {
                weighted[d * k - 1] += term;
            } else {
                weighted[d * k - 1] -= term;
            }
        }
    }
    let values = weighted
        .into_iter()
        .enumerate()
        .map(|(i, w)| -w / BigInt::from(i + 1))
        .collect();
    Ok(ExponentSeries::new(level, values))
}

/// One prime-indexed exponent with the coefficient it came from.
#[derive(Debug, Clone, PartialEq)]
pub struct PrimeExponent {
    pub p: u64,
    pub bp: i64,
    pub c: BigRational,
}

/// `c(p)` at the good primes `p <= xmax` (`p ∤ N`), derived from `b(p)`
/// without touching composite indices.
#[derive(Debug, Clone)]
pub struct PrimeExponents {
    level: u64,
    cm: bool,
    xmax: u64,
    entries: Vec<PrimeExponent>,
    excluded: Vec<u64>,
}

impl PrimeExponents {
    pub fn from_eigenform(g: &Eigenform, xmax: u64) -> Result<Self> {
        if (g.bound() as u64) < xmax {
            return Err(Error::Shape(format!(
                "eigenform known to n = {} but primes to {xmax} requested",
                g.bound()
            )));
        }
        let mut entries = Vec::new();
        let mut excluded = Vec::new();
        if xmax >= 2 {
            for &p in sieve_primes(xmax)?.primes() {
                if g.level() % p == 0 {
                    excluded.push(p);
                    continue;
                }
                let bp = g.b(p as usize).expect("bound checked");
                entries.push(PrimeExponent {
                    p,
                    bp,
                    c: prime_exponent(bp, p),
                });
            }
        }
        Ok(PrimeExponents {
            level: g.level(),
            cm: g.cm(),
            xmax,
            entries,
            excluded,
        })
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    /// Whether the source form has complex multiplication.
    pub fn cm(&self) -> bool {
        self.cm
    }

    pub fn xmax(&self) -> u64 {
        self.xmax
    }

    pub fn entries(&self) -> &[PrimeExponent] {
        &self.entries
    }

    /// Primes `p <= xmax` dividing the level.
    pub fn excluded(&self) -> &[u64] {
        &self.excluded
    }

    /// All primes `p <= xmax`, good or not.
    pub fn prime_count(&self) -> usize {
        self.entries.len() + self.excluded.len()
    }

    /// Restriction to `p <= x`.
    pub fn up_to(&self, x: u64) -> Self {
        PrimeExponents {
            level: self.level,
            cm: self.cm,
            xmax: x.min(self.xmax),
            entries: self.entries.iter().filter(|e| e.p <= x).cloned().collect(),
            excluded: self.excluded.iter().copied().filter(|&p| p <= x).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eigen::{Eigenform, Source};

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn level11() -> Eigenform {
        Eigenform::new(11, vec![1, -2, -1, 2, 1, 2], false, Source::Eta).unwrap()
    }

    #[test]
    fn hand_evaluated_level_11_exponents() {
        let c = exponents_from_eigenform(&level11(), 6).unwrap();
        assert_eq!(c.get(1), Some(&r(-1, 1)));
        assert_eq!(c.get(2), Some(&r(3, 2)));
        assert_eq!(c.get(3), Some(&r(2, 3)));
        assert_eq!(c.get(4), Some(&r(-1, 1)));
        assert!(c.has_integral_weights());
        assert!(matches!(exponents_from_eigenform(&level11(), 7), Err(Error::Shape(_))));
    }

    #[test]
    fn back_to_coefficients() {
        let only_first = ExponentSeries::new(1, vec![r(-1, 1)]);
        assert_eq!(eigenform_from_exponents(&only_first, 1).unwrap(), vec![r(1, 1)]);
        let c = exponents_from_eigenform(&level11(), 6).unwrap();
        let b = eigenform_from_exponents(&c, 6).unwrap();
        assert_eq!(b[3], r(2, 1));
        assert_eq!(integral_coefficients(&b).unwrap(), level11().coeffs());
        assert!(integral_coefficients(&[r(1, 2)]).is_err());
    }

    #[test]
    fn prime_exponent_values() {
        assert_eq!(prime_exponent(-2, 2), r(3, 2));
        assert_eq!(prime_exponent(1, 97), r(0, 1));
        assert_eq!(prime_exponent(0, 5), r(1, 5));
        let c = exponents_from_eigenform(&level11(), 6).unwrap();
        assert_eq!(&prime_exponent(-2, 2), c.get(2).unwrap());
        assert_eq!(&prime_exponent(1, 5), c.get(5).unwrap());
    }

    #[test]
    fn csv_round_trip() {
        let c = exponents_from_eigenform(&level11(), 4).unwrap();
        let mut buf = Vec::new();
        c.write_csv(&mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf.clone()).unwrap(),
            "n,num,den\n1,-1,1\n2,3,2\n3,2,3\n4,-1,1\n"
        );
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.csv");
        std::fs::write(&path, buf).unwrap();
        assert_eq!(ExponentSeries::read_csv(&path, 11).unwrap(), c);
    }

    #[test]
    fn recovery_from_series() {
        let c = ExponentSeries::new(1, vec![r(1, 2), r(-3, 4), r(2, 1), r(0, 1), r(5, 3), r(-1, 7)]);
        let f = crate::series::expand_product(&c, 6).unwrap();
        assert_eq!(exponents_from_series(&f, 1).unwrap(), c);
    }
}
