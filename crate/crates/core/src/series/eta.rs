//! Eta quotients `∏_m η(m z)^{r_m}` as q-expansions.

use num_rational::Ratio;

use super::{PowerSeries, Scalar};
use crate::error::{Error, Result};

/// `∏ η(m·z)^{r}` over distinct `(m, r)` factors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EtaQuotient {
    factors: Vec<(u32, i32)>,
}

impl EtaQuotient {
    pub fn new(factors: &[(u32, i32)]) -> Result<Self> {
        let mut sorted = factors.to_vec();
        sorted.sort_unstable();
        for w in sorted.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::Domain(format!("repeated eta factor m = {}", w[0].0)));
            }
        }
        if sorted.iter().any(|&(m, _)| m == 0) {
            return Err(Error::Domain("eta factor m must be at least 1".into()));
        }
        Ok(EtaQuotient { factors: sorted })
    }

    pub fn factors(&self) -> &[(u32, i32)] {
        &self.factors
    }

    /// Leading exponent `h = ∑ m·r / 24`.
    pub fn order_at_infinity(&self) -> Ratio<i64> {
        let s: i64 = self.factors.iter().map(|&(m, r)| m as i64 * r as i64).sum();
        Ratio::new(s, 24)
    }

    /// Weight `∑ r / 2`.
    pub fn weight(&self) -> Ratio<i64> {
        Ratio::new(self.factors.iter().map(|&(_, r)| r as i64).sum(), 2)
    }

    /// `q^h ∏_m ∏_{n≥1} (1 − q^{mn})^{r_m}` truncated at `order`.
    pub fn expand<T: Scalar>(&self, order: usize) -> Result<PowerSeries<T>> {
        let h = self.order_at_infinity();
        if !h.is_integer() || *h.numer() < 0 {
            return Err(Error::UnsupportedQuotient(format!(
                "leading exponent {h} is not a non-negative integer"
            )));
        }
        let h = *h.numer() as usize;
        let mut out = PowerSeries::<T>::zero(order);
        if h > order {
            return Ok(out);
        }
        let len = order - h + 1;
        let mut body = vec![T::zero(); len];
        body[0] = T::one();
        for &(m, r) in &self.factors {
            let terms = pentagonal_terms(m as usize, len - 1);
            for _ in 0..r.unsigned_abs() {
                if r > 0 {
                    mul_sparse(&mut body, &terms);
                } else {
                    div_sparse(&mut body, &terms);
                }
            }
        }
        for (i, x) in body.into_iter().enumerate() {
            out.coeffs[h + i] = x;
        }
        Ok(out)
    }
}

/// Euler's pentagonal expansion of `∏_{n≥1}(1 − q^{m n})`: nonzero terms
/// `(−1)^k q^{m·k(3k−1)/2}` for k = ±1, ±2, … up to degree `max_degree`.
fn pentagonal_terms(m: usize, max_degree: usize) -> Vec<(usize, bool)> {
    let mut terms = Vec::new();
    for k in 1usize.. {
        let lo = m * (k * (3 * k - 1) / 2);
        if lo > max_degree {
            break;
        }
        let negative = k % 2 == 1;
        terms.push((lo, negative));
        let hi = m * (k * (3 * k + 1) / 2);
        if hi <= max_degree {
            terms.push((hi, negative));
        }
    }
    terms
}

/// In-place multiply by `1 + ∑ ±q^d`.
fn mul_sparse<T: Scalar>(a: &mut [T], terms: &[(usize, bool)]) {
    for i in (1..a.len()).rev() {
        let mut acc = a[i].clone();
        for &(d, negative) in terms {
            if d > i {
                break;
            }
            let src = a[i - d].clone();
            acc = if negative { acc - src } else { acc + src };
        }
        a[i] = acc;
    }
}

/// In-place divide by `1 + ∑ ±q^d`.
fn div_sparse<T: Scalar>(a: &mut [T], terms: &[(usize, bool)]) {
    for i in 1..a.len() {
        let mut acc = a[i].clone();
        for &(d, negative) in terms {
            if d > i {
                break;
            }
            let src = a[i - d].clone();
            acc = if negative { acc + src } else { acc - src };
        }
        a[i] = acc;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    /// Multiplies in each `(1 − q^{mn})` one at a time, `r` times over;
    /// positive `r` only.
    fn brute_force(factors: &[(u32, i32)], h: usize, order: usize) -> Vec<i64> {
        let mut acc = vec![0i64; order + 1];
        acc[0] = 1;
        for &(m, r) in factors {
            let m = m as usize;
            let mut n = 1;
            while m * n <= order {
                let step = m * n;
                for _ in 0..r {
                    let prev = acc.clone();
                    for i in step..=order {
                        acc[i] -= prev[i - step];
                    }
                }
                n += 1;
            }
        }
        let mut out = vec![0i64; order + 1];
        out[h..=order].copy_from_slice(&acc[..=order - h]);
        out
    }

    #[test]
    fn level_11_product() {
        let e = EtaQuotient::new(&[(1, 2), (11, 2)]).unwrap();
        let s: PowerSeries<i64> = e.expand(6).unwrap();
        assert_eq!(s.coeffs(), &[0, 1, -2, -1, 2, 1, 2]);
        assert_eq!(brute_force(&[(1, 2), (11, 2)], 1, 6), s.coeffs());
        let big: PowerSeries<i64> = e.expand(300).unwrap();
        assert_eq!(brute_force(&[(1, 2), (11, 2)], 1, 300), big.coeffs());
    }

    #[test]
    fn level_36_product_is_lacunary() {
        let e = EtaQuotient::new(&[(6, 4)]).unwrap();
        let s: PowerSeries<BigInt> = e.expand(200).unwrap();
        let brute = brute_force(&[(6, 4)], 1, 200);
        for (n, x) in s.coeffs().iter().enumerate() {
            assert_eq!(*x, BigInt::from(brute[n]));
            if n % 6 != 1 {
                assert_eq!(brute[n], 0, "n = {n}");
            }
        }
        assert_eq!(brute[1], 1);
        assert_eq!(brute[7], -4);
    }

    #[test]
    fn empty_quotient_is_one() {
        let e = EtaQuotient::new(&[]).unwrap();
        let s: PowerSeries<BigRational> = e.expand(5).unwrap();
        assert_eq!(s, PowerSeries::one(5));
    }

    #[test]
    fn negative_exponents_divide() {
        let e = EtaQuotient::new(&[(1, -1), (2, 2)]).unwrap();
        assert_eq!(e.order_at_infinity(), Ratio::new(3, 24));
        assert!(matches!(e.expand::<i64>(10), Err(Error::UnsupportedQuotient(_))));

        // h = (−1 + 4 + 21)/24 = 1
        let e = EtaQuotient::new(&[(1, -1), (2, 2), (3, 7)]).unwrap();
        let quotient: PowerSeries<i64> = e.expand(40).unwrap();
        let mut body = quotient.coeffs()[1..].to_vec();
        let terms = pentagonal_terms(1, body.len() - 1);
        mul_sparse(&mut body, &terms);

        let mut raw = vec![0i64; 40];
        raw[0] = 1;
        for (m, r) in [(2usize, 2), (3, 7)] {
            for _ in 0..r {
                mul_sparse(&mut raw, &pentagonal_terms(m, 39));
            }
        }
        assert_eq!(body, raw);
        // and against the naive binomial route
        let direct = brute_force(&[(2, 2), (3, 7)], 0, 39);
        assert_eq!(body, direct);
    }

    #[test]
    fn rejects_bad_factors() {
        assert!(EtaQuotient::new(&[(1, 2), (1, 3)]).is_err());
        assert!(EtaQuotient::new(&[(0, 2)]).is_err());
        assert_eq!(EtaQuotient::new(&[(1, 2), (11, 2)]).unwrap().weight(), Ratio::new(2, 1));
    }
}
