use std::collections::BTreeMap;

use crate::arith::sieve_primes;
use crate::error::{Error, Result};

/// Extends prime traces to all coefficients `b(1..=bound)` of a normalized
/// weight-2 eigenform of the given level:
///
/// - `b(1) = 1`, `b(mn) = b(m)·b(n)` for coprime `m, n`;
/// - `b(p^{r+1}) = b(p)·b(p^r) − p·b(p^{r−1})` for `p ∤ N`;
/// - `b(p^r) = b(p)^r` for `p | N`.
pub fn hecke_extend(ap: &BTreeMap<u64, i64>, level: u64, bound: usize) -> Result<Vec<i64>> {
    if bound == 0 {
        return Ok(Vec::new());
    }
    let mut b = vec![0i64; bound + 1];
    b[1] = 1;
    if bound == 1 {
        return Ok(vec![1]);
    }
    let table = sieve_primes(bound as u64)?;
    for n in 2..=bound {
        let p = table.smallest_factor(n as u64).expect("n within sieve") as usize;
        let mut rest = n;
        let mut e = 0;
        while rest % p == 0 {
            rest /= p;
            e += 1;
        }
        b[n] = if rest > 1 {
            mul(b[n / rest], b[rest], n)?
        } else if e == 1 {
            *ap.get(&(p as u64))
                .ok_or_else(|| Error::MissingData(format!("no a_p for prime {p}")))?
        } else if level % p as u64 == 0 {
            mul(b[p], b[n / p], n)?
        } else {
            let t = mul(b[p], b[n / p], n)?;
            let s = mul(p as i64, b[n / (p * p)], n)?;
            t.checked_sub(s).ok_or_else(|| overflow(n))?
        };
    }
    b.remove(0);
    Ok(b)
}

fn mul(x: i64, y: i64, n: usize) -> Result<i64> {
    x.checked_mul(y).ok_or_else(|| overflow(n))
}

fn overflow(n: usize) -> Error {
    Error::Integrity(format!("coefficient b({n}) overflows i64"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn level11_ap() -> BTreeMap<u64, i64> {
        BTreeMap::from([(2, -2), (3, -1), (5, 1), (7, -2), (11, 1), (13, 4)])
    }

    #[test]
    fn level_11_by_hand() {
        let b = hecke_extend(&level11_ap(), 11, 13).unwrap();
        assert_eq!(b[0], 1);
        // b(4) = b(2)² − 2
        assert_eq!(b[3], 2);
        // b(6) = b(2)·b(3)
        assert_eq!(b[5], 2);
        // b(8) = b(2)·b(4) − 2·b(2) = −4 + 4
        assert_eq!(b[7], 0);
        // b(9) = b(3)² − 3
        assert_eq!(b[8], -2);
        assert_eq!(b[10], 1);
        assert_eq!(&b[..6], &[1, -2, -1, 2, 1, 2]);
    }

    #[test]
    fn bad_prime_powers() {
        let ap = BTreeMap::from([(2, 0), (3, -1), (5, 0), (7, -4)]);
        let b = hecke_extend(&ap, 36, 9).unwrap();
        assert_eq!(b[3], 0);
        let ap = BTreeMap::from([(2, -1), (3, 1), (5, 0), (7, 0)]);
        let b = hecke_extend(&ap, 6, 9).unwrap();
        assert_eq!(b[7], -1); // (−1)^3
        assert_eq!(b[8], 1);
    }

    #[test]
    fn missing_prime() {
        let ap = BTreeMap::from([(2, -2)]);
        assert!(matches!(hecke_extend(&ap, 11, 5), Err(Error::MissingData(_))));
        assert_eq!(hecke_extend(&ap, 11, 1).unwrap(), vec![1]);
        assert!(hecke_extend(&ap, 11, 0).unwrap().is_empty());
    }
}
