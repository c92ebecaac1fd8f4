//! Elliptic curves over ℚ and their Frobenius traces `a_p`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;

use crate::arith::{is_prime, prime_divisors};
use crate::error::{Error, Result};

/// Integral Weierstrass model `y² + a1·xy + a3·y = x³ + a2·x² + a4·x + a6`
/// with its conductor and the traces at the bad primes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EllipticCurve {
    a: [i64; 5],
    conductor: u64,
    bad_ap: BTreeMap<u64, i64>,
}

impl EllipticCurve {
    pub fn new(a: [i64; 5], conductor: u64, bad_ap: BTreeMap<u64, i64>) -> Result<Self> {
        if conductor == 0 {
            return Err(Error::Domain("conductor must be positive".into()));
        }
        let curve = EllipticCurve { a, conductor, bad_ap };
        if curve.discriminant().is_zero() {
            return Err(Error::Domain(format!("model {curve} is singular")));
        }
        let bad: Vec<u64> = curve.bad_ap.keys().copied().collect();
        if bad != prime_divisors(conductor) {
            return Err(Error::Domain(format!(
                "bad-prime traces given for {bad:?}, conductor {conductor} needs {:?}",
                prime_divisors(conductor)
            )));
        }
        if let Some((p, ap)) = curve.bad_ap.iter().find(|(_, ap)| ap.abs() > 1) {
            return Err(Error::Domain(format!(
                "a_{p} = {ap} at a bad prime must lie in {{-1, 0, 1}}"
            )));
        }
        Ok(curve)
    }

    pub fn coefficients(&self) -> [i64; 5] {
        self.a
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn bad_ap(&self) -> &BTreeMap<u64, i64> {
        &self.bad_ap
    }

    fn b_invariants(&self) -> [BigInt; 4] {
        let [a1, a2, a3, a4, a6] = self.a.map(BigInt::from);
        let b2 = &a1 * &a1 + 4 * &a2;
        let b4 = 2 * &a4 + &a1 * &a3;
        let b6 = &a3 * &a3 + 4 * &a6;
        let b8 = &a1 * &a1 * &a6 + 4 * &a2 * &a6 - &a1 * &a3 * &a4 + &a2 * &a3 * &a3 - &a4 * &a4;
        [b2, b4, b6, b8]
    }

    pub fn discriminant(&self) -> BigInt {
        let [b2, b4, b6, b8] = self.b_invariants();
        -&b2 * &b2 * &b8 - 8 * &b4 * &b4 * &b4 - 27 * &b6 * &b6 + 9 * &b2 * &b4 * &b6
    }

    /// `(c4, c6)`; the curve is isomorphic to `y² = x³ − 27·c4·x − 54·c6`
    /// away from 2 and 3.
    pub fn c_invariants(&self) -> (BigInt, BigInt) {
        let [b2, b4, b6, _] = self.b_invariants();
        let c4 = &b2 * &b2 - 24 * &b4;
        let c6 = -&b2 * &b2 * &b2 + 36 * &b2 * &b4 - 216 * &b6;
        (c4, c6)
    }

    /// Stable identifier, used for cache file names.
    pub fn key(&self) -> String {
        let [a1, a2, a3, a4, a6] = self.a;
        format!("N{}_{a1}_{a2}_{a3}_{a4}_{a6}", self.conductor)
    }

    /// Frobenius trace `a_p`.
    pub fn ap(&self, p: u64) -> Result<i64> {
        curve_ap(self, p)
    }
}

impl fmt::Display for EllipticCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a1, a2, a3, a4, a6] = self.a;
        write!(f, "[{a1},{a2},{a3},{a4},{a6}]")
    }
}

/// `a_p = p + 1 − #E(F_p)` at good primes; table lookup at bad ones.
pub fn curve_ap(curve: &EllipticCurve, p: u64) -> Result<i64> {
    if !is_prime(p) {
        return Err(Error::Domain(format!("{p} is not prime")));
    }
    if curve.conductor % p == 0 {
        return curve
            .bad_ap
            .get(&p)
            .copied()
            .ok_or_else(|| Error::MissingData(format!("no stored a_{p} for bad prime {p}")));
    }
    if (curve.discriminant() % BigInt::from(p)).is_zero() {
        return Err(Error::Integrity(format!(
            "model {curve} has bad reduction at {p} but {p} does not divide the conductor"
        )));
    }
    let count = if p <= 3 {
        affine_points_long(curve, p)
    } else {
        let (c4, c6) = curve.c_invariants();
        let a = residue(&(-27 * c4), p);
        let b = residue(&(-54 * c6), p);
        affine_points_short(a, b, p)
    };
    Ok(p as i64 - count as i64)
}

fn residue(x: &BigInt, p: u64) -> u64 {
    let r = x % BigInt::from(p);
    let r: i64 = r.try_into().expect("residue below p fits");
    r.rem_euclid(p as i64) as u64
}

/// Affine points of the long model by exhausting `F_p²` (p = 2, 3).
fn affine_points_long(curve: &EllipticCurve, p: u64) -> u64 {
    let p = p as i64;
    let [a1, a2, a3, a4, a6] = curve.a.map(|x| x.rem_euclid(p));
    let mut count = 0;
    for x in 0..p {
        for y in 0..p {
            let lhs = y * y + a1 * x * y + a3 * y;
            let rhs = x * x * x + a2 * x * x + a4 * x + a6;
            if (lhs - rhs).rem_euclid(p) == 0 {
                count += 1;
            }
        }
    }
    count
}

/// Affine points of `y² = x³ + a·x + b` over `F_p`, `p >= 5`:
/// `p + ∑_x χ(x³ + a·x + b)` with χ read from a quadratic-residue table.
/// The cubic is stepped by finite differences, so the loop is additions only.
fn affine_points_short(a: u64, b: u64, p: u64) -> u64 {
    let chi = quadratic_character_table(p);
    let add = |x: u64, y: u64| {
        let s = x + y;
        if s >= p {
            s - p
        } else {
            s
        }
    };
    let six = 6 % p;
    let mut f = b; // f(x)
    let mut d1 = add(1, a); // f(x+1) − f(x) = 3x² + 3x + 1 + a
    let mut d2 = six; // d1(x+1) − d1(x) = 6x + 6
    let mut sum: i64 = 0;
    for _ in 0..p {
        sum += chi[f as usize] as i64;
        f = add(f, d1);
        d1 = add(d1, d2);
        d2 = add(d2, six);
    }
    (p as i64 + sum) as u64
}

fn quadratic_character_table(p: u64) -> Vec<i8> {
    let mut chi = vec![-1i8; p as usize];
    chi[0] = 0;
    let mut sq = 0u64;
    for x in 1..=(p - 1) / 2 {
        // x² = (x−1)² + 2x − 1
        sq += 2 * x - 1;
        sq %= p;
        chi[sq as usize] = 1;
    }
    chi
}

/// `a_p` for every prime in `primes`, evaluated in parallel; the output
/// order matches the input regardless of thread count.
pub fn ap_table(curve: &EllipticCurve, primes: &[u64]) -> Result<Vec<i64>> {
    primes.par_iter().map(|&p| curve_ap(curve, p)).collect()
}
