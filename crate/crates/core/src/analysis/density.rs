//! Prime-indexed statistics: Sato-Tate histograms, sign densities of the
//! exponents `c(p) = (1 − b(p))/p`, pair statistics and CM scans.
//!
//! Every ratio is a count divided by `π(xmax)`, the number of all primes up
//! to `xmax`; primes dividing a level are excluded from the counts and
//! listed in the report. Counting runs in parallel over chunks of primes
//! with integer reductions, so reports do not depend on the thread count.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::sieve_primes;
use crate::eigen::Eigenform;
use crate::error::{Error, Result};
use crate::exponents::{PrimeExponent, PrimeExponents};

use super::measure::{normalize_bp, st_measure, Interval};

const CHUNK: usize = 2048;

/// Label attached to every ratio: a finite-`x` estimate of a natural density.
pub const RATIO_KIND: &str = "natural density estimate at xmax";

fn primes_to(xmax: u64) -> Result<Vec<u64>> {
    if xmax < 2 {
        return Ok(Vec::new());
    }
    Ok(sieve_primes(xmax)?.primes().to_vec())
}

fn ratio(count: u64, total: u64) -> f64 {
    if total == 0 {
        0.0
    } else {
        count as f64 / total as f64
    }
}

/// Counts `classify(item)` into `slots` buckets; `None` is dropped.
fn tally<T, F>(items: &[T], slots: usize, classify: F) -> Result<Vec<u64>>
where
    T: Sync,
    F: Fn(&T) -> Result<Option<usize>> + Sync,
{
    items
        .par_chunks(CHUNK)
        .map(|chunk| {
            let mut counts = vec![0u64; slots];
            for item in chunk {
                if let Some(i) = classify(item)? {
                    counts[i] += 1;
                }
            }
            Ok(counts)
        })
        .try_reduce(
            || vec![0u64; slots],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                Ok(a)
            },
        )
}

fn require_bound(g: &Eigenform, xmax: u64) -> Result<()> {
    if (g.bound() as u64) < xmax {
        return Err(Error::Shape(format!(
            "level {}: coefficients known to n = {}, statistics requested to {xmax}",
            g.level(),
            g.bound()
        )));
    }
    Ok(())
}

fn require_exponents(c: &PrimeExponents, xmax: u64) -> Result<PrimeExponents> {
    if c.xmax() < xmax {
        return Err(Error::Shape(format!(
            "level {}: exponents known at primes to {}, requested to {xmax}",
            c.level(),
            c.xmax()
        )));
    }
    Ok(c.up_to(xmax))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Bin {
    pub lo: f64,
    pub hi: f64,
    pub count: u64,
    pub empirical: f64,
    pub expected: f64,
}

/// Histogram of `B(p) = b(p)/(2√p)` over good primes against `μ_ST`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SatoTateReport {
    pub level: u64,
    pub xmax: u64,
    /// Good primes counted.
    pub primes: u64,
    pub excluded: Vec<u64>,
    pub bins: Vec<Bin>,
    /// `max_i |empirical_i − expected_i|`.
    pub discrepancy: f64,
}

/// Equal-width bins over `[−1, 1]`; `B(p) = 1` falls in the last bin.
pub fn st_histogram(g: &Eigenform, xmax: u64, nbins: usize) -> Result<SatoTateReport> {
    if g.cm() {
        return Err(Error::CmForm(g.level()));
    }
    if nbins == 0 {
        return Err(Error::Config("at least one bin is needed".into()));
    }
    require_bound(g, xmax)?;
    let (good, excluded): (Vec<u64>, Vec<u64>) = primes_to(xmax)?.into_iter().partition(|&p| g.level() % p != 0);
    let counts = tally(&good, nbins, |&p| {
        let t: f64 = normalize_bp(g.b(p as usize).expect("bound checked"), p)?;
        let i = ((t + 1.0) / 2.0 * nbins as f64).floor() as usize;
        Ok(Some(i.min(nbins - 1)))
    })?;
    let total = good.len() as u64;
    let edge = |i: usize| {
        if i == nbins {
            1.0
        } else {
            2.0 * i as f64 / nbins as f64 - 1.0
        }
    };
    let bins: Vec<Bin> = counts
        .iter()
        .enumerate()
        .map(|(i, &count)| {
            let (lo, hi) = (edge(i), edge(i + 1));
            Ok(Bin {
                lo,
                hi,
                count,
                empirical: ratio(count, total),
                expected: st_measure(lo, hi)?,
            })
        })
        .collect::<Result<_>>()?;
    let discrepancy = bins
        .iter()
        .map(|b| (b.empirical - b.expected).abs())
        .fold(0.0, f64::max);
    Ok(SatoTateReport {
        level: g.level(),
        xmax,
        primes: total,
        excluded,
        bins,
        discrepancy,
    })
}

/// Sizes of the sign classes. The `≥ 0` and `≤ 0` classes are sums of the
/// strict classes and the zero class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SignCounts {
    pub positive: u64,
    pub negative: u64,
    pub zero: u64,
    pub nonnegative: u64,
    pub nonpositive: u64,
}

impl SignCounts {
    fn new(positive: u64, negative: u64, zero: u64) -> Self {
        SignCounts {
            positive,
            negative,
            zero,
            nonnegative: positive + zero,
            nonpositive: negative + zero,
        }
    }

    pub fn total(&self) -> u64 {
        self.positive + self.negative + self.zero
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SignRatios {
    pub positive: f64,
    pub negative: f64,
    pub zero: f64,
    pub nonnegative: f64,
    pub nonpositive: f64,
}

impl SignRatios {
    fn of(c: &SignCounts, pi: u64) -> Self {
        SignRatios {
            positive: ratio(c.positive, pi),
            negative: ratio(c.negative, pi),
            zero: ratio(c.zero, pi),
            nonnegative: ratio(c.nonnegative, pi),
            nonpositive: ratio(c.nonpositive, pi),
        }
    }
}

/// Sign classes of `c(p)` (one form) or of `c1(p)·c2(p)` (a pair) over the
/// good primes `p <= xmax`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SignDensityReport {
    pub levels: Vec<u64>,
    pub xmax: u64,
    /// `π(xmax)`, the denominator of every ratio.
    pub pi: u64,
    /// Primes up to `xmax` not dividing any level.
    pub pi_good: u64,
    pub excluded: Vec<u64>,
    pub counts: SignCounts,
    pub ratios: SignRatios,
    pub ratio_kind: &'static str,
    /// Pairs only: primes where `c1(p)` and `c2(p)` have different signs.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub disagreement: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub disagreement_ratio: Option<f64>,
}

fn sign_slot(s: i8) -> usize {
    match s {
        1 => 0,
        -1 => 1,
        _ => 2,
    }
}

fn sign(c: &BigRational) -> i8 {
    if c.is_positive() {
        1
    } else if c.is_negative() {
        -1
    } else {
        0
    }
}

pub fn sign_density(c: &PrimeExponents, xmax: u64) -> Result<SignDensityReport> {
    let c = require_exponents(c, xmax)?;
    let counts = tally(c.entries(), 3, |e| Ok(Some(sign_slot(sign(&e.c)))))?;
    let counts = SignCounts::new(counts[0], counts[1], counts[2]);
    let pi = c.prime_count() as u64;
    Ok(SignDensityReport {
        levels: vec![c.level()],
        xmax,
        pi,
        pi_good: c.entries().len() as u64,
        excluded: c.excluded().to_vec(),
        ratios: SignRatios::of(&counts, pi),
        counts,
        ratio_kind: RATIO_KIND,
        disagreement: None,
        disagreement_ratio: None,
    })
}

/// Good primes of both forms, with both entries.
fn join<'a>(a: &'a PrimeExponents, b: &'a PrimeExponents) -> Vec<(&'a PrimeExponent, &'a PrimeExponent)> {
    let (mut i, mut j) = (0, 0);
    let (ea, eb) = (a.entries(), b.entries());
    let mut out = Vec::with_capacity(ea.len().min(eb.len()));
    while i < ea.len() && j < eb.len() {
        match ea[i].p.cmp(&eb[j].p) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push((&ea[i], &eb[j]));
                i += 1;
                j += 1;
            }
        }
    }
    out
}

fn check_pair(l1: u64, cm1: bool, l2: u64, cm2: bool) -> Result<()> {
    if l1 == l2 {
        return Err(Error::DegeneratePair(l1));
    }
    if cm1 {
        return Err(Error::CmForm(l1));
    }
    if cm2 {
        return Err(Error::CmForm(l2));
    }
    Ok(())
}

fn union_excluded(a: &PrimeExponents, b: &PrimeExponents) -> Vec<u64> {
    a.excluded()
        .iter()
        .chain(b.excluded())
        .copied()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect()
}

/// Sign classes of `c1(p)·c2(p)`, plus the count of sign disagreements
/// `sign c1(p) ≠ sign c2(p)`.
pub fn pair_sign_density(c1: &PrimeExponents, c2: &PrimeExponents, xmax: u64) -> Result<SignDensityReport> {
    check_pair(c1.level(), c1.cm(), c2.level(), c2.cm())?;
    let (c1, c2) = (require_exponents(c1, xmax)?, require_exponents(c2, xmax)?);
    let pairs = join(&c1, &c2);
    // slot 3·(s1 + 1) + (s2 + 1) for the sign pair (s1, s2)
    let joint = tally(&pairs, 9, |(a, b)| {
        Ok(Some(3 * (sign(&a.c) + 1) as usize + (sign(&b.c) + 1) as usize))
    })?;
    let at = |s1: i8, s2: i8| joint[3 * (s1 + 1) as usize + (s2 + 1) as usize];
    let positive = at(1, 1) + at(-1, -1);
    let negative = at(1, -1) + at(-1, 1);
    let zero = pairs.len() as u64 - positive - negative;
    let differ = negative + at(0, 1) + at(0, -1) + at(1, 0) + at(-1, 0);
    let counts = SignCounts::new(positive, negative, zero);
    debug_assert_eq!(counts.total(), pairs.len() as u64);
    let pi = c1.prime_count() as u64;
    Ok(SignDensityReport {
        levels: vec![c1.level(), c2.level()],
        xmax,
        pi,
        pi_good: pairs.len() as u64,
        excluded: union_excluded(&c1, &c2),
        ratios: SignRatios::of(&counts, pi),
        counts,
        ratio_kind: RATIO_KIND,
        disagreement: Some(differ),
        disagreement_ratio: Some(ratio(differ, pi)),
    })
}

/// `#{p <= x good for both: B1(p) ∈ I1, B2(p) ∈ I2} / π(x)` next to
/// `μ_ST(I1)·μ_ST(I2)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct JointReport {
    pub levels: Vec<u64>,
    pub xmax: u64,
    pub i1: Interval,
    pub i2: Interval,
    pub pi: u64,
    pub pi_good: u64,
    pub count: u64,
    pub empirical: f64,
    pub expected: f64,
}

pub fn pair_joint_histogram(
    g1: &Eigenform,
    g2: &Eigenform,
    xmax: u64,
    i1: Interval,
    i2: Interval,
) -> Result<JointReport> {
    check_pair(g1.level(), g1.cm(), g2.level(), g2.cm())?;
    require_bound(g1, xmax)?;
    require_bound(g2, xmax)?;
    let primes = primes_to(xmax)?;
    let good: Vec<u64> = primes
        .iter()
        .copied()
        .filter(|&p| g1.level() % p != 0 && g2.level() % p != 0)
        .collect();
    let count = tally(&good, 1, |&p| {
        let t1: f64 = normalize_bp(g1.b(p as usize).expect("bound checked"), p)?;
        let t2: f64 = normalize_bp(g2.b(p as usize).expect("bound checked"), p)?;
        Ok((i1.contains(t1) && i2.contains(t2)).then_some(0))
    })?[0];
    let pi = primes.len() as u64;
    Ok(JointReport {
        levels: vec![g1.level(), g2.level()],
        xmax,
        i1,
        i2,
        pi,
        pi_good: good.len() as u64,
        count,
        empirical: ratio(count, pi),
        expected: i1.measure() * i2.measure(),
    })
}

/// The four sign quadrants `[0,1]×[0,1]`, `[0,1]×[−1,0]`, `[−1,0]×[0,1]`,
/// `[−1,0]×[−1,0]`.
pub fn quadrants(g1: &Eigenform, g2: &Eigenform, xmax: u64) -> Result<Vec<JointReport>> {
    let up = Interval { lo: 0.0, hi: 1.0 };
    let down = Interval { lo: -1.0, hi: 0.0 };
    [(up, up), (up, down), (down, up), (down, down)]
        .into_iter()
        .map(|(i1, i2)| pair_joint_histogram(g1, g2, xmax, i1, i2))
        .collect()
}

/// Good primes with `0 <= B(p) < 1/(2√p)`, i.e. `0 <= b(p) < 1`; for
/// integral coefficients that is `b(p) = 0`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BandReport {
    pub level: u64,
    pub xmax: u64,
    pub pi: u64,
    pub pi_good: u64,
    pub count: u64,
    pub ratio: f64,
}

pub fn boundary_band_count(g: &Eigenform, xmax: u64) -> Result<BandReport> {
    require_bound(g, xmax)?;
    let primes = primes_to(xmax)?;
    let good: Vec<u64> = primes.iter().copied().filter(|&p| g.level() % p != 0).collect();
    let count = tally(&good, 1, |&p| {
        let bp = g.b(p as usize).expect("bound checked");
        Ok((0..1).contains(&bp).then_some(0))
    })?[0];
    let pi = primes.len() as u64;
    Ok(BandReport {
        level: g.level(),
        xmax,
        pi,
        pi_good: good.len() as u64,
        count,
        ratio: ratio(count, pi),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CmPrime {
    pub p: u64,
    pub num: String,
    pub den: String,
}

/// Good primes with `b(p) = 0` for a CM form, each with its exponent
/// `c(p)`, which must equal `1/p`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CmScanReport {
    pub level: u64,
    pub xmax: u64,
    pub pi: u64,
    pub pi_good: u64,
    pub excluded: Vec<u64>,
    pub count: u64,
    pub ratio: f64,
    /// `count / pi_good`.
    pub good_fraction: f64,
    pub primes: Vec<CmPrime>,
}

pub fn cm_value_scan(c: &PrimeExponents, xmax: u64) -> Result<CmScanReport> {
    if !c.cm() {
        return Err(Error::NotCm(c.level()));
    }
    let c = require_exponents(c, xmax)?;
    let mut primes = Vec::new();
    for e in c.entries().iter().filter(|e| e.bp == 0) {
        let expected = BigRational::new(BigInt::from(1), BigInt::from(e.p));
        if e.c != expected {
            return Err(Error::Integrity(format!(
                "level {}: c({}) = {} but b({0}) = 0",
                c.level(),
                e.p,
                e.c
            )));
        }
        primes.push(CmPrime {
            p: e.p,
            num: e.c.numer().to_string(),
            den: e.c.denom().to_string(),
        });
    }
    let count = primes.len() as u64;
    let pi = c.prime_count() as u64;
    let pi_good = c.entries().len() as u64;
    Ok(CmScanReport {
        level: c.level(),
        xmax,
        pi,
        pi_good,
        excluded: c.excluded().to_vec(),
        count,
        ratio: ratio(count, pi),
        good_fraction: ratio(count, pi_good),
        primes,
    })
}

/// How many different values the exponents take at good primes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DistinctReport {
    pub level: u64,
    pub xmax: u64,
    pub positive: u64,
    pub negative: u64,
    pub distinct_positive: u64,
    pub distinct_negative: u64,
}

pub fn distinct_values_count(c: &PrimeExponents, xmax: u64) -> Result<DistinctReport> {
    let c = require_exponents(c, xmax)?;
    let mut pos = BTreeSet::new();
    let mut neg = BTreeSet::new();
    let (mut positive, mut negative) = (0, 0);
    for e in c.entries() {
        match sign(&e.c) {
            1 => {
                positive += 1;
                pos.insert(&e.c);
            }
            -1 => {
                negative += 1;
                neg.insert(&e.c);
            }
            _ => {}
        }
    }
    Ok(DistinctReport {
        level: c.level(),
        xmax,
        positive,
        negative,
        distinct_positive: pos.len() as u64,
        distinct_negative: neg.len() as u64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eigen::{load_eigenform, FormSpec, LoadOptions, Source};

    fn form(level: u64, bound: usize) -> Eigenform {
        load_eigenform(&FormSpec::Catalogue(level), bound, &LoadOptions::default()).unwrap()
    }

    fn exps(g: &Eigenform, xmax: u64) -> PrimeExponents {
        PrimeExponents::from_eigenform(g, xmax).unwrap()
    }

    #[test]
    fn histogram_basics() {
        let g = form(11, 2000);
        let one = st_histogram(&g, 2000, 1).unwrap();
        assert_eq!(one.bins.len(), 1);
        assert_eq!(one.bins[0].empirical, 1.0);
        assert!((one.bins[0].expected - 1.0).abs() < 1e-15);
        assert_eq!(one.excluded, vec![11]);

        let r = st_histogram(&g, 2000, 20).unwrap();
        assert_eq!(r.bins.iter().map(|b| b.count).sum::<u64>(), r.primes);
        assert_eq!(r.primes, 303 - 1);
        assert!((r.bins.iter().map(|b| b.empirical).sum::<f64>() - 1.0).abs() < 1e-12);
        assert_eq!(r.bins[0].lo, -1.0);
        assert_eq!(r.bins[19].hi, 1.0);
        assert!(r.bins.windows(2).all(|w| w[0].hi == w[1].lo));
        assert!(matches!(st_histogram(&form(36, 100), 100, 20), Err(Error::CmForm(36))));
        assert!(st_histogram(&g, 2000, 0).is_err());
        assert!(matches!(st_histogram(&g, 3000, 20), Err(Error::Shape(_))));
    }

    #[test]
    fn histogram_bins_by_hand() {
        // b(2) = −2, b(3) = −1, b(5) = 1, b(7) = −2 at level 11
        let g = form(11, 10);
        let r = st_histogram(&g, 10, 4).unwrap();
        let counts: Vec<u64> = r.bins.iter().map(|b| b.count).collect();
        // B: −0.707, −0.289, 0.224, −0.378
        assert_eq!(counts, vec![1, 2, 1, 0]);
    }

    #[test]
    fn single_form_signs() {
        let g = form(11, 1000);
        let r = sign_density(&exps(&g, 1000), 1000).unwrap();
        assert_eq!(r.pi, 168);
        assert_eq!(r.pi_good, 167);
        assert_eq!(r.counts.total(), r.pi - r.excluded.len() as u64);
        assert_eq!(r.counts.nonnegative, r.counts.positive + r.counts.zero);
        // c(p) > 0 ⟺ b(p) < 1
        let brute = (2..=1000u64)
            .filter(|&p| crate::arith::is_prime(p) && p != 11 && g.b(p as usize).unwrap() < 1)
            .count() as u64;
        assert_eq!(r.counts.positive, brute);

        let empty = sign_density(&exps(&g, 1000), 1).unwrap();
        assert_eq!(empty.counts.total(), 0);
        assert_eq!(empty.ratios.positive, 0.0);
        assert!(matches!(sign_density(&exps(&g, 100), 1000), Err(Error::Shape(_))));
    }

    #[test]
    fn pair_partition() {
        let (g1, g2) = (form(11, 3000), form(14, 3000));
        let r = pair_sign_density(&exps(&g1, 3000), &exps(&g2, 3000), 3000).unwrap();
        assert_eq!(r.excluded, vec![2, 7, 11]);
        assert_eq!(r.counts.total(), r.pi_good);
        assert_eq!(r.pi_good, r.pi - 3);
        assert!(r.disagreement.unwrap() >= r.counts.negative);
        let brute = (2..=3000u64)
            .filter(|&p| crate::arith::is_prime(p) && ![2, 7, 11].contains(&p))
            .filter(|&p| (1 - g1.b(p as usize).unwrap()) * (1 - g2.b(p as usize).unwrap()) < 0)
            .count() as u64;
        assert_eq!(r.counts.negative, brute);

        let same = exps(&g1, 100);
        assert!(matches!(
            pair_sign_density(&same, &same, 100),
            Err(Error::DegeneratePair(11))
        ));
        let cm = exps(&form(36, 100), 100);
        assert!(matches!(pair_sign_density(&same, &cm, 100), Err(Error::CmForm(36))));
    }

    #[test]
    fn joint_trivial_cases() {
        let (g1, g2) = (form(11, 3000), form(14, 3000));
        let full = pair_joint_histogram(&g1, &g2, 3000, Interval::FULL, Interval::FULL).unwrap();
        assert_eq!(full.count, full.pi_good);
        assert!((full.expected - 1.0).abs() < 1e-15);
        assert!(full.empirical > 0.99);
        let point = Interval::new(0.0, 0.0).unwrap();
        let empty = pair_joint_histogram(&g1, &g2, 3000, "0:1".parse().unwrap(), point).unwrap();
        assert_eq!(empty.expected, 0.0);
        // only b2(p) = 0 with b1(p) >= 0 lands there
        let brute = (2..=3000u64)
            .filter(|&p| crate::arith::is_prime(p) && ![2, 7, 11].contains(&p))
            .filter(|&p| g2.b(p as usize) == Some(0) && g1.b(p as usize).unwrap() >= 0)
            .count() as u64;
        assert_eq!(empty.count, brute);
        assert!(empty.empirical < 0.05);
        let q = quadrants(&g1, &g2, 3000).unwrap();
        assert_eq!(q.len(), 4);
        // no b(p) = 0 at good primes here means the quadrants partition
        let zeros = (2..=3000u64)
            .filter(|&p| crate::arith::is_prime(p) && ![2, 7, 11].contains(&p))
            .filter(|&p| g1.b(p as usize) == Some(0) || g2.b(p as usize) == Some(0))
            .count() as u64;
        assert_eq!(q.iter().map(|r| r.count).sum::<u64>(), full.count + zeros);
    }

    #[test]
    fn band_counts() {
        let g = form(11, 1000);
        assert_eq!(boundary_band_count(&g, 2).unwrap().count, 0);
        let r = boundary_band_count(&g, 1000).unwrap();
        let zeros = (2..=1000u64)
            .filter(|&p| crate::arith::is_prime(p) && p != 11 && g.b(p as usize) == Some(0))
            .count() as u64;
        assert_eq!(r.count, zeros);
    }

    #[test]
    fn cm_scan() {
        let g = form(36, 200);
        let r = cm_value_scan(&exps(&g, 200), 200).unwrap();
        assert!(r.primes.iter().any(|e| e.p == 5 && e.num == "1" && e.den == "5"));
        assert!(r.primes.iter().all(|e| e.p != 7));
        // CM by Q(√−3): b(p) = 0 exactly for p ≡ 2 mod 3
        assert!(r.primes.iter().all(|e| e.p % 3 == 2));
        assert_eq!(
            r.count,
            (5..=200u64)
                .filter(|&p| crate::arith::is_prime(p) && p % 3 == 2)
                .count() as u64
        );
        assert!(matches!(
            cm_value_scan(&exps(&form(11, 10), 10), 10),
            Err(Error::NotCm(11))
        ));

        let fake = Eigenform::new(36, vec![1, 0, 0, 0, 0], true, Source::File).unwrap();
        assert_eq!(cm_value_scan(&exps(&fake, 5), 5).unwrap().count, 1);
    }

    #[test]
    fn distinct_values() {
        let g = form(11, 4000);
        let c = exps(&g, 4000);
        let r = distinct_values_count(&c, 100).unwrap();
        assert!(r.distinct_positive >= 10);
        let two = distinct_values_count(&c, 2).unwrap();
        // c(2) = 3/2
        assert_eq!((two.positive, two.negative, two.distinct_positive), (1, 0, 1));
        let mut last = (0, 0);
        let mut x = 2;
        while x <= 4000 {
            let r = distinct_values_count(&c, x).unwrap();
            assert!(r.distinct_positive >= last.0 && r.distinct_negative >= last.1);
            last = (r.distinct_positive, r.distinct_negative);
            x *= 2;
        }
    }
}
