//! Normalized weight-2 Hecke eigenforms on Γ0(N).
//!
//! Coefficients come from one of two independent backends: expanding an
//! eta product, or counting points on an elliptic curve and extending the
//! traces with the Hecke relations. Catalogue forms have both, and loading
//! cross-checks them on a prefix.

pub mod cache;
pub mod catalogue;
pub mod curve;
pub mod hecke;

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::arith::sieve_primes;
use crate::error::{Error, Result};
use crate::series::PowerSeries;

pub use cache::ApCache;
pub use catalogue::{lookup, CatalogueEntry, CATALOGUE};
pub use curve::{curve_ap, EllipticCurve};
pub use hecke::hecke_extend;

/// Where the coefficients came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    Eta,
    Curve,
    File,
}

/// `g = ∑ b(n) q^n` with `b(1) = 1`, known for `n <= bound`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Eigenform {
    level: u64,
    coeffs: Vec<i64>,
    cm: bool,
    source: Source,
}

impl Eigenform {
    /// `coeffs[i]` is `b(i + 1)`.
    pub fn new(level: u64, coeffs: Vec<i64>, cm: bool, source: Source) -> Result<Self> {
        if level == 0 {
            return Err(Error::Domain("level must be positive".into()));
        }
        match coeffs.first() {
            None => Err(Error::Shape("eigenform needs at least b(1)".into())),
            Some(&b1) if b1 != 1 => Err(Error::Integrity(format!("b(1) = {b1}, form is not normalized"))),
            Some(_) => Ok(Eigenform {
                level,
                coeffs,
                cm,
                source,
            }),
        }
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn bound(&self) -> usize {
        self.coeffs.len()
    }

    /// `b(n)` for `1 <= n <= bound`.
    pub fn b(&self, n: usize) -> Option<i64> {
        n.checked_sub(1).and_then(|i| self.coeffs.get(i).copied())
    }

    pub fn cm(&self) -> bool {
        self.cm
    }

    pub fn source(&self) -> Source {
        self.source
    }

    pub fn truncate(&self, bound: usize) -> Result<Self> {
        if bound == 0 || bound > self.bound() {
            return Err(Error::Shape(format!(
                "cannot truncate a form known to {} at {bound}",
                self.bound()
            )));
        }
        Ok(Eigenform {
            coeffs: self.coeffs[..bound].to_vec(),
            ..self.clone()
        })
    }

    /// Checks `|b(p)| <= 2√p` at every good prime in range.
    pub fn check_deligne(&self) -> Result<()> {
        if self.bound() < 2 {
            return Ok(());
        }
        for &p in sieve_primes(self.bound() as u64)?.primes() {
            if self.level % p == 0 {
                continue;
            }
            let bp = self.coeffs[p as usize - 1] as i128;
            if bp * bp > 4 * p as i128 {
                return Err(Error::Integrity(format!(
                    "level {}: |b({p})| = {} exceeds 2√{p}",
                    self.level,
                    bp.abs()
                )));
            }
        }
        Ok(())
    }

    /// Writes `n,bn` rows from `n = 1`.
    pub fn write_csv<W: Write>(&self, out: W) -> csv::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["n", "bn"])?;
        for (i, b) in self.coeffs.iter().enumerate() {
            w.write_record([(i + 1).to_string(), b.to_string()])?;
        }
        w.flush()?;
        Ok(())
    }

    /// Reads an `n,bn` file; rows must run `n = 1, 2, …` without gaps.
    pub fn read_csv(path: &Path, level: u64) -> Result<Self> {
        let mut reader = csv::Reader::from_path(path).map_err(|e| Error::format(path, e.to_string()))?;
        let headers = reader.headers().map_err(|e| Error::format(path, e.to_string()))?;
        if headers != vec!["n", "bn"] {
            return Err(Error::format(path, "expected header n,bn"));
        }
        let mut coeffs = Vec::new();
        for (i, record) in reader.deserialize::<(usize, i64)>().enumerate() {
            let (n, b) = record.map_err(|e| Error::format(path, format!("row {}: {e}", i + 1)))?;
            if n != i + 1 {
                return Err(Error::format(
                    path,
                    format!("row {}: expected n = {}, found {n}", i + 1, i + 1),
                ));
            }
            coeffs.push(b);
        }
        Eigenform::new(level, coeffs, false, Source::File)
    }
}

/// Which backend supplies the coefficients of a catalogue form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Backend {
    /// Point counting plus Hecke recursion.
    #[default]
    Curve,
    Eta,
}

#[derive(Debug, Clone)]
pub struct LoadOptions {
    pub backend: Backend,
    pub cache: Option<ApCache>,
    /// Catalogue forms are cross-checked against the other backend up to
    /// `min(bound, cross_check)`; zero disables the check.
    pub cross_check: usize,
}

impl Default for LoadOptions {
    fn default() -> Self {
        LoadOptions {
            backend: Backend::Curve,
            cache: None,
            cross_check: 1000,
        }
    }
}

/// What to load.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FormSpec {
    Catalogue(u64),
    File { path: PathBuf, level: u64 },
}

impl FormSpec {
    /// Parses a catalogue key (the level, e.g. `"11"`).
    pub fn catalogue(key: &str) -> Result<Self> {
        let level: u64 = key
            .trim()
            .parse()
            .map_err(|_| Error::Catalogue(format!("`{key}` is not a catalogue level")))?;
        lookup(level)?;
        Ok(FormSpec::Catalogue(level))
    }
}

/// Loads a form with coefficients to `bound`.
pub fn load_eigenform(spec: &FormSpec, bound: usize, opts: &LoadOptions) -> Result<Eigenform> {
    if bound == 0 {
        return Err(Error::Shape("bound must be at least 1".into()));
    }
    match spec {
        FormSpec::File { path, level } => {
            let g = Eigenform::read_csv(path, *level)?;
            if g.bound() < bound {
                return Err(Error::Shape(format!(
                    "{} holds b(n) to n = {}, {bound} needed",
                    path.display(),
                    g.bound()
                )));
            }
            g.truncate(bound)
        }
        FormSpec::Catalogue(level) => {
            let entry = lookup(*level)?;
            let check = bound.min(opts.cross_check);
            let (primary, source) = match opts.backend {
                Backend::Curve => (curve_coefficients(entry, bound, opts.cache.as_ref())?, Source::Curve),
                Backend::Eta => (eta_coefficients(entry, bound)?, Source::Eta),
            };
            if check > 0 {
                let other = match opts.backend {
                    Backend::Curve => eta_coefficients(entry, check)?,
                    Backend::Eta => curve_coefficients(entry, check, opts.cache.as_ref())?,
                };
                if let Some(i) = (0..check).find(|&i| other[i] != primary[i]) {
                    return Err(Error::Integrity(format!(
                        "level {level}: backends disagree at b({}): {} vs {}",
                        i + 1,
                        primary[i],
                        other[i]
                    )));
                }
            }
            Eigenform::new(*level, primary, entry.cm, source)
        }
    }
}

/// `b(1..=bound)` from the eta product of a catalogue entry.
pub fn eta_coefficients(entry: &CatalogueEntry, bound: usize) -> Result<Vec<i64>> {
    let series: PowerSeries<i64> = entry.eta_quotient().expand(bound)?;
    let coeffs = series.into_coeffs();
    if coeffs[0] != 0 {
        return Err(Error::Integrity(format!(
            "level {}: eta product is not a cusp form",
            entry.level
        )));
    }
    Ok(coeffs[1..].to_vec())
}

/// `b(1..=bound)` by point counting (optionally cached) and Hecke recursion.
pub fn curve_coefficients(entry: &CatalogueEntry, bound: usize, cache: Option<&ApCache>) -> Result<Vec<i64>> {
    let curve = entry.elliptic_curve();
    let ap: BTreeMap<u64, i64> = match cache {
        Some(c) => c.fetch(&curve, bound as u64)?,
        None => cache::compute_range(&curve, 1, bound as u64)?.into_iter().collect(),
    };
    hecke_extend(&ap, entry.level, bound)
}
