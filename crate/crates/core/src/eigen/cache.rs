//! On-disk `a_p` tables: one CSV per curve (`p,ap`, every prime from 2 up
//! to the largest cached prime). A request for a larger bound computes only
//! the missing primes and rewrites the file.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use crate::arith::sieve_primes;
use crate::error::{Error, Result};

use super::curve::{ap_table, EllipticCurve};

#[derive(Debug, Clone)]
pub struct ApCache {
    dir: PathBuf,
}

impl ApCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        ApCache { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, curve: &EllipticCurve) -> PathBuf {
        self.dir.join(format!("ap_{}.csv", curve.key()))
    }

    /// `a_p` for all primes `p <= bound`, reusing and extending the cache file.
    pub fn fetch(&self, curve: &EllipticCurve, bound: u64) -> Result<BTreeMap<u64, i64>> {
        let path = self.path_for(curve);
        let mut entries = if path.exists() { read_ap_csv(&path)? } else { Vec::new() };
        let cached_to = entries.last().map_or(1, |&(p, _)| p);
        if cached_to < bound {
            entries.extend(compute_range(curve, cached_to, bound)?);
            fs::create_dir_all(&self.dir).map_err(|e| Error::io(&self.dir, e))?;
            write_ap_csv(&path, &entries)?;
        }
        Ok(entries.into_iter().take_while(|&(p, _)| p <= bound).collect())
    }
}

/// `a_p` for primes in `(after, bound]`, without any cache.
pub fn compute_range(curve: &EllipticCurve, after: u64, bound: u64) -> Result<Vec<(u64, i64)>> {
    if bound < 2 {
        return Ok(Vec::new());
    }
    let table = sieve_primes(bound)?;
    let primes: Vec<u64> = table.primes().iter().copied().filter(|&p| p > after).collect();
    let aps = ap_table(curve, &primes)?;
    Ok(primes.into_iter().zip(aps).collect())
}

pub fn read_ap_csv(path: &Path) -> Result<Vec<(u64, i64)>> {
    let mut reader = csv::Reader::from_path(path).map_err(|e| Error::format(path, e.to_string()))?;
    let headers = reader.headers().map_err(|e| Error::format(path, e.to_string()))?;
    if headers != vec!["p", "ap"] {
        return Err(Error::format(path, "expected header p,ap"));
    }
    let mut entries = Vec::new();
    for (i, record) in reader.deserialize::<(u64, i64)>().enumerate() {
        let row = record.map_err(|e| Error::format(path, format!("row {}: {e}", i + 1)))?;
        entries.push(row);
    }
    if let Some(&(last, _)) = entries.last() {
        let expected = sieve_primes(last.max(2))?;
        let got: Vec<u64> = entries.iter().map(|&(p, _)| p).collect();
        if got != expected.primes() {
            return Err(Error::format(
                path,
                "primes are not every prime from 2 upward in ascending order",
            ));
        }
    }
    Ok(entries)
}

pub fn write_ap_csv(path: &Path, entries: &[(u64, i64)]) -> Result<()> {
    let tmp = path.with_extension("csv.tmp");
    {
        let file = fs::File::create(&tmp).map_err(|e| Error::io(&tmp, e))?;
        let mut w = csv::Writer::from_writer(std::io::BufWriter::new(file));
        w.write_record(["p", "ap"])
            .map_err(|e| Error::format(&tmp, e.to_string()))?;
        for (p, ap) in entries {
            w.write_record([p.to_string(), ap.to_string()])
                .map_err(|e| Error::format(&tmp, e.to_string()))?;
        }
        let mut inner = w.into_inner().map_err(|e| Error::format(&tmp, e.to_string()))?;
        inner.flush().map_err(|e| Error::io(&tmp, e))?;
    }
    fs::rename(&tmp, path).map_err(|e| Error::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eigen::catalogue::lookup;

    #[test]
    fn fetch_creates_and_extends() {
        let dir = tempfile::tempdir().unwrap();
        let cache = ApCache::new(dir.path());
        let curve = lookup(11).unwrap().elliptic_curve();
        let small = cache.fetch(&curve, 30).unwrap();
        assert_eq!(small.len(), 10);
        assert_eq!(small[&2], -2);
        assert_eq!(small[&11], 1);
        let text = fs::read_to_string(cache.path_for(&curve)).unwrap();
        assert!(text.starts_with("p,ap\n2,-2\n3,-1\n5,1\n7,-2\n11,1\n"));

        let large = cache.fetch(&curve, 200).unwrap();
        assert_eq!(large.len(), 46);
        let fresh = compute_range(&curve, 1, 200).unwrap();
        assert_eq!(large.into_iter().collect::<Vec<_>>(), fresh);
        // smaller request served from the file
        assert_eq!(cache.fetch(&curve, 30).unwrap(), small);
    }

    #[test]
    fn rejects_gaps() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("ap.csv");
        fs::write(&path, "p,ap\n2,-2\n5,1\n").unwrap();
        assert!(matches!(read_ap_csv(&path), Err(Error::Format { .. })));
        fs::write(&path, "q,ap\n2,-2\n").unwrap();
        assert!(read_ap_csv(&path).is_err());
        fs::write(&path, "p,ap\n").unwrap();
        assert!(read_ap_csv(&path).unwrap().is_empty());
    }
}
