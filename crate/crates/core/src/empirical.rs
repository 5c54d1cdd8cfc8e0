//! Counting indices of appearance over the first primes.

use std::collections::BTreeMap;
use std::io::Write;

use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;

use crate::density::DensityProfile;
use crate::error::{Error, Result};
use crate::lucas::{index_unchecked, LucasParams};
use crate::numtheory::{build_spf, SpfTable};
use crate::rational::format_ratio;

/// Upper bound for the `n`-th prime: `n (ln n + ln ln n)` for `n >= 6`.
pub fn nth_prime_bound(n: u64) -> u64 {
    if n < 6 {
        return 13;
    }
    let x = n as f64;
    (x * (x.ln() + x.ln().ln())).ceil() as u64
}

/// Sieve limit needed to scan `n_primes` primes, leaving room for `p + 1`.
pub fn sieve_limit_for(n_primes: u64) -> u64 {
    nth_prime_bound(n_primes) + 2
}

/// A sieve together with its first primes.
#[derive(Debug)]
pub struct PrimeSource {
    spf: SpfTable,
    primes: Vec<u64>,
}

impl PrimeSource {
    /// Sieve just far enough for `n_primes` primes.
    pub fn first(n_primes: u64) -> Result<Self> {
        Self::with_limit(n_primes, sieve_limit_for(n_primes))
    }

    /// Sieve up to `limit` and keep the first `n_primes` primes.
    pub fn with_limit(n_primes: u64, limit: u64) -> Result<Self> {
        let spf = build_spf(limit)?;
        let primes: Vec<u64> = spf.primes().take(n_primes as usize).collect();
        if (primes.len() as u64) < n_primes {
            return Err(Error::Resource(format!(
                "sieve limit {limit} holds only {} primes, {n_primes} requested",
                primes.len()
            )));
        }
        if primes.last().is_some_and(|&p| p + 1 > spf.limit()) {
            return Err(Error::Resource(format!("sieve limit {limit} does not cover p + 1 for the last prime")));
        }
        Ok(PrimeSource { spf, primes })
    }

    pub fn spf(&self) -> &SpfTable {
        &self.spf
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }
}

/// Index-of-appearance counts over the first `prime_count` primes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EmpiricalTable {
    pub a1: i64,
    pub a2: i64,
    pub prime_count: u64,
    /// Largest prime scanned.
    pub x: u64,
    pub counts: BTreeMap<u64, u64>,
    pub skipped: Vec<u64>,
}

impl EmpiricalTable {
    pub fn count(&self, t: u64) -> u64 {
        self.counts.get(&t).copied().unwrap_or(0)
    }

    /// `#{p <= x : p does not divide 2 a2 D, index(p) = t} / prime_count`.
    pub fn delta_tilde(&self, t: u64) -> f64 {
        self.count(t) as f64 / self.prime_count as f64
    }

    /// Fraction of scanned primes whose index is divisible by `n`.
    pub fn divisible_fraction(&self, n: u64) -> f64 {
        let hits: u64 = self.counts.iter().filter(|(t, _)| *t % n == 0).map(|(_, c)| c).sum();
        hits as f64 / self.prime_count as f64
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["t", "count", "delta_tilde"]).map_err(io_err)?;
        for (t, c) in &self.counts {
            w.write_record([t.to_string(), c.to_string(), format!("{:.6}", self.delta_tilde(*t))])
                .map_err(io_err)?;
        }
        w.flush().map_err(|e| Error::Resource(e.to_string()))
    }
}

fn io_err(e: csv::Error) -> Error {
    Error::Resource(e.to_string())
}

/// Tally the index of appearance of the first `n_primes` primes of `source`,
/// splitting the work over `workers` threads by contiguous ranges.
pub fn scan(params: &LucasParams, source: &PrimeSource, n_primes: u64, workers: usize) -> Result<EmpiricalTable> {
    if n_primes == 0 || workers == 0 {
        return Err(Error::InvalidArgument("n_primes and workers must be positive".into()));
    }
    let primes = source
        .primes
        .get(..n_primes as usize)
        .ok_or_else(|| Error::Resource(format!("prime source holds fewer than {n_primes} primes")))?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::Resource(e.to_string()))?;
    let chunk = primes.len().div_ceil(workers);
    let parts: Vec<(BTreeMap<u64, u64>, Vec<u64>)> = pool.install(|| {
        primes
            .par_chunks(chunk)
            .map(|range| {
                let mut counts = BTreeMap::new();
                let mut skipped = Vec::new();
                for &p in range {
                    if params.is_excluded(p) {
                        skipped.push(p);
                    } else {
                        *counts.entry(index_unchecked(p, params, &source.spf)).or_insert(0) += 1;
                    }
                }
                (counts, skipped)
            })
            .collect()
    });
    let mut counts = BTreeMap::new();
    let mut skipped = Vec::new();
    for (c, s) in parts {
        for (t, k) in c {
            *counts.entry(t).or_insert(0) += k;
        }
        skipped.extend(s);
    }
    Ok(EmpiricalTable {
        a1: params.a1(),
        a2: params.a2(),
        prime_count: n_primes,
        x: *primes.last().expect("n_primes > 0"),
        counts,
        skipped,
    })
}

/// One row of a theory-versus-scan comparison.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CompareRow {
    pub t: u64,
    #[serde(serialize_with = "ser_ratio")]
    pub delta_coefficient: BigRational,
    pub delta: f64,
    pub delta_tilde: f64,
    /// Relative error in percent; `None` when `delta` is zero.
    pub error_pct: Option<f64>,
    /// Zero density but primes found anyway.
    pub flagged: bool,
}

fn ser_ratio<S: serde::Serializer>(x: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_ratio(x))
}

impl CompareRow {
    pub fn delta_str(&self) -> String {
        format!("{:.6}", self.delta)
    }

    pub fn delta_tilde_str(&self) -> String {
        format!("{:.6}", self.delta_tilde)
    }

    pub fn error_str(&self) -> String {
        match self.error_pct {
            Some(e) => format!("{e:.3}%"),
            None if self.flagged => "inf%".to_string(),
            None => "0.000%".to_string(),
        }
    }
}

/// Rows `t = 1..=t_max` comparing the closed form with a scan.
pub fn compare(profile: &DensityProfile, table: &EmpiricalTable, t_max: u64) -> Vec<CompareRow> {
    (1..=t_max)
        .map(|t| {
            let d = profile.delta(t);
            let delta_tilde = table.delta_tilde(t);
            let zero = d.value == 0.0;
            CompareRow {
                t,
                delta_coefficient: d.coefficient,
                delta: d.value,
                delta_tilde,
                error_pct: (!zero).then(|| (d.value - delta_tilde).abs() / d.value * 100.0),
                flagged: zero && table.count(t) > 0,
            }
        })
        .collect()
}

/// CSV with columns `t,delta,delta_tilde,error_pct`.
pub fn write_compare_csv<W: Write>(rows: &[CompareRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["t", "delta", "delta_tilde", "error_pct"]).map_err(io_err)?;
    for row in rows {
        w.write_record([row.t.to_string(), row.delta_str(), row.delta_tilde_str(), row.error_str()])
            .map_err(io_err)?;
    }
    w.flush().map_err(|e| Error::Resource(e.to_string()))
}
