//! Growth-rate scan over complete symmetric functions.
//!
//! For each `C^k` on `n` bits the scan decides feasibility at growth
//! `t = k/2` and `t = k/2 - 1`; the expected pattern is feasible at the
//! first and infeasible at the second.

use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use super::decide::{decide_symmetric_support, FeasibilityQuery, RowRule};
use crate::boolfn::csf;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanRow {
    pub k: usize,
    pub n: usize,
    pub t: usize,
    pub feasible: bool,
    pub elapsed_ms: f64,
    pub snf_max_diag_bits: u64,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct ScanReport {
    pub rule: RowRule,
    pub rows: Vec<ScanRow>,
    /// `(k, n)` pairs breaking the pattern.
    pub counterexamples: Vec<(usize, usize)>,
}

impl ScanReport {
    /// CSV with header `k,n,t,feasible,elapsed_ms,snf_max_diag_bits`.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        for r in &self.rows {
            w.serialize(r)?;
        }
        if self.rows.is_empty() {
            w.write_record(["k", "n", "t", "feasible", "elapsed_ms", "snf_max_diag_bits"])?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
        Ok(String::from_utf8(bytes).expect("ascii"))
    }
}

/// Growth exponents tested for `C^k`: `floor(k/2) - 1` (when it exists)
/// and `floor(k/2)`.
pub fn scan_exponents(k: usize) -> Vec<usize> {
    let hi = k / 2;
    if hi == 0 {
        vec![0]
    } else {
        vec![hi - 1, hi]
    }
}

fn scan_pair(k: usize, n: usize, rule: RowRule) -> Result<Vec<ScanRow>> {
    let f = csf(k, n)?;
    let degree = f.degree();
    scan_exponents(k)
        .into_iter()
        .map(|t| {
            let start = Instant::now();
            let forbidden = rule.forbidden(n, t, degree);
            let q = FeasibilityQuery::with_forbidden(f.clone(), &forbidden)?;
            let d = decide_symmetric_support(&q)?;
            Ok(ScanRow {
                k,
                n,
                t,
                feasible: d.feasible,
                elapsed_ms: (start.elapsed().as_secs_f64() * 1e6).round() / 1e3,
                snf_max_diag_bits: d.snf_max_diag_bits,
            })
        })
        .collect()
}

/// Runs every `(k, n)` with `k <= n` in parallel; rows come back ordered by
/// `(k, n, t)`.
pub fn conjecture_scan(ks: &[usize], ns: impl IntoIterator<Item = usize>, rule: RowRule) -> Result<ScanReport> {
    let ns: Vec<usize> = ns.into_iter().collect();
    let pairs: Vec<(usize, usize)> = ks
        .iter()
        .flat_map(|&k| ns.iter().filter(move |&&n| n >= k.max(1)).map(move |&n| (k, n)))
        .collect();
    let mut results: Vec<((usize, usize), Vec<ScanRow>)> = pairs
        .par_iter()
        .map(|&(k, n)| scan_pair(k, n, rule).map(|r| ((k, n), r)))
        .collect::<Result<_>>()?;
    results.sort_by_key(|(key, _)| *key);
    let mut report = ScanReport {
        rule,
        ..Default::default()
    };
    for ((k, n), rows) in results {
        let ok = match rows.as_slice() {
            [lo, hi] => hi.feasible && !lo.feasible,
            [only] => only.feasible,
            _ => false,
        };
        if !ok {
            report.counterexamples.push((k, n));
        }
        report.rows.extend(rows);
    }
    Ok(report)
}
