//! Scalability sweep: thread counts × discord lengths, median-of-repeats
//! timing, speedup `s(k) = t1 / tk` and efficiency `e(k) = s(k) / k`.

use std::fmt::Write as _;

use crate::discovery::Engine;
use crate::error::{Error, Result};
use crate::pipeline::Params;
use crate::run::discover;
use crate::series::TimeSeries;

#[derive(Debug, Clone, PartialEq)]
pub struct BenchConfig {
    pub engine: Engine,
    pub ns: Vec<usize>,
    /// Thread counts; 1 is added when missing since it is the speedup baseline.
    pub threads: Vec<usize>,
    pub repeats: usize,
    /// `n` is overridden per cell.
    pub params: Params,
}

impl BenchConfig {
    pub fn new(ns: Vec<usize>, threads: Vec<usize>) -> Self {
        BenchConfig {
            engine: Engine::Phidd,
            ns,
            threads,
            repeats: 1,
            params: Params::new(0),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub engine: Engine,
    pub m: usize,
    pub n: usize,
    pub threads: usize,
    /// Median of the repeats' preparation + search time.
    pub wall_time_s: f64,
    pub calls: u64,
    pub pos: usize,
    pub dist: f64,
    /// Every repeat's time, in run order.
    pub samples: Vec<f64>,
    pub speedup: f64,
    pub efficiency: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
}

impl BenchReport {
    pub const CSV_HEADER: &'static str = "engine,m,n,threads,wall_time_s,calls,pos,dist,speedup,efficiency";

    pub fn to_csv(&self) -> String {
        let mut out = String::from(Self::CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            writeln!(
                out,
                "{},{},{},{},{},{},{},{},{},{}",
                r.engine, r.m, r.n, r.threads, r.wall_time_s, r.calls, r.pos, r.dist, r.speedup, r.efficiency
            )
            .expect("writing to a String");
        }
        out
    }

    /// The row for discord length `n` and `threads` workers.
    pub fn row(&self, n: usize, threads: usize) -> Option<&BenchRow> {
        self.rows.iter().find(|r| r.n == n && r.threads == threads)
    }
}

/// Median; the mean of the two middle values for even counts.
pub fn median(samples: &[f64]) -> f64 {
    assert!(!samples.is_empty(), "median of nothing");
    let mut v = samples.to_vec();
    v.sort_by(f64::total_cmp);
    let mid = v.len() / 2;
    if v.len() % 2 == 1 {
        v[mid]
    } else {
        (v[mid - 1] + v[mid]) / 2.0
    }
}

/// Runs every (n, threads) cell `repeats` times on `series`.
pub fn run_bench(series: &TimeSeries, config: &BenchConfig) -> Result<BenchReport> {
    if config.repeats == 0 {
        return Err(Error::param("repeats must be at least 1"));
    }
    if config.ns.is_empty() {
        return Err(Error::param("at least one n is required"));
    }
    if config.threads.contains(&0) {
        return Err(Error::param("thread counts must be at least 1"));
    }
    let mut threads = config.threads.clone();
    threads.push(1);
    threads.sort_unstable();
    threads.dedup();
    for &n in &config.ns {
        Params { n, ..config.params }.validate(series.len())?;
    }

    let mut rows = Vec::new();
    for &n in &config.ns {
        let params = Params { n, ..config.params };
        let mut cells: Vec<BenchRow> = Vec::new();
        for &k in &threads {
            let mut samples = Vec::with_capacity(config.repeats);
            let mut last = None;
            for _ in 0..config.repeats {
                let (result, report) = discover(series, params, config.engine, k)?;
                samples.push(report.prep_time_s + report.search_time_s);
                last = Some(result);
            }
            let result = last.expect("repeats >= 1");
            cells.push(BenchRow {
                engine: config.engine,
                m: series.len(),
                n,
                threads: k,
                wall_time_s: median(&samples),
                calls: result.calls,
                pos: result.pos,
                dist: result.dist,
                samples,
                speedup: 0.0,
                efficiency: 0.0,
            });
        }
        let t1 = cells[0].wall_time_s;
        for c in &mut cells {
            c.speedup = speedup(t1, c.wall_time_s);
            c.efficiency = c.speedup / c.threads as f64;
        }
        rows.extend(cells);
    }
    Ok(BenchReport { rows })
}

/// `t1 / tk`, defined as 1 when both times are equal (including zero).
pub fn speedup(t1: f64, tk: f64) -> f64 {
    if t1 == tk {
        1.0
    } else {
        t1 / tk
    }
}
