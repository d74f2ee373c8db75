// Shared helpers for the integration tests (not a test target by itself;
// pulled in with `mod common`).
#![allow(dead_code)]

use phidd::prelude::*;

/// Nearest-neighbor distance (squared) of every subsequence, computed from
/// the raw values with textbook formulas and no shared code.
pub fn naive_nn(values: &[f64], n: usize) -> Vec<Option<f64>> {
    let rows = values.len() - n + 1;
    let z: Vec<Vec<f64>> = (0..rows)
        .map(|i| {
            let w = &values[i..i + n];
            let mu = w.iter().sum::<f64>() / n as f64;
            let var = w.iter().map(|x| (x - mu) * (x - mu)).sum::<f64>() / n as f64;
            let sd = var.sqrt();
            if sd < 1e-12 || w.iter().all(|&x| x == w[0]) {
                vec![0.0; n]
            } else {
                w.iter().map(|x| (x - mu) / sd).collect()
            }
        })
        .collect();
    (0..rows)
        .map(|i| {
            (0..rows)
                .filter(|&j| i.abs_diff(j) >= n)
                .map(|j| z[i].iter().zip(&z[j]).map(|(a, b)| (a - b) * (a - b)).sum::<f64>())
                .reduce(f64::min)
        })
        .collect()
}

/// Oracle discord: the max nn distance and every 1-based position attaining
/// it within `rel` relative tolerance.
pub fn oracle(values: &[f64], n: usize, rel: f64) -> (f64, Vec<usize>) {
    let nn: Vec<Option<f64>> = naive_nn(values, n).into_iter().map(|d| d.map(f64::sqrt)).collect();
    let best = nn.iter().flatten().copied().fold(f64::NEG_INFINITY, f64::max);
    let argmax = nn
        .iter()
        .enumerate()
        .filter_map(|(i, d)| d.filter(|&d| (d - best).abs() <= rel * best.abs().max(f64::MIN_POSITIVE)).map(|_| i + 1))
        .collect();
    (best, argmax)
}

pub fn walk(m: usize, seed: u64) -> TimeSeries {
    generate_series(&GeneratorSpec::random_walk(m, seed)).unwrap()
}

pub fn prepare(series: &TimeSeries, n: usize) -> Prepared {
    Prepared::build(series, Params::new(n), &Team::single()).unwrap()
}

pub fn rel_close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
}
