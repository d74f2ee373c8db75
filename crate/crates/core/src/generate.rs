//! Seeded synthetic series: a uniform-step random walk, optionally with a
//! planted anomaly.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::series::TimeSeries;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Anomaly {
    #[default]
    None,
    /// One sample lifted far above the walk's range.
    Spike,
    /// A window replaced by a fast oscillation the walk never produces.
    Shape,
}

impl FromStr for Anomaly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "none" => Ok(Anomaly::None),
            "spike" => Ok(Anomaly::Spike),
            "shape" => Ok(Anomaly::Shape),
            other => Err(Error::param(format!("unknown anomaly {other:?} (none, spike, shape)"))),
        }
    }
}

impl fmt::Display for Anomaly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Anomaly::None => "none",
            Anomaly::Spike => "spike",
            Anomaly::Shape => "shape",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneratorSpec {
    /// Series length.
    pub m: usize,
    pub anomaly: Anomaly,
    /// 1-based first sample of the anomaly.
    pub anomaly_pos: usize,
    /// Samples replaced by a `Shape` anomaly (a spike is always one sample).
    pub anomaly_len: usize,
    pub seed: u64,
}

impl GeneratorSpec {
    pub fn random_walk(m: usize, seed: u64) -> Self {
        GeneratorSpec {
            m,
            anomaly: Anomaly::None,
            anomaly_pos: 1,
            anomaly_len: 64,
            seed,
        }
    }

    pub fn spike(m: usize, pos: usize, seed: u64) -> Self {
        GeneratorSpec {
            anomaly: Anomaly::Spike,
            anomaly_pos: pos,
            ..Self::random_walk(m, seed)
        }
    }

    pub fn shape(m: usize, pos: usize, len: usize, seed: u64) -> Self {
        GeneratorSpec {
            anomaly: Anomaly::Shape,
            anomaly_pos: pos,
            anomaly_len: len,
            ..Self::random_walk(m, seed)
        }
    }

    /// 1-based inclusive sample range the anomaly occupies.
    pub fn anomaly_span(&self) -> Option<(usize, usize)> {
        match self.anomaly {
            Anomaly::None => None,
            Anomaly::Spike => Some((self.anomaly_pos, self.anomaly_pos)),
            Anomaly::Shape => Some((self.anomaly_pos, self.anomaly_pos + self.anomaly_len - 1)),
        }
    }
}

/// Random walk with steps uniform in [-1, 1), starting at 0.
pub fn random_walk(m: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut level = 0.0;
    (0..m)
        .map(|_| {
            let v = level;
            level += rng.gen_range(-1.0..1.0);
            v
        })
        .collect()
}

pub fn generate_series(spec: &GeneratorSpec) -> Result<TimeSeries> {
    if spec.m == 0 {
        return Err(Error::param("series length m must be at least 1"));
    }
    let mut values = random_walk(spec.m, spec.seed);
    if let Some((first, last)) = spec.anomaly_span() {
        if spec.anomaly == Anomaly::Shape && spec.anomaly_len == 0 {
            return Err(Error::param("anomaly length must be at least 1"));
        }
        if first == 0 || last > spec.m {
            return Err(Error::param(format!(
                "anomaly at {first}..={last} does not fit in a series of {} samples (positions are 1-based)",
                spec.m
            )));
        }
        let (lo, hi) = values
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &v| (a.min(v), b.max(v)));
        let range = hi - lo;
        let window = &mut values[first - 1..last];
        match spec.anomaly {
            Anomaly::Spike => window[0] += 10.0 * range + 10.0,
            Anomaly::Shape => {
                let base = window[0];
                let amp = 4.0 + 0.05 * range;
                for (k, v) in window.iter_mut().enumerate() {
                    let phase = k as f64 * std::f64::consts::TAU / 6.0;
                    *v = base + amp * phase.sin() * (1.0 + 0.5 * (k % 2) as f64);
                }
            }
            Anomaly::None => unreachable!(),
        }
    }
    TimeSeries::new(values)
}
