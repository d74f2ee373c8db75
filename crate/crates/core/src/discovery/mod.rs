//! Discord search engines.
//!
//! All three engines return the same answer: the subsequence whose nearest
//! non-self match is farthest away, with ties going to the smallest position.
//! Internally every comparison is done on squared distances; the square root
//! is taken once when the result is assembled.

mod brute;
mod hotsax;
mod phidd;
mod shared;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use brute::{brute_force_discord, brute_force_discord_in, brute_force_nearest_neighbors};
pub use hotsax::hotsax_discord;
pub use phidd::{
    phidd_discord, phidd_discord_with, potential_discord_stage, refine_discord_stage, PhiddOptions, SearchContext,
    StageOutcome,
};
pub use shared::SharedBest;

use crate::error::{Error, Result};
use crate::index::WordIndex;
use crate::series::{squared_distance_early_abandon, DistanceBudget, SubsequenceMatrix};

/// Which search produced a result.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    Brute,
    Hotsax,
    Phidd,
}

impl Engine {
    pub const ALL: [Engine; 3] = [Engine::Brute, Engine::Hotsax, Engine::Phidd];

    pub fn as_str(self) -> &'static str {
        match self {
            Engine::Brute => "brute",
            Engine::Hotsax => "hotsax",
            Engine::Phidd => "phidd",
        }
    }
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Engine {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "brute" => Ok(Engine::Brute),
            "hotsax" => Ok(Engine::Hotsax),
            "phidd" => Ok(Engine::Phidd),
            other => Err(Error::param(format!("unknown engine {other:?} (brute, hotsax, phidd)"))),
        }
    }
}

/// The discord found by an engine.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiscordResult {
    /// 1-based start of the discord in the series.
    pub pos: usize,
    /// Euclidean distance from the discord to its nearest non-self match.
    pub dist: f64,
    /// Distance evaluations started, abandoned ones included.
    pub calls: u64,
    /// Evaluations cut short by early abandoning.
    pub abandoned: u64,
    pub engine: Engine,
}

impl DiscordResult {
    /// 0-based row of the discord in the subsequence matrix.
    pub fn index(&self) -> usize {
        self.pos - 1
    }

    /// Whether the discord window `[pos, pos + n)` (1-based) covers 1-based sample `p`.
    pub fn covers(&self, p: usize, n: usize) -> bool {
        self.pos <= p && p < self.pos + n
    }

    fn from_best(best: (usize, f64), budget: DistanceBudget, engine: Engine) -> Self {
        DiscordResult {
            pos: best.0 + 1,
            dist: best.1.sqrt(),
            calls: budget.calls,
            abandoned: budget.abandoned,
            engine,
        }
    }
}

/// Exact number of distance evaluations the engine started.
pub fn count_distance_calls(result: &DiscordResult) -> u64 {
    result.calls
}

fn check_feasible(matrix: &SubsequenceMatrix) -> Result<()> {
    if matrix.is_feasible() {
        Ok(())
    } else {
        Err(Error::Infeasible(format!(
            "{} subsequences of length {} leave no non-self match (need more than n subsequences)",
            matrix.rows(),
            matrix.n()
        )))
    }
}

/// Result of scanning the neighbors of one subsequence.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) enum Scan {
    /// A neighbor closer than the best-so-far was found.
    Discarded,
    /// The scan finished; squared distance to the nearest neighbor seen.
    Nearest(f64),
}

/// Distance between rows `i` and `j`, abandoned once above `min`.
///
/// Returns the updated running minimum, or `None` when `d < bsf` proves
/// `i` cannot be the discord.
#[inline(always)]
pub(crate) fn visit(
    matrix: &SubsequenceMatrix,
    i: usize,
    j: usize,
    min: f64,
    bsf: f64,
    pruning: bool,
    budget: &mut DistanceBudget,
) -> Option<f64> {
    debug_assert!(i.abs_diff(j) >= matrix.n(), "self match {i} vs {j}");
    let threshold = if pruning { min } else { f64::INFINITY };
    match squared_distance_early_abandon(matrix.row(i), matrix.row(j), threshold, budget) {
        // d > min >= bsf: cannot lower min, cannot trigger the break
        None => Some(min),
        Some(d) if pruning && d < bsf => None,
        Some(d) => Some(min.min(d)),
    }
}

/// Same-word neighbors of `i` that are non-self matches, ascending.
#[inline]
pub(crate) fn bucket_neighbors<'a>(
    words: &'a WordIndex,
    n: usize,
    i: usize,
) -> impl Iterator<Item = usize> + 'a {
    words
        .bucket_of(i)
        .iter()
        .map(|&j| j as usize)
        .filter(move |&j| j.abs_diff(i) >= n)
}

/// Non-self matches of `i` carrying a different word, ascending.
#[inline]
pub(crate) fn other_neighbors<'a>(
    words: &'a WordIndex,
    rows: usize,
    n: usize,
    i: usize,
) -> impl Iterator<Item = usize> + 'a {
    let h = words.hash_of(i);
    let left = 0..(i + 1).saturating_sub(n);
    let right = (i + n).min(rows)..rows;
    left.chain(right).filter(move |&j| words.hash_of(j) != h)
}

/// Bucket-then-rest nearest neighbor scan with the best-so-far break.
///
/// `bsf` is re-read before every comparison so a shared value can rise
/// while the scan runs.
pub(crate) fn scan_neighbors(
    matrix: &SubsequenceMatrix,
    words: &WordIndex,
    i: usize,
    bsf: impl Fn() -> f64,
    pruning: bool,
    budget: &mut DistanceBudget,
) -> Scan {
    let n = matrix.n();
    let mut min = f64::INFINITY;
    for j in bucket_neighbors(words, n, i).chain(other_neighbors(words, matrix.rows(), n, i)) {
        match visit(matrix, i, j, min, bsf(), pruning, budget) {
            Some(m) => min = m,
            None => return Scan::Discarded,
        }
    }
    Scan::Nearest(min)
}
