//! Two-stage parallel search.
//!
//! Stage one walks the candidate index sequentially and parallelizes each
//! candidate's scan over different-word neighbors. Stage two parallelizes
//! the outer loop over all remaining positions. Both stages share one
//! [`SharedBest`], so stage two starts with the bound stage one found.

use std::sync::atomic::{AtomicBool, Ordering};

use super::{
    bucket_neighbors, check_feasible, scan_neighbors, visit, DiscordResult, Engine, Scan, SharedBest,
};
use crate::error::Result;
use crate::index::DiscordIndexes;
use crate::parallel::Team;
use crate::series::{DistanceBudget, SubsequenceMatrix};

/// Scheduling knobs for the parallel search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PhiddOptions {
    /// Outer iterations (positions) a worker grabs at once in stage two.
    pub outer_chunk: usize,
    /// Neighbor positions a worker grabs at once in stage one's inner loop.
    pub inner_chunk: usize,
    /// `false` disables the best-so-far break and early abandoning.
    pub pruning: bool,
}

impl Default for PhiddOptions {
    fn default() -> Self {
        PhiddOptions {
            outer_chunk: 1,
            inner_chunk: 256,
            pruning: true,
        }
    }
}

/// Inputs shared by both search stages.
pub struct SearchContext<'a> {
    matrix: &'a SubsequenceMatrix,
    indexes: &'a DiscordIndexes,
    team: &'a Team,
    options: PhiddOptions,
}

impl<'a> SearchContext<'a> {
    pub fn new(
        matrix: &'a SubsequenceMatrix,
        indexes: &'a DiscordIndexes,
        team: &'a Team,
        options: PhiddOptions,
    ) -> Result<Self> {
        check_feasible(matrix)?;
        Ok(SearchContext {
            matrix,
            indexes,
            team,
            options,
        })
    }
}

/// What one stage contributed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StageOutcome {
    /// Best `(0-based position, squared distance)` after the stage.
    pub best: Option<(usize, f64)>,
    pub budget: DistanceBudget,
}

/// Parallel search with default scheduling on a fresh team of `threads` workers.
pub fn phidd_discord(matrix: &SubsequenceMatrix, indexes: &DiscordIndexes, threads: usize) -> Result<DiscordResult> {
    let team = Team::new(threads)?;
    phidd_discord_with(matrix, indexes, &team, PhiddOptions::default())
}

pub fn phidd_discord_with(
    matrix: &SubsequenceMatrix,
    indexes: &DiscordIndexes,
    team: &Team,
    options: PhiddOptions,
) -> Result<DiscordResult> {
    let ctx = SearchContext::new(matrix, indexes, team, options)?;
    let shared = SharedBest::new();
    let first = potential_discord_stage(&ctx, &shared);
    let mut result = refine_discord_stage(&ctx, &shared);
    result.calls += first.budget.calls;
    result.abandoned += first.budget.abandoned;
    Ok(result)
}

/// Stage one: nearest-neighbor search for every candidate, in candidate order.
///
/// Same-word neighbors are scanned sequentially; the remaining neighbors are
/// scanned by the whole team with dynamic scheduling. A neighbor closer than
/// the best-so-far raises a shared abort flag that workers honor at their
/// next chunk boundary.
pub fn potential_discord_stage(ctx: &SearchContext<'_>, shared: &SharedBest) -> StageOutcome {
    let matrix = ctx.matrix;
    let words = &ctx.indexes.words;
    let n = matrix.n();
    let rows = matrix.rows();
    let pruning = ctx.options.pruning;
    let mut budget = DistanceBudget::default();

    'candidates: for &i in ctx.indexes.cand.as_slice() {
        if !matrix.has_non_self_match(i) {
            continue;
        }
        let bsf = shared.best_sq();
        let mut min = f64::INFINITY;
        for j in bucket_neighbors(words, n, i) {
            match visit(matrix, i, j, min, bsf, pruning, &mut budget) {
                Some(m) => min = m,
                None => continue 'candidates,
            }
        }

        let h = words.hash_of(i);
        let abort = AtomicBool::new(false);
        let bucket_min = min;
        let states = ctx.team.dynamic_for(
            rows,
            ctx.options.inner_chunk,
            &abort,
            || (bucket_min, DistanceBudget::default()),
            |(min, budget), j| {
                if j.abs_diff(i) < n || words.hash_of(j) == h || abort.load(Ordering::Relaxed) {
                    return;
                }
                match visit(matrix, i, j, *min, bsf, pruning, budget) {
                    Some(m) => *min = m,
                    None => abort.store(true, Ordering::Relaxed),
                }
            },
        );
        for (m, b) in &states {
            min = min.min(*m);
            budget.merge(*b);
        }
        if !abort.load(Ordering::Relaxed) {
            shared.offer(i, min);
        }
    }
    StageOutcome {
        best: shared.get(),
        budget,
    }
}

/// Stage two: every non-candidate position, outer loop dynamically scheduled.
///
/// Returns the final discord (square root applied); `calls` and `abandoned`
/// cover this stage only.
pub fn refine_discord_stage(ctx: &SearchContext<'_>, shared: &SharedBest) -> DiscordResult {
    let matrix = ctx.matrix;
    let words = &ctx.indexes.words;
    let pruning = ctx.options.pruning;
    let is_cand = ctx.indexes.cand.mask(matrix.rows());
    let todo: Vec<usize> = (0..matrix.rows())
        .filter(|&i| !is_cand[i] && matrix.has_non_self_match(i))
        .collect();

    let abort = AtomicBool::new(false);
    let budgets = ctx.team.dynamic_for(
        todo.len(),
        ctx.options.outer_chunk,
        &abort,
        DistanceBudget::default,
        |budget, k| {
            let i = todo[k];
            if let Scan::Nearest(min) = scan_neighbors(matrix, words, i, || shared.best_sq(), pruning, budget) {
                shared.offer(i, min);
            }
        },
    );
    let mut budget = DistanceBudget::default();
    for b in budgets {
        budget.merge(b);
    }
    let best = shared
        .get()
        .expect("a feasible matrix has at least one non-self match");
    DiscordResult::from_best(best, budget, Engine::Phidd)
}
