use super::{check_feasible, scan_neighbors, shared::beats, DiscordResult, Engine, Scan};
use crate::error::Result;
use crate::index::DiscordIndexes;
use crate::series::{DistanceBudget, SubsequenceMatrix};

/// Sequential HOTSAX search.
///
/// Outer order: candidate positions (rarest words) first, then every other
/// position ascending. Inner order: same-word positions, then the rest
/// ascending. A neighbor closer than the best-so-far ends the inner loop.
/// `pruning = false` disables both the break and early abandoning.
pub fn hotsax_discord(matrix: &SubsequenceMatrix, indexes: &DiscordIndexes, pruning: bool) -> Result<DiscordResult> {
    check_feasible(matrix)?;
    let rows = matrix.rows();
    let is_cand = indexes.cand.mask(rows);
    let outer = indexes
        .cand
        .as_slice()
        .iter()
        .copied()
        .chain((0..rows).filter(|&i| !is_cand[i]));

    let mut budget = DistanceBudget::default();
    let mut best: Option<(usize, f64)> = None;
    for i in outer {
        if !matrix.has_non_self_match(i) {
            continue;
        }
        let bsf = best.map_or(0.0, |b| b.1);
        if let Scan::Nearest(min) = scan_neighbors(matrix, &indexes.words, i, || bsf, pruning, &mut budget) {
            if beats(min, i, best) {
                best = Some((i, min));
            }
        }
    }
    let best = best.expect("a feasible matrix has at least one non-self match");
    Ok(DiscordResult::from_best(best, budget, Engine::Hotsax))
}
