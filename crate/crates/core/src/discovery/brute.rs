use super::{check_feasible, shared::beats, DiscordResult, Engine};
use crate::error::Result;
use crate::parallel::Team;
use crate::series::{squared_distance, squared_distances, DistanceBudget, SubsequenceMatrix};

/// Exhaustive O(N²) search without any pruning; the reference answer.
pub fn brute_force_discord(matrix: &SubsequenceMatrix) -> Result<DiscordResult> {
    brute_force_discord_in(matrix, &Team::single())
}

/// [`brute_force_discord`] with the outer loop split statically over `team`.
pub fn brute_force_discord_in(matrix: &SubsequenceMatrix, team: &Team) -> Result<DiscordResult> {
    check_feasible(matrix)?;
    let (nn, calls) = nearest_neighbors(matrix, team);
    let mut best = None;
    for (i, d) in nn.into_iter().enumerate() {
        if let Some(d) = d {
            if beats(d, i, best) {
                best = Some((i, d));
            }
        }
    }
    let best = best.expect("a feasible matrix has at least one non-self match");
    let budget = DistanceBudget { calls, abandoned: 0 };
    Ok(DiscordResult::from_best(best, budget, Engine::Brute))
}

/// Squared distance from every subsequence to its nearest non-self match
/// (`None` when it has none).
pub fn brute_force_nearest_neighbors(matrix: &SubsequenceMatrix) -> Vec<Option<f64>> {
    nearest_neighbors(matrix, &Team::single()).0
}

/// Outer rows sharing one sweep over the neighbors; sized so the block stays
/// in L2 while neighbor rows stream past.
const BLOCK_ROWS: usize = 64;

fn nearest_neighbors(matrix: &SubsequenceMatrix, team: &Team) -> (Vec<Option<f64>>, u64) {
    let parts = team.static_ranges(matrix.rows(), |range| {
        let mut nn = vec![f64::INFINITY; range.len()];
        let mut calls = 0u64;
        let mut start = range.start;
        while start < range.end {
            let end = (start + BLOCK_ROWS).min(range.end);
            calls += sweep_block(matrix, start..end, &mut nn[start - range.start..end - range.start]);
            start = end;
        }
        let nn: Vec<Option<f64>> = range
            .zip(nn)
            .map(|(i, d)| matrix.has_non_self_match(i).then_some(d))
            .collect();
        (nn, calls)
    });
    let calls = parts.iter().map(|p| p.1).sum();
    (parts.into_iter().flat_map(|p| p.0).collect(), calls)
}

/// Outer rows evaluated together against each neighbor row.
const TILE: usize = 16;

/// Folds every non-self neighbor `j` into the running minima of rows
/// `block`. Returns the number of distances evaluated.
fn sweep_block(matrix: &SubsequenceMatrix, block: std::ops::Range<usize>, nn: &mut [f64]) -> u64 {
    let n = matrix.n();
    let mut calls = 0u64;
    for j in 0..matrix.rows() {
        let b = matrix.row(j);
        let mut i = block.start;
        while i < block.end {
            let full_tile = i + TILE <= block.end && (i + TILE - 1 + n <= j || j + n <= i);
            if full_tile {
                let rows: [&[f64]; TILE] = std::array::from_fn(|k| matrix.row(i + k));
                let d = squared_distances(&rows, b);
                for (slot, d) in nn[i - block.start..][..TILE].iter_mut().zip(d) {
                    *slot = slot.min(d);
                }
                calls += TILE as u64;
                i += TILE;
            } else {
                if i.abs_diff(j) >= n {
                    let slot = &mut nn[i - block.start];
                    *slot = slot.min(squared_distance(matrix.row(i), b));
                    calls += 1;
                }
                i += 1;
            }
        }
    }
    calls
}
