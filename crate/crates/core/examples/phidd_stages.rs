//! The two parallel stages run one at a time, with the shared best-so-far
//! recording every improvement.

use phidd::discovery::{potential_discord_stage, refine_discord_stage, PhiddOptions, SearchContext, SharedBest};
use phidd::generate::{generate_series, GeneratorSpec};
use phidd::parallel::Team;
use phidd::pipeline::{Params, Prepared};

fn main() -> phidd::Result<()> {
    let series = generate_series(&GeneratorSpec::shape(20_000, 12_345, 60, 5))?;
    let team = Team::new(4)?;
    let p = Prepared::build(&series, Params::new(128), &team)?;
    let options = PhiddOptions {
        inner_chunk: 512,
        ..PhiddOptions::default()
    };
    let ctx = SearchContext::new(&p.matrix, &p.indexes, &team, options)?;
    let shared = SharedBest::with_history();

    let first = potential_discord_stage(&ctx, &shared);
    let after_first = shared.history().len();
    println!(
        "stage one: {} candidates, best {:?}, {} calls",
        p.indexes.cand.len(),
        first.best.map(|(i, sq)| (i + 1, sq.sqrt())),
        first.budget.calls
    );

    let result = refine_discord_stage(&ctx, &shared);
    println!("stage two: discord at {} (dist {:.6}), {} calls", result.pos, result.dist, result.calls);
    for (k, (i, sq)) in shared.history().iter().enumerate() {
        let stage = if k < after_first { 1 } else { 2 };
        println!("  update {k:>2} (stage {stage}): pos {:>6}  dist {:.6}", i + 1, sq.sqrt());
    }
    println!("anomaly window: 12345..{}", 12_345 + 59);
    Ok(())
}
