//! The three engines on the same prepared series: identical answers,
//! very different amounts of work.

use std::time::Instant;

use phidd::discovery::{brute_force_discord, hotsax_discord, phidd_discord_with, PhiddOptions};
use phidd::generate::{generate_series, GeneratorSpec};
use phidd::parallel::Team;
use phidd::pipeline::{Params, Prepared};

fn main() -> phidd::Result<()> {
    let series = generate_series(&GeneratorSpec::random_walk(8_000, 3))?;
    let team = Team::new(4)?;
    let p = Prepared::build(&series, Params::new(100), &team)?;

    let t = Instant::now();
    let brute = brute_force_discord(&p.matrix)?;
    println!("brute : {brute:?} in {:.2?}", t.elapsed());

    let t = Instant::now();
    let hot = hotsax_discord(&p.matrix, &p.indexes, true)?;
    println!("hotsax: {hot:?} in {:.2?}", t.elapsed());

    let t = Instant::now();
    let phi = phidd_discord_with(&p.matrix, &p.indexes, &team, PhiddOptions::default())?;
    println!("phidd : {phi:?} in {:.2?}", t.elapsed());

    let unpruned = hotsax_discord(&p.matrix, &p.indexes, false)?;
    println!(
        "\nsame answer: {}; hotsax does {:.3}% of brute force's distance calls ({} abandoned early); without pruning: {}",
        (brute.pos, brute.dist) == (hot.pos, hot.dist) && (hot.pos, hot.dist) == (phi.pos, phi.dist),
        100.0 * hot.calls as f64 / brute.calls as f64,
        hot.abandoned,
        unpruned.calls
    );
    Ok(())
}
