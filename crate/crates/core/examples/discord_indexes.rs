//! Frequency, candidate and word indexes over the SAX words.
//!
//! The rarest words come first in the search order; the word index groups
//! positions sharing a word so their distances are tried first.

use phidd::generate::{generate_series, GeneratorSpec};
use phidd::parallel::Team;
use phidd::pipeline::{Params, Prepared};

fn main() -> phidd::Result<()> {
    let series = generate_series(&GeneratorSpec::shape(5_000, 3_100, 40, 17))?;
    let team = Team::new(2)?;
    let p = Prepared::build(&series, Params::new(64), &team)?;
    let idx = &p.indexes;

    let used = idx.words.buckets().filter(|b| !b.is_empty()).count();
    println!("{} positions, {used} distinct words out of {}", p.matrix.rows(), idx.words.dict_size());

    let mut largest: Vec<(usize, u32)> = idx.words.buckets().enumerate().map(|(h, b)| (b.len(), h as u32 + 1)).collect();
    largest.sort_unstable_by(|a, b| b.cmp(a));
    for (len, h) in largest.iter().take(3) {
        println!("  word {:?} (hash {h}) occurs {len} times", p.words.word(*h as usize));
    }

    let cand = idx.cand.as_slice();
    let f = idx.freq.as_slice()[cand[0]];
    println!("{} candidates with frequency {f}; first few (1-based): {:?}", cand.len(), cand.iter().take(8).map(|c| c + 1).collect::<Vec<_>>());
    println!("the shape anomaly starts at 3100");
    Ok(())
}
