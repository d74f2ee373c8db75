//! Plants a spike in a long random walk and checks that every engine lands
//! on it.
//!
//!     cargo run --release --example planted_anomaly -- 100000 128

use std::time::Instant;

use phidd::prelude::*;
use phidd::run::search;

fn main() -> Result<()> {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<usize>().expect("numeric argument"));
    let m = args.next().unwrap_or(20_000);
    let n = args.next().unwrap_or(128);
    let p = m * 3 / 5;

    let series = generate_series(&GeneratorSpec::spike(m, p, 11))?;
    let team = Team::new(1)?;
    let prepared = Prepared::build(&series, Params::new(n), &team)?;
    println!("spike at {p}, m = {m}, n = {n}");
    for engine in Engine::ALL {
        let start = Instant::now();
        let r = search(&prepared, engine, &team)?;
        println!(
            "{:>6}: pos {:>6}  dist {:.6}  calls {:>12}  covers spike: {}  ({:.2?})",
            engine.as_str(),
            r.pos,
            r.dist,
            r.calls,
            r.covers(p, n),
            start.elapsed()
        );
    }
    Ok(())
}
