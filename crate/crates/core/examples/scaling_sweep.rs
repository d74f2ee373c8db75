//! Thread-count sweep with median timing, speedup and efficiency.
//!
//!     cargo run --release --example scaling_sweep -- 100000 128

use phidd::bench::{run_bench, BenchConfig};
use phidd::generate::{generate_series, GeneratorSpec};

fn main() -> phidd::Result<()> {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<usize>().expect("numeric argument"));
    let m = args.next().unwrap_or(30_000);
    let n = args.next().unwrap_or(128);
    let series = generate_series(&GeneratorSpec::spike(m, m / 2, 9))?;
    let cores = std::thread::available_parallelism().map_or(1, |c| c.get());
    let threads: Vec<usize> = [1, 2, 4, 8, 16].into_iter().filter(|&k| k <= cores.max(2)).collect();
    let config = BenchConfig {
        repeats: 3,
        ..BenchConfig::new(vec![n], threads)
    };
    let report = run_bench(&series, &config)?;
    print!("{}", report.to_csv());
    eprintln!("({cores} hardware threads available)");
    Ok(())
}
