//! Writing and reading series files in both formats.

use phidd::generate::{generate_series, GeneratorSpec};
use phidd::io::{read_series, write_series, SeriesFormat, SeriesSummary};

fn main() -> phidd::Result<()> {
    let dir = std::env::temp_dir().join(format!("phidd-example-{}", std::process::id()));
    std::fs::create_dir_all(&dir)?;
    let series = generate_series(&GeneratorSpec::spike(1_000, 250, 1))?;

    for format in [SeriesFormat::Csv, SeriesFormat::F64le] {
        let path = dir.join(format!("walk.{format}"));
        write_series(&path, &series, format)?;
        let back = read_series(&path, format)?;
        let bytes = std::fs::metadata(&path)?.len();
        println!("{:>5}: {bytes:>6} bytes, {}, bit-identical: {}", format.to_string(), SeriesSummary::of(&back), back == series);
    }

    let bad = dir.join("bad.csv");
    std::fs::write(&bad, "value\n1.5\n2.5\nnot-a-number\n")?;
    match read_series(&bad, SeriesFormat::Csv) {
        Ok(_) => println!("unexpectedly parsed"),
        Err(e) => println!("bad.csv: {e} (exit code {})", e.exit_code()),
    }
    std::fs::remove_dir_all(&dir)?;
    Ok(())
}
