use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use phidd::bench::{run_bench, BenchConfig};
use phidd::discovery::Engine;
use phidd::generate::{generate_series, Anomaly, GeneratorSpec};
use phidd::io::{encode_series, SeriesFormat, SeriesSummary};
use phidd::pipeline::Params;
use phidd::run::{run_discovery, OutputFormat, RunConfig, Source};
use phidd::sax::{DEFAULT_ALPHABET, DEFAULT_WORD_LEN};
use phidd::series::DEFAULT_VEC_WIDTH;
use phidd::Error;

#[derive(Parser)]
#[command(name = "phidd", version, about = "Exact time-series discord discovery")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Find the discord of a series file or a generated series.
    Find(FindArgs),
    /// Write a synthetic random-walk series.
    Generate(GenerateArgs),
    /// Time a sweep over thread counts and discord lengths.
    Bench(BenchArgs),
}

#[derive(Args)]
struct SourceArgs {
    /// Series file; a random walk is generated when absent.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Series file format: csv or f64le.
    #[arg(long, default_value = "csv")]
    format: SeriesFormat,
    #[command(flatten)]
    generator: GeneratorArgs,
}

#[derive(Args)]
struct GeneratorArgs {
    /// Length of a generated series.
    #[arg(long, default_value_t = 100_000)]
    m: usize,
    /// Planted anomaly: none, spike or shape.
    #[arg(long, default_value = "none")]
    anomaly: Anomaly,
    /// 1-based position of the planted anomaly.
    #[arg(long, default_value_t = 1)]
    anomaly_pos: usize,
    /// Length of a shape anomaly.
    #[arg(long, default_value_t = 64)]
    anomaly_len: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl GeneratorArgs {
    fn spec(&self) -> GeneratorSpec {
        GeneratorSpec {
            m: self.m,
            anomaly: self.anomaly,
            anomaly_pos: self.anomaly_pos,
            anomaly_len: self.anomaly_len,
            seed: self.seed,
        }
    }
}

impl SourceArgs {
    fn source(&self) -> Source {
        match &self.input {
            Some(path) => Source::File {
                path: path.clone(),
                format: self.format,
            },
            None => Source::Generated(self.generator.spec()),
        }
    }
}

#[derive(Args)]
struct SaxArgs {
    #[arg(long, default_value_t = DEFAULT_WORD_LEN)]
    word_len: usize,
    /// Alphabet cardinality.
    #[arg(long, default_value_t = DEFAULT_ALPHABET)]
    alphabet: usize,
    /// Row alignment unit in doubles.
    #[arg(long, default_value_t = DEFAULT_VEC_WIDTH)]
    vec_width: usize,
}

impl SaxArgs {
    fn params(&self, n: usize) -> Params {
        Params {
            n,
            word_len: self.word_len,
            alphabet: self.alphabet,
            vec_width: self.vec_width,
        }
    }
}

#[derive(Args)]
struct FindArgs {
    #[command(flatten)]
    source: SourceArgs,
    /// Discord length.
    #[arg(long)]
    n: usize,
    #[command(flatten)]
    sax: SaxArgs,
    #[arg(long, default_value = "phidd")]
    engine: Engine,
    #[arg(long, env = "THREADS", default_value_t = 1)]
    threads: usize,
    /// Result format: json or csv.
    #[arg(long, default_value = "json")]
    emit: OutputFormat,
    /// Result file; stdout when absent.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct GenerateArgs {
    #[command(flatten)]
    generator: GeneratorArgs,
    #[arg(long, default_value = "csv")]
    format: SeriesFormat,
    /// Series file; stdout when absent.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    #[command(flatten)]
    source: SourceArgs,
    /// Discord lengths, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "128")]
    n: Vec<usize>,
    #[command(flatten)]
    sax: SaxArgs,
    #[arg(long, default_value = "phidd")]
    engine: Engine,
    /// Thread counts, comma separated.
    #[arg(long, env = "THREADS", value_delimiter = ',', default_value = "1,2,4,8")]
    threads: Vec<usize>,
    #[arg(long, default_value_t = 3)]
    repeats: usize,
    /// Report file (csv); stdout when absent.
    #[arg(long)]
    output: Option<PathBuf>,
}

fn emit(output: Option<&PathBuf>, bytes: &[u8]) -> Result<(), Error> {
    match output {
        Some(path) => fs::write(path, bytes)?,
        None => std::io::stdout().write_all(bytes)?,
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Find(args) => {
            let config = RunConfig {
                source: args.source.source(),
                params: args.sax.params(args.n),
                engine: args.engine,
                threads: args.threads,
                output: args.emit,
            };
            let (_, report) = run_discovery(&config)?;
            emit(args.output.as_ref(), report.render(config.output).as_bytes())
        }
        Command::Generate(args) => {
            let series = generate_series(&args.generator.spec())?;
            eprintln!("generated {}", SeriesSummary::of(&series));
            emit(args.output.as_ref(), &encode_series(&series, args.format))
        }
        Command::Bench(args) => {
            let series = args.source.source().load()?;
            eprintln!("loaded {}", SeriesSummary::of(&series));
            let config = BenchConfig {
                engine: args.engine,
                ns: args.n,
                threads: args.threads,
                repeats: args.repeats,
                params: args.sax.params(0),
            };
            let report = run_bench(&series, &config)?;
            emit(args.output.as_ref(), report.to_csv().as_bytes())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            if let Some(hint) = err.hint() {
                eprintln!("hint: {hint}");
            }
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
