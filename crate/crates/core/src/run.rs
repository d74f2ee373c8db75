//! End-to-end discovery: load or generate a series, prepare, search, report.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::discovery::{brute_force_discord_in, hotsax_discord, phidd_discord_with, DiscordResult, Engine, PhiddOptions};
use crate::error::{Error, Result};
use crate::generate::{generate_series, GeneratorSpec};
use crate::io::{read_series, SeriesFormat};
use crate::parallel::Team;
use crate::pipeline::{Params, Prepared};
use crate::series::TimeSeries;

/// Where the series comes from.
#[derive(Debug, Clone, PartialEq)]
pub enum Source {
    File { path: PathBuf, format: SeriesFormat },
    Generated(GeneratorSpec),
}

impl Source {
    /// Reads or generates the series. Not part of any timing.
    pub fn load(&self) -> Result<TimeSeries> {
        match self {
            Source::File { path, format } => read_series(path, *format),
            Source::Generated(spec) => generate_series(spec),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            other => Err(Error::param(format!("unknown output format {other:?} (json, csv)"))),
        }
    }
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OutputFormat::Json => "json",
            OutputFormat::Csv => "csv",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub source: Source,
    pub params: Params,
    pub engine: Engine,
    pub threads: usize,
    pub output: OutputFormat,
}

impl RunConfig {
    pub fn new(source: Source, n: usize) -> Self {
        RunConfig {
            source,
            params: Params::new(n),
            engine: Engine::Phidd,
            threads: 1,
            output: OutputFormat::Json,
        }
    }

    /// Checks everything that does not need the series itself.
    pub fn validate(&self) -> Result<()> {
        if self.threads == 0 {
            return Err(Error::param("threads must be at least 1"));
        }
        if let Source::Generated(spec) = &self.source {
            if spec.m == 0 {
                return Err(Error::param("series length m must be at least 1"));
            }
            self.params.validate(spec.m)?;
        }
        Ok(())
    }
}

/// One discovery run, as emitted by `find`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub engine: Engine,
    pub m: usize,
    pub n: usize,
    pub word_len: usize,
    pub alphabet: usize,
    pub threads: usize,
    pub pos: usize,
    pub dist: f64,
    pub calls: u64,
    pub prep_time_s: f64,
    pub search_time_s: f64,
}

impl RunReport {
    pub const CSV_HEADER: &'static str =
        "engine,m,n,word_len,alphabet,threads,pos,dist,calls,prep_time_s,search_time_s";

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    pub fn to_csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{},{}",
            self.engine,
            self.m,
            self.n,
            self.word_len,
            self.alphabet,
            self.threads,
            self.pos,
            self.dist,
            self.calls,
            self.prep_time_s,
            self.search_time_s
        )
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Json => format!("{}\n", self.to_json()),
            OutputFormat::Csv => format!("{}\n{}\n", Self::CSV_HEADER, self.to_csv_row()),
        }
    }
}

/// Runs the preparation stage then `engine` on an in-memory series.
pub fn discover(series: &TimeSeries, params: Params, engine: Engine, threads: usize) -> Result<(DiscordResult, RunReport)> {
    let team = Team::new(threads)?;
    let start = Instant::now();
    let prepared = Prepared::build(series, params, &team)?;
    let prep_time_s = start.elapsed().as_secs_f64();

    let start = Instant::now();
    let result = search(&prepared, engine, &team)?;
    let search_time_s = start.elapsed().as_secs_f64();

    let report = RunReport {
        engine,
        m: series.len(),
        n: params.n,
        word_len: params.word_len,
        alphabet: params.alphabet,
        threads,
        pos: result.pos,
        dist: result.dist,
        calls: result.calls,
        prep_time_s,
        search_time_s,
    };
    Ok((result, report))
}

/// Dispatches a prepared search to one engine.
pub fn search(prepared: &Prepared, engine: Engine, team: &Team) -> Result<DiscordResult> {
    match engine {
        Engine::Brute => brute_force_discord_in(&prepared.matrix, team),
        Engine::Hotsax => hotsax_discord(&prepared.matrix, &prepared.indexes, true),
        Engine::Phidd => phidd_discord_with(&prepared.matrix, &prepared.indexes, team, PhiddOptions::default()),
    }
}

/// Validates the config, loads the series (untimed) and runs discovery.
pub fn run_discovery(config: &RunConfig) -> Result<(DiscordResult, RunReport)> {
    config.validate()?;
    let series = config.source.load()?;
    discover(&series, config.params, config.engine, config.threads)
}
