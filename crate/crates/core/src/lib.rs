//! Exact discord discovery in time series.
//!
//! A discord is the subsequence whose nearest non-overlapping neighbor is
//! farthest away. This crate finds it with three interchangeable engines
//! that share one data model:
//!
//! - [`discovery::brute_force_discord`]: exhaustive O(N²) reference search.
//! - [`discovery::hotsax_discord`]: sequential HOTSAX, ordering the search by
//!   SAX word rarity and pruning with a best-so-far bound.
//! - [`discovery::phidd_discord`]: a two-stage parallel search over the same
//!   structures, with dynamically scheduled loops and a shared bound.
//!
//! The preparation stage ([`pipeline::Prepared`]) z-normalizes every
//! subsequence into a padded, cache-line aligned row-major matrix, reduces
//! the rows to PAA vectors and SAX words, and builds the frequency,
//! candidate and word indexes that order the search.
//!
//! ```
//! use phidd::prelude::*;
//!
//! let series = generate_series(&GeneratorSpec::spike(2_000, 1_200, 7)).unwrap();
//! let team = Team::new(2).unwrap();
//! let prepared = Prepared::build(&series, Params::new(64), &team).unwrap();
//! let result = phidd_discord_with(&prepared.matrix, &prepared.indexes, &team, PhiddOptions::default()).unwrap();
//! assert!(result.covers(1_200, 64));
//! ```

pub mod bench;
pub mod discovery;
pub mod error;
pub mod generate;
pub mod index;
pub mod io;
pub mod parallel;
pub mod pipeline;
pub mod run;
pub mod sax;
pub mod series;
mod simd;

pub use error::{Error, Result};

pub mod prelude {
    pub use crate::bench::{run_bench, BenchConfig, BenchReport};
    pub use crate::discovery::{
        brute_force_discord, count_distance_calls, hotsax_discord, phidd_discord, phidd_discord_with, DiscordResult,
        Engine, PhiddOptions,
    };
    pub use crate::error::{Error, Result};
    pub use crate::generate::{generate_series, Anomaly, GeneratorSpec};
    pub use crate::index::DiscordIndexes;
    pub use crate::io::{read_series, write_series, SeriesFormat};
    pub use crate::parallel::Team;
    pub use crate::pipeline::{Params, Prepared};
    pub use crate::run::{run_discovery, OutputFormat, RunConfig, RunReport, Source};
    pub use crate::sax::Alphabet;
    pub use crate::series::{SubsequenceMatrix, TimeSeries};
}
