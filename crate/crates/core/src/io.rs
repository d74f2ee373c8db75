//! Series file formats: `csv` (one value per line, optional header) and
//! `f64le` (raw little-endian doubles).

use std::fmt;
use std::fs;
use std::io::Write;
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::series::TimeSeries;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SeriesFormat {
    #[default]
    Csv,
    F64le,
}

impl FromStr for SeriesFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(SeriesFormat::Csv),
            "f64le" => Ok(SeriesFormat::F64le),
            other => Err(Error::param(format!("unknown series format {other:?} (csv, f64le)"))),
        }
    }
}

impl fmt::Display for SeriesFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SeriesFormat::Csv => "csv",
            SeriesFormat::F64le => "f64le",
        })
    }
}

/// Count and range of a loaded series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesSummary {
    pub count: usize,
    pub min: f64,
    pub max: f64,
}

impl SeriesSummary {
    pub fn of(series: &TimeSeries) -> Self {
        let (min, max) = series.min_max();
        SeriesSummary {
            count: series.len(),
            min,
            max,
        }
    }
}

impl fmt::Display for SeriesSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} values in [{}, {}]", self.count, self.min, self.max)
    }
}

pub fn read_series(path: impl AsRef<Path>, format: SeriesFormat) -> Result<TimeSeries> {
    let bytes = fs::read(path)?;
    match format {
        SeriesFormat::Csv => {
            let text = std::str::from_utf8(&bytes).map_err(|e| Error::Parse {
                location: format!("byte {}", e.valid_up_to()),
                message: "input is not valid UTF-8".into(),
            })?;
            parse_csv(text)
        }
        SeriesFormat::F64le => parse_f64le(&bytes),
    }
}

/// One value per line. A first line that does not parse as a number is
/// taken as a header; blank lines are skipped.
pub fn parse_csv(text: &str) -> Result<TimeSeries> {
    let mut values = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let field = line.trim().trim_end_matches(',').trim();
        if field.is_empty() {
            continue;
        }
        match field.parse::<f64>() {
            Ok(v) => values.push(v),
            Err(_) if idx == 0 => {}
            Err(e) => {
                return Err(Error::Parse {
                    location: format!("line {}", idx + 1),
                    message: format!("{field:?}: {e}"),
                })
            }
        }
    }
    TimeSeries::new(values)
}

pub fn parse_f64le(bytes: &[u8]) -> Result<TimeSeries> {
    let whole = bytes.len() - bytes.len() % 8;
    if whole != bytes.len() {
        return Err(Error::Parse {
            location: format!("byte {whole}"),
            message: format!("trailing {} bytes do not form a 64-bit value", bytes.len() - whole),
        });
    }
    let values = bytes
        .chunks_exact(8)
        .map(|c| f64::from_le_bytes(c.try_into().expect("chunk of 8")))
        .collect();
    TimeSeries::new(values)
}

pub fn encode_series(series: &TimeSeries, format: SeriesFormat) -> Vec<u8> {
    match format {
        SeriesFormat::Csv => {
            let mut out = String::with_capacity(series.len() * 20);
            for v in series.values() {
                // Display for f64 prints the shortest round-tripping form
                out.push_str(&v.to_string());
                out.push('\n');
            }
            out.into_bytes()
        }
        SeriesFormat::F64le => series.values().iter().flat_map(|v| v.to_le_bytes()).collect(),
    }
}

pub fn write_series(path: impl AsRef<Path>, series: &TimeSeries, format: SeriesFormat) -> Result<()> {
    let mut file = fs::File::create(path)?;
    file.write_all(&encode_series(series, format))?;
    Ok(())
}
