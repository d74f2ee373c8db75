//! Preparation stage: everything built before the search starts.

use crate::error::{Error, Result};
use crate::index::DiscordIndexes;
use crate::parallel::Team;
use crate::sax::{self, Alphabet, PaaMatrix, SaxMatrix, WordMatrix, DEFAULT_ALPHABET, DEFAULT_WORD_LEN};
use crate::series::{SubsequenceMatrix, TimeSeries, DEFAULT_VEC_WIDTH};

/// Discord length and symbolic-representation parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Params {
    /// Discord (subsequence) length.
    pub n: usize,
    pub word_len: usize,
    /// Alphabet cardinality `|A|`.
    pub alphabet: usize,
    pub vec_width: usize,
}

impl Params {
    /// Defaults for everything but the discord length.
    pub fn new(n: usize) -> Self {
        Params {
            n,
            word_len: DEFAULT_WORD_LEN,
            alphabet: DEFAULT_ALPHABET,
            vec_width: DEFAULT_VEC_WIDTH,
        }
    }

    /// Checks every parameter against a series of length `m`.
    pub fn validate(&self, m: usize) -> Result<()> {
        if self.n == 0 {
            return Err(Error::param("n must be at least 1"));
        }
        if self.n > m {
            return Err(Error::param(format!("n={} exceeds series length m={m}", self.n)));
        }
        if self.word_len == 0 || self.word_len > self.n {
            return Err(Error::param(format!(
                "word length {} must be in 1..=n (n={})",
                self.word_len, self.n
            )));
        }
        if self.vec_width == 0 {
            return Err(Error::param("vec_width must be at least 1"));
        }
        Alphabet::new(self.alphabet)?.dict_size(self.word_len)?;
        Ok(())
    }
}

/// Output of the preparation stage.
#[derive(Debug, Clone)]
pub struct Prepared {
    pub params: Params,
    pub alphabet: Alphabet,
    pub matrix: SubsequenceMatrix,
    pub words: WordMatrix,
    pub paa: PaaMatrix,
    pub sax: SaxMatrix,
    pub indexes: DiscordIndexes,
}

impl Prepared {
    /// Builds the subsequence matrix, word matrix, PAA, SAX and indexes, in that order.
    pub fn build(series: &TimeSeries, params: Params, team: &Team) -> Result<Self> {
        params.validate(series.len())?;
        let alphabet = Alphabet::new(params.alphabet)?;
        let matrix = SubsequenceMatrix::build_in(series, params.n, params.vec_width, team)?;
        let words = sax::build_word_matrix(&alphabet, params.word_len)?;
        let paa = sax::paa_in(&matrix, params.word_len, team)?;
        let sax = sax::sax_in(&paa, &alphabet, team);
        let indexes = DiscordIndexes::build(&sax, &alphabet, team)?;
        Ok(Prepared {
            params,
            alphabet,
            matrix,
            words,
            paa,
            sax,
            indexes,
        })
    }
}
