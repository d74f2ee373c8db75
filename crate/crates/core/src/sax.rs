//! PAA reduction, SAX symbolization and the word dictionary.
//!
//! Symbols are the integers `1..=|A|`. A word of length `word_len` hashes to
//! its 1-based rank in lexicographic order, so the word matrix row `h` holds
//! the unique word with hash `h`.

use crate::error::{Error, Result};
use crate::parallel::Team;
use crate::series::SubsequenceMatrix;

pub const DEFAULT_WORD_LEN: usize = 4;
pub const DEFAULT_ALPHABET: usize = 4;

/// Largest dictionary the word matrix will materialize.
pub const MAX_DICT_SIZE: usize = 1 << 24;

/// Positive half of the equiprobable N(0,1) breakpoints for |A| = 2..=10,
/// i.e. `Φ⁻¹(k/|A|)` for `k > |A|/2`. Regenerate with `scripts/breakpoints.py`.
const UPPER_BREAKPOINTS: [&[f64]; 9] = [
    &[],
    &[0.43072729929545744],
    &[0.6744897501960817],
    &[0.2533471031357997, 0.8416212335729143],
    &[0.43072729929545744, 0.967421566101701],
    &[0.18001236979270496, 0.5659488219328631, 1.0675705238781412],
    &[0.31863936396437514, 0.6744897501960817, 1.1503493803760079],
    &[0.13971029888186212, 0.43072729929545744, 0.7647096737863871, 1.2206403488473496],
    &[0.2533471031357997, 0.5244005127080407, 0.8416212335729143, 1.2815515655446004],
];

/// Symbol alphabet with its finite breakpoints `β_1 < … < β_{|A|-1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct Alphabet {
    breakpoints: Vec<f64>,
}

impl Alphabet {
    /// Built-in equiprobable alphabet of the given cardinality (2 through 10).
    pub fn new(cardinality: usize) -> Result<Self> {
        if !(2..=10).contains(&cardinality) {
            return Err(Error::param(format!(
                "alphabet cardinality must be in 2..=10, got {cardinality}"
            )));
        }
        let upper = UPPER_BREAKPOINTS[cardinality - 2];
        let mut breakpoints: Vec<f64> = upper.iter().rev().map(|b| -b).collect();
        if cardinality % 2 == 0 {
            breakpoints.push(0.0);
        }
        breakpoints.extend_from_slice(upper);
        Ok(Alphabet { breakpoints })
    }

    /// Alphabet with caller-supplied finite, strictly increasing breakpoints.
    pub fn from_breakpoints(breakpoints: Vec<f64>) -> Result<Self> {
        if breakpoints.is_empty() || breakpoints.len() > usize::from(u8::MAX) - 1 {
            return Err(Error::param("an alphabet needs between 1 and 254 breakpoints"));
        }
        if breakpoints.iter().any(|b| !b.is_finite()) || breakpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::param("breakpoints must be finite and strictly increasing"));
        }
        Ok(Alphabet { breakpoints })
    }

    pub fn cardinality(&self) -> usize {
        self.breakpoints.len() + 1
    }

    /// The finite breakpoints, ascending.
    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    /// Symbol `j` with `β_{j-1} ≤ value < β_j`.
    #[inline]
    pub fn symbol(&self, value: f64) -> u8 {
        (self.breakpoints.partition_point(|&b| b <= value) + 1) as u8
    }

    /// `|A|^word_len`, or an error past [`MAX_DICT_SIZE`].
    pub fn dict_size(&self, word_len: usize) -> Result<usize> {
        dict_size_of(self.cardinality(), word_len)
    }
}

pub(crate) fn dict_size_of(cardinality: usize, word_len: usize) -> Result<usize> {
    let mut size = 1usize;
    for _ in 0..word_len {
        size = size.saturating_mul(cardinality);
        if size > MAX_DICT_SIZE {
            return Err(Error::param(format!(
                "dictionary of {cardinality}^{word_len} words exceeds the limit of {MAX_DICT_SIZE}"
            )));
        }
    }
    Ok(size)
}

impl Default for Alphabet {
    fn default() -> Self {
        Alphabet::new(DEFAULT_ALPHABET).expect("default cardinality is in the built-in table")
    }
}

/// N × word_len matrix of PAA coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct PaaMatrix {
    data: Vec<f64>,
    rows: usize,
    word_len: usize,
}

impl PaaMatrix {
    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.word_len..(i + 1) * self.word_len]
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn word_len(&self) -> usize {
        self.word_len
    }
}

/// N × word_len matrix of symbols in `1..=|A|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SaxMatrix {
    data: Vec<u8>,
    rows: usize,
    word_len: usize,
    cardinality: usize,
}

impl SaxMatrix {
    /// Wraps raw words, checking every symbol lies in `1..=cardinality`.
    pub fn from_words(words: Vec<Vec<u8>>, cardinality: usize) -> Result<Self> {
        let word_len = words.first().map_or(0, Vec::len);
        if words.iter().any(|w| w.len() != word_len) {
            return Err(Error::param("all words must have the same length"));
        }
        if words.iter().flatten().any(|&s| s == 0 || usize::from(s) > cardinality) {
            return Err(Error::param(format!("symbols must lie in 1..={cardinality}")));
        }
        Ok(SaxMatrix {
            rows: words.len(),
            data: words.concat(),
            word_len,
            cardinality,
        })
    }

    pub fn row(&self, i: usize) -> &[u8] {
        &self.data[i * self.word_len..(i + 1) * self.word_len]
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn word_len(&self) -> usize {
        self.word_len
    }

    pub fn cardinality(&self) -> usize {
        self.cardinality
    }

    /// Hash of every row, in row order.
    pub fn hashes(&self, team: &Team) -> Vec<u32> {
        let mut out = vec![0u32; self.rows];
        if self.rows == 0 {
            return out;
        }
        team.static_chunks_mut(&mut out, 1, |i, h| {
            h[0] = hash_unchecked(self.row(i), self.cardinality);
        });
        out
    }
}

/// Every word over the alphabet, in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordMatrix {
    data: Vec<u8>,
    word_len: usize,
}

impl WordMatrix {
    /// Word with hash `h` (1-based).
    pub fn word(&self, h: usize) -> &[u8] {
        &self.data[(h - 1) * self.word_len..h * self.word_len]
    }

    pub fn dict_size(&self) -> usize {
        self.data.len().checked_div(self.word_len).unwrap_or(1)
    }

    pub fn word_len(&self) -> usize {
        self.word_len
    }

    pub fn iter(&self) -> impl Iterator<Item = &[u8]> {
        self.data.chunks_exact(self.word_len.max(1))
    }
}

/// Piecewise aggregate approximation of every row's first `n` values.
pub fn paa(matrix: &SubsequenceMatrix, word_len: usize) -> Result<PaaMatrix> {
    paa_in(matrix, word_len, &Team::single())
}

pub fn paa_in(matrix: &SubsequenceMatrix, word_len: usize, team: &Team) -> Result<PaaMatrix> {
    let n = matrix.n();
    if word_len == 0 || word_len > n {
        return Err(Error::param(format!(
            "word length must be in 1..=n (n={n}), got {word_len}"
        )));
    }
    let rows = matrix.rows();
    let mut data = vec![0.0; rows * word_len];
    team.static_chunks_mut(&mut data, word_len, |i, out| {
        paa_row(matrix.subsequence(i), out);
    });
    Ok(PaaMatrix { data, rows, word_len })
}

/// Segment means over `out.len()` equal-width segments of `values`.
///
/// When the length is not a multiple of the segment count, a value that
/// straddles a boundary contributes to both segments in proportion to its
/// overlap. Working in units of `1/word_len` keeps all overlaps integral.
pub fn paa_row(values: &[f64], out: &mut [f64]) {
    let n = values.len();
    let w = out.len();
    if n % w == 0 {
        let seg = n / w;
        for (o, chunk) in out.iter_mut().zip(values.chunks_exact(seg)) {
            *o = chunk.iter().sum::<f64>() / seg as f64;
        }
        return;
    }
    out.fill(0.0);
    for (t, &v) in values.iter().enumerate() {
        // element t spans [t*w, (t+1)*w), segment k spans [k*n, (k+1)*n)
        let (lo, hi) = (t * w, (t + 1) * w);
        let mut k = lo / n;
        while k < w && k * n < hi {
            let overlap = hi.min((k + 1) * n) - lo.max(k * n);
            out[k] += overlap as f64 * v;
            k += 1;
        }
    }
    for o in out.iter_mut() {
        *o /= n as f64;
    }
}

/// Maps each PAA coordinate to its alphabet symbol.
pub fn sax(paa: &PaaMatrix, alphabet: &Alphabet) -> SaxMatrix {
    sax_in(paa, alphabet, &Team::single())
}

pub fn sax_in(paa: &PaaMatrix, alphabet: &Alphabet, team: &Team) -> SaxMatrix {
    let mut data = vec![0u8; paa.data.len()];
    team.static_chunks_mut(&mut data, paa.word_len, |i, out| {
        for (o, &v) in out.iter_mut().zip(paa.row(i)) {
            *o = alphabet.symbol(v);
        }
    });
    SaxMatrix {
        data,
        rows: paa.rows,
        word_len: paa.word_len,
        cardinality: alphabet.cardinality(),
    }
}

/// Base-|A| positional rank of a word, 1-based: `1 + Σ (a_j − 1)·|A|^(w−j)`.
pub fn word_hash(word: &[u8], alphabet: &Alphabet) -> Result<u32> {
    let a = alphabet.cardinality();
    if let Some(&s) = word.iter().find(|&&s| s == 0 || usize::from(s) > a) {
        return Err(Error::param(format!("symbol {s} outside 1..={a}")));
    }
    alphabet.dict_size(word.len())?;
    Ok(hash_unchecked(word, a))
}

#[inline]
pub(crate) fn hash_unchecked(word: &[u8], cardinality: usize) -> u32 {
    let a = cardinality as u32;
    word.iter().fold(0u32, |h, &s| h * a + u32::from(s - 1)) + 1
}

/// All `|A|^word_len` words in lexicographic order.
pub fn build_word_matrix(alphabet: &Alphabet, word_len: usize) -> Result<WordMatrix> {
    let dict = alphabet.dict_size(word_len)?;
    let a = alphabet.cardinality();
    let mut data = Vec::with_capacity(dict * word_len);
    let mut word = vec![1u8; word_len];
    for _ in 0..dict {
        data.extend_from_slice(&word);
        // odometer increment, last symbol fastest
        for s in word.iter_mut().rev() {
            if usize::from(*s) < a {
                *s += 1;
                break;
            }
            *s = 1;
        }
    }
    Ok(WordMatrix { data, word_len })
}
