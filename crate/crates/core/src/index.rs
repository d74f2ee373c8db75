//! Frequency index, candidate index and the word-bucketed inverted index.
//!
//! Positions are 0-based subsequence indexes into the subsequence matrix.

use crate::error::{Error, Result};
use crate::parallel::Team;
use crate::sax::{dict_size_of, Alphabet, SaxMatrix};

/// `freq[i]`: how many rows share row `i`'s word, `i` included.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrequencyIndex {
    freq: Vec<u32>,
}

impl FrequencyIndex {
    pub fn as_slice(&self) -> &[u32] {
        &self.freq
    }

    pub fn len(&self) -> usize {
        self.freq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.freq.is_empty()
    }
}

/// Ascending positions whose word frequency equals the global minimum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateIndex {
    cand: Vec<usize>,
}

impl CandidateIndex {
    /// A hand-picked search order; positions are visited in the given order.
    pub fn from_positions(cand: Vec<usize>) -> Self {
        CandidateIndex { cand }
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.cand
    }

    pub fn len(&self) -> usize {
        self.cand.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cand.is_empty()
    }

    /// Membership mask over `0..rows`.
    pub fn mask(&self, rows: usize) -> Vec<bool> {
        let mut mask = vec![false; rows];
        for &c in &self.cand {
            mask[c] = true;
        }
        mask
    }
}

/// Inverted index from word hash to the ascending positions carrying that word.
///
/// Buckets are stored back to back (CSR layout): bucket `h` occupies
/// `positions[offsets[h-1]..offsets[h]]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordIndex {
    offsets: Vec<usize>,
    positions: Vec<u32>,
    hashes: Vec<u32>,
}

impl WordIndex {
    /// Positions whose word hashes to `h` (1-based).
    #[inline]
    pub fn bucket(&self, h: u32) -> &[u32] {
        let h = h as usize;
        &self.positions[self.offsets[h - 1]..self.offsets[h]]
    }

    /// The bucket containing position `i`.
    #[inline]
    pub fn bucket_of(&self, i: usize) -> &[u32] {
        self.bucket(self.hashes[i])
    }

    /// Word hash of position `i`.
    #[inline]
    pub fn hash_of(&self, i: usize) -> u32 {
        self.hashes[i]
    }

    pub fn dict_size(&self) -> usize {
        self.offsets.len() - 1
    }

    /// Number of indexed positions `N`.
    pub fn rows(&self) -> usize {
        self.hashes.len()
    }

    pub fn buckets(&self) -> impl Iterator<Item = &[u32]> {
        self.offsets.windows(2).map(|w| &self.positions[w[0]..w[1]])
    }
}

/// Everything the search stage needs besides the subsequence matrix.
#[derive(Debug, Clone)]
pub struct DiscordIndexes {
    pub freq: FrequencyIndex,
    pub cand: CandidateIndex,
    pub words: WordIndex,
}

impl DiscordIndexes {
    pub fn build(sax: &SaxMatrix, alphabet: &Alphabet, team: &Team) -> Result<Self> {
        let words = build_word_index_in(sax, alphabet, team)?;
        let freq = frequencies_from_words(&words);
        let cand = build_candidate_index_in(&freq, team);
        Ok(DiscordIndexes { freq, cand, words })
    }
}

pub fn build_frequency_index(sax: &SaxMatrix) -> FrequencyIndex {
    match bucket_by_hash(sax, &Team::single()) {
        Ok(words) => frequencies_from_words(&words),
        // dictionary too large to bucket: count through sorted hashes
        Err(_) => {
            let hashes = sax.hashes(&Team::single());
            let mut sorted = hashes.clone();
            sorted.sort_unstable();
            let freq = hashes
                .iter()
                .map(|h| {
                    let lo = sorted.partition_point(|x| x < h);
                    let hi = sorted.partition_point(|x| x <= h);
                    (hi - lo) as u32
                })
                .collect();
            FrequencyIndex { freq }
        }
    }
}

fn frequencies_from_words(words: &WordIndex) -> FrequencyIndex {
    let freq = words
        .hashes
        .iter()
        .map(|&h| words.bucket(h).len() as u32)
        .collect();
    FrequencyIndex { freq }
}

pub fn build_candidate_index(freq: &FrequencyIndex) -> CandidateIndex {
    build_candidate_index_in(freq, &Team::single())
}

/// Argmin set of `freq`; the minimum comes from a parallel reduction.
pub fn build_candidate_index_in(freq: &FrequencyIndex, team: &Team) -> CandidateIndex {
    let f = &freq.freq;
    let min = team.static_ranges(f.len(), |r| f[r].iter().copied().min())
        .into_iter()
        .flatten()
        .min();
    let cand = match min {
        Some(min) => (0..f.len()).filter(|&i| f[i] == min).collect(),
        None => Vec::new(),
    };
    CandidateIndex { cand }
}

pub fn build_word_index(sax: &SaxMatrix, alphabet: &Alphabet) -> Result<WordIndex> {
    build_word_index_in(sax, alphabet, &Team::single())
}

/// Counting sort of positions by word hash.
///
/// Histograms are built per worker over static ranges and merged in range
/// order, so the result does not depend on the team size.
pub fn build_word_index_in(sax: &SaxMatrix, alphabet: &Alphabet, team: &Team) -> Result<WordIndex> {
    if sax.cardinality() != alphabet.cardinality() {
        return Err(Error::param(format!(
            "SAX matrix uses {} symbols but the alphabet has {}",
            sax.cardinality(),
            alphabet.cardinality()
        )));
    }
    bucket_by_hash(sax, team)
}

fn bucket_by_hash(sax: &SaxMatrix, team: &Team) -> Result<WordIndex> {
    if sax.rows() > u32::MAX as usize {
        return Err(Error::param("too many subsequences for a 32-bit word index"));
    }
    let dict = dict_size_of(sax.cardinality(), sax.word_len())?;
    let hashes = sax.hashes(team);
    let partials = team.static_ranges(hashes.len(), |r| {
        let mut counts = vec![0usize; dict];
        for &h in &hashes[r] {
            counts[h as usize - 1] += 1;
        }
        counts
    });
    let mut offsets = vec![0usize; dict + 1];
    for counts in &partials {
        for (h, c) in counts.iter().enumerate() {
            offsets[h + 1] += c;
        }
    }
    for h in 0..dict {
        offsets[h + 1] += offsets[h];
    }
    let mut cursor = offsets[..dict].to_vec();
    let mut positions = vec![0u32; hashes.len()];
    for (i, &h) in hashes.iter().enumerate() {
        let slot = &mut cursor[h as usize - 1];
        positions[*slot] = i as u32;
        *slot += 1;
    }
    Ok(WordIndex {
        offsets,
        positions,
        hashes,
    })
}
