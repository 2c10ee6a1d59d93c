//! Candidate spelling generation by shared character bigrams.
//!
//! For a detected error, every vocabulary word sharing at least one
//! 2-character sequence with it is scored and the top k survive. Ordering
//! rule R1: more shared bigrams first, then closest length, then higher
//! unigram count, then lexicographic — a total order, so output is fully
//! deterministic.

use std::cmp::Ordering;
use std::fmt;

use crate::distance::levenshtein;
use crate::postings::CharBigramPostings;

/// Default candidate list size.
pub const DEFAULT_CANDIDATES: usize = 10;

/// An adjacent 2-character sequence inside a word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CharBigram(pub char, pub char);

impl fmt::Display for CharBigram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.0, self.1)
    }
}

/// The distinct adjacent character pairs of `word`, in first-occurrence
/// order. Words shorter than two characters yield nothing.
///
/// ```
/// let pairs: Vec<String> = gramspell::char_bigrams("sangle")
///     .iter()
///     .map(ToString::to_string)
///     .collect();
/// assert_eq!(pairs, ["sa", "an", "ng", "gl", "le"]);
/// ```
pub fn char_bigrams(word: &str) -> Vec<CharBigram> {
    let chars: Vec<char> = word.chars().collect();
    let mut out = Vec::with_capacity(chars.len().saturating_sub(1));
    for pair in chars.windows(2) {
        let bigram = CharBigram(pair[0], pair[1]);
        if !out.contains(&bigram) {
            out.push(bigram);
        }
    }
    out
}

/// A proposed replacement for an error word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Candidate {
    pub word: String,
    /// Distinct error bigrams found as substrings of `word`. Zero only for
    /// the length-1 edit-distance fallback, which has no bigrams to share.
    pub overlap: usize,
    /// Absolute character-length difference from the error word.
    pub len_diff: usize,
    pub unigram_count: u64,
    /// 0-based position after R1 ordering.
    pub rank: usize,
}

/// R1: overlap descending, length difference ascending, unigram count
/// descending, word ascending.
pub fn r1_ordering(a: &Candidate, b: &Candidate) -> Ordering {
    b.overlap
        .cmp(&a.overlap)
        .then(a.len_diff.cmp(&b.len_diff))
        .then(b.unigram_count.cmp(&a.unigram_count))
        .then(a.word.cmp(&b.word))
}

/// Generate the top-`k` candidate spellings for `error` from the postings'
/// vocabulary (unigram counts come from the index the postings were built
/// over).
///
/// An error that shares no bigram with any vocabulary word yields an empty
/// list and is reported as uncorrectable downstream. Errors too short to
/// have bigrams fall back to vocabulary words at Levenshtein distance 1,
/// ranked by unigram count.
pub fn generate_candidates(error: &str, postings: &CharBigramPostings, k: usize) -> Vec<Candidate> {
    let error = error.to_lowercase();
    let error_len = error.chars().count();
    let bigrams = char_bigrams(&error);

    if bigrams.is_empty() {
        return short_error_fallback(&error, error_len, postings, k);
    }

    let mut overlaps = vec![0u32; postings.vocabulary_len()];
    for &bigram in &bigrams {
        for &id in postings.words_sharing(bigram) {
            overlaps[id as usize] += 1;
        }
    }

    let mut candidates: Vec<Candidate> = overlaps
        .iter()
        .enumerate()
        .filter(|&(_, &overlap)| overlap > 0)
        .map(|(id, &overlap)| {
            let entry = postings.entry(id as u32);
            Candidate {
                word: entry.word.clone(),
                overlap: overlap as usize,
                len_diff: entry.word.chars().count().abs_diff(error_len),
                unigram_count: entry.count,
                rank: 0,
            }
        })
        .collect();

    candidates.sort_unstable_by(r1_ordering);
    candidates.truncate(k);
    for (rank, candidate) in candidates.iter_mut().enumerate() {
        candidate.rank = rank;
    }
    candidates
}

/// Fallback for errors with no bigrams (single characters): vocabulary
/// words one edit away, by unigram count then lexicographic order.
fn short_error_fallback(
    error: &str,
    error_len: usize,
    postings: &CharBigramPostings,
    k: usize,
) -> Vec<Candidate> {
    let mut candidates: Vec<Candidate> = postings
        .entries()
        .iter()
        .filter(|entry| entry.word.chars().count().abs_diff(error_len) <= 1)
        .filter(|entry| levenshtein(error, &entry.word) == 1)
        .map(|entry| Candidate {
            word: entry.word.clone(),
            overlap: 0,
            len_diff: entry.word.chars().count().abs_diff(error_len),
            unigram_count: entry.count,
            rank: 0,
        })
        .collect();
    candidates.sort_unstable_by(|a, b| {
        b.unigram_count
            .cmp(&a.unigram_count)
            .then(a.word.cmp(&b.word))
    });
    candidates.truncate(k);
    for (rank, candidate) in candidates.iter_mut().enumerate() {
        candidate.rank = rank;
    }
    candidates
}
