//! Inverted index from character bigrams to vocabulary words.
//!
//! Candidate generation retrieves every vocabulary word sharing at least one
//! 2-character sequence with an error word; this structure makes that a
//! handful of posting-list scans instead of a vocabulary sweep.

use std::collections::HashMap;

use crate::candidates::{char_bigrams, CharBigram};
use crate::index::NGramIndex;

/// A unigram vocabulary word with its dense id and count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VocabularyEntry {
    pub word: String,
    pub id: u32,
    pub count: u64,
}

/// Posting lists over the unigram vocabulary: `postings[b]` holds the ids of
/// every word containing `b` as a contiguous 2-character substring. Words
/// shorter than two characters appear in no list.
#[derive(Debug, Clone, Default)]
pub struct CharBigramPostings {
    entries: Vec<VocabularyEntry>,
    postings: HashMap<CharBigram, Vec<u32>>,
}

impl CharBigramPostings {
    pub fn entries(&self) -> &[VocabularyEntry] {
        &self.entries
    }

    pub fn entry(&self, id: u32) -> &VocabularyEntry {
        &self.entries[id as usize]
    }

    pub fn vocabulary_len(&self) -> usize {
        self.entries.len()
    }

    /// Ids of all words containing `bigram`, in ascending id order.
    pub fn words_sharing(&self, bigram: CharBigram) -> &[u32] {
        self.postings.get(&bigram).map_or(&[], Vec::as_slice)
    }
}

/// Build the posting lists over the index's unigram vocabulary.
pub fn build_bigram_postings(index: &NGramIndex) -> CharBigramPostings {
    let mut entries = Vec::new();
    let mut postings: HashMap<CharBigram, Vec<u32>> = HashMap::new();
    for (id, (word, count)) in index.unigrams().enumerate() {
        let id = id as u32;
        for bigram in char_bigrams(word) {
            postings.entry(bigram).or_default().push(id);
        }
        entries.push(VocabularyEntry {
            word: word.to_string(),
            id,
            count,
        });
    }
    CharBigramPostings { entries, postings }
}
