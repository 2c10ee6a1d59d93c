//! Non-word error detection against the unigram vocabulary.

use crate::index::NGramIndex;
use crate::tokenize::TokenStream;

/// How a misspelling was flagged.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MisspellingKind {
    /// The token is absent from the unigram vocabulary.
    NonWord,
    /// The token is a vocabulary word whose context strongly prefers a
    /// different word (only produced by the optional real-word pass).
    SuspectedRealWord,
}

impl MisspellingKind {
    pub fn label(self) -> &'static str {
        match self {
            MisspellingKind::NonWord => "non-word",
            MisspellingKind::SuspectedRealWord => "real-word",
        }
    }
}

/// A detected error: where it is and what it looks like.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Misspelling {
    pub token_index: usize,
    pub surface: String,
    pub kind: MisspellingKind,
}

/// Flag every word token whose normalized form is missing from the unigram
/// table, in text order. Punctuation and number tokens are never flagged.
pub fn detect_nonword_errors(stream: &TokenStream, index: &NGramIndex) -> Vec<Misspelling> {
    stream
        .words()
        .filter(|token| !index.contains_unigram(&token.normalized))
        .map(|token| Misspelling {
            token_index: token.index,
            surface: token.surface.clone(),
            kind: MisspellingKind::NonWord,
        })
        .collect()
}
