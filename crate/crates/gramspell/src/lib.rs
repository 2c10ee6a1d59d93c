//! Context-sensitive spelling correction over Web-1T-style n-gram counts.
//!
//! The pipeline has three stages: a detector flags word tokens missing from
//! the unigram vocabulary, a generator proposes candidates by shared
//! character bigrams, and a corrector picks the candidate whose preceding
//! context occurs most often in the n-gram data, backing off to shorter
//! contexts when nothing was ever seen. A seeded evaluation harness
//! reproduces the induce-errors/correct/score protocol used to benchmark
//! such correctors, and the classic isolated-word baselines (edit
//! distances, noisy channel ranking, bigram chains) are included for
//! comparison.
//!
//! ```
//! use gramspell::{build_bigram_postings, correct_text, CorrectorConfig, NGramIndex};
//!
//! let corpus = "case where only one single element is allowed. \
//!               case where only one single element is stored.";
//! let index = NGramIndex::from_corpus(corpus, 5, 1).unwrap();
//! let postings = build_bigram_postings(&index);
//! let (fixed, corrections) = correct_text(
//!     "case where only one sangle element is allowed",
//!     &index,
//!     &postings,
//!     &CorrectorConfig::default(),
//! );
//! assert_eq!(fixed, "case where only one single element is allowed");
//! assert_eq!(corrections.len(), 1);
//! ```

pub mod candidates;
pub mod channel;
pub mod correct;
pub mod detect;
mod error;
pub mod eval;
pub mod index;
pub mod postings;
mod storage;
pub mod tokenize;
pub mod web1t;

pub mod distance;

pub use candidates::{
    char_bigrams, generate_candidates, Candidate, CharBigram, DEFAULT_CANDIDATES,
};
pub use channel::{bigram_chain_prob, likelihood, noisy_channel_rank, ChannelParams, PriorModel};
pub use correct::{
    build_context_queries, correct_text, real_word_pass, select_correction, ContextQuery,
    Correction, CorrectorConfig,
};
pub use detect::{detect_nonword_errors, Misspelling, MisspellingKind};
pub use distance::{damerau_levenshtein, hamming, lcs, levenshtein};
pub use error::{Error, Result};
pub use eval::{
    audit_csv, emit_report, evaluate, induce_errors, ClassReport, EditOp, EvalReport,
    InduceOptions, InducedError, InducedKind, ReportFormat,
};
pub use index::{NGramIndex, MAX_ORDER, SENTENCE_START};
pub use postings::{build_bigram_postings, CharBigramPostings, VocabularyEntry};
pub use tokenize::{tokenize, Token, TokenStream};
pub use web1t::{parse_count_line, NGramEntry};
