//! Context-sensitive correction.
//!
//! Every candidate for an error is scored by the count of the candidate
//! preceded by up to four in-sentence context words. If no full-order
//! sequence was ever seen, the context is truncated from the left one word
//! at a time (5→4→3→2); when everything is unseen the highest-count
//! candidate wins in isolation. Replacements apply left to right, so a
//! corrected word immediately serves as context for errors after it.

use crate::candidates::{generate_candidates, Candidate};
use crate::detect::{detect_nonword_errors, Misspelling, MisspellingKind};
use crate::error::{Error, Result};
use crate::index::NGramIndex;
use crate::postings::CharBigramPostings;
use crate::tokenize::{tokenize, TokenStream};

/// Up to four context words followed by one candidate word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContextQuery {
    /// Context in text order; the last token is the candidate.
    pub tokens: Vec<String>,
}

impl ContextQuery {
    pub fn order(&self) -> usize {
        self.tokens.len()
    }
}

/// The outcome of correcting one detected error.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Correction {
    pub error: Misspelling,
    /// The winning candidate word (normalized), when one exists.
    pub chosen: Option<String>,
    /// The n-gram order at which the decision was made, 5 down to 1.
    pub backoff_order: usize,
    /// The count that won at that order.
    pub winning_count: u64,
    pub applied: bool,
}

/// Knobs of the correction pipeline.
#[derive(Debug, Clone)]
pub struct CorrectorConfig {
    /// Candidate list size.
    pub k: usize,
    /// Maximum number of preceding context words, 0..=4.
    pub window: usize,
    /// Whether to run the suspected-real-word pass after non-word
    /// correction.
    pub real_word_pass: bool,
    /// Margin gamma: a real-word replacement needs a full-order count of
    /// at least `gamma * (count(original context) + 1)`.
    pub real_word_margin: f64,
    /// Mirror the error's capitalization onto the replacement.
    pub case_restore: bool,
}

impl Default for CorrectorConfig {
    fn default() -> Self {
        CorrectorConfig {
            k: crate::candidates::DEFAULT_CANDIDATES,
            window: 4,
            real_word_pass: false,
            real_word_margin: 10.0,
            case_restore: true,
        }
    }
}

impl CorrectorConfig {
    pub fn validate(&self) -> Result<()> {
        if self.k == 0 {
            return Err(Error::InvalidConfig("k must be at least 1".into()));
        }
        if self.window > 4 {
            return Err(Error::InvalidConfig(format!(
                "window must lie in 0..=4, got {}",
                self.window
            )));
        }
        if self.real_word_margin.partial_cmp(&1.0) != Some(std::cmp::Ordering::Greater) {
            return Err(Error::InvalidConfig(format!(
                "real-word margin must exceed 1, got {}",
                self.real_word_margin
            )));
        }
        Ok(())
    }
}

/// The nearest `window` word tokens before `token_index`, within its
/// sentence, in text order. `forms` supplies the current (possibly already
/// corrected) normalized form of every token.
fn preceding_words(
    stream: &TokenStream,
    forms: &[String],
    token_index: usize,
    window: usize,
) -> Vec<String> {
    let sentence_start = stream.sentence_start_of(token_index);
    let mut context: Vec<String> = stream.tokens[sentence_start..token_index]
        .iter()
        .rev()
        .filter(|t| t.is_word)
        .take(window)
        .map(|t| forms[t.index].clone())
        .collect();
    context.reverse();
    context
}

/// One query per candidate: the error's preceding words followed by the
/// candidate word.
pub fn build_context_queries(
    stream: &TokenStream,
    forms: &[String],
    error_index: usize,
    candidates: &[Candidate],
    window: usize,
) -> Vec<ContextQuery> {
    let context = preceding_words(stream, forms, error_index, window);
    candidates
        .iter()
        .map(|candidate| {
            let mut tokens = context.clone();
            tokens.push(candidate.word.clone());
            ContextQuery { tokens }
        })
        .collect()
}

/// Choose the winning candidate for `error`.
///
/// All full-order queries are counted first; if every one is unseen, the
/// leftmost context word is dropped and the scan repeats down to order 2.
/// Count ties break toward the better-ranked candidate. With nothing seen
/// at any order the highest-unigram-count candidate wins at order 1.
pub fn select_correction(
    error: &Misspelling,
    queries: &[ContextQuery],
    candidates: &[Candidate],
    index: &NGramIndex,
) -> Correction {
    debug_assert_eq!(queries.len(), candidates.len());
    if candidates.is_empty() {
        return Correction {
            error: error.clone(),
            chosen: None,
            backoff_order: 1,
            winning_count: 0,
            applied: false,
        };
    }

    let full_order = queries[0].order();
    for order in (2..=full_order).rev() {
        let mut winner: Option<(usize, u64)> = None;
        for (i, query) in queries.iter().enumerate() {
            let tail = &query.tokens[query.tokens.len() - order..];
            let count = index.lookup(tail).expect("query order is within 1..=5");
            if count == 0 {
                continue;
            }
            let better = winner.is_none_or(|(w, best)| {
                count > best || (count == best && candidates[i].rank < candidates[w].rank)
            });
            if better {
                winner = Some((i, count));
            }
        }
        if let Some((i, count)) = winner {
            return Correction {
                error: error.clone(),
                chosen: Some(candidates[i].word.clone()),
                backoff_order: order,
                winning_count: count,
                applied: true,
            };
        }
    }

    // Nothing seen with any context: isolated choice by unigram count,
    // candidate rank breaking ties.
    let best = candidates
        .iter()
        .max_by(|a, b| {
            a.unigram_count
                .cmp(&b.unigram_count)
                .then(b.rank.cmp(&a.rank))
        })
        .expect("candidates is non-empty");
    Correction {
        error: error.clone(),
        chosen: Some(best.word.clone()),
        backoff_order: 1,
        winning_count: best.unigram_count,
        applied: true,
    }
}

/// Detect and correct a whole text. Returns the corrected text and one
/// [`Correction`] per handled error, in application order.
pub fn correct_text(
    text: &str,
    index: &NGramIndex,
    postings: &CharBigramPostings,
    config: &CorrectorConfig,
) -> (String, Vec<Correction>) {
    let stream = tokenize(text);
    let mut forms: Vec<String> = stream.tokens.iter().map(|t| t.normalized.clone()).collect();
    let mut replacements: Vec<Option<String>> = vec![None; stream.len()];
    let mut corrections = Vec::new();

    for error in detect_nonword_errors(&stream, index) {
        let idx = error.token_index;
        let candidates = generate_candidates(&forms[idx], postings, config.k);
        let queries = build_context_queries(&stream, &forms, idx, &candidates, config.window);
        let correction = select_correction(&error, &queries, &candidates, index);
        if let (true, Some(chosen)) = (correction.applied, &correction.chosen) {
            forms[idx] = chosen.clone();
            replacements[idx] = Some(render_replacement(
                &stream.tokens[idx].surface,
                chosen,
                config,
            ));
        }
        corrections.push(correction);
    }

    if config.real_word_pass {
        let real_word = real_word_sweep(&stream, &mut forms, index, postings, config);
        for correction in &real_word {
            if let (true, Some(chosen)) = (correction.applied, &correction.chosen) {
                let idx = correction.error.token_index;
                replacements[idx] = Some(render_replacement(
                    &stream.tokens[idx].surface,
                    chosen,
                    config,
                ));
            }
        }
        corrections.extend(real_word);
    }

    let output = stream.render(text, &|i| replacements[i].clone());
    (output, corrections)
}

/// Flag and correct suspected real-word errors: an in-vocabulary word whose
/// best candidate's full-window context count beats its own by the margin.
/// Runs over pristine token forms; [`correct_text`] threads its corrected
/// forms through instead.
pub fn real_word_pass(
    stream: &TokenStream,
    index: &NGramIndex,
    postings: &CharBigramPostings,
    config: &CorrectorConfig,
) -> Vec<Correction> {
    let mut forms: Vec<String> = stream.tokens.iter().map(|t| t.normalized.clone()).collect();
    real_word_sweep(stream, &mut forms, index, postings, config)
}

fn real_word_sweep(
    stream: &TokenStream,
    forms: &mut [String],
    index: &NGramIndex,
    postings: &CharBigramPostings,
    config: &CorrectorConfig,
) -> Vec<Correction> {
    let mut corrections = Vec::new();
    let order = config.window + 1;

    for token in &stream.tokens {
        if !token.is_word || !index.contains_unigram(&forms[token.index]) {
            continue;
        }
        let context = preceding_words(stream, forms, token.index, config.window);
        if context.len() < config.window {
            continue;
        }

        let mut query: Vec<String> = context;
        query.push(forms[token.index].clone());
        let original_count = index.lookup(&query).expect("order is within 1..=5");

        // The word matches all of its own bigrams and would occupy a
        // candidate slot; over-generate by one before excluding it.
        let word = forms[token.index].clone();
        let mut candidates: Vec<Candidate> = generate_candidates(&word, postings, config.k + 1)
            .into_iter()
            .filter(|c| c.word != word)
            .collect();
        candidates.truncate(config.k);
        let mut best: Option<(&Candidate, u64)> = None;
        for candidate in &candidates {
            *query.last_mut().expect("query has the word slot") = candidate.word.clone();
            let count = index.lookup(&query).expect("order is within 1..=5");
            if best.is_none_or(|(_, c)| count > c) {
                best = Some((candidate, count));
            }
        }
        let Some((candidate, best_count)) = best else {
            continue;
        };

        if (best_count as f64) < config.real_word_margin * (original_count as f64 + 1.0) {
            continue;
        }
        forms[token.index] = candidate.word.clone();
        corrections.push(Correction {
            error: Misspelling {
                token_index: token.index,
                surface: token.surface.clone(),
                kind: MisspellingKind::SuspectedRealWord,
            },
            chosen: Some(candidate.word.clone()),
            backoff_order: order,
            winning_count: best_count,
            applied: true,
        });
    }
    corrections
}

/// Mirror the error surface's casing onto the replacement: all-caps stays
/// all-caps, a capitalized first letter stays capitalized.
fn render_replacement(surface: &str, replacement: &str, config: &CorrectorConfig) -> String {
    if !config.case_restore {
        return replacement.to_string();
    }
    let alphabetic: Vec<char> = surface.chars().filter(|c| c.is_alphabetic()).collect();
    if alphabetic.len() > 1 && alphabetic.iter().all(|c| c.is_uppercase()) {
        return replacement.to_uppercase();
    }
    if alphabetic.first().is_some_and(|c| c.is_uppercase()) {
        let mut chars = replacement.chars();
        return match chars.next() {
            Some(first) => first.to_uppercase().chain(chars).collect(),
            None => String::new(),
        };
    }
    replacement.to_string()
}
