//! Evaluation harness: seeded error induction, scoring, and report
//! rendering.
//!
//! Errors are induced by applying exactly one character edit (insertion,
//! deletion, substitution or adjacent transposition) to randomly chosen
//! word tokens. A configurable share of the edits is rejection-sampled to
//! land on vocabulary words, producing real-word errors; the rest must fall
//! outside the vocabulary. Everything is deterministic per seed.

use std::collections::HashMap;
use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::correct::Correction;
use crate::error::{Error, Result};
use crate::index::NGramIndex;
use crate::tokenize::{tokenize, TokenStream};

/// The single-character edit applied to a word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EditOp {
    Insertion,
    Deletion,
    Substitution,
    Transposition,
}

impl fmt::Display for EditOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            EditOp::Insertion => "insertion",
            EditOp::Deletion => "deletion",
            EditOp::Substitution => "substitution",
            EditOp::Transposition => "transposition",
        };
        f.write_str(name)
    }
}

/// Whether the corrupted form happens to be a vocabulary word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InducedKind {
    NonWord,
    RealWord,
}

impl InducedKind {
    pub fn label(self) -> &'static str {
        match self {
            InducedKind::NonWord => "non-word",
            InducedKind::RealWord => "real-word",
        }
    }
}

/// One deliberately injected error.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedError {
    pub token_index: usize,
    /// The intended (normalized) word.
    pub original: String,
    /// The injected form.
    pub corrupted: String,
    pub op: EditOp,
    pub kind: InducedKind,
}

/// Induction parameters.
#[derive(Debug, Clone, Copy)]
pub struct InduceOptions {
    /// Fraction of word tokens to corrupt.
    pub rate: f64,
    /// Fraction of induced errors that should be real-word errors, as
    /// closely as the vocabulary allows.
    pub realword_share: f64,
    pub seed: u64,
}

impl Default for InduceOptions {
    fn default() -> Self {
        InduceOptions {
            rate: 0.01,
            realword_share: 0.20,
            seed: 0,
        }
    }
}

const MAX_EDIT_ATTEMPTS: usize = 100;

/// Corrupt `round(rate * word_count)` distinct word tokens of `text` and
/// return the perturbed text plus the injected errors sorted by position.
///
/// Only purely alphabetic words of at least two characters are targeted, so
/// a corrupted word always re-tokenizes to a single token at the same
/// index. Edit characters come from the vocabulary's own alphabet.
pub fn induce_errors(
    text: &str,
    index: &NGramIndex,
    opts: &InduceOptions,
) -> Result<(String, Vec<InducedError>)> {
    let stream = tokenize(text);
    let word_count = stream.word_count();
    let n_errors = (opts.rate * word_count as f64).round() as usize;
    if n_errors == 0 {
        return Err(Error::TextTooShort { rate: opts.rate });
    }

    let mut eligible: Vec<usize> = stream
        .tokens
        .iter()
        .filter(|t| t.is_word)
        .filter(|t| t.normalized.chars().count() >= 2)
        .filter(|t| t.normalized.chars().all(char::is_alphabetic))
        .map(|t| t.index)
        .collect();

    let alphabet = corpus_alphabet(index, &stream);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    eligible.shuffle(&mut rng);

    let realword_target = (opts.realword_share * n_errors as f64).round() as usize;
    let mut errors: Vec<InducedError> = Vec::with_capacity(n_errors);
    let mut used = vec![false; stream.len()];

    // First land the real-word quota: rejection-sample edits until one
    // falls inside the vocabulary, else move on to another target.
    for &idx in &eligible {
        if errors.len() >= realword_target {
            break;
        }
        let original = &stream.tokens[idx].normalized;
        for _ in 0..MAX_EDIT_ATTEMPTS {
            let (corrupted, op) = random_edit(original, &alphabet, &mut rng);
            if corrupted != *original && index.contains_unigram(&corrupted) {
                errors.push(InducedError {
                    token_index: idx,
                    original: original.clone(),
                    corrupted,
                    op,
                    kind: InducedKind::RealWord,
                });
                used[idx] = true;
                break;
            }
        }
    }

    // Then fill the remaining total with non-word corruptions.
    for &idx in &eligible {
        if errors.len() >= n_errors {
            break;
        }
        if used[idx] {
            continue;
        }
        let original = &stream.tokens[idx].normalized;
        for _ in 0..MAX_EDIT_ATTEMPTS {
            let (corrupted, op) = random_edit(original, &alphabet, &mut rng);
            if !corrupted.is_empty()
                && corrupted != *original
                && !index.contains_unigram(&corrupted)
            {
                errors.push(InducedError {
                    token_index: idx,
                    original: original.clone(),
                    corrupted,
                    op,
                    kind: InducedKind::NonWord,
                });
                used[idx] = true;
                break;
            }
        }
    }

    if errors.is_empty() {
        // Word tokens existed but none were corruptible (all too short or
        // carrying digits/punctuation).
        return Err(Error::TextTooShort { rate: opts.rate });
    }

    errors.sort_by_key(|e| e.token_index);
    let by_index: HashMap<usize, &str> = errors
        .iter()
        .map(|e| (e.token_index, e.corrupted.as_str()))
        .collect();
    let perturbed = stream.render(text, &|i| by_index.get(&i).map(|s| s.to_string()));
    Ok((perturbed, errors))
}

/// Sorted distinct lowercase alphabetic characters of the vocabulary,
/// falling back to the text itself when the index is empty.
fn corpus_alphabet(index: &NGramIndex, stream: &TokenStream) -> Vec<char> {
    let mut alphabet: Vec<char> = index
        .unigrams()
        .flat_map(|(word, _)| word.chars())
        .filter(|c| c.is_alphabetic())
        .collect();
    if alphabet.is_empty() {
        alphabet = stream
            .words()
            .flat_map(|t| t.normalized.chars())
            .filter(|c| c.is_alphabetic())
            .collect();
    }
    alphabet.sort_unstable();
    alphabet.dedup();
    alphabet
}

/// Apply one uniformly chosen single-character edit.
fn random_edit(word: &str, alphabet: &[char], rng: &mut ChaCha8Rng) -> (String, EditOp) {
    let chars: Vec<char> = word.chars().collect();
    let mut edited = chars.clone();
    let op = match rng.gen_range(0..4) {
        0 => {
            let pos = rng.gen_range(0..=edited.len());
            let c = alphabet[rng.gen_range(0..alphabet.len())];
            edited.insert(pos, c);
            EditOp::Insertion
        }
        1 => {
            let pos = rng.gen_range(0..edited.len());
            edited.remove(pos);
            EditOp::Deletion
        }
        2 => {
            let pos = rng.gen_range(0..edited.len());
            edited[pos] = alphabet[rng.gen_range(0..alphabet.len())];
            EditOp::Substitution
        }
        _ => {
            let pos = rng.gen_range(0..edited.len().saturating_sub(1).max(1));
            if pos + 1 < edited.len() {
                edited.swap(pos, pos + 1);
            }
            EditOp::Transposition
        }
    };
    (edited.into_iter().collect(), op)
}

/// Per-class scoring: corrected vs not-or-falsely corrected.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassReport {
    pub total: u64,
    pub corrected: u64,
    pub not_or_falsely_corrected: u64,
    /// corrected / total, 0 when the class is empty.
    pub rate: f64,
}

impl ClassReport {
    fn new(total: u64, corrected: u64) -> Self {
        ClassReport {
            total,
            corrected,
            not_or_falsely_corrected: total - corrected,
            rate: if total == 0 {
                0.0
            } else {
                corrected as f64 / total as f64
            },
        }
    }
}

/// Scores in the shape of the published result tables: one overall band
/// plus one per error class.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub total_words: u64,
    pub total_errors: u64,
    pub nonword: ClassReport,
    pub realword: ClassReport,
    pub overall: ClassReport,
}

/// Score a correction run against the induced errors.
///
/// An induced error counts as corrected iff an applied replacement at its
/// token equals the original word, case-insensitively. Missed, unapplied
/// and wrong replacements all count against, matching how the result
/// tables merge "not corrected" with "falsely corrected".
pub fn evaluate(
    gold: &[InducedError],
    corrections: &[Correction],
    stream: &TokenStream,
) -> Result<EvalReport> {
    for error in gold {
        if error.token_index >= stream.len() {
            return Err(Error::TokenIndexMismatch {
                index: error.token_index,
                len: stream.len(),
            });
        }
    }
    for correction in corrections {
        if correction.error.token_index >= stream.len() {
            return Err(Error::TokenIndexMismatch {
                index: correction.error.token_index,
                len: stream.len(),
            });
        }
    }

    let applied = applied_by_index(corrections);
    let mut corrected = [0u64; 2];
    let mut totals = [0u64; 2];
    for error in gold {
        let class = match error.kind {
            InducedKind::NonWord => 0,
            InducedKind::RealWord => 1,
        };
        totals[class] += 1;
        if is_corrected(error, &applied) {
            corrected[class] += 1;
        }
    }

    Ok(EvalReport {
        total_words: stream.word_count() as u64,
        total_errors: gold.len() as u64,
        nonword: ClassReport::new(totals[0], corrected[0]),
        realword: ClassReport::new(totals[1], corrected[1]),
        overall: ClassReport::new(totals[0] + totals[1], corrected[0] + corrected[1]),
    })
}

/// The last applied replacement per token index (a non-word fix may be
/// revised by the real-word pass).
fn applied_by_index(corrections: &[Correction]) -> HashMap<usize, &str> {
    let mut map = HashMap::new();
    for correction in corrections {
        if let (true, Some(chosen)) = (correction.applied, &correction.chosen) {
            map.insert(correction.error.token_index, chosen.as_str());
        }
    }
    map
}

fn is_corrected(error: &InducedError, applied: &HashMap<usize, &str>) -> bool {
    applied
        .get(&error.token_index)
        .is_some_and(|chosen| chosen.to_lowercase() == error.original.to_lowercase())
}

/// Output encodings for [`emit_report`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Csv,
    Table,
}

/// Serialize a report. The text table mirrors the three-band layout of the
/// published tables (total / non-word / real-word).
pub fn emit_report(report: &EvalReport, format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => {
            let mut out =
                serde_json::to_string_pretty(report).expect("report serialization cannot fail");
            out.push('\n');
            out
        }
        ReportFormat::Csv => {
            let mut out = String::from(
                "total_words,total_errors,\
                 nonword_total,nonword_corrected,nonword_not_or_falsely,nonword_rate,\
                 realword_total,realword_corrected,realword_not_or_falsely,realword_rate,\
                 overall_corrected,overall_not_or_falsely,overall_rate\n",
            );
            out.push_str(&format!(
                "{},{},{},{},{},{:.4},{},{},{},{:.4},{},{},{:.4}\n",
                report.total_words,
                report.total_errors,
                report.nonword.total,
                report.nonword.corrected,
                report.nonword.not_or_falsely_corrected,
                report.nonword.rate,
                report.realword.total,
                report.realword.corrected,
                report.realword.not_or_falsely_corrected,
                report.realword.rate,
                report.overall.corrected,
                report.overall.not_or_falsely_corrected,
                report.overall.rate,
            ));
            out
        }
        ReportFormat::Table => {
            let mut out = format!("word tokens: {}\n\n", report.total_words);
            out.push_str(&format!(
                "{:<11} {:>7} {:>10} {:>12} {:>6}\n",
                "band", "total", "corrected", "not/falsely", "rate"
            ));
            for (name, class) in [
                ("total", &report.overall),
                ("non-word", &report.nonword),
                ("real-word", &report.realword),
            ] {
                out.push_str(&format!(
                    "{:<11} {:>7} {:>10} {:>12} {:>6}\n",
                    name,
                    class.total,
                    class.corrected,
                    class.not_or_falsely_corrected,
                    percent(class.rate),
                ));
            }
            out
        }
    }
}

fn percent(rate: f64) -> String {
    format!("{}%", (rate * 100.0).round() as i64)
}

/// One CSV row per induced error, with the per-instance outcome that the
/// aggregated report folds into "not/falsely corrected".
pub fn audit_csv(gold: &[InducedError], corrections: &[Correction]) -> String {
    let applied = applied_by_index(corrections);
    let mut out =
        String::from("token_index,kind,op,original,corrupted,system_replacement,outcome\n");
    for error in gold {
        let replacement = applied.get(&error.token_index).copied();
        let outcome = match replacement {
            Some(chosen) if chosen.to_lowercase() == error.original.to_lowercase() => "corrected",
            Some(_) => "falsely_corrected",
            None => "not_corrected",
        };
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            error.token_index,
            error.kind.label(),
            error.op,
            error.original,
            error.corrupted,
            replacement.unwrap_or(""),
            outcome,
        ));
    }
    out
}
