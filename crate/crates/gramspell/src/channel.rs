//! Noisy channel and n-gram chain baselines.
//!
//! The prior is the add-half estimate `(C(w) + 0.5) / (N + 0.5)`, written
//! exactly that way: the denominator does not scale with the vocabulary, so
//! priors do not sum to 1 and no normalization is assumed anywhere. The
//! likelihood is a per-edit decay, `delta ^ damerau_distance`, standing in
//! for a learned confusion model.

use std::collections::HashMap;

use crate::distance::damerau_levenshtein;
use crate::error::{Error, Result};
use crate::index::{NGramIndex, SENTENCE_START};

/// Word-frequency prior over a corpus of `n` total tokens.
#[derive(Debug, Clone)]
pub struct PriorModel {
    n: u64,
    counts: HashMap<String, u64>,
}

impl PriorModel {
    /// Build from explicit counts. `n` must be positive.
    pub fn from_counts<I, S>(counts: I, n: u64) -> Result<Self>
    where
        I: IntoIterator<Item = (S, u64)>,
        S: Into<String>,
    {
        if n == 0 {
            return Err(Error::EmptyPriorModel);
        }
        let counts = counts
            .into_iter()
            .map(|(w, c)| (w.into().to_lowercase(), c))
            .collect();
        Ok(PriorModel { n, counts })
    }

    /// Snapshot the unigram table of an index; `n` is the index's total
    /// token count.
    pub fn from_index(index: &NGramIndex) -> Result<Self> {
        Self::from_counts(
            index.unigrams().map(|(w, c)| (w.to_string(), c)),
            index.total_unigram_tokens(),
        )
    }

    pub fn total_tokens(&self) -> u64 {
        self.n
    }

    pub fn count(&self, word: &str) -> u64 {
        self.counts.get(&word.to_lowercase()).copied().unwrap_or(0)
    }

    /// `P(w) = (C(w) + 0.5) / (N + 0.5)`; strictly positive for any word.
    pub fn prior(&self, word: &str) -> f64 {
        (self.count(word) as f64 + 0.5) / (self.n as f64 + 0.5)
    }
}

/// Parameters of the error channel.
#[derive(Debug, Clone, Copy)]
pub struct ChannelParams {
    /// Per-edit decay in (0, 1).
    pub delta: f64,
}

impl Default for ChannelParams {
    fn default() -> Self {
        ChannelParams { delta: 0.05 }
    }
}

impl ChannelParams {
    pub fn new(delta: f64) -> Result<Self> {
        if !(delta > 0.0 && delta < 1.0) {
            return Err(Error::InvalidDecay(delta));
        }
        Ok(ChannelParams { delta })
    }
}

/// `P(observed | word) = delta ^ d`, with `d` the Damerau-Levenshtein
/// distance (one edit also covers adjacent transposition). Equals 1 when
/// the observation already is the word.
pub fn likelihood(observed: &str, word: &str, params: &ChannelParams) -> f64 {
    params
        .delta
        .powi(damerau_levenshtein(observed, word) as i32)
}

/// Pick the candidate maximizing `P(observed | w) * P(w)`. Ties break
/// toward the lexicographically smallest word.
pub fn noisy_channel_rank<'a>(
    observed: &str,
    candidates: &[&'a str],
    prior_model: &PriorModel,
    params: &ChannelParams,
) -> Result<&'a str> {
    let mut best: Option<(&str, f64)> = None;
    for &candidate in candidates {
        let score = likelihood(observed, candidate, params) * prior_model.prior(candidate);
        best = match best {
            None => Some((candidate, score)),
            Some((w, s)) if score > s || (score == s && candidate < w) => Some((candidate, score)),
            keep => keep,
        };
    }
    best.map(|(w, _)| w).ok_or(Error::NoCandidates)
}

/// Probability of a token sequence under the bigram chain
/// `prod_k count(w_{k-1} w_k) / count(w_{k-1})`, with the sentence-start
/// marker as `w_0`. Any unseen bigram or zero denominator makes the whole
/// product 0; the empty sequence has probability 1.
pub fn bigram_chain_prob<S: AsRef<str>>(tokens: &[S], index: &NGramIndex) -> f64 {
    let mut prob = 1.0;
    let mut previous = SENTENCE_START.to_string();
    for token in tokens {
        let token = token.as_ref().to_lowercase();
        let pair = index
            .lookup(&[previous.as_str(), token.as_str()])
            .expect("two tokens is a valid arity");
        let single = index.unigram_count(&previous);
        if pair == 0 || single == 0 {
            return 0.0;
        }
        // Hand-written count files may be inconsistent; cap each factor.
        prob *= (pair as f64 / single as f64).min(1.0);
        previous = token;
    }
    prob
}
