//! String distance baselines: Levenshtein, Damerau-Levenshtein (optimal
//! string alignment), Hamming, and longest common subsequence.
//!
//! All functions operate on Unicode scalar values, not bytes.

use crate::error::{Error, Result};

/// Minimum insertions, deletions and substitutions transforming `x` into `y`.
///
/// ```
/// assert_eq!(gramspell::levenshtein("cat", "dog"), 3);
/// assert_eq!(gramspell::levenshtein("ping", "rings"), 2);
/// ```
pub fn levenshtein(x: &str, y: &str) -> usize {
    let x: Vec<char> = x.chars().collect();
    let y: Vec<char> = y.chars().collect();
    if x.is_empty() {
        return y.len();
    }
    if y.is_empty() {
        return x.len();
    }

    let mut row: Vec<usize> = (0..=y.len()).collect();
    for (i, &cx) in x.iter().enumerate() {
        let mut diagonal = row[0];
        row[0] = i + 1;
        for (j, &cy) in y.iter().enumerate() {
            let cost = usize::from(cx != cy);
            let next = (diagonal + cost).min(row[j] + 1).min(row[j + 1] + 1);
            diagonal = row[j + 1];
            row[j + 1] = next;
        }
    }
    row[y.len()]
}

/// Levenshtein plus adjacent transposition (optimal string alignment
/// variant: no substring is edited twice).
pub fn damerau_levenshtein(x: &str, y: &str) -> usize {
    let x: Vec<char> = x.chars().collect();
    let y: Vec<char> = y.chars().collect();
    if x.is_empty() {
        return y.len();
    }
    if y.is_empty() {
        return x.len();
    }

    let width = y.len() + 1;
    let mut two_back: Vec<usize> = vec![0; width];
    let mut prev: Vec<usize> = (0..width).collect();
    let mut current: Vec<usize> = vec![0; width];

    for i in 0..x.len() {
        current[0] = i + 1;
        for j in 0..y.len() {
            let cost = usize::from(x[i] != y[j]);
            let mut best = (prev[j] + cost).min(prev[j + 1] + 1).min(current[j] + 1);
            if i > 0 && j > 0 && x[i] == y[j - 1] && x[i - 1] == y[j] && x[i] != y[j] {
                best = best.min(two_back[j - 1] + 1);
            }
            current[j + 1] = best;
        }
        std::mem::swap(&mut two_back, &mut prev);
        std::mem::swap(&mut prev, &mut current);
    }
    prev[y.len()]
}

/// Number of positions at which two equal-length strings differ.
pub fn hamming(x: &str, y: &str) -> Result<usize> {
    let lx = x.chars().count();
    let ly = y.chars().count();
    if lx != ly {
        return Err(Error::UnequalLengths {
            left: lx,
            right: ly,
        });
    }
    Ok(x.chars().zip(y.chars()).filter(|(a, b)| a != b).count())
}

/// Longest common subsequence: length plus one witness.
///
/// The witness is the subsequence obtained by tracing the DP table from the
/// end, preferring a character match, then moving up, then left — fixed so
/// results are reproducible when several subsequences tie.
pub fn lcs(x: &str, y: &str) -> (usize, String) {
    let x: Vec<char> = x.chars().collect();
    let y: Vec<char> = y.chars().collect();
    let (m, n) = (x.len(), y.len());
    let width = n + 1;
    let mut dp = vec![0usize; (m + 1) * width];
    for i in 1..=m {
        for j in 1..=n {
            dp[i * width + j] = if x[i - 1] == y[j - 1] {
                dp[(i - 1) * width + j - 1] + 1
            } else {
                dp[(i - 1) * width + j].max(dp[i * width + j - 1])
            };
        }
    }

    let mut witness = Vec::new();
    let (mut i, mut j) = (m, n);
    while i > 0 && j > 0 {
        if x[i - 1] == y[j - 1] {
            witness.push(x[i - 1]);
            i -= 1;
            j -= 1;
        } else if dp[(i - 1) * width + j] >= dp[i * width + j - 1] {
            i -= 1;
        } else {
            j -= 1;
        }
    }
    witness.reverse();
    (dp[m * width + n], witness.into_iter().collect())
}
