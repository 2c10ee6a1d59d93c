//! Web-1T-style count file parsing.
//!
//! The canonical line format is the one the real data set ships: tokens
//! separated by single spaces, a TAB, then the decimal count. Lines in the
//! display form `tok1 tok2 (count)` are also accepted so that published
//! example lists can be pasted straight into fixture files.

use crate::error::{Error, Result};
use crate::index::MAX_ORDER;

/// One n-gram/count pair as read from a count file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NGramEntry {
    pub tokens: Vec<String>,
    pub count: u64,
}

/// Parse a single count line.
///
/// ```
/// let entry = gramspell::parse_count_line("serve as the index\t223").unwrap();
/// assert_eq!(entry.tokens, ["serve", "as", "the", "index"]);
/// assert_eq!(entry.count, 223);
/// ```
pub fn parse_count_line(line: &str) -> Result<NGramEntry> {
    let malformed = |reason: &str| Error::MalformedCountLine {
        line: line.to_string(),
        reason: reason.to_string(),
    };

    if line.trim().is_empty() {
        return Err(malformed("empty line"));
    }

    let (token_part, count_part) = if let Some((tokens, count)) = line.split_once('\t') {
        (tokens, count.trim())
    } else if let Some(open) = line.rfind('(') {
        let rest = line[open + 1..].trim_end();
        let Some(count) = rest.strip_suffix(')') else {
            return Err(malformed(
                "no TAB-separated count and no trailing \"(count)\"",
            ));
        };
        (&line[..open], count.trim())
    } else {
        return Err(malformed("no count field"));
    };

    let count: u64 = count_part
        .parse()
        .map_err(|_| malformed("count is not a non-negative integer"))?;

    let tokens: Vec<String> = token_part
        .trim_end()
        .split(' ')
        .map(str::to_string)
        .collect();
    if tokens.iter().any(String::is_empty) {
        return Err(malformed("empty token (repeated or leading space)"));
    }
    if tokens.len() > MAX_ORDER {
        return Err(malformed("more than 5 tokens"));
    }
    if tokens.iter().any(|t| t.chars().any(char::is_whitespace)) {
        return Err(malformed("token contains whitespace"));
    }

    Ok(NGramEntry { tokens, count })
}
