//! Position-preserving tokenizer.
//!
//! Text is split on whitespace; leading and trailing punctuation runs are
//! then peeled off into their own non-word tokens so that `"world."` never
//! hides the dictionary word `world`. Sentence boundaries are recorded at
//! `.`, `!` or `?` followed by whitespace, and context windows never cross
//! them.

/// A single token with its position in the source text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    /// The original text slice.
    pub surface: String,
    /// Lowercased form used for every index lookup.
    pub normalized: String,
    /// Byte offsets `(start, end)` into the source.
    pub span: (usize, usize),
    /// Ordinal position in the token sequence.
    pub index: usize,
    /// False for pure punctuation and pure number tokens.
    pub is_word: bool,
}

/// Tokens plus the sentence boundaries the tokenizer found.
#[derive(Debug, Clone, Default)]
pub struct TokenStream {
    pub tokens: Vec<Token>,
    /// Token indexes at which each sentence starts. Non-empty whenever
    /// `tokens` is, and always begins with 0.
    pub sentence_starts: Vec<usize>,
}

impl TokenStream {
    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    /// Index of the first token of the sentence containing `token_index`.
    pub fn sentence_start_of(&self, token_index: usize) -> usize {
        match self.sentence_starts.binary_search(&token_index) {
            Ok(pos) => self.sentence_starts[pos],
            Err(pos) => self.sentence_starts[pos - 1],
        }
    }

    /// Word tokens only, in text order.
    pub fn words(&self) -> impl Iterator<Item = &Token> {
        self.tokens.iter().filter(|t| t.is_word)
    }

    pub fn word_count(&self) -> usize {
        self.words().count()
    }

    /// Rebuild the source text, substituting `replacements[i]` for the
    /// surface of token `i` where present.
    pub fn render(&self, source: &str, replacements: &dyn Fn(usize) -> Option<String>) -> String {
        let mut out = String::with_capacity(source.len());
        let mut cursor = 0;
        for token in &self.tokens {
            out.push_str(&source[cursor..token.span.0]);
            match replacements(token.index) {
                Some(r) => out.push_str(&r),
                None => out.push_str(&token.surface),
            }
            cursor = token.span.1;
        }
        out.push_str(&source[cursor..]);
        out
    }
}

fn is_word_char(c: char) -> bool {
    c.is_alphanumeric()
}

/// Tokenize `text`, preserving byte spans and sentence boundaries.
///
/// Whitespace-separated chunks are emitted as up to three tokens: a leading
/// punctuation run, the core, and a trailing punctuation run. Inner
/// punctuation (hyphens, apostrophes) stays inside the core token. A core
/// with no alphabetic character (pure number, pure symbol) is not a word.
pub fn tokenize(text: &str) -> TokenStream {
    let mut stream = TokenStream::default();
    let mut pending_break = false;

    for (chunk, start) in chunks(text) {
        let end = start + chunk.len();
        let core_start = chunk
            .char_indices()
            .find(|&(_, c)| is_word_char(c))
            .map(|(i, _)| i);

        let Some(core_start) = core_start else {
            // Pure punctuation chunk.
            push_token(&mut stream, &mut pending_break, chunk, (start, end), false);
            pending_break |= ends_sentence(chunk, text, end);
            continue;
        };

        let core_end = chunk
            .char_indices()
            .rev()
            .find(|&(_, c)| is_word_char(c))
            .map(|(i, c)| i + c.len_utf8())
            .expect("a word char was found scanning forward");

        if core_start > 0 {
            let lead = &chunk[..core_start];
            push_token(
                &mut stream,
                &mut pending_break,
                lead,
                (start, start + core_start),
                false,
            );
        }
        let core = &chunk[core_start..core_end];
        let is_word = core.chars().any(|c| c.is_alphabetic());
        push_token(
            &mut stream,
            &mut pending_break,
            core,
            (start + core_start, start + core_end),
            is_word,
        );
        if core_end < chunk.len() {
            let trailer = &chunk[core_end..];
            push_token(
                &mut stream,
                &mut pending_break,
                trailer,
                (start + core_end, end),
                false,
            );
            pending_break |= ends_sentence(trailer, text, end);
        }
    }

    stream
}

fn push_token(
    stream: &mut TokenStream,
    pending_break: &mut bool,
    surface: &str,
    span: (usize, usize),
    is_word: bool,
) {
    let index = stream.tokens.len();
    if index == 0 || *pending_break {
        stream.sentence_starts.push(index);
        *pending_break = false;
    }
    stream.tokens.push(Token {
        surface: surface.to_string(),
        normalized: surface.to_lowercase(),
        span,
        index,
        is_word,
    });
}

/// Whitespace-separated chunks with their byte offsets.
fn chunks(text: &str) -> impl Iterator<Item = (&str, usize)> {
    text.split_whitespace()
        .map(move |chunk| (chunk, chunk.as_ptr() as usize - text.as_ptr() as usize))
}

/// A punctuation run ends a sentence when it contains `.`, `!` or `?` and
/// the source continues with whitespace.
fn ends_sentence(punct: &str, text: &str, end: usize) -> bool {
    punct.chars().any(|c| matches!(c, '.' | '!' | '?'))
        && text[end..].chars().next().is_some_and(char::is_whitespace)
}
