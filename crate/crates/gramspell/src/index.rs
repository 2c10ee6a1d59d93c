//! Immutable sorted n-gram count tables.
//!
//! The index holds one table per order (1 through 5). Tokens are interned
//! into a sorted pool and every key is a sequence of pool ids, so key order
//! matches lexicographic token-sequence order and every lookup is a binary
//! search. Once built, an index never changes; it can be shared across
//! threads freely.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::Path;

use crate::error::{Error, Result};
use crate::tokenize::tokenize;
use crate::web1t::parse_count_line;

/// Highest n-gram order stored.
pub const MAX_ORDER: usize = 5;

/// Sentence-start marker inserted by corpus builds. The tokenizer strips
/// angle brackets from real text, so this token can never collide with an
/// actual word.
pub const SENTENCE_START: &str = "<s>";

const PAD: u32 = u32::MAX;
type Key = [u32; MAX_ORDER];

/// One sorted order table: `keys` holds `order` ids per entry, flattened.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub(crate) struct OrderTable {
    pub(crate) order: usize,
    pub(crate) keys: Vec<u32>,
    pub(crate) counts: Vec<u64>,
}

impl OrderTable {
    fn get(&self, key: &[u32]) -> Option<u64> {
        debug_assert_eq!(key.len(), self.order);
        let n = self.order;
        let mut lo = 0;
        let mut hi = self.counts.len();
        while lo < hi {
            let mid = lo + (hi - lo) / 2;
            let probe = &self.keys[mid * n..mid * n + n];
            match probe.cmp(key) {
                Ordering::Less => lo = mid + 1,
                Ordering::Greater => hi = mid,
                Ordering::Equal => return Some(self.counts[mid]),
            }
        }
        None
    }

    pub(crate) fn len(&self) -> usize {
        self.counts.len()
    }
}

/// Immutable per-order sorted n-gram count index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NGramIndex {
    /// Sorted unique token pool; ids are ranks in this vector.
    tokens: Vec<String>,
    tables: [OrderTable; MAX_ORDER],
    total_unigram_tokens: u64,
}

impl NGramIndex {
    /// Ingest Web-1T-style count files. Duplicate keys, within or across
    /// files, merge by summing.
    pub fn from_count_files<P: AsRef<Path>>(paths: &[P]) -> Result<Self> {
        let mut builder = IndexBuilder::default();
        for path in paths {
            let path = path.as_ref();
            let io_err = |source| Error::Io {
                path: path.to_path_buf(),
                source,
            };
            let file = File::open(path).map_err(io_err)?;
            for (line_no, line) in BufReader::new(file).lines().enumerate() {
                let line = line.map_err(io_err)?;
                if line.trim().is_empty() {
                    continue;
                }
                let entry = parse_count_line(&line).map_err(|e| Error::CountFile {
                    path: path.to_path_buf(),
                    line: line_no + 1,
                    source: Box::new(e),
                })?;
                builder.add_entry(&entry.tokens, entry.count);
            }
        }
        Ok(builder.finish(1))
    }

    /// Build an index from raw text: every within-sentence token window of
    /// length 1..=`max_order` is counted, with a [`SENTENCE_START`] marker
    /// prefixed to each sentence. Entries below `min_count` are dropped.
    pub fn from_corpus(corpus: &str, max_order: usize, min_count: u64) -> Result<Self> {
        if !(1..=MAX_ORDER).contains(&max_order) {
            return Err(Error::InvalidMaxOrder(max_order));
        }
        let stream = tokenize(corpus);
        let mut builder = IndexBuilder::default();
        let marker = builder.intern(SENTENCE_START);
        let mut word_total = 0usize;

        let mut starts = stream.sentence_starts.clone();
        starts.push(stream.len());
        let mut seq: Vec<u32> = Vec::new();
        for bounds in starts.windows(2) {
            seq.clear();
            seq.push(marker);
            for token in &stream.tokens[bounds[0]..bounds[1]] {
                if token.is_word {
                    seq.push(builder.intern(&token.normalized));
                }
            }
            if seq.len() == 1 {
                continue; // no words in this sentence
            }
            word_total += seq.len() - 1;
            for order in 1..=max_order {
                for window in seq.windows(order) {
                    builder.add_ids(window, 1);
                }
            }
        }

        if word_total == 0 {
            return Err(Error::EmptyCorpus);
        }
        Ok(builder.finish(min_count.max(1)))
    }

    /// Assemble an index directly from (tokens, count) pairs. Intended for
    /// fixtures and synthetic tables; duplicates merge by summing.
    pub fn from_entries<I, S>(entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<S>, u64)>,
        S: AsRef<str>,
    {
        let mut builder = IndexBuilder::default();
        for (tokens, count) in entries {
            if tokens.is_empty() || tokens.len() > MAX_ORDER {
                return Err(Error::InvalidArity(tokens.len()));
            }
            builder.add_entry(&tokens, count);
        }
        Ok(builder.finish(1))
    }

    /// Exact stored count for a 1..=5 token sequence, 0 when absent.
    /// Tokens are lowercased before the probe.
    pub fn lookup<S: AsRef<str>>(&self, tokens: &[S]) -> Result<u64> {
        if tokens.is_empty() || tokens.len() > MAX_ORDER {
            return Err(Error::InvalidArity(tokens.len()));
        }
        let mut key = [0u32; MAX_ORDER];
        for (slot, token) in key.iter_mut().zip(tokens) {
            match self.token_id(&token.as_ref().to_lowercase()) {
                Some(id) => *slot = id,
                None => return Ok(0),
            }
        }
        let table = &self.tables[tokens.len() - 1];
        Ok(table.get(&key[..tokens.len()]).unwrap_or(0))
    }

    /// True iff the order-1 table holds `word` (lowercased). The empty
    /// token is never stored and always answers false.
    pub fn contains_unigram(&self, word: &str) -> bool {
        if word.is_empty() {
            return false;
        }
        match self.token_id(&word.to_lowercase()) {
            Some(id) => self.tables[0].get(&[id]).is_some(),
            None => false,
        }
    }

    /// Unigram count of `word`, 0 when absent.
    pub fn unigram_count(&self, word: &str) -> u64 {
        if word.is_empty() {
            return 0;
        }
        self.token_id(&word.to_lowercase())
            .and_then(|id| self.tables[0].get(&[id]))
            .unwrap_or(0)
    }

    /// Sum of all order-1 counts (the corpus token total N).
    pub fn total_unigram_tokens(&self) -> u64 {
        self.total_unigram_tokens
    }

    /// Number of stored entries of the given order.
    pub fn entry_count(&self, order: usize) -> usize {
        assert!((1..=MAX_ORDER).contains(&order), "order out of range");
        self.tables[order - 1].len()
    }

    pub fn is_empty(&self) -> bool {
        self.tables.iter().all(|t| t.len() == 0)
    }

    /// Unigram vocabulary in sorted order, with counts. The enumeration
    /// rank is the dense vocabulary id used by the bigram postings.
    pub fn unigrams(&self) -> impl Iterator<Item = (&str, u64)> {
        let table = &self.tables[0];
        table
            .keys
            .iter()
            .zip(&table.counts)
            .map(move |(&id, &count)| (self.tokens[id as usize].as_str(), count))
    }

    /// All entries of one order, in key order.
    pub fn entries(&self, order: usize) -> impl Iterator<Item = (Vec<&str>, u64)> {
        assert!((1..=MAX_ORDER).contains(&order), "order out of range");
        let table = &self.tables[order - 1];
        table
            .keys
            .chunks_exact(order)
            .zip(&table.counts)
            .map(move |(key, &count)| {
                let tokens = key
                    .iter()
                    .map(|&id| self.tokens[id as usize].as_str())
                    .collect();
                (tokens, count)
            })
    }

    fn token_id(&self, token: &str) -> Option<u32> {
        self.tokens
            .binary_search_by(|probe| probe.as_str().cmp(token))
            .ok()
            .map(|i| i as u32)
    }

    pub(crate) fn from_parts(
        tokens: Vec<String>,
        tables: [OrderTable; MAX_ORDER],
        total_unigram_tokens: u64,
    ) -> Self {
        NGramIndex {
            tokens,
            tables,
            total_unigram_tokens,
        }
    }

    pub(crate) fn token_pool(&self) -> &[String] {
        &self.tokens
    }

    pub(crate) fn table(&self, order: usize) -> &OrderTable {
        &self.tables[order - 1]
    }
}

/// Accumulates entries with first-come interning, then freezes into the
/// sorted immutable form.
#[derive(Debug, Default)]
struct IndexBuilder {
    pool: Vec<String>,
    ids: HashMap<String, u32>,
    maps: [HashMap<Key, u64>; MAX_ORDER],
}

impl IndexBuilder {
    /// Intern a token, lowercasing it first.
    fn intern(&mut self, token: &str) -> u32 {
        let token = token.to_lowercase();
        if let Some(&id) = self.ids.get(&token) {
            return id;
        }
        let id = self.pool.len() as u32;
        self.pool.push(token.clone());
        self.ids.insert(token, id);
        id
    }

    fn add_ids(&mut self, ids: &[u32], count: u64) {
        debug_assert!((1..=MAX_ORDER).contains(&ids.len()));
        if count == 0 {
            return;
        }
        let mut key = [PAD; MAX_ORDER];
        key[..ids.len()].copy_from_slice(ids);
        *self.maps[ids.len() - 1].entry(key).or_insert(0) += count;
    }

    fn add_entry<S: AsRef<str>>(&mut self, tokens: &[S], count: u64) {
        if count == 0 {
            return;
        }
        let ids: Vec<u32> = tokens.iter().map(|t| self.intern(t.as_ref())).collect();
        self.add_ids(&ids, count);
    }

    fn finish(mut self, min_count: u64) -> NGramIndex {
        for map in &mut self.maps {
            map.retain(|_, count| *count >= min_count);
        }

        // Keep only tokens that survive the threshold, sorted.
        let mut used = vec![false; self.pool.len()];
        for (order_idx, map) in self.maps.iter().enumerate() {
            for key in map.keys() {
                for &id in &key[..=order_idx] {
                    used[id as usize] = true;
                }
            }
        }
        let mut retained: Vec<u32> = (0..self.pool.len() as u32)
            .filter(|&i| used[i as usize])
            .collect();
        retained.sort_unstable_by_key(|&id| &self.pool[id as usize]);

        let mut remap = vec![PAD; self.pool.len()];
        let mut tokens = Vec::with_capacity(retained.len());
        for (new_id, &old_id) in retained.iter().enumerate() {
            remap[old_id as usize] = new_id as u32;
            tokens.push(std::mem::take(&mut self.pool[old_id as usize]));
        }

        let mut tables: [OrderTable; MAX_ORDER] = Default::default();
        for (order_idx, map) in self.maps.iter().enumerate() {
            let order = order_idx + 1;
            let mut entries: Vec<(Key, u64)> = map
                .iter()
                .map(|(key, &count)| {
                    let mut mapped = [PAD; MAX_ORDER];
                    for (slot, &id) in mapped.iter_mut().zip(key.iter()).take(order) {
                        *slot = remap[id as usize];
                    }
                    (mapped, count)
                })
                .collect();
            entries.sort_unstable_by_key(|entry| entry.0);

            let mut keys = Vec::with_capacity(entries.len() * order);
            let mut counts = Vec::with_capacity(entries.len());
            for (key, count) in entries {
                keys.extend_from_slice(&key[..order]);
                counts.push(count);
            }
            tables[order_idx] = OrderTable {
                order,
                keys,
                counts,
            };
        }

        let total_unigram_tokens = tables[0].counts.iter().sum();
        NGramIndex::from_parts(tokens, tables, total_unigram_tokens)
    }
}
