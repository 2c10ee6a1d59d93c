//! Versioned binary artifact for [`NGramIndex`].
//!
//! Layout (all integers little-endian):
//!
//! ```text
//! magic "NGIX" | version u32 | token_count u64 | total_unigram_tokens u64
//! entry counts per order [u64; 5]
//! section offsets [u64; 6]           token block + one block per order
//! token block: (len u32, utf8 bytes) per token, in sorted id order
//! order block n: keys (entries*n u32s), then counts (entries u64s)
//! sha256 over everything above (32 bytes)
//! ```
//!
//! Loading verifies the magic, version and checksum before touching any
//! payload, so a truncated or bit-flipped artifact is rejected outright.

use std::path::Path;

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::index::{NGramIndex, OrderTable, MAX_ORDER};

const MAGIC: &[u8; 4] = b"NGIX";
const VERSION: u32 = 1;
const CHECKSUM_LEN: usize = 32;

impl NGramIndex {
    /// Serialize the index to its binary artifact form.
    pub fn to_bytes(&self) -> Vec<u8> {
        let tokens = self.token_pool();
        let mut buf = Vec::new();
        buf.extend_from_slice(MAGIC);
        buf.extend_from_slice(&VERSION.to_le_bytes());
        buf.extend_from_slice(&(tokens.len() as u64).to_le_bytes());
        buf.extend_from_slice(&self.total_unigram_tokens().to_le_bytes());
        for order in 1..=MAX_ORDER {
            buf.extend_from_slice(&(self.entry_count(order) as u64).to_le_bytes());
        }

        let directory_at = buf.len();
        buf.extend_from_slice(&[0u8; 8 * (MAX_ORDER + 1)]);

        let mut offsets = [0u64; MAX_ORDER + 1];
        offsets[0] = buf.len() as u64;
        for token in tokens {
            buf.extend_from_slice(&(token.len() as u32).to_le_bytes());
            buf.extend_from_slice(token.as_bytes());
        }
        for (order, offset) in offsets.iter_mut().enumerate().skip(1) {
            *offset = buf.len() as u64;
            let table = self.table(order);
            for id in &table.keys {
                buf.extend_from_slice(&id.to_le_bytes());
            }
            for count in &table.counts {
                buf.extend_from_slice(&count.to_le_bytes());
            }
        }
        for (i, offset) in offsets.iter().enumerate() {
            buf[directory_at + i * 8..directory_at + (i + 1) * 8]
                .copy_from_slice(&offset.to_le_bytes());
        }

        let digest = Sha256::digest(&buf);
        buf.extend_from_slice(&digest);
        buf
    }

    /// Write the binary artifact to `path`.
    pub fn save<P: AsRef<Path>>(&self, path: P) -> Result<()> {
        let path = path.as_ref();
        std::fs::write(path, self.to_bytes()).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })
    }

    /// Reconstruct an index from artifact bytes.
    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        let corrupt = |reason: &str| Error::CorruptArtifact(reason.to_string());

        let header_len = 4 + 4 + 8 + 8 + 8 * MAX_ORDER + 8 * (MAX_ORDER + 1);
        if bytes.len() < header_len + CHECKSUM_LEN {
            return Err(corrupt("artifact shorter than its fixed header"));
        }
        if &bytes[0..4] != MAGIC {
            return Err(corrupt("bad magic"));
        }
        let version = u32::from_le_bytes(bytes[4..8].try_into().unwrap());
        if version != VERSION {
            return Err(Error::VersionMismatch {
                found: version,
                expected: VERSION,
            });
        }
        let (payload, checksum) = bytes.split_at(bytes.len() - CHECKSUM_LEN);
        if Sha256::digest(payload).as_slice() != checksum {
            return Err(corrupt("checksum mismatch"));
        }

        let mut reader = Reader {
            bytes: payload,
            at: 8,
        };
        let token_count = reader.u64()? as usize;
        let total_unigram_tokens = reader.u64()?;
        let mut entry_counts = [0usize; MAX_ORDER];
        for slot in &mut entry_counts {
            *slot = reader.u64()? as usize;
        }
        let mut offsets = [0u64; MAX_ORDER + 1];
        for slot in &mut offsets {
            *slot = reader.u64()?;
        }

        if offsets[0] as usize != reader.at {
            return Err(corrupt("token block offset does not follow the header"));
        }
        let mut tokens = Vec::with_capacity(token_count);
        for _ in 0..token_count {
            let len = reader.u32()? as usize;
            let raw = reader.take(len)?;
            let token =
                std::str::from_utf8(raw).map_err(|_| corrupt("token block is not valid UTF-8"))?;
            tokens.push(token.to_string());
        }

        let mut tables: [OrderTable; MAX_ORDER] = Default::default();
        for (order_idx, table) in tables.iter_mut().enumerate() {
            let order = order_idx + 1;
            if offsets[order] as usize != reader.at {
                return Err(corrupt("order block offset mismatch"));
            }
            let entries = entry_counts[order_idx];
            let mut keys = Vec::with_capacity(entries * order);
            for _ in 0..entries * order {
                let id = reader.u32()?;
                if id as usize >= token_count {
                    return Err(corrupt("key references a token beyond the pool"));
                }
                keys.push(id);
            }
            let mut counts = Vec::with_capacity(entries);
            for _ in 0..entries {
                counts.push(reader.u64()?);
            }
            *table = OrderTable {
                order,
                keys,
                counts,
            };
        }
        if reader.at != payload.len() {
            return Err(corrupt("trailing bytes after the last order block"));
        }

        Ok(NGramIndex::from_parts(tokens, tables, total_unigram_tokens))
    }

    /// Load an artifact produced by [`NGramIndex::save`].
    pub fn load<P: AsRef<Path>>(path: P) -> Result<Self> {
        let path = path.as_ref();
        let bytes = std::fs::read(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::from_bytes(&bytes)
    }
}

struct Reader<'a> {
    bytes: &'a [u8],
    at: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, len: usize) -> Result<&'a [u8]> {
        let end = self
            .at
            .checked_add(len)
            .filter(|&end| end <= self.bytes.len())
            .ok_or_else(|| Error::CorruptArtifact("unexpected end of artifact".to_string()))?;
        let out = &self.bytes[self.at..end];
        self.at = end;
        Ok(out)
    }

    fn u32(&mut self) -> Result<u32> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().unwrap()))
    }

    fn u64(&mut self) -> Result<u64> {
        Ok(u64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }
}
