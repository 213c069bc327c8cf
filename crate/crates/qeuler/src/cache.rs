//! Versioned on-disk store for computed `E_{n|k}(q)` polynomials.
//!
//! The format is a plain text document so that arbitrary-precision
//! coefficients stay exact and diffs stay readable:
//!
//! ```text
//! qeuler-cache v1
//! 0 3 1
//! 4 3 0;1;1;1
//! 5 3 0;1;2;2;2;1;1
//! ```
//!
//! Line one is the header with the format version. Every other line is one
//! entry: `n k coeffs`, where `coeffs` are the coefficients of `q^0, q^1,
//! ...` as semicolon-joined decimal strings with a nonzero last entry. The
//! zero polynomial is written as the single token `0`. Entries are sorted
//! by `(k, n)` on write, so serialization is canonical: load followed by
//! save is byte-identical.
//!
//! Parsing is strict. Unknown versions, malformed lines, duplicate keys,
//! and non-normalized coefficient lists are all rejected up front, and a
//! rejected document loads nothing.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::Path;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::euler::EulerKey;
use crate::polyarith::QPolynomial;

/// Version written to and accepted from the header line.
pub const CACHE_FORMAT_VERSION: u32 = 1;

const HEADER_PREFIX: &str = "qeuler-cache v";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CacheParseError {
    #[error("missing or malformed header; expected `{HEADER_PREFIX}<version>`")]
    MalformedHeader,
    #[error(
        "incompatible cache format version {found} (this build reads \
         version {CACHE_FORMAT_VERSION}); nothing was loaded"
    )]
    VersionMismatch { found: u32 },
    #[error("line {line}: {reason}")]
    MalformedEntry { line: usize, reason: String },
    #[error("line {line}: duplicate entry for n={n} k={k}")]
    DuplicateEntry { line: usize, n: u32, k: u32 },
}

/// I/O wrapper for loading and saving a store at a path.
#[derive(Debug, Error)]
pub enum CacheIoError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: io::Error,
    },
    #[error("{path}: {source}")]
    Parse {
        path: String,
        #[source]
        source: CacheParseError,
    },
}

/// A persisted map from [`EulerKey`] to its polynomial.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CacheStore {
    entries: BTreeMap<EulerKey, QPolynomial>,
}

impl CacheStore {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, key: EulerKey, poly: QPolynomial) {
        self.entries.insert(key, poly);
    }

    pub fn get(&self, key: &EulerKey) -> Option<&QPolynomial> {
        self.entries.get(key)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entries in `(k, n)` order.
    pub fn iter(&self) -> impl Iterator<Item = (&EulerKey, &QPolynomial)> {
        self.entries.iter()
    }

    /// Copies every entry of `other` into `self`; `other` wins on clashes.
    pub fn merge(&mut self, other: CacheStore) {
        self.entries.extend(other.entries);
    }

    /// Parses a complete cache document.
    pub fn parse(text: &str) -> Result<Self, CacheParseError> {
        let lines: Vec<&str> = text.split('\n').collect();
        let header = lines.first().ok_or(CacheParseError::MalformedHeader)?;
        let version: u32 = header
            .strip_prefix(HEADER_PREFIX)
            .and_then(|v| v.parse().ok())
            .ok_or(CacheParseError::MalformedHeader)?;
        if version != CACHE_FORMAT_VERSION {
            return Err(CacheParseError::VersionMismatch { found: version });
        }
        let mut store = CacheStore::new();
        for (idx, &line) in lines.iter().enumerate().skip(1) {
            let line_no = idx + 1;
            if line.is_empty() {
                // only a trailing final newline is tolerated
                if idx + 1 == lines.len() {
                    break;
                }
                return Err(CacheParseError::MalformedEntry {
                    line: line_no,
                    reason: "blank line".into(),
                });
            }
            let (key, poly) = parse_entry(line, line_no)?;
            if store.entries.contains_key(&key) {
                return Err(CacheParseError::DuplicateEntry {
                    line: line_no,
                    n: key.n(),
                    k: key.k(),
                });
            }
            store.entries.insert(key, poly);
        }
        Ok(store)
    }

    /// Canonical text form: header plus entries sorted by `(k, n)`.
    pub fn serialize(&self) -> String {
        let mut out = format!("{HEADER_PREFIX}{CACHE_FORMAT_VERSION}\n");
        for (key, poly) in &self.entries {
            let _ = write!(out, "{} {} ", key.n(), key.k());
            if poly.is_zero() {
                out.push('0');
            } else {
                let mut first = true;
                for c in poly.coeffs() {
                    if !first {
                        out.push(';');
                    }
                    let _ = write!(out, "{c}");
                    first = false;
                }
            }
            out.push('\n');
        }
        out
    }

    pub fn load(path: &Path) -> Result<Self, CacheIoError> {
        let text = fs::read_to_string(path).map_err(|source| CacheIoError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::parse(&text).map_err(|source| CacheIoError::Parse {
            path: path.display().to_string(),
            source,
        })
    }

    /// Writes the canonical form via a sibling temp file and an atomic
    /// rename, so readers never observe a half-written store.
    pub fn save(&self, path: &Path) -> Result<(), CacheIoError> {
        let tmp = path.with_extension("tmp");
        let io_err = |source| CacheIoError::Io {
            path: path.display().to_string(),
            source,
        };
        fs::write(&tmp, self.serialize()).map_err(io_err)?;
        fs::rename(&tmp, path).map_err(io_err)
    }
}

fn parse_entry(line: &str, line_no: usize) -> Result<(EulerKey, QPolynomial), CacheParseError> {
    let malformed = |reason: &str| CacheParseError::MalformedEntry {
        line: line_no,
        reason: reason.into(),
    };
    let mut fields = line.splitn(3, ' ');
    let n: u32 = fields
        .next()
        .and_then(|f| f.parse().ok())
        .ok_or_else(|| malformed("expected `n k coeffs`"))?;
    let k: u32 = fields
        .next()
        .and_then(|f| f.parse().ok())
        .ok_or_else(|| malformed("expected `n k coeffs`"))?;
    let key = EulerKey::new(n, k).map_err(|_| malformed("period k must be at least 2"))?;
    let coeff_field = fields.next().ok_or_else(|| malformed("missing coefficients"))?;
    let poly = if coeff_field == "0" {
        QPolynomial::zero()
    } else {
        let mut coeffs = Vec::new();
        for piece in coeff_field.split(';') {
            let c: BigInt = piece
                .parse()
                .map_err(|_| malformed("bad coefficient"))?;
            coeffs.push(c);
        }
        if coeffs.last().is_some_and(Zero::is_zero) {
            return Err(malformed("not normalized: trailing zero coefficient"));
        }
        QPolynomial::from_coeffs(coeffs)
    };
    Ok((key, poly))
}
