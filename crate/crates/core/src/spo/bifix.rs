/*
 * SPDX-License-Identifier: Apache-2.0
 */

use alloc::vec::Vec;

use crate::alphabet::{shortlex, Symbol, Word};
use crate::error::{Error, Result};

/// How two members of a candidate bifix code collide.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BifixViolation {
    ProperPrefix { shorter: Word, longer: Word },
    ProperSuffix { shorter: Word, longer: Word },
}

/// A finite set of nonempty words, none a proper prefix or a proper suffix
/// of another. Members are kept in shortlex order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BifixCode {
    words: Vec<Word>,
}

impl BifixCode {
    pub fn new(mut words: Vec<Word>) -> Result<Self> {
        if words.iter().any(|w| w.is_empty()) {
            return Err(Error::InvalidCode("bifix code contains the empty word".into()));
        }
        words.sort_by(|a, b| shortlex(a, b));
        words.dedup();
        if let Some(v) = Self::violations(&words).into_iter().next() {
            return Err(Error::InvalidCode(alloc::format!("not a bifix code: {v:?}")));
        }
        Ok(Self { words })
    }

    /// Pairwise prefix/suffix collisions in `words`.
    pub fn violations(words: &[Word]) -> Vec<BifixViolation> {
        let mut out = Vec::new();
        for a in words {
            for b in words {
                if a.len() >= b.len() {
                    continue;
                }
                if b.starts_with(a) {
                    out.push(BifixViolation::ProperPrefix { shorter: a.clone(), longer: b.clone() });
                }
                if b.ends_with(a) {
                    out.push(BifixViolation::ProperSuffix { shorter: a.clone(), longer: b.clone() });
                }
            }
        }
        out
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn contains(&self, w: &[Symbol]) -> bool {
        self.words.iter().any(|f| f.as_slice() == w)
    }

    pub fn max_len(&self) -> usize {
        self.words.iter().map(|w| w.len()).max().unwrap_or(0)
    }

    /// Lengths of the members that are proper prefixes of `w`.
    pub fn proper_prefixes(&self, w: &[Symbol]) -> Vec<usize> {
        self.words.iter().filter(|f| f.len() < w.len() && w.starts_with(f)).map(|f| f.len()).collect()
    }

    /// Lengths of the members that are proper suffixes of `w`.
    pub fn proper_suffixes(&self, w: &[Symbol]) -> Vec<usize> {
        self.words.iter().filter(|f| f.len() < w.len() && w.ends_with(f)).map(|f| f.len()).collect()
    }
}
