/*
 * SPDX-License-Identifier: Apache-2.0
 */

//! Finite-scale languages: the [`Language`] interface shared by every
//! compiled presentation, stored language tables and counting entropy.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use crate::alphabet::{Alphabet, Symbol, Word};
use crate::automaton::FactorAutomaton;
use crate::error::{Error, Result};

/// Budgets for bounded computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of stored words in any table or word list.
    pub word_cap: usize,
    /// Maximum number of subset states (or subset pairs) explored.
    pub subset_cap: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Self { word_cap: 10_000_000, subset_cap: 200_000 }
    }
}

/// Admissible words up to a maximal length, grouped by length.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LanguageTable {
    pub max_length: usize,
    pub words_by_length: BTreeMap<usize, BTreeSet<Word>>,
}

impl LanguageTable {
    pub fn new(max_length: usize) -> Self {
        let words_by_length = (1..=max_length).map(|k| (k, BTreeSet::new())).collect();
        Self { max_length, words_by_length }
    }

    pub fn insert(&mut self, w: Word) -> bool {
        assert!(!w.is_empty() && w.len() <= self.max_length);
        self.words_by_length.entry(w.len()).or_default().insert(w)
    }

    pub fn contains(&self, w: &[Symbol]) -> bool {
        self.words_by_length.get(&w.len()).is_some_and(|s| s.contains(&Word::from_slice(w)))
    }

    pub fn words(&self, len: usize) -> impl Iterator<Item = &Word> {
        self.words_by_length.get(&len).into_iter().flatten()
    }

    pub fn count(&self, len: usize) -> usize {
        self.words_by_length.get(&len).map_or(0, BTreeSet::len)
    }

    pub fn total(&self) -> usize {
        self.words_by_length.values().map(BTreeSet::len).sum()
    }

    /// Words in shortlex order.
    pub fn iter(&self) -> impl Iterator<Item = &Word> {
        self.words_by_length.values().flatten()
    }

    /// Stored words having a factor that is not stored.
    pub fn factor_closure_violations(&self) -> Vec<Word> {
        let mut out = Vec::new();
        for w in self.iter() {
            let n = w.len();
            let bad = (1..n).any(|len| (0..=n - len).any(|i| !self.contains(&w[i..i + len])));
            if bad {
                out.push(w.clone());
            }
        }
        out
    }

    /// Stored words of length below `max_length` that are not a proper
    /// prefix of a stored word one symbol longer. Reported, not enforced.
    pub fn right_extension_failures(&self) -> Vec<Word> {
        let mut out = Vec::new();
        for len in 1..self.max_length {
            let longer: BTreeSet<Word> = self.words(len + 1).map(|w| Word::from_slice(&w[..len])).collect();
            out.extend(self.words(len).filter(|w| !longer.contains(*w)).cloned());
        }
        out
    }
}

/// The interface every compiled presentation offers.
pub trait Language {
    fn alphabet(&self) -> &Alphabet;

    /// Membership at the presentation's finite-scale semantics.
    fn is_admissible(&self, w: &[Symbol]) -> Result<bool>;

    /// `{ b : 1 <= len(b) <= depth, wb admissible }` in shortlex order.
    fn follower_set(&self, w: &[Symbol], depth: usize) -> Result<Vec<Word>>;

    /// `{ b : 1 <= len(b) <= depth, bw admissible }` in shortlex order.
    fn predecessor_set(&self, w: &[Symbol], depth: usize) -> Result<Vec<Word>>;

    /// All admissible words of length `1..=n`.
    fn enumerate(&self, n: usize) -> Result<LanguageTable>;

    /// Number of admissible words of each length `1..=n`.
    fn word_counts(&self, n: usize) -> Result<Vec<u128>> {
        let t = self.enumerate(n)?;
        Ok((1..=n).map(|k| t.count(k) as u128).collect())
    }

    /// The exact automaton behind the language, when there is one.
    fn automaton(&self) -> Option<&FactorAutomaton> {
        None
    }

    fn limits(&self) -> Limits;
}

/// Counting entropy estimate `ln |L_k| / k` for `k = 1..=n`.
#[derive(Clone, Debug, PartialEq)]
pub struct EntropyEstimate {
    pub counts: Vec<u128>,
    /// `None` where the count is zero.
    pub estimates: Vec<Option<f64>>,
}

pub fn entropy_estimate<L: Language + ?Sized>(lang: &L, n: usize) -> Result<EntropyEstimate> {
    if n == 0 {
        return Err(crate::error::domain!("entropy estimate needs n >= 1"));
    }
    let counts = lang.word_counts(n)?;
    let estimates = counts
        .iter()
        .enumerate()
        .map(|(i, &c)| if c == 0 { None } else { Some(ln_u128(c) / (i + 1) as f64) })
        .collect();
    Ok(EntropyEstimate { counts, estimates })
}

/// Natural logarithm of a possibly huge count.
pub fn ln_u128(c: u128) -> f64 {
    if c <= (1u128 << 100) {
        libm::log(c as f64)
    } else {
        let shift = 128 - c.leading_zeros() - 64;
        libm::log((c >> shift) as f64) + shift as f64 * core::f64::consts::LN_2
    }
}

/// Checks a bound on stored words.
pub(crate) fn check_cap(count: usize, cap: usize) -> Result<()> {
    if count > cap {
        Err(Error::ResourceCap { what: "words", cap })
    } else {
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn w(s: &[u16]) -> Word {
        s.iter().map(|&x| Symbol(x)).collect()
    }

    #[test]
    fn closure_and_extension_reports() {
        let mut t = LanguageTable::new(2);
        t.insert(w(&[0]));
        t.insert(w(&[1]));
        t.insert(w(&[0, 1]));
        assert!(t.factor_closure_violations().is_empty());
        assert_eq!(t.right_extension_failures(), vec![w(&[1])]);
        t.insert(w(&[2, 0]));
        assert_eq!(t.factor_closure_violations(), vec![w(&[2, 0])]);
    }

    #[test]
    fn ln_of_large_counts() {
        let c: u128 = 1 << 120;
        assert!((ln_u128(c) - 120.0 * core::f64::consts::LN_2).abs() < 1e-9);
        assert!((ln_u128(1000) - libm::log(1000.0)).abs() < 1e-12);
    }
}
