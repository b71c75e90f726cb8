/*
 * SPDX-License-Identifier: Apache-2.0
 */

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use super::bifix::BifixCode;
use super::marked::{chainable, find_marks, MarkedWord};
use crate::alphabet::{Symbol, Word};
use crate::automaton::FactorAutomaton;
use crate::error::{Error, Result};

/// A bifix code `F` together with a finite code `C ⊂ C_F`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpoCode {
    bifix: BifixCode,
    words: Vec<MarkedWord>,
    successors: Vec<Vec<usize>>,
}

impl SpoCode {
    /// Words keep their given order; indices into [`SpoCode::words`] are
    /// the code-word identifiers used by factorizations.
    pub fn new(bifix: BifixCode, words: Vec<MarkedWord>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for c in &words {
            if !bifix.contains(c.prefix()) || !bifix.contains(c.suffix()) {
                return Err(Error::InvalidCode("code word marks are not in the bifix code".into()));
            }
            if !seen.insert(c.word().clone()) {
                return Err(Error::InvalidCode(alloc::format!("duplicate code word {}", c.word())));
            }
        }
        let successors = words
            .iter()
            .map(|a| (0..words.len()).filter(|&j| chainable(a, &words[j])).collect())
            .collect();
        Ok(Self { bifix, words, successors })
    }

    /// Marks every word with [`find_marks`].
    pub fn from_words(bifix: BifixCode, words: Vec<Word>) -> Result<Self> {
        let marked = words
            .into_iter()
            .map(|w| {
                find_marks(&bifix, &w)
                    .ok_or_else(|| Error::InvalidCode(alloc::format!("word {w} has no proper bifix prefix and suffix")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(bifix, marked)
    }

    pub fn bifix(&self) -> &BifixCode {
        &self.bifix
    }

    pub fn words(&self) -> &[MarkedWord] {
        &self.words
    }

    pub fn word(&self, i: usize) -> &MarkedWord {
        &self.words[i]
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn bullet_flags(&self) -> Vec<bool> {
        self.words.iter().map(MarkedWord::is_bullet).collect()
    }

    /// Indices `j` with `chainable(c_i, c_j)`.
    pub fn successors(&self, i: usize) -> &[usize] {
        &self.successors[i]
    }

    pub fn max_word_len(&self) -> usize {
        self.words.iter().map(MarkedWord::len).max().unwrap_or(0)
    }

    pub fn index_of(&self, w: &[Symbol]) -> Option<usize> {
        self.words.iter().position(|c| c.word().as_slice() == w)
    }

    /// Number of chainable ordered pairs.
    pub fn chain_count(&self) -> usize {
        self.successors.iter().map(Vec::len).sum()
    }

    /// The automaton reading chainable overlap products.
    ///
    /// Word `i` owns states `(i, 0..=len)`; reading its letters walks along
    /// them. At position `len(ring(c_i))` a path may instead jump into any
    /// chainable `c_j` at position 1, reading the first letter of the shared
    /// block. `dangling` words carry a bifix prefix but no suffix mark: they
    /// can be entered like code words and never left.
    pub fn automaton(&self, n_symbols: usize, dangling: &[Word]) -> Result<SpoAutomaton> {
        let mut offsets = Vec::with_capacity(self.words.len() + dangling.len());
        let mut lens = Vec::with_capacity(offsets.capacity());
        let mut total = 0;
        for w in self.words.iter().map(MarkedWord::word).chain(dangling.iter()) {
            if w.iter().any(|s| s.index() >= n_symbols) {
                return Err(Error::UnknownSymbol(alloc::format!("symbol index outside alphabet in {w}")));
            }
            offsets.push(total);
            lens.push(w.len());
            total += w.len() + 1;
        }
        let mut fa = FactorAutomaton::new(total, n_symbols);
        let all: Vec<&Word> = self.words.iter().map(MarkedWord::word).chain(dangling.iter()).collect();
        for (i, w) in all.iter().enumerate() {
            for (pos, &a) in w.iter().enumerate() {
                fa.add_edge(offsets[i] + pos, a, offsets[i] + pos + 1);
            }
        }
        for (i, c) in self.words.iter().enumerate() {
            let from = offsets[i] + c.ring_len();
            for &j in &self.successors[i] {
                fa.add_edge(from, self.words[j].word()[0], offsets[j] + 1);
            }
            for (d, w) in dangling.iter().enumerate() {
                if w.len() > c.suffix_len() && w.starts_with(c.suffix()) {
                    let k = self.words.len() + d;
                    fa.add_edge(from, w[0], offsets[k] + 1);
                }
            }
        }
        Ok(SpoAutomaton { automaton: fa, offsets, lens, code_words: self.words.len() })
    }
}

/// [`SpoCode::automaton`] with its state layout.
#[derive(Clone, Debug)]
pub struct SpoAutomaton {
    pub automaton: FactorAutomaton,
    offsets: Vec<usize>,
    lens: Vec<usize>,
    code_words: usize,
}

impl SpoAutomaton {
    pub fn state(&self, word: usize, pos: usize) -> usize {
        debug_assert!(pos <= self.lens[word]);
        self.offsets[word] + pos
    }

    /// `(word, position)` of a state.
    pub fn locate(&self, state: usize) -> (usize, usize) {
        let w = self.offsets.partition_point(|&o| o <= state) - 1;
        (w, state - self.offsets[w])
    }

    /// Start states of the code words (dangling words excluded).
    pub fn initial_states(&self) -> Vec<usize> {
        (0..self.code_words).map(|i| self.offsets[i]).collect()
    }

    /// End state of a code word.
    pub fn is_final(&self, state: usize) -> bool {
        let (w, pos) = self.locate(state);
        w < self.code_words && pos == self.lens[w]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use crate::automaton::StateSet;

    fn w(s: &[u16]) -> Word {
        s.iter().map(|&x| Symbol(x)).collect()
    }

    // γ = 0, δ = 1, zero = 2
    fn periodic_code() -> SpoCode {
        let f = BifixCode::new(vec![w(&[0, 1, 0])]).unwrap();
        SpoCode::from_words(f, vec![w(&[0, 1, 0, 2, 0, 1, 0])]).unwrap()
    }

    #[test]
    fn self_chaining_word() {
        let c = periodic_code();
        assert_eq!(c.successors(0), &[0]);
        assert_eq!(c.bullet_flags(), vec![false]);
        let a = c.automaton(3, &[]).unwrap();
        // (γδγ0)^∞ windows
        assert!(a.automaton.accepts(&w(&[2, 0, 1, 0, 2, 0, 1, 0, 2])));
        assert!(!a.automaton.accepts(&w(&[2, 2])));
        assert!(!a.automaton.accepts(&w(&[0, 1, 0, 2, 0, 1, 0, 0])));
    }

    #[test]
    fn no_chains_gives_subwords_only() {
        let f = BifixCode::new(vec![w(&[0, 1, 0]), w(&[0, 1, 1, 0])]).unwrap();
        let c = SpoCode::from_words(f, vec![w(&[0, 1, 0, 2, 0, 1, 1, 0])]).unwrap();
        assert_eq!(c.chain_count(), 0);
        let a = c.automaton(3, &[]).unwrap();
        let mut longest = 0;
        a.automaton
            .visit_words(12, |u| {
                longest = longest.max(u.len());
                assert!(crate::alphabet::contains_factor(c.word(0).word(), u));
                Ok(())
            })
            .unwrap();
        assert_eq!(longest, 8);
    }

    #[test]
    fn layout_round_trips() {
        let c = periodic_code();
        let a = c.automaton(3, &[w(&[0, 1, 0, 2, 2])]).unwrap();
        assert_eq!(a.locate(a.state(1, 3)), (1, 3));
        assert!(a.is_final(a.state(0, 7)));
        assert!(!a.is_final(a.state(1, 5)));
        assert_eq!(a.initial_states(), vec![0]);
        // dangling word entered after a code word
        let s = a.automaton.run(&StateSet::full(a.automaton.num_states()), &w(&[0, 1, 0, 2, 0, 1, 0, 2, 2]));
        assert!(!s.is_empty());
    }

    #[test]
    fn rejects_duplicates_and_unmarked() {
        let f = BifixCode::new(vec![w(&[0, 1, 0])]).unwrap();
        assert!(SpoCode::from_words(f.clone(), vec![w(&[0, 1, 0, 2, 0, 1, 0]), w(&[0, 1, 0, 2, 0, 1, 0])]).is_err());
        assert!(SpoCode::from_words(f, vec![w(&[0, 1, 0, 2])]).is_err());
    }
}
