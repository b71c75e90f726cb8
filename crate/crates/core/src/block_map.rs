/*
 * SPDX-License-Identifier: Apache-2.0
 */

//! Sliding block codes.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::alphabet::{Alphabet, Symbol, Word};
use crate::automaton::{FactorAutomaton, StateSet};
use crate::error::{Error, Result};

/// A block map of radius `L`: each output symbol is read off the window of
/// `2L + 1` input symbols centred on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockMap {
    radius: usize,
    source_len: usize,
    target: Alphabet,
    table: BTreeMap<Word, Symbol>,
}

/// All words of length `len` over `q` symbols, lexicographically.
fn all_words(q: usize, len: usize) -> Vec<Word> {
    let mut out = alloc::vec![Word::empty()];
    for _ in 0..len {
        let mut next = Vec::with_capacity(out.len() * q);
        for w in &out {
            for a in 0..q {
                let mut v = w.clone();
                v.push(Symbol(a as u16));
                next.push(v);
            }
        }
        out = next;
    }
    out
}

impl BlockMap {
    /// Tabulates `f` on every window over `source`.
    pub fn from_fn<F>(source: &Alphabet, target: Alphabet, radius: usize, mut f: F) -> Result<Self>
    where
        F: FnMut(&[Symbol]) -> Symbol,
    {
        let mut table = BTreeMap::new();
        for w in all_words(source.len(), 2 * radius + 1) {
            let s = f(&w);
            if !target.contains(s) {
                return Err(Error::UnknownSymbol(alloc::format!("block map output {} outside target", s.0)));
            }
            table.insert(w, s);
        }
        Ok(Self { radius, source_len: source.len(), target, table })
    }

    /// A table given on a domain of windows only; applying it to a word with
    /// a window outside the domain is a domain error.
    pub fn from_table(source: &Alphabet, target: Alphabet, radius: usize, table: BTreeMap<Word, Symbol>) -> Result<Self> {
        for (w, s) in &table {
            if w.len() != 2 * radius + 1 {
                return Err(crate::error::domain!("window of length {} for radius {radius}", w.len()));
            }
            source.check_word(w)?;
            if !target.contains(*s) {
                return Err(Error::UnknownSymbol(alloc::format!("block map output {} outside target", s.0)));
            }
        }
        Ok(Self { radius, source_len: source.len(), target, table })
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn target(&self) -> &Alphabet {
        &self.target
    }

    pub fn lookup(&self, window: &[Symbol]) -> Option<Symbol> {
        self.table.get(&Word::from_slice(window)).copied()
    }

    /// Output of length `len(w) - 2L`.
    pub fn apply(&self, w: &[Symbol]) -> Result<Word> {
        let span = 2 * self.radius + 1;
        if w.len() < span {
            return Err(crate::error::domain!("word of length {} shorter than the window {span}", w.len()));
        }
        w.windows(span)
            .map(|win| self.lookup(win).ok_or_else(|| crate::error::domain!("window outside the table domain")))
            .collect()
    }

    /// `other ∘ self`, of radius `L₁ + L₂`.
    pub fn then(&self, other: &BlockMap) -> Result<BlockMap> {
        if other.source_len != self.target.len() {
            return Err(crate::error::domain!("block maps do not compose: alphabet sizes differ"));
        }
        let radius = self.radius + other.radius;
        let mut table = BTreeMap::new();
        for w in all_words(self.source_len, 2 * radius + 1) {
            let Ok(mid) = self.apply(&w) else { continue };
            if let Ok(out) = other.apply(&mid) {
                table.insert(w, out[0]);
            }
        }
        Ok(BlockMap { radius, source_len: self.source_len, target: other.target.clone(), table })
    }

    /// Automaton for the image language `{ apply(x) : x accepted by
    /// `source`, len(x) >= 2L+1 }`. States pair a source state with the
    /// last `2L` symbols read into it.
    pub fn image_automaton(&self, source: &FactorAutomaton, state_cap: usize) -> Result<FactorAutomaton> {
        let span = 2 * self.radius;
        let all = source.all_states();
        let mut states: BTreeMap<(usize, Word), usize> = BTreeMap::new();
        for u in all_words(self.source_len, span) {
            let reach = source.run(&all, &u);
            for q in reach.iter() {
                let id = states.len();
                states.insert((q, u.clone()), id);
            }
            if states.len() > state_cap {
                return Err(Error::ResourceCap { what: "image states", cap: state_cap });
            }
        }
        let mut fa = FactorAutomaton::new(states.len(), self.target.len());
        for ((q, u), &id) in &states {
            let mut single = StateSet::empty(source.num_states());
            single.insert(*q);
            for a in 0..self.source_len {
                let a = Symbol(a as u16);
                let next = source.step(&single, a);
                if next.is_empty() {
                    continue;
                }
                let window = u.concat(&[a]);
                let Some(out) = self.lookup(&window) else { continue };
                let tail = Word::from_slice(&window[1..]);
                for r in next.iter() {
                    if let Some(&to) = states.get(&(r, tail.clone())) {
                        fa.add_edge(id, out, to);
                    }
                }
            }
        }
        Ok(fa)
    }
}
