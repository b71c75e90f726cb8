/*
 * SPDX-License-Identifier: Apache-2.0
 */

//! Nondeterministic factor automata.
//!
//! Every state is initial and every state is accepting: the language of a
//! [`FactorAutomaton`] is the set of labels of finite paths. All the
//! graph-backed presentations (shifts of finite type, sofic graphs, codes
//! and codes with overlap) compile to this form. Subset simulation decides
//! membership, and the determinized subset space carries the exact
//! follower-set arguments used for synchronization.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::vec;
use alloc::vec::Vec;

use crate::alphabet::{Symbol, Word};
use crate::error::{Error, Result};
use crate::spectral::strongly_connected_components;

/// A set of automaton states as a bitset.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StateSet {
    bits: Vec<u64>,
}

impl StateSet {
    pub fn empty(n: usize) -> Self {
        Self { bits: vec![0; n.div_ceil(64)] }
    }

    pub fn full(n: usize) -> Self {
        let mut s = Self::empty(n);
        for i in 0..n {
            s.insert(i);
        }
        s
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        self.bits[i / 64] |= 1 << (i % 64);
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        self.bits[i / 64] & (1 << (i % 64)) != 0
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|b| *b == 0)
    }

    pub fn count(&self) -> usize {
        self.bits.iter().map(|b| b.count_ones() as usize).sum()
    }

    pub fn is_subset(&self, other: &StateSet) -> bool {
        self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.iter().enumerate().flat_map(|(k, &b)| {
            let mut rest = b;
            core::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let t = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(k * 64 + t)
            })
        })
    }
}

#[derive(Clone, Debug)]
pub struct FactorAutomaton {
    n_symbols: usize,
    // [state][symbol] -> successor states
    fwd: Vec<Vec<Vec<u32>>>,
    bwd: Vec<Vec<Vec<u32>>>,
}

impl FactorAutomaton {
    pub fn new(n_states: usize, n_symbols: usize) -> Self {
        Self {
            n_symbols,
            fwd: vec![vec![Vec::new(); n_symbols]; n_states],
            bwd: vec![vec![Vec::new(); n_symbols]; n_states],
        }
    }

    pub fn add_edge(&mut self, from: usize, symbol: Symbol, to: usize) {
        let a = symbol.index();
        if !self.fwd[from][a].contains(&(to as u32)) {
            self.fwd[from][a].push(to as u32);
            self.bwd[to][a].push(from as u32);
        }
    }

    /// Successors of a single state on one symbol.
    pub fn successors(&self, p: usize, a: Symbol) -> &[u32] {
        &self.fwd[p][a.index()]
    }

    pub fn num_states(&self) -> usize {
        self.fwd.len()
    }

    pub fn num_symbols(&self) -> usize {
        self.n_symbols
    }

    pub fn num_edges(&self) -> usize {
        self.fwd.iter().flatten().map(Vec::len).sum()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, Symbol, usize)> + '_ {
        self.fwd.iter().enumerate().flat_map(|(p, row)| {
            row.iter()
                .enumerate()
                .flat_map(move |(a, ts)| ts.iter().map(move |&q| (p, Symbol(a as u16), q as usize)))
        })
    }

    pub fn all_states(&self) -> StateSet {
        StateSet::full(self.num_states())
    }

    pub fn step(&self, from: &StateSet, a: Symbol) -> StateSet {
        Self::step_in(&self.fwd, self.num_states(), from, a)
    }

    pub fn step_back(&self, from: &StateSet, a: Symbol) -> StateSet {
        Self::step_in(&self.bwd, self.num_states(), from, a)
    }

    fn step_in(table: &[Vec<Vec<u32>>], n: usize, from: &StateSet, a: Symbol) -> StateSet {
        let mut out = StateSet::empty(n);
        for p in from.iter() {
            for &q in &table[p][a.index()] {
                out.insert(q as usize);
            }
        }
        out
    }

    /// Reads `w` left to right from `from`.
    pub fn run(&self, from: &StateSet, w: &[Symbol]) -> StateSet {
        let mut s = from.clone();
        for &a in w {
            s = self.step(&s, a);
            if s.is_empty() {
                break;
            }
        }
        s
    }

    /// Reads `w` right to left along reversed edges from `from`.
    pub fn run_back(&self, from: &StateSet, w: &[Symbol]) -> StateSet {
        let mut s = from.clone();
        for &a in w.iter().rev() {
            s = self.step_back(&s, a);
            if s.is_empty() {
                break;
            }
        }
        s
    }

    pub fn accepts(&self, w: &[Symbol]) -> bool {
        w.is_empty() && self.num_states() > 0 || !self.run(&self.all_states(), w).is_empty()
    }

    fn has_out(&self, p: usize, alive: &[bool]) -> bool {
        self.fwd[p].iter().flatten().any(|&q| alive[q as usize])
    }

    fn has_in(&self, p: usize, alive: &[bool]) -> bool {
        self.bwd[p].iter().flatten().any(|&q| alive[q as usize])
    }

    /// Restriction to the states lying on bi-infinite paths.
    pub fn trim(&self) -> FactorAutomaton {
        let n = self.num_states();
        let mut alive = vec![true; n];
        loop {
            let mut changed = false;
            for p in 0..n {
                if alive[p] && !(self.has_out(p, &alive) && self.has_in(p, &alive)) {
                    alive[p] = false;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        self.restrict(&alive)
    }

    fn restrict(&self, keep: &[bool]) -> FactorAutomaton {
        let mut index = vec![usize::MAX; self.num_states()];
        let mut k = 0;
        for (p, &alive) in keep.iter().enumerate() {
            if alive {
                index[p] = k;
                k += 1;
            }
        }
        let mut out = FactorAutomaton::new(k, self.n_symbols);
        for (p, a, q) in self.edges() {
            if keep[p] && keep[q] {
                out.add_edge(index[p], a, index[q]);
            }
        }
        out
    }

    /// Every state has an incoming and an outgoing edge.
    pub fn is_essential(&self) -> bool {
        let alive = vec![true; self.num_states()];
        (0..self.num_states()).all(|p| self.has_out(p, &alive) && self.has_in(p, &alive))
    }

    /// Strongly connected components of the underlying state graph.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let adj: Vec<Vec<usize>> = self
            .fwd
            .iter()
            .map(|row| {
                let set: BTreeSet<usize> = row.iter().flatten().map(|&q| q as usize).collect();
                set.into_iter().collect()
            })
            .collect();
        strongly_connected_components(&adj)
    }

    /// Visits every accepted nonempty word of length at most `n` in
    /// depth-first lexicographic order.
    pub fn visit_words<F>(&self, n: usize, mut f: F) -> Result<()>
    where
        F: FnMut(&[Symbol]) -> Result<()>,
    {
        let mut buf = Vec::with_capacity(n);
        self.visit_from(&self.all_states(), n, false, &mut buf, &mut f)
    }

    fn visit_from<F>(
        &self,
        from: &StateSet,
        remaining: usize,
        backward: bool,
        buf: &mut Vec<Symbol>,
        f: &mut F,
    ) -> Result<()>
    where
        F: FnMut(&[Symbol]) -> Result<()>,
    {
        if remaining == 0 {
            return Ok(());
        }
        for a in 0..self.n_symbols {
            let a = Symbol(a as u16);
            let next = if backward { self.step_back(from, a) } else { self.step(from, a) };
            if next.is_empty() {
                continue;
            }
            buf.push(a);
            f(buf)?;
            self.visit_from(&next, remaining - 1, backward, buf, f)?;
            buf.pop();
        }
        Ok(())
    }

    /// All words `b` with `1 <= len(b) <= depth` readable from `from`,
    /// in shortlex order. With `backward`, words are read right to left
    /// (predecessor extensions) and returned in reading order.
    pub fn extensions(&self, from: &StateSet, depth: usize, backward: bool, cap: usize) -> Result<Vec<Word>> {
        let mut out = Vec::new();
        let mut buf = Vec::new();
        self.visit_from(from, depth, backward, &mut buf, &mut |w: &[Symbol]| {
            if out.len() >= cap {
                return Err(Error::ResourceCap { what: "words", cap });
            }
            let word: Word = if backward { w.iter().rev().copied().collect() } else { Word::from_slice(w) };
            out.push(word);
            Ok(())
        })?;
        out.sort_by(|a, b| crate::alphabet::shortlex(a, b));
        Ok(out)
    }

    /// Number of accepted words of each length `1..=n`, counted on the
    /// determinized subset automaton (no word is materialized).
    pub fn word_counts(&self, n: usize, subset_cap: usize) -> Result<Vec<u128>> {
        let mut layer: BTreeMap<StateSet, u128> = BTreeMap::new();
        layer.insert(self.all_states(), 1);
        let mut counts = Vec::with_capacity(n);
        for _ in 0..n {
            let mut next: BTreeMap<StateSet, u128> = BTreeMap::new();
            for (s, c) in &layer {
                for a in 0..self.n_symbols {
                    let t = self.step(s, Symbol(a as u16));
                    if t.is_empty() {
                        continue;
                    }
                    let slot = next.entry(t).or_insert(0);
                    *slot = slot.checked_add(*c).ok_or(Error::ResourceCap { what: "count bits (u128)", cap: 128 })?;
                }
                if next.len() > subset_cap {
                    return Err(Error::ResourceCap { what: "subset states", cap: subset_cap });
                }
            }
            let total = next
                .values()
                .try_fold(0u128, |acc, c| acc.checked_add(*c))
                .ok_or(Error::ResourceCap { what: "count bits (u128)", cap: 128 })?;
            counts.push(total);
            layer = next;
        }
        Ok(counts)
    }

    /// Nonempty subsets `run(all, u)` over nonempty words `u`, each paired
    /// with its shortlex-least word.
    pub fn reachable_subsets(&self, subset_cap: usize) -> Result<Vec<(StateSet, Word)>> {
        let mut seen: BTreeSet<StateSet> = BTreeSet::new();
        let mut out = Vec::new();
        let mut queue: VecDeque<(StateSet, Word)> = VecDeque::new();
        queue.push_back((self.all_states(), Word::empty()));
        while let Some((s, w)) = queue.pop_front() {
            for a in 0..self.n_symbols {
                let a = Symbol(a as u16);
                let t = self.step(&s, a);
                if t.is_empty() || seen.contains(&t) {
                    continue;
                }
                if seen.len() >= subset_cap {
                    return Err(Error::ResourceCap { what: "subset states", cap: subset_cap });
                }
                seen.insert(t.clone());
                let mut w2 = w.clone();
                w2.push(a);
                out.push((t.clone(), w2.clone()));
                queue.push_back((t, w2));
            }
        }
        Ok(out)
    }

    /// Shortest (then least) word readable from `big` but not from `small`,
    /// if any.
    pub fn follower_gap(&self, big: &StateSet, small: &StateSet, pair_cap: usize) -> Result<Option<Word>> {
        self.pair_search(self, big, small, usize::MAX, pair_cap)
    }

    /// Shortest word of length at most `max_len` accepted by `self` and
    /// rejected by `other`, if any. Both automata must share the alphabet.
    pub fn inclusion_witness(&self, other: &FactorAutomaton, max_len: usize, pair_cap: usize) -> Result<Option<Word>> {
        self.pair_search(other, &self.all_states(), &other.all_states(), max_len, pair_cap)
    }

    fn pair_search(
        &self,
        other: &FactorAutomaton,
        start_a: &StateSet,
        start_b: &StateSet,
        max_len: usize,
        pair_cap: usize,
    ) -> Result<Option<Word>> {
        debug_assert_eq!(self.n_symbols, other.n_symbols);
        let mut seen: BTreeSet<(StateSet, StateSet)> = BTreeSet::new();
        let mut queue: VecDeque<(StateSet, StateSet, Word)> = VecDeque::new();
        seen.insert((start_a.clone(), start_b.clone()));
        queue.push_back((start_a.clone(), start_b.clone(), Word::empty()));
        while let Some((a_set, b_set, w)) = queue.pop_front() {
            if w.len() >= max_len {
                continue;
            }
            for a in 0..self.n_symbols {
                let a = Symbol(a as u16);
                let ta = self.step(&a_set, a);
                if ta.is_empty() {
                    continue;
                }
                let tb = other.step(&b_set, a);
                let mut w2 = w.clone();
                w2.push(a);
                if tb.is_empty() {
                    return Ok(Some(w2));
                }
                let key = (ta, tb);
                if seen.contains(&key) {
                    continue;
                }
                if seen.len() >= pair_cap {
                    return Err(Error::ResourceCap { what: "subset pairs", cap: pair_cap });
                }
                seen.insert(key.clone());
                queue.push_back((key.0, key.1, w2));
            }
        }
        Ok(None)
    }

    /// Label of a random walk of length `len`. `pick(k)` must return an
    /// index below `k`. Returns `None` when the walk dies (only possible on
    /// automata that are not essential).
    pub fn random_word<P: FnMut(usize) -> usize>(&self, len: usize, mut pick: P) -> Option<Word> {
        if self.num_states() == 0 {
            return None;
        }
        let mut state = pick(self.num_states());
        let mut out = Word::empty();
        for _ in 0..len {
            let moves: Vec<(usize, u32)> = self.fwd[state]
                .iter()
                .enumerate()
                .flat_map(|(a, ts)| ts.iter().map(move |&q| (a, q)))
                .collect();
            if moves.is_empty() {
                return None;
            }
            let (a, q) = moves[pick(moves.len())];
            out.push(Symbol(a as u16));
            state = q as usize;
        }
        Some(out)
    }
}
