/*
 * SPDX-License-Identifier: Apache-2.0
 */

//! Generators of forbidden words for codes with exclusions.
//!
//! Every family answers two incremental questions used by the window
//! search: does a member end exactly at the end of `x` (resp. start at its
//! start), given that `x` minus its last (resp. first) symbol contains no
//! member. Under that invariant "a member is a suffix" and "`x` now
//! contains a member" are the same question.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::alphabet::{shortlex, Symbol, Word};

/// A possibly infinite set of forbidden words, given by a rule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExclusionFamily {
    /// An explicit finite list.
    Words(Vec<Word>),
    /// `α⁻ 0^k α⁻ α⁺ 0^(k+m) α⁺` for `k >= 1`, `m >= 2` and signs `α±`:
    /// a block followed by one at least two zeros longer.
    GrowthPairs { zero: Symbol, signs: Vec<Symbol> },
    /// `D^⟨1⟩ ∪ … ∪ D^⟨max_level⟩` with `D^⟨1⟩ = {α 0 α}` and
    /// `D^⟨m+1⟩ = α (D^⟨1⟩ ∪ … ∪ D^⟨m⟩)⁺ α`.
    NestedBlocks { zero: Symbol, signs: Vec<Symbol>, max_level: usize },
}

/// `(sign, zeros)` of the block `s 0^z s` ending at `end` (exclusive) when
/// read backwards, or starting at `end` when read forwards.
fn block_back(x: &[Symbol], end: usize, zero: Symbol, signs: &[Symbol]) -> Option<(Symbol, usize)> {
    if end == 0 {
        return None;
    }
    let s = x[end - 1];
    if !signs.contains(&s) {
        return None;
    }
    let mut i = end - 1;
    let mut z = 0;
    while i > 0 && x[i - 1] == zero {
        i -= 1;
        z += 1;
    }
    if i == 0 || x[i - 1] != s {
        return None;
    }
    Some((s, z))
}

fn block_fwd(x: &[Symbol], start: usize, zero: Symbol, signs: &[Symbol]) -> Option<(Symbol, usize)> {
    let s = *x.get(start)?;
    if !signs.contains(&s) {
        return None;
    }
    let mut i = start + 1;
    let mut z = 0;
    while i < x.len() && x[i] == zero {
        i += 1;
        z += 1;
    }
    if i >= x.len() || x[i] != s {
        return None;
    }
    Some((s, z))
}

impl ExclusionFamily {
    /// A member of the family is a suffix of `x`.
    pub fn ends_at_end(&self, x: &[Symbol]) -> bool {
        match self {
            ExclusionFamily::Words(ws) => ws.iter().any(|w| x.ends_with(w)),
            ExclusionFamily::GrowthPairs { zero, signs } => {
                let Some((_, long)) = block_back(x, x.len(), *zero, signs) else { return false };
                let inner_end = x.len() - long - 2;
                match block_back(x, inner_end, *zero, signs) {
                    Some((_, short)) => short >= 1 && long >= short + 2,
                    None => false,
                }
            }
            ExclusionFamily::NestedBlocks { zero, signs, max_level } => {
                // Every member contains some α0α, so avoiding the family is
                // avoiding D^⟨1⟩.
                *max_level >= 1
                    && x.len() >= 3
                    && signs.iter().any(|&a| x[x.len() - 3..] == [a, *zero, a])
            }
        }
    }

    /// A member of the family is a prefix of `x`.
    pub fn starts_at_start(&self, x: &[Symbol]) -> bool {
        match self {
            ExclusionFamily::Words(ws) => ws.iter().any(|w| x.starts_with(w)),
            ExclusionFamily::GrowthPairs { zero, signs } => {
                let Some((_, short)) = block_fwd(x, 0, *zero, signs) else { return false };
                match block_fwd(x, short + 2, *zero, signs) {
                    Some((_, long)) => short >= 1 && long >= short + 2,
                    None => false,
                }
            }
            ExclusionFamily::NestedBlocks { zero, signs, max_level } => {
                *max_level >= 1 && x.len() >= 3 && signs.iter().any(|&a| x[..3] == [a, *zero, a])
            }
        }
    }

    /// Literal membership.
    pub fn is_member(&self, x: &[Symbol]) -> bool {
        match self {
            ExclusionFamily::Words(ws) => ws.iter().any(|w| w.as_slice() == x),
            ExclusionFamily::GrowthPairs { zero, signs } => {
                let Some((_, short)) = block_fwd(x, 0, *zero, signs) else { return false };
                let Some((_, long)) = block_fwd(x, short + 2, *zero, signs) else { return false };
                short >= 1 && long >= short + 2 && short + long + 4 == x.len()
            }
            ExclusionFamily::NestedBlocks { zero, signs, max_level } => {
                nested_level(x, *zero, signs, *max_level).is_some()
            }
        }
    }

    /// Some factor of `x` is a member.
    pub fn occurs_in(&self, x: &[Symbol]) -> bool {
        (1..=x.len()).any(|end| (0..end).any(|start| self.is_member(&x[start..end])))
    }

    /// Members of length at most `max_len`, in shortlex order.
    pub fn members(&self, max_len: usize) -> Vec<Word> {
        let mut out: Vec<Word> = match self {
            ExclusionFamily::Words(ws) => ws.iter().filter(|w| w.len() <= max_len).cloned().collect(),
            ExclusionFamily::GrowthPairs { zero, signs } => {
                let mut v = Vec::new();
                let mut short = 1;
                while 2 * short + 6 <= max_len {
                    let mut long = short + 2;
                    while short + long + 4 <= max_len {
                        for &a in signs {
                            for &b in signs {
                                let mut w = Word::empty();
                                w.push(a);
                                w.extend_from_slice(&Word::repeat_symbol(*zero, short));
                                w.push(a);
                                w.push(b);
                                w.extend_from_slice(&Word::repeat_symbol(*zero, long));
                                w.push(b);
                                v.push(w);
                            }
                        }
                        long += 1;
                    }
                    short += 1;
                }
                v
            }
            ExclusionFamily::NestedBlocks { zero, signs, max_level } => {
                let mut all = BTreeSet::new();
                for level in 1..=*max_level {
                    all.extend(nested_members(*zero, signs, level, max_len));
                }
                all.into_iter().collect()
            }
        };
        out.sort_by(|a, b| shortlex(a, b));
        out.dedup();
        out
    }

    /// Shortest member length, if the family is nonempty.
    pub fn min_len(&self) -> Option<usize> {
        match self {
            ExclusionFamily::Words(ws) => ws.iter().map(|w| w.len()).min(),
            ExclusionFamily::GrowthPairs { signs, .. } => (!signs.is_empty()).then_some(8),
            ExclusionFamily::NestedBlocks { signs, max_level, .. } => {
                (!signs.is_empty() && *max_level >= 1).then_some(3)
            }
        }
    }
}

/// Members of `D^⟨level⟩` up to `max_len`.
pub fn nested_members(zero: Symbol, signs: &[Symbol], level: usize, max_len: usize) -> Vec<Word> {
    if level == 0 || max_len < 3 {
        return Vec::new();
    }
    if level == 1 {
        return signs.iter().map(|&a| [a, zero, a].into_iter().collect()).collect();
    }
    // inner: words of (D^⟨1⟩ ∪ … ∪ D^⟨level-1⟩)⁺ of length <= max_len - 2
    let budget = max_len - 2;
    let mut blocks = BTreeSet::new();
    for l in 1..level {
        blocks.extend(nested_members(zero, signs, l, budget));
    }
    let blocks: Vec<Word> = blocks.into_iter().collect();
    let mut products: BTreeSet<Word> = BTreeSet::new();
    let mut frontier: Vec<Word> = blocks.clone();
    while let Some(p) = frontier.pop() {
        if !products.insert(p.clone()) {
            continue;
        }
        for b in &blocks {
            if p.len() + b.len() <= budget {
                frontier.push(p.concat(b));
            }
        }
    }
    let mut out = Vec::new();
    for &a in signs {
        for p in &products {
            let mut w = Word::empty();
            w.push(a);
            w.extend_from_slice(p);
            w.push(a);
            out.push(w);
        }
    }
    out
}

/// Smallest `m <= max_level` with `x ∈ D^⟨m⟩`.
fn nested_level(x: &[Symbol], zero: Symbol, signs: &[Symbol], max_level: usize) -> Option<usize> {
    if max_level == 0 || x.len() < 3 {
        return None;
    }
    let a = x[0];
    if !signs.contains(&a) || x[x.len() - 1] != a {
        return None;
    }
    if x.len() == 3 && x[1] == zero {
        return Some(1);
    }
    // split the interior into blocks of lower level
    let inner = &x[1..x.len() - 1];
    let n = inner.len();
    // best[i] = max level used by a split of inner[..i], minimized
    let mut best: Vec<Option<usize>> = alloc::vec![None; n + 1];
    best[0] = Some(0);
    for end in 1..=n {
        for start in 0..end {
            let Some(prev) = best[start] else { continue };
            if let Some(l) = nested_level(&inner[start..end], zero, signs, max_level - 1) {
                let cand = prev.max(l);
                if best[end].is_none_or(|b| cand < b) {
                    best[end] = Some(cand);
                }
            }
        }
    }
    best[n].filter(|&l| l >= 1).map(|l| l + 1)
}
