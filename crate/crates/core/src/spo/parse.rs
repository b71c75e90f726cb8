/*
 * SPDX-License-Identifier: Apache-2.0
 */

//! Factorizations of finite windows into overlapping code words, and the
//! bounded ambiguity search.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use super::code::SpoCode;
use crate::alphabet::{Symbol, Word};
use crate::error::{Error, Result};
use crate::language::Limits;

/// One code word placed in a window. `start` may be negative when the word
/// begins before the window.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Factor {
    pub word: usize,
    pub start: isize,
}

/// A shared block between consecutive factors, as the half-open window
/// interval `[block_start, block_end)`. Either end may lie outside the
/// window.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Cut {
    pub block_start: isize,
    pub block_end: isize,
}

impl Cut {
    /// The pair `(j, i)` with the block equal to `x_(j, i]`.
    pub fn pair(&self) -> (isize, isize) {
        (self.block_start - 1, self.block_end - 1)
    }
}

/// A covering of a window by chainable code words.
///
/// Factor `k + 1` starts where the ring of factor `k` ends. The first factor
/// contains position 0 in its ring (or is the only factor), and the last
/// factor is the first one reaching the window end.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Factorization {
    pub window_len: usize,
    pub factors: Vec<Factor>,
    /// The first factor starts before the window.
    pub left_truncated: bool,
    /// The last factor ends after the window.
    pub right_truncated: bool,
}

impl Factorization {
    pub fn is_full(&self) -> bool {
        !self.left_truncated && !self.right_truncated
    }

    pub fn code_words(&self) -> Vec<usize> {
        self.factors.iter().map(|f| f.word).collect()
    }

    /// Interior shared blocks, one per consecutive pair of factors.
    pub fn cuts(&self, code: &SpoCode) -> Vec<Cut> {
        self.factors
            .windows(2)
            .map(|p| Cut {
                block_start: p[1].start,
                block_end: p[1].start + code.word(p[1].word).prefix_len() as isize,
            })
            .collect()
    }

    /// Interval `[start, end)` of each factor in window coordinates.
    pub fn spans(&self, code: &SpoCode) -> Vec<(isize, isize)> {
        self.factors.iter().map(|f| (f.start, f.start + code.word(f.word).len() as isize)).collect()
    }

    /// Factors lying completely inside the window.
    pub fn complete_factors(&self, code: &SpoCode) -> Vec<usize> {
        let n = self.window_len as isize;
        self.spans(code)
            .into_iter()
            .enumerate()
            .filter(|&(_, (s, e))| s >= 0 && e <= n)
            .map(|(k, _)| k)
            .collect()
    }
}

fn agrees(code: &SpoCode, word: usize, start: isize, w: &[Symbol]) -> bool {
    let c = code.word(word).word();
    let n = w.len() as isize;
    let lo = start.max(0);
    let hi = (start + c.len() as isize).min(n);
    (lo..hi).all(|t| c[(t - start) as usize] == w[t as usize])
}

/// Every factorization of `w`, truncated at the edges where needed, in
/// ascending order. The empty window has none.
pub fn parse_window(code: &SpoCode, w: &[Symbol]) -> Result<Vec<Factorization>> {
    parse_window_capped(code, w, Limits::default().word_cap)
}

pub fn parse_window_capped(code: &SpoCode, w: &[Symbol], cap: usize) -> Result<Vec<Factorization>> {
    let mut out = Vec::new();
    if w.is_empty() {
        return Ok(out);
    }
    let n = w.len() as isize;
    let mut stack: Vec<Factor> = Vec::new();
    for i in 0..code.len() {
        let ring = code.word(i).ring_len() as isize;
        for start in (1 - ring)..=0 {
            if agrees(code, i, start, w) {
                stack.push(Factor { word: i, start });
                extend(code, w, n, &mut stack, &mut out, cap)?;
                stack.pop();
            }
        }
    }
    out.sort();
    Ok(out)
}

fn extend(
    code: &SpoCode,
    w: &[Symbol],
    n: isize,
    stack: &mut Vec<Factor>,
    out: &mut Vec<Factorization>,
    cap: usize,
) -> Result<()> {
    let last = *stack.last().expect("nonempty");
    let c = code.word(last.word);
    let end = last.start + c.len() as isize;
    if end >= n {
        if out.len() >= cap {
            return Err(Error::ResourceCap { what: "factorizations", cap });
        }
        out.push(Factorization {
            window_len: n as usize,
            factors: stack.clone(),
            left_truncated: stack[0].start < 0,
            right_truncated: end > n,
        });
        return Ok(());
    }
    let next = last.start + c.ring_len() as isize;
    for &j in code.successors(last.word) {
        if agrees(code, j, next, w) {
            stack.push(Factor { word: j, start: next });
            extend(code, w, n, stack, out, cap)?;
            stack.pop();
        }
    }
    Ok(())
}

/// Factorizations of `w` into whole code words, first starting at 0 and
/// last ending at `len(w)`.
pub fn full_factorizations(code: &SpoCode, w: &[Symbol]) -> Result<Vec<Factorization>> {
    Ok(parse_window(code, w)?.into_iter().filter(Factorization::is_full).collect())
}

/// Outcome of [`check_unambiguous`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Unambiguity {
    /// No chainable product of length at most `n` has two factorizations.
    PassAt { n: usize },
    /// Shortest, then least, chainable product with two distinct full
    /// factorizations.
    Fail { witness: Word, first: Factorization, second: Factorization },
}

impl Unambiguity {
    pub fn is_pass(&self) -> bool {
        matches!(self, Unambiguity::PassAt { .. })
    }
}

/// Searches chainable products of length at most `n` for one with two full
/// factorizations.
///
/// Runs a level-by-level search over pairs of paths in the code automaton,
/// both starting at the beginning of a code word, with a flag recording
/// whether they have ever been in different states. A word read with both
/// paths at the end of a code word and the flag set has two
/// factorizations. Each level is processed in word order, so the first hit
/// is the shortlex-least witness and the verdict is monotone in `n`.
pub fn check_unambiguous(code: &SpoCode, n: usize, limits: &Limits) -> Result<Unambiguity> {
    if code.is_empty() {
        return Ok(Unambiguity::PassAt { n });
    }
    if n < 2 * code.max_word_len() {
        return Err(crate::error::domain!(
            "unambiguity check needs n >= {} (twice the longest code word), got {n}",
            2 * code.max_word_len()
        ));
    }
    let n_symbols = code.words().iter().flat_map(|c| c.word().iter()).map(|s| s.index() + 1).max().unwrap_or(1);
    let sa = code.automaton(n_symbols, &[])?;
    let fa = &sa.automaton;
    type Key = (u32, u32, bool);
    let mut seen: BTreeSet<Key> = BTreeSet::new();
    let inits = sa.initial_states();
    let mut frontier: Vec<(Word, Key)> = Vec::new();
    for &p in &inits {
        for &q in &inits {
            let key = (p as u32, q as u32, p != q);
            seen.insert(key);
            frontier.push((Word::empty(), key));
        }
    }
    for _ in 0..n {
        if frontier.is_empty() {
            break;
        }
        let mut next_level: Vec<(Word, Key)> = Vec::new();
        for (word, key) in &frontier {
            for a in 0..n_symbols {
                let a = Symbol(a as u16);
                for &p2 in fa.successors(key.0 as usize, a) {
                    for &q2 in fa.successors(key.1 as usize, a) {
                        let mut w2 = word.clone();
                        w2.push(a);
                        next_level.push((w2, (p2, q2, key.2 || p2 != q2)));
                    }
                }
            }
        }
        // Words of one level share a length, so sorting gives shortlex order.
        next_level.sort();
        let mut kept = Vec::new();
        for (word, key) in next_level {
            if seen.contains(&key) {
                continue;
            }
            if key.2 && sa.is_final(key.0 as usize) && sa.is_final(key.1 as usize) {
                let mut parses = full_factorizations(code, &word)?.into_iter();
                let first = parses.next().ok_or_else(|| Error::Construction("witness lost its parses".into()))?;
                let second = parses.next().ok_or_else(|| Error::Construction("witness has a single parse".into()))?;
                return Ok(Unambiguity::Fail { witness: word, first, second });
            }
            if seen.len() >= limits.subset_cap {
                return Err(Error::ResourceCap { what: "path pairs", cap: limits.subset_cap });
            }
            seen.insert(key);
            kept.push((word, key));
        }
        frontier = kept;
    }
    Ok(Unambiguity::PassAt { n })
}
