/*
 * SPDX-License-Identifier: Apache-2.0
 */

//! Synchronizing words and what is built from them.
//!
//! A word `c` is synchronizing when `u⁻ c u⁺` is admissible whenever
//! `u⁻ c` and `c u⁺` are. On a language given by an automaton this is
//! decided exactly: `c` synchronizes iff every context `u⁻` leaves the
//! follower set of `u⁻ c` equal to that of `c`. Follower sets are compared
//! as classes of the minimized subset automaton. Other languages are
//! checked against all contexts up to a depth, and say so.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;

use crate::alphabet::{Symbol, Word};
use crate::automaton::{FactorAutomaton, StateSet};
use crate::error::{Error, Result};
use crate::language::{Language, Limits};
use crate::spo::{BifixCode, BifixViolation, SpoCode};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SyncOutcome {
    Synchronizing,
    /// `left c` and `c right` are admissible, `left c right` is not.
    Refuted { left: Word, right: Word },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SynchroVerdict {
    pub word: Word,
    pub depth: usize,
    pub outcome: SyncOutcome,
    /// The verdict holds for all contexts, not only those up to `depth`.
    pub exact: bool,
}

impl SynchroVerdict {
    pub fn is_synchronizing(&self) -> bool {
        self.outcome == SyncOutcome::Synchronizing
    }
}

const DEAD: u32 = u32::MAX;

/// Minimized determinization of an essential automaton, started from the
/// set of all states.
#[derive(Clone, Debug)]
struct SubsetDfa {
    fa: FactorAutomaton,
    sets: Vec<StateSet>,
    /// Shortlex-least word reaching each node; node 0 is the full set.
    words: Vec<Word>,
    delta: Vec<Vec<u32>>,
    class: Vec<u32>,
}

impl SubsetDfa {
    fn build(fa: FactorAutomaton, cap: usize) -> Result<Self> {
        let q = fa.num_symbols();
        let mut sets = alloc::vec![fa.all_states()];
        let mut words = alloc::vec![Word::empty()];
        for (s, w) in fa.reachable_subsets(cap)? {
            if s != sets[0] {
                sets.push(s);
                words.push(w);
            }
        }
        let index: BTreeMap<StateSet, u32> = sets.iter().enumerate().map(|(i, s)| (s.clone(), i as u32)).collect();
        let delta: Vec<Vec<u32>> = sets
            .iter()
            .map(|s| {
                (0..q)
                    .map(|a| {
                        let t = fa.step(s, Symbol(a as u16));
                        if t.is_empty() {
                            DEAD
                        } else {
                            index[&t]
                        }
                    })
                    .collect()
            })
            .collect();
        // Moore refinement; every node accepts.
        let mut class = alloc::vec![0u32; sets.len()];
        let mut count = 1;
        loop {
            let mut sig_ids: BTreeMap<(u32, Vec<u32>), u32> = BTreeMap::new();
            let mut next = Vec::with_capacity(sets.len());
            for i in 0..sets.len() {
                let sig: Vec<u32> = delta[i].iter().map(|&t| if t == DEAD { DEAD } else { class[t as usize] }).collect();
                let n = sig_ids.len() as u32;
                next.push(*sig_ids.entry((class[i], sig)).or_insert(n));
            }
            let new_count = sig_ids.len();
            class = next;
            if new_count == count {
                break;
            }
            count = new_count;
        }
        Ok(Self { fa, sets, words, delta, class })
    }

    fn run(&self, from: usize, w: &[Symbol]) -> Option<usize> {
        let mut s = from as u32;
        for &a in w {
            s = self.delta[s as usize][a.index()];
            if s == DEAD {
                return None;
            }
        }
        Some(s as usize)
    }
}

/// Synchronization queries against one language, with cached verdicts.
pub struct SyncAnalyzer<'a> {
    lang: &'a dyn Language,
    dfa: Option<SubsetDfa>,
    cache: BTreeMap<(Word, usize), SynchroVerdict>,
}

impl<'a> SyncAnalyzer<'a> {
    /// Uses the exact method when the language has an automaton. The
    /// automaton is reduced to its essential part first, so the answers
    /// concern the subshift (bi-infinitely extendable words).
    pub fn new(lang: &'a dyn Language) -> Result<Self> {
        let dfa = match lang.automaton() {
            Some(fa) => Some(SubsetDfa::build(fa.trim(), lang.limits().subset_cap)?),
            None => None,
        };
        Ok(Self { lang, dfa, cache: BTreeMap::new() })
    }

    pub fn is_exact(&self) -> bool {
        self.dfa.is_some()
    }

    pub fn language(&self) -> &dyn Language {
        self.lang
    }

    /// Admissibility in the language analyzed (the essential part when
    /// exact).
    pub fn is_admissible(&self, w: &[Symbol]) -> Result<bool> {
        match &self.dfa {
            Some(d) => {
                self.lang.alphabet().check_word(w)?;
                Ok(d.run(0, w).is_some())
            }
            None => self.lang.is_admissible(w),
        }
    }

    pub fn follower_set(&self, w: &[Symbol], depth: usize) -> Result<Vec<Word>> {
        self.context_set(w, depth, false)
    }

    pub fn predecessor_set(&self, w: &[Symbol], depth: usize) -> Result<Vec<Word>> {
        self.context_set(w, depth, true)
    }

    fn context_set(&self, w: &[Symbol], depth: usize, backward: bool) -> Result<Vec<Word>> {
        match &self.dfa {
            Some(d) => {
                if !self.is_admissible(w)? {
                    return Err(crate::error::domain!("word is not admissible"));
                }
                let all = d.fa.all_states();
                let s = if backward { d.fa.run_back(&all, w) } else { d.fa.run(&all, w) };
                d.fa.extensions(&s, depth, backward, self.lang.limits().word_cap)
            }
            None if backward => self.lang.predecessor_set(w, depth),
            None => self.lang.follower_set(w, depth),
        }
    }

    /// Decides (exactly) or tests (up to `depth`) whether `c` is
    /// synchronizing.
    pub fn check(&mut self, c: &[Symbol], depth: usize) -> Result<SynchroVerdict> {
        let key_depth = if self.dfa.is_some() { 0 } else { depth };
        let key = (Word::from_slice(c), key_depth);
        if let Some(v) = self.cache.get(&key) {
            let mut v = v.clone();
            v.depth = depth;
            return Ok(v);
        }
        let v = match &self.dfa {
            Some(d) => exact_check(d, c, depth, self.lang.limits())?,
            None => bounded_check(self, c, depth)?,
        };
        self.cache.insert(key, v.clone());
        Ok(v)
    }

    pub fn is_synchronizing(&mut self, c: &[Symbol], depth: usize) -> Result<bool> {
        Ok(self.check(c, depth)?.is_synchronizing())
    }
}

fn exact_check(d: &SubsetDfa, c: &[Symbol], depth: usize, limits: Limits) -> Result<SynchroVerdict> {
    let Some(base) = d.run(0, c) else {
        return Err(crate::error::domain!("word is not admissible"));
    };
    let target = d.class[base];
    for r in 0..d.sets.len() {
        let Some(t) = d.run(r, c) else { continue };
        if d.class[t] != target {
            let right = d
                .fa
                .follower_gap(&d.sets[base], &d.sets[t], limits.subset_cap)?
                .ok_or_else(|| Error::Construction("distinct follower classes without a separating word".into()))?;
            return Ok(SynchroVerdict {
                word: Word::from_slice(c),
                depth,
                outcome: SyncOutcome::Refuted { left: d.words[r].clone(), right },
                exact: true,
            });
        }
    }
    Ok(SynchroVerdict { word: Word::from_slice(c), depth, outcome: SyncOutcome::Synchronizing, exact: true })
}

/// Tries pairs in order of (longer side, left length, left, right length,
/// right), so a witness found at some depth is found again at every larger
/// depth.
fn bounded_check(an: &SyncAnalyzer<'_>, c: &[Symbol], depth: usize) -> Result<SynchroVerdict> {
    let lang = an.lang;
    if !lang.is_admissible(c)? {
        return Err(crate::error::domain!("word is not admissible"));
    }
    let left = lang.predecessor_set(c, depth)?;
    let right = lang.follower_set(c, depth)?;
    let mut pairs: Vec<(usize, &Word, &Word)> = Vec::with_capacity(left.len() * right.len());
    for l in &left {
        for r in &right {
            pairs.push((l.len().max(r.len()), l, r));
        }
    }
    pairs.sort_by(|a, b| {
        a.0.cmp(&b.0)
            .then(a.1.len().cmp(&b.1.len()))
            .then(a.1.cmp(b.1))
            .then(a.2.len().cmp(&b.2.len()))
            .then(a.2.cmp(b.2))
    });
    for (_, l, r) in pairs {
        let mut x = l.clone();
        x.extend_from_slice(c);
        x.extend_from_slice(r);
        if !lang.is_admissible(&x)? {
            return Ok(SynchroVerdict {
                word: Word::from_slice(c),
                depth,
                outcome: SyncOutcome::Refuted { left: l.clone(), right: r.clone() },
                exact: false,
            });
        }
    }
    Ok(SynchroVerdict { word: Word::from_slice(c), depth, outcome: SyncOutcome::Synchronizing, exact: false })
}

/// `J_i` for each position of a window: the largest `j <= i` with
/// `w[j..=i]` synchronizing, or `None`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JProfile {
    pub window: Word,
    pub values: Vec<Option<usize>>,
    pub exact: bool,
}

impl JProfile {
    /// Consecutive defined values that decrease.
    pub fn monotonicity_violations(&self) -> Vec<usize> {
        self.values
            .windows(2)
            .enumerate()
            .filter_map(|(i, p)| match (p[0], p[1]) {
                (Some(a), Some(b)) if b < a => Some(i + 1),
                _ => None,
            })
            .collect()
    }

    /// Positions where `J` becomes defined or strictly increases.
    pub fn increase_positions(&self) -> Vec<usize> {
        let mut out = Vec::new();
        let mut prev: Option<usize> = None;
        for (i, v) in self.values.iter().enumerate() {
            if let Some(j) = v {
                if prev.is_none_or(|p| *j > p) {
                    out.push(i);
                }
                prev = Some(*j);
            }
        }
        out
    }
}

pub fn j_profile(an: &mut SyncAnalyzer<'_>, w: &[Symbol], depth: usize) -> Result<JProfile> {
    if !an.is_admissible(w)? {
        return Err(crate::error::domain!("window is not admissible"));
    }
    let mut values = Vec::with_capacity(w.len());
    for i in 0..w.len() {
        let mut found = None;
        for j in (0..=i).rev() {
            if an.is_synchronizing(&w[j..=i], depth)? {
                found = Some(j);
                break;
            }
        }
        values.push(found);
    }
    Ok(JProfile { window: Word::from_slice(w), values, exact: an.is_exact() })
}

/// The code read off the synchronizing words of a language, within bounds.
#[derive(Clone, Debug)]
pub struct CanonicalCodeResult {
    /// Synchronizing words with no synchronizing proper factor.
    pub minimal: Vec<Word>,
    pub bifix: Option<BifixCode>,
    pub code: Option<SpoCode>,
    pub bifix_violations: Vec<BifixViolation>,
    pub max_len: usize,
    pub depth: usize,
    pub exact: bool,
    /// Whether the essential automaton is strongly connected, when known.
    pub transitive: Option<bool>,
    pub diagnostic: Option<String>,
}

/// Occurrences `(start, len)` of members of `set` in `w`.
fn occurrences(w: &[Symbol], set: &BTreeSet<Word>, max: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for start in 0..w.len() {
        for len in 1..=max.min(w.len() - start) {
            if set.contains(&Word::from_slice(&w[start..start + len])) {
                out.push((start, len));
            }
        }
    }
    out
}

pub fn extract_canonical_code(an: &mut SyncAnalyzer<'_>, max_len: usize, depth: usize) -> Result<CanonicalCodeResult> {
    let table = an.language().enumerate(max_len)?;
    let mut sync: BTreeSet<Word> = BTreeSet::new();
    let mut minimal: Vec<Word> = Vec::new();
    for w in table.iter() {
        if !an.is_admissible(w)? {
            continue;
        }
        if !an.is_synchronizing(w, depth)? {
            continue;
        }
        sync.insert(w.clone());
        let n = w.len();
        let has_sync_factor = (1..n).any(|len| (0..=n - len).any(|i| sync.contains(&Word::from_slice(&w[i..i + len]))));
        if !has_sync_factor {
            minimal.push(w.clone());
        }
    }
    let transitive = an.dfa.as_ref().map(|d| d.fa.num_states() > 0 && d.fa.components().len() == 1);
    let mut result = CanonicalCodeResult {
        minimal: minimal.clone(),
        bifix: None,
        code: None,
        bifix_violations: BifixCode::violations(&minimal),
        max_len,
        depth,
        exact: an.is_exact(),
        transitive,
        diagnostic: None,
    };
    if minimal.is_empty() {
        result.diagnostic = Some(alloc::format!("no synchronizing word of length at most {max_len}"));
        return Ok(result);
    }
    if !result.bifix_violations.is_empty() {
        result.diagnostic = Some("minimal synchronizing words do not form a bifix code".into());
        return Ok(result);
    }
    let bifix = BifixCode::new(minimal.clone())?;
    let min_set: BTreeSet<Word> = minimal.iter().cloned().collect();
    let longest_min = bifix.max_len();
    let mut code_words = Vec::new();
    for w in sync.iter() {
        let occ = occurrences(w, &min_set, longest_min);
        if occ.len() != 2 {
            continue;
        }
        let (a, b) = (occ[0], occ[1]);
        let n = w.len();
        if a.0 == 0 && a.1 < n && b.0 + b.1 == n && b.1 < n && a != b {
            code_words.push(w.clone());
        }
    }
    code_words.sort_by(|a, b| crate::alphabet::shortlex(a, b));
    result.code = Some(SpoCode::from_words(bifix.clone(), code_words)?);
    result.bifix = Some(bifix);
    Ok(result)
}

/// Per-word gaps and their running maximum over length bounds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionHReport {
    /// `(word length, gap)` per code word, in code order.
    pub gaps: Vec<(usize, i64)>,
    /// `(n, max gap over words of length <= n)`.
    pub running_max: Vec<(usize, Option<i64>)>,
    /// The running maximum strictly increases across at least three
    /// lengths.
    pub consistent: bool,
}

pub fn condition_h_report(code: &SpoCode, lengths: &[usize]) -> ConditionHReport {
    let gaps: Vec<(usize, i64)> = code.words().iter().map(|c| (c.len(), c.gap())).collect();
    let mut lengths = lengths.to_vec();
    lengths.sort_unstable();
    lengths.dedup();
    let running_max: Vec<(usize, Option<i64>)> = lengths
        .iter()
        .map(|&n| (n, gaps.iter().filter(|(l, _)| *l <= n).map(|&(_, g)| g).max()))
        .collect();
    let strictly = running_max.windows(2).all(|p| match (p[0].1, p[1].1) {
        (Some(a), Some(b)) => b > a,
        (None, Some(_)) => true,
        _ => false,
    });
    ConditionHReport { gaps, consistent: running_max.len() >= 3 && strictly, running_max }
}

/// Distinct depth-truncated follower sets of `b a` over predecessors `b` of
/// `a` of length at most `m`, for `m = 1..=pred_len`.
pub fn markov_boundary_test(
    an: &SyncAnalyzer<'_>,
    a: &[Symbol],
    pred_len: usize,
    ctx_depth: usize,
) -> Result<Vec<usize>> {
    let preds = an.predecessor_set(a, pred_len)?;
    let mut counts = Vec::with_capacity(pred_len);
    let mut seen: BTreeSet<Vec<Word>> = BTreeSet::new();
    let mut sorted = preds;
    sorted.sort_by_key(|b| b.len());
    let mut idx = 0;
    for m in 1..=pred_len {
        while idx < sorted.len() && sorted[idx].len() <= m {
            let ba = sorted[idx].concat(a);
            seen.insert(an.follower_set(&ba, ctx_depth)?);
            idx += 1;
        }
        counts.push(seen.len());
    }
    Ok(counts)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// Right extensions valid after every left context.
    Plus,
    /// Left extensions valid before every right context.
    Minus,
}

/// Depth-bounded surrogate of the ω-sets: for [`Side::Plus`], the words
/// `w⁺` with `w⁻ a w⁺` admissible for every `w⁻` of length at most `depth`
/// with `w⁻ a` admissible.
pub fn omega_set_bounded(an: &SyncAnalyzer<'_>, a: &[Symbol], depth: usize, side: Side) -> Result<Vec<Word>> {
    let (cands, ctxs) = match side {
        Side::Plus => (an.follower_set(a, depth)?, an.predecessor_set(a, depth)?),
        Side::Minus => (an.predecessor_set(a, depth)?, an.follower_set(a, depth)?),
    };
    let mut out = Vec::new();
    for w in cands {
        let mut ok = true;
        for u in &ctxs {
            let x = match side {
                Side::Plus => u.concat(a).concat(&w),
                Side::Minus => w.concat(a).concat(u),
            };
            if !an.is_admissible(&x)? {
                ok = false;
                break;
            }
        }
        if ok {
            out.push(w);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabet;
    use crate::presentation::{LabeledGraph, Presentation};
    use alloc::vec;

    fn w(s: &[u16]) -> Word {
        s.iter().map(|&x| Symbol(x)).collect()
    }

    fn bin() -> Alphabet {
        Alphabet::new(["0", "1"]).unwrap()
    }

    fn even_shift() -> crate::presentation::Compiled {
        let g = LabeledGraph { vertices: 2, edges: vec![(0, Symbol(1), 0), (0, Symbol(0), 1), (1, Symbol(0), 0)] };
        Presentation::sofic(bin(), g).unwrap().compile(Limits::default()).unwrap()
    }

    #[test]
    fn even_shift_one_synchronizes() {
        let lang = even_shift();
        let mut an = SyncAnalyzer::new(&lang).unwrap();
        let v = an.check(&w(&[1]), 4).unwrap();
        assert!(v.is_synchronizing() && v.exact);
        let v = an.check(&w(&[0, 0]), 4).unwrap();
        match v.outcome {
            SyncOutcome::Refuted { left, right } => {
                let mut x = left.clone();
                x.extend_from_slice(&[Symbol(0), Symbol(0)]);
                x.extend_from_slice(&right);
                assert!(!an.is_admissible(&x).unwrap());
            }
            _ => panic!("00 does not synchronize the even shift"),
        }
    }

    #[test]
    fn even_shift_profiles() {
        let lang = even_shift();
        let mut an = SyncAnalyzer::new(&lang).unwrap();
        let p = j_profile(&mut an, &w(&[0; 6]), 3).unwrap();
        assert!(p.values.iter().all(Option::is_none));
        let p = j_profile(&mut an, &w(&[0, 0, 1, 0, 0]), 3).unwrap();
        assert_eq!(p.values, vec![None, None, Some(2), Some(2), Some(2)]);
        assert!(p.monotonicity_violations().is_empty());
    }

    #[test]
    fn even_shift_canonical_code() {
        let lang = even_shift();
        let mut an = SyncAnalyzer::new(&lang).unwrap();
        let r = extract_canonical_code(&mut an, 7, 3).unwrap();
        assert_eq!(r.minimal, vec![w(&[1])]);
        let words: Vec<_> = r.code.unwrap().words().iter().map(|c| c.word().clone()).collect();
        assert_eq!(words, vec![w(&[1, 1]), w(&[1, 0, 0, 1]), w(&[1, 0, 0, 0, 0, 1])]);
        assert_eq!(r.transitive, Some(true));
    }

    #[test]
    fn golden_mean_every_symbol_synchronizes() {
        let lang = Presentation::sft(bin(), vec![w(&[1, 1])]).unwrap().compile(Limits::default()).unwrap();
        let mut an = SyncAnalyzer::new(&lang).unwrap();
        assert!(an.is_synchronizing(&w(&[0]), 1).unwrap());
        assert!(an.is_synchronizing(&w(&[1]), 1).unwrap());
        let p = j_profile(&mut an, &w(&[0, 1, 0, 0]), 1).unwrap();
        assert_eq!(p.values, vec![Some(0), Some(1), Some(2), Some(3)]);
    }

    #[test]
    fn omega_of_even_shift_one() {
        let lang = even_shift();
        let an = SyncAnalyzer::new(&lang).unwrap();
        let om = omega_set_bounded(&an, &w(&[1]), 3, Side::Plus).unwrap();
        assert_eq!(om, an.follower_set(&w(&[1]), 3).unwrap());
        assert!(om.contains(&w(&[0, 0, 1])));
        assert!(!om.contains(&w(&[0, 1])));
    }

    #[test]
    fn markov_boundary_counts_bounded_for_sofic() {
        let lang = even_shift();
        let an = SyncAnalyzer::new(&lang).unwrap();
        let counts = markov_boundary_test(&an, &w(&[0]), 6, 4).unwrap();
        assert!(counts.windows(2).all(|p| p[0] <= p[1]));
        assert!(*counts.last().unwrap() <= 3);
    }

    #[test]
    fn condition_h_running_max() {
        let f = BifixCode::new(vec![w(&[0]), w(&[1])]).unwrap();
        let code = SpoCode::from_words(f, vec![w(&[0, 1]), w(&[1, 1])]).unwrap();
        let r = condition_h_report(&code, &[2, 4, 6]);
        assert!(r.gaps.iter().all(|&(_, g)| g <= 0));
        assert!(!r.consistent);
    }
}
