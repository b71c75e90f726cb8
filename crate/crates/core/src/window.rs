/*
 * SPDX-License-Identifier: Apache-2.0
 */

//! Codes with excluded words, evaluated on finite windows.
//!
//! A word `w` is admissible when some `l w r` with `len(l) = len(r) =
//! margin` is a factor of a concatenation of code words and contains no
//! excluded word. The resulting tables shrink as the margin grows and
//! converge to the language of the subshift.

use alloc::vec::Vec;

use crate::alphabet::{Alphabet, Symbol, Word};
use crate::automaton::{FactorAutomaton, StateSet};
use crate::error::Result;
use crate::exclusion::ExclusionFamily;
use crate::language::{check_cap, Language, LanguageTable, Limits};

/// Factors of `C*` for a finite code `C`: one hub state, each word a loop
/// through it.
pub fn hub_automaton(code: &[Word], n_symbols: usize) -> FactorAutomaton {
    let total = 1 + code.iter().map(|w| w.len().saturating_sub(1)).sum::<usize>();
    let mut fa = FactorAutomaton::new(total, n_symbols);
    let mut next = 1;
    for w in code {
        let mut from = 0;
        for (i, &a) in w.iter().enumerate() {
            let to = if i + 1 == w.len() {
                0
            } else {
                next += 1;
                next - 1
            };
            fa.add_edge(from, a, to);
            from = to;
        }
    }
    fa
}

#[derive(Clone, Debug)]
pub struct WindowLanguage {
    alphabet: Alphabet,
    code: Vec<Word>,
    hub: FactorAutomaton,
    families: Vec<ExclusionFamily>,
    margin: usize,
    limits: Limits,
}

impl WindowLanguage {
    pub fn new(
        alphabet: Alphabet,
        code: Vec<Word>,
        families: Vec<ExclusionFamily>,
        margin: Option<usize>,
        limits: Limits,
    ) -> Result<Self> {
        if code.is_empty() || code.iter().any(|w| w.is_empty()) {
            return Err(crate::error::Error::InvalidPresentation("code must be a nonempty set of nonempty words".into()));
        }
        for w in &code {
            alphabet.check_word(w)?;
        }
        let margin = margin.unwrap_or_else(|| code.iter().map(|w| w.len()).max().unwrap_or(0));
        let hub = hub_automaton(&code, alphabet.len());
        Ok(Self { alphabet, code, hub, families, margin, limits })
    }

    pub fn margin(&self) -> usize {
        self.margin
    }

    pub fn code(&self) -> &[Word] {
        &self.code
    }

    pub fn families(&self) -> &[ExclusionFamily] {
        &self.families
    }

    /// Same language description at a different margin.
    pub fn with_margin(&self, margin: usize) -> Self {
        Self { margin, ..self.clone() }
    }

    fn hit_end(&self, x: &[Symbol]) -> bool {
        self.families.iter().any(|f| f.ends_at_end(x))
    }

    fn hit_start(&self, x: &[Symbol]) -> bool {
        self.families.iter().any(|f| f.starts_at_start(x))
    }

    /// `x` is a factor of `C*` and contains no excluded word.
    pub fn is_clean_factor(&self, x: &[Symbol]) -> bool {
        if !self.hub.accepts(x) {
            return false;
        }
        !(1..=x.len()).any(|end| self.hit_end(&x[..end]))
    }

    /// A clean factor `x r` with `len(r) = need`, searched depth first.
    fn right_ok(&self, x: &mut Vec<Symbol>, states: &StateSet, need: usize) -> bool {
        if need == 0 {
            return true;
        }
        for a in self.alphabet.symbols() {
            let next = self.hub.step(states, a);
            if next.is_empty() {
                continue;
            }
            x.push(a);
            let ok = !self.hit_end(x) && self.right_ok(x, &next, need - 1);
            x.pop();
            if ok {
                return true;
            }
        }
        false
    }

    /// A clean factor `l x r` with `len(l) = need_left`, `len(r) = margin`.
    /// `x` holds the current word in reverse.
    fn left_ok(&self, rev: &mut Vec<Symbol>, back: &StateSet, need_left: usize) -> bool {
        if need_left == 0 {
            let mut x: Vec<Symbol> = rev.iter().rev().copied().collect();
            let fwd = self.hub.run(&self.hub.all_states(), &x);
            return self.right_ok(&mut x, &fwd, self.margin);
        }
        for a in self.alphabet.symbols() {
            let next = self.hub.step_back(back, a);
            if next.is_empty() {
                continue;
            }
            rev.push(a);
            let fwd_view: Vec<Symbol> = rev.iter().rev().copied().collect();
            let ok = !self.hit_start(&fwd_view) && self.left_ok(rev, &next, need_left - 1);
            rev.pop();
            if ok {
                return true;
            }
        }
        false
    }

    fn admissible_unchecked(&self, w: &[Symbol]) -> bool {
        if !self.is_clean_factor(w) {
            return false;
        }
        let back = self.hub.run_back(&self.hub.all_states(), w);
        let mut rev: Vec<Symbol> = w.iter().rev().copied().collect();
        self.left_ok(&mut rev, &back, self.margin)
    }

    fn extend_set(&self, w: &[Symbol], depth: usize, backward: bool) -> Result<Vec<Word>> {
        if !self.is_admissible(w)? {
            return Err(crate::error::domain!("word is not admissible"));
        }
        let mut out = Vec::new();
        let mut ext: Vec<Symbol> = Vec::new();
        self.extend_dfs(w, &mut ext, depth, backward, &mut out)?;
        out.sort_by(|a, b| crate::alphabet::shortlex(a, b));
        Ok(out)
    }

    fn extend_dfs(
        &self,
        w: &[Symbol],
        ext: &mut Vec<Symbol>,
        depth: usize,
        backward: bool,
        out: &mut Vec<Word>,
    ) -> Result<()> {
        if ext.len() == depth {
            return Ok(());
        }
        for a in self.alphabet.symbols() {
            ext.push(a);
            let cand: Vec<Symbol> = if backward {
                ext.iter().rev().chain(w.iter()).copied().collect()
            } else {
                w.iter().chain(ext.iter()).copied().collect()
            };
            if self.admissible_unchecked(&cand) {
                check_cap(out.len() + 1, self.limits.word_cap)?;
                out.push(if backward { ext.iter().rev().copied().collect() } else { Word::from_slice(ext) });
                self.extend_dfs(w, ext, depth, backward, out)?;
            }
            ext.pop();
        }
        Ok(())
    }
}

impl Language for WindowLanguage {
    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    fn is_admissible(&self, w: &[Symbol]) -> Result<bool> {
        self.alphabet.check_word(w)?;
        Ok(self.admissible_unchecked(w))
    }

    fn follower_set(&self, w: &[Symbol], depth: usize) -> Result<Vec<Word>> {
        self.extend_set(w, depth, false)
    }

    fn predecessor_set(&self, w: &[Symbol], depth: usize) -> Result<Vec<Word>> {
        self.extend_set(w, depth, true)
    }

    /// Walks all clean factors of length up to `n + 2·margin` and records
    /// their central words.
    fn enumerate(&self, n: usize) -> Result<LanguageTable> {
        if n == 0 {
            return Err(crate::error::domain!("enumeration needs n >= 1"));
        }
        let mut table = LanguageTable::new(n);
        let mut stored = 0usize;
        let mut x = Vec::new();
        let all = self.hub.all_states();
        self.walk(&mut x, &all, n, &mut table, &mut stored)?;
        Ok(table)
    }

    fn limits(&self) -> Limits {
        self.limits
    }
}

impl WindowLanguage {
    fn walk(
        &self,
        x: &mut Vec<Symbol>,
        states: &StateSet,
        n: usize,
        table: &mut LanguageTable,
        stored: &mut usize,
    ) -> Result<()> {
        let m = self.margin;
        if x.len() > 2 * m {
            let mid = &x[m..x.len() - m];
            if table.insert(Word::from_slice(mid)) {
                *stored += 1;
                check_cap(*stored, self.limits.word_cap)?;
            }
        }
        if x.len() == n + 2 * m {
            return Ok(());
        }
        for a in self.alphabet.symbols() {
            let next = self.hub.step(states, a);
            if next.is_empty() {
                continue;
            }
            x.push(a);
            if !self.hit_end(x) {
                self.walk(x, &next, n, table, stored)?;
            }
            x.pop();
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn ab() -> Alphabet {
        Alphabet::new(["a", "b"]).unwrap()
    }

    fn w(s: &[u16]) -> Word {
        s.iter().map(|&x| Symbol(x)).collect()
    }

    #[test]
    fn hub_reads_concatenations() {
        let fa = hub_automaton(&[w(&[0, 1]), w(&[1])], 2);
        assert!(fa.accepts(&w(&[1, 1, 0, 1, 1])));
        assert!(!fa.accepts(&w(&[0, 0])));
    }

    #[test]
    fn exclusion_removes_words() {
        let lang = WindowLanguage::new(
            ab(),
            vec![w(&[0]), w(&[1])],
            vec![ExclusionFamily::Words(vec![w(&[1, 1])])],
            None,
            Limits::default(),
        )
        .unwrap();
        let t = lang.enumerate(4).unwrap();
        assert_eq!(t.count(3), 5);
        assert!(!lang.is_admissible(&w(&[0, 1, 1])).unwrap());
        assert_eq!(lang.follower_set(&w(&[1]), 1).unwrap(), vec![w(&[0])]);
        assert_eq!(lang.predecessor_set(&w(&[1]), 2).unwrap(), vec![w(&[0]), w(&[0, 0]), w(&[1, 0])]);
    }

    #[test]
    fn margin_discards_dead_ends() {
        // b is only admissible if it can be extended both ways
        let lang = WindowLanguage::new(
            ab(),
            vec![w(&[0]), w(&[0, 1])],
            vec![ExclusionFamily::Words(vec![w(&[1, 0])])],
            Some(1),
            Limits::default(),
        )
        .unwrap();
        assert!(!lang.is_admissible(&w(&[1])).unwrap());
        assert!(lang.is_admissible(&w(&[0, 0])).unwrap());
        let t = lang.enumerate(3).unwrap();
        assert_eq!(t.count(1), 1);
    }
}
