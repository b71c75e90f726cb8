/*
 * SPDX-License-Identifier: Apache-2.0
 */

//! Finite descriptions of subshifts and their compilation into languages.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::alphabet::{contains_factor, Alphabet, Symbol, Word};
use crate::automaton::{FactorAutomaton, StateSet};
use crate::error::{Error, Result};
use crate::exclusion::ExclusionFamily;
use crate::language::{check_cap, Language, LanguageTable, Limits};
use crate::spo::SpoCode;
use crate::window::{hub_automaton, WindowLanguage};

/// A directed graph with symbol-labeled edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledGraph {
    pub vertices: usize,
    pub edges: Vec<(usize, Symbol, usize)>,
}

impl LabeledGraph {
    /// Every vertex has an incoming and an outgoing edge.
    pub fn validate(&self) -> Result<()> {
        let mut has_out = alloc::vec![false; self.vertices];
        let mut has_in = alloc::vec![false; self.vertices];
        for &(p, _, q) in &self.edges {
            if p >= self.vertices || q >= self.vertices {
                return Err(Error::InvalidPresentation(alloc::format!("edge {p} -> {q} leaves the vertex range")));
            }
            has_out[p] = true;
            has_in[q] = true;
        }
        if self.vertices == 0 {
            return Err(Error::InvalidPresentation("graph has no vertices".into()));
        }
        if let Some(v) = (0..self.vertices).find(|&v| !has_out[v] || !has_in[v]) {
            return Err(Error::InvalidPresentation(alloc::format!(
                "vertex {v} needs at least one incoming and one outgoing edge"
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Variant {
    /// Forbidden words; an empty list means the full shift.
    Sft { forbidden: Vec<Word> },
    Sofic { graph: LabeledGraph },
    /// Closure of free concatenations of a finite code.
    Coded { code: Vec<Word> },
    /// Chainable overlap products. `dangling` words have a bifix prefix but
    /// no suffix mark; they may end a product.
    SpoCoded { code: SpoCode, dangling: Vec<Word> },
    /// Concatenations of a finite code avoiding excluded words, evaluated
    /// at window margin `margin` (default: longest code word).
    ExclusionCoded { code: Vec<Word>, excluded: Vec<ExclusionFamily>, margin: Option<usize> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub alphabet: Alphabet,
    pub variant: Variant,
}

impl Presentation {
    pub fn full_shift(alphabet: Alphabet) -> Self {
        Self { alphabet, variant: Variant::Sft { forbidden: Vec::new() } }
    }

    pub fn sft(alphabet: Alphabet, forbidden: Vec<Word>) -> Result<Self> {
        if forbidden.iter().any(|w| w.is_empty()) {
            return Err(Error::InvalidPresentation("forbidden words must be nonempty".into()));
        }
        Ok(Self { alphabet, variant: Variant::Sft { forbidden } })
    }

    pub fn sofic(alphabet: Alphabet, graph: LabeledGraph) -> Result<Self> {
        graph.validate()?;
        Ok(Self { alphabet, variant: Variant::Sofic { graph } })
    }

    pub fn coded(alphabet: Alphabet, code: Vec<Word>) -> Result<Self> {
        if code.is_empty() || code.iter().any(|w| w.is_empty()) {
            return Err(Error::InvalidPresentation("code must be a nonempty set of nonempty words".into()));
        }
        Ok(Self { alphabet, variant: Variant::Coded { code } })
    }

    pub fn spo(alphabet: Alphabet, code: SpoCode, dangling: Vec<Word>) -> Self {
        Self { alphabet, variant: Variant::SpoCoded { code, dangling } }
    }

    pub fn exclusion(
        alphabet: Alphabet,
        code: Vec<Word>,
        excluded: Vec<ExclusionFamily>,
        margin: Option<usize>,
    ) -> Self {
        Self { alphabet, variant: Variant::ExclusionCoded { code, excluded, margin } }
    }

    pub fn kind(&self) -> &'static str {
        match self.variant {
            Variant::Sft { .. } => "sft",
            Variant::Sofic { .. } => "sofic",
            Variant::Coded { .. } => "coded",
            Variant::SpoCoded { .. } => "spo",
            Variant::ExclusionCoded { .. } => "exclusion",
        }
    }

    /// Builds the language object answering membership and enumeration.
    pub fn compile(&self, limits: Limits) -> Result<Compiled> {
        let q = self.alphabet.len();
        let check_all = |ws: &[Word]| ws.iter().try_for_each(|w| self.alphabet.check_word(w));
        match &self.variant {
            Variant::Sft { forbidden } => {
                check_all(forbidden)?;
                let fa = de_bruijn(q, forbidden, limits)?.trim();
                Ok(Compiled::Exact(AutomatonLanguage::new(self.alphabet.clone(), fa, limits, true)))
            }
            Variant::Sofic { graph } => {
                graph.validate()?;
                let mut fa = FactorAutomaton::new(graph.vertices, q);
                for &(p, a, r) in &graph.edges {
                    self.alphabet.check_word(&[a])?;
                    fa.add_edge(p, a, r);
                }
                Ok(Compiled::Exact(AutomatonLanguage::new(self.alphabet.clone(), fa, limits, true)))
            }
            Variant::Coded { code } => {
                check_all(code)?;
                let fa = hub_automaton(code, q);
                Ok(Compiled::Exact(AutomatonLanguage::new(self.alphabet.clone(), fa, limits, true)))
            }
            Variant::SpoCoded { code, dangling } => {
                check_all(dangling)?;
                let sa = code.automaton(q, dangling)?;
                Ok(Compiled::Exact(AutomatonLanguage::new(self.alphabet.clone(), sa.automaton, limits, false)))
            }
            Variant::ExclusionCoded { code, excluded, margin } => {
                check_all(code)?;
                for f in excluded {
                    if let ExclusionFamily::Words(ws) = f {
                        check_all(ws)?;
                    }
                }
                let lang =
                    WindowLanguage::new(self.alphabet.clone(), code.clone(), excluded.clone(), *margin, limits)?;
                Ok(Compiled::Window(lang))
            }
        }
    }
}

/// Automaton over allowed `M`-blocks, `M` = longest forbidden length - 1.
/// Its path labels are the words that avoid the forbidden list and extend
/// to the left by `M` symbols; trimming leaves the language of the shift.
fn de_bruijn(q: usize, forbidden: &[Word], limits: Limits) -> Result<FactorAutomaton> {
    let m = forbidden.iter().map(|w| w.len()).max().unwrap_or(1).saturating_sub(1);
    let ends_bad = |x: &[Symbol]| forbidden.iter().any(|f| x.ends_with(f));
    // allowed blocks of length m, in lexicographic order
    let mut blocks: Vec<Vec<Symbol>> = alloc::vec![Vec::new()];
    for _ in 0..m {
        let mut next = Vec::new();
        for b in &blocks {
            for a in 0..q {
                let mut c = b.clone();
                c.push(Symbol(a as u16));
                if !ends_bad(&c) {
                    next.push(c);
                }
            }
        }
        if next.len() > limits.subset_cap {
            return Err(Error::ResourceCap { what: "block states", cap: limits.subset_cap });
        }
        blocks = next;
    }
    let index: alloc::collections::BTreeMap<Vec<Symbol>, usize> =
        blocks.iter().enumerate().map(|(i, b)| (b.clone(), i)).collect();
    let mut fa = FactorAutomaton::new(blocks.len(), q);
    for (i, b) in blocks.iter().enumerate() {
        for a in 0..q {
            let a = Symbol(a as u16);
            let mut c = b.clone();
            c.push(a);
            if ends_bad(&c) {
                continue;
            }
            if let Some(&j) = index.get(&c[1..]) {
                fa.add_edge(i, a, j);
            }
        }
    }
    Ok(fa)
}

/// A language read off a finite automaton in which every state is initial
/// and accepting.
#[derive(Clone, Debug)]
pub struct AutomatonLanguage {
    alphabet: Alphabet,
    automaton: FactorAutomaton,
    limits: Limits,
    extendable: bool,
}

impl AutomatonLanguage {
    /// `extendable` records whether every word extends on both sides (an
    /// essential automaton); SPO-code automata of finite products are not.
    pub fn new(alphabet: Alphabet, automaton: FactorAutomaton, limits: Limits, extendable: bool) -> Self {
        let extendable = extendable && automaton.is_essential();
        Self { alphabet, automaton, limits, extendable }
    }

    pub fn is_extendable(&self) -> bool {
        self.extendable
    }

    fn context(&self, w: &[Symbol], backward: bool) -> Result<StateSet> {
        self.alphabet.check_word(w)?;
        let all = self.automaton.all_states();
        let s = if backward { self.automaton.run_back(&all, w) } else { self.automaton.run(&all, w) };
        if s.is_empty() && !w.is_empty() {
            return Err(crate::error::domain!("word is not admissible"));
        }
        Ok(s)
    }
}

impl Language for AutomatonLanguage {
    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    fn is_admissible(&self, w: &[Symbol]) -> Result<bool> {
        self.alphabet.check_word(w)?;
        Ok(self.automaton.accepts(w))
    }

    fn follower_set(&self, w: &[Symbol], depth: usize) -> Result<Vec<Word>> {
        let s = self.context(w, false)?;
        self.automaton.extensions(&s, depth, false, self.limits.word_cap)
    }

    fn predecessor_set(&self, w: &[Symbol], depth: usize) -> Result<Vec<Word>> {
        let s = self.context(w, true)?;
        self.automaton.extensions(&s, depth, true, self.limits.word_cap)
    }

    fn enumerate(&self, n: usize) -> Result<LanguageTable> {
        if n == 0 {
            return Err(crate::error::domain!("enumeration needs n >= 1"));
        }
        let mut table = LanguageTable::new(n);
        let mut stored = 0usize;
        self.automaton.visit_words(n, |w| {
            stored += 1;
            check_cap(stored, self.limits.word_cap)?;
            table.insert(w.into());
            Ok(())
        })?;
        Ok(table)
    }

    fn word_counts(&self, n: usize) -> Result<Vec<u128>> {
        self.automaton.word_counts(n, self.limits.subset_cap)
    }

    fn automaton(&self) -> Option<&FactorAutomaton> {
        Some(&self.automaton)
    }

    fn limits(&self) -> Limits {
        self.limits
    }
}

/// A compiled presentation.
#[derive(Clone, Debug)]
pub enum Compiled {
    /// Exact language given by an automaton.
    Exact(AutomatonLanguage),
    /// Window approximation of a code with exclusions.
    Window(WindowLanguage),
}

impl Compiled {
    fn inner(&self) -> &dyn Language {
        match self {
            Compiled::Exact(l) => l,
            Compiled::Window(l) => l,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Compiled::Exact(_))
    }
}

impl Language for Compiled {
    fn alphabet(&self) -> &Alphabet {
        self.inner().alphabet()
    }
    fn is_admissible(&self, w: &[Symbol]) -> Result<bool> {
        self.inner().is_admissible(w)
    }
    fn follower_set(&self, w: &[Symbol], depth: usize) -> Result<Vec<Word>> {
        self.inner().follower_set(w, depth)
    }
    fn predecessor_set(&self, w: &[Symbol], depth: usize) -> Result<Vec<Word>> {
        self.inner().predecessor_set(w, depth)
    }
    fn enumerate(&self, n: usize) -> Result<LanguageTable> {
        self.inner().enumerate(n)
    }
    fn word_counts(&self, n: usize) -> Result<Vec<u128>> {
        self.inner().word_counts(n)
    }
    fn automaton(&self) -> Option<&FactorAutomaton> {
        self.inner().automaton()
    }
    fn limits(&self) -> Limits {
        self.inner().limits()
    }
}

/// Words of length `1..=n` over `alphabet` avoiding every forbidden word
/// and every word that cannot be extended. Computed without automata, by
/// filtering all words of length `n + 2·pad` and taking central factors.
/// Only for tests and small oracles.
pub fn brute_force_sft(alphabet: &Alphabet, forbidden: &[Word], n: usize, pad: usize) -> LanguageTable {
    let q = alphabet.len();
    let total = n + 2 * pad;
    let mut table = LanguageTable::new(n);
    let mut seen = BTreeSet::new();
    let mut x = alloc::vec![Symbol(0); total];
    loop {
        if !forbidden.iter().any(|f| contains_factor(&x, f)) {
            for len in 1..=n {
                for start in pad..=total - pad - len {
                    let w = Word::from_slice(&x[start..start + len]);
                    if seen.insert(w.clone()) {
                        table.insert(w);
                    }
                }
            }
        }
        // odometer
        let mut i = total;
        loop {
            if i == 0 {
                return table;
            }
            i -= 1;
            if x[i].index() + 1 < q {
                x[i] = Symbol(x[i].0 + 1);
                break;
            }
            x[i] = Symbol(0);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn bin() -> Alphabet {
        Alphabet::new(["0", "1"]).unwrap()
    }

    fn w(s: &[u16]) -> Word {
        s.iter().map(|&x| Symbol(x)).collect()
    }

    #[test]
    fn full_shift_words() {
        let p = Presentation::full_shift(bin()).compile(Limits::default()).unwrap();
        let t = p.enumerate(2).unwrap();
        assert_eq!(t.total(), 6);
        assert_eq!(p.word_counts(5).unwrap(), vec![2, 4, 8, 16, 32]);
    }

    #[test]
    fn golden_mean() {
        let p = Presentation::sft(bin(), vec![w(&[1, 1])]).unwrap().compile(Limits::default()).unwrap();
        let t = p.enumerate(3).unwrap();
        let len3: Vec<_> = t.words(3).cloned().collect();
        assert_eq!(len3, vec![w(&[0, 0, 0]), w(&[0, 0, 1]), w(&[0, 1, 0]), w(&[1, 0, 0]), w(&[1, 0, 1])]);
        assert!(!p.is_admissible(&w(&[1, 1])).unwrap());
        assert!(p.is_admissible(&w(&[0, 1, 0, 1])).unwrap());
        assert_eq!(p.follower_set(&w(&[1]), 1).unwrap(), vec![w(&[0])]);
        assert!(p.follower_set(&w(&[1, 1]), 1).is_err());
    }

    #[test]
    fn sft_trim_removes_dead_words() {
        // 01 and 10 forbidden: only constant points, so 01 is absent and so
        // is any word mixing the symbols
        let p = Presentation::sft(bin(), vec![w(&[0, 1]), w(&[1, 0])]).unwrap().compile(Limits::default()).unwrap();
        assert_eq!(p.word_counts(4).unwrap(), vec![2, 2, 2, 2]);
        // 11 allowed only at the end of a word: 1 cannot follow
        let p = Presentation::sft(bin(), vec![w(&[1, 0]), w(&[1, 1])]).unwrap().compile(Limits::default()).unwrap();
        assert!(!p.is_admissible(&w(&[1])).unwrap());
    }

    #[test]
    fn sft_matches_brute_force() {
        let forb = vec![w(&[1, 1]), w(&[1, 0, 1])];
        let p = Presentation::sft(bin(), forb.clone()).unwrap().compile(Limits::default()).unwrap();
        let oracle = brute_force_sft(&bin(), &forb, 6, 6);
        assert_eq!(p.enumerate(6).unwrap(), oracle);
    }

    #[test]
    fn sofic_graph_validation() {
        let g = LabeledGraph { vertices: 2, edges: vec![(0, Symbol(0), 1)] };
        assert!(Presentation::sofic(bin(), g).is_err());
        let even = LabeledGraph {
            vertices: 2,
            edges: vec![(0, Symbol(1), 0), (0, Symbol(0), 1), (1, Symbol(0), 0)],
        };
        let p = Presentation::sofic(bin(), even).unwrap().compile(Limits::default()).unwrap();
        assert!(p.is_admissible(&w(&[1, 0, 0, 1])).unwrap());
        assert!(!p.is_admissible(&w(&[1, 0, 1])).unwrap());
    }

    #[test]
    fn coded_language() {
        let p = Presentation::coded(bin(), vec![w(&[1]), w(&[0, 0])]).unwrap().compile(Limits::default()).unwrap();
        assert!(!p.is_admissible(&w(&[1, 0, 1])).unwrap());
        assert!(p.is_admissible(&w(&[0, 1, 0, 0, 1, 0])).unwrap());
    }
}
