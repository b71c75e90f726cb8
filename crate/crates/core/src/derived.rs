/*
 * SPDX-License-Identifier: Apache-2.0
 */

//! From an overlap code to a countable-state Markov shift: the derived code
//! `Ĉ` of chains ending in a short word, its Markov code `D` of rings, the
//! edge shift on states `(d, l)`, and entropy estimates for both sides of
//! the concatenation set.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;

use crate::alphabet::{shortlex, Alphabet, Symbol, Word};
use crate::automaton::FactorAutomaton;
use crate::error::{Error, Result};
use crate::language::{check_cap, ln_u128, Limits};
use crate::spectral::{spectral_radius, strongly_connected_components, RadiusMethod, SparseMatrix};
use crate::spo::{ostar, Factorization, MarkedWord, SpoCode};

/// A finite truncation of `Ĉ`.
#[derive(Clone, Debug)]
pub struct DerivedCode {
    pub max_len: usize,
    /// The truncation as an overlap code over the base bifix code.
    pub code: SpoCode,
    /// For each word of `code`, the base-code indices whose overlap product
    /// it is: non-short words, then one short word.
    pub provenance: Vec<Vec<usize>>,
    /// Products that coincided with an earlier word: `(word, dropped
    /// provenance)`.
    pub collisions: Vec<(Word, Vec<usize>)>,
    /// Set when the base code has no short word.
    pub diagnostic: Option<String>,
}

impl DerivedCode {
    pub fn is_empty(&self) -> bool {
        self.code.is_empty()
    }
}

/// All chainable products `c_1 ⊛ … ⊛ c_(Q-1) ⊛ c` of length at most
/// `max_len` with `c` short (`len(c) <= len(f⁻(c)) + len(f⁺(c))`) and every
/// `c_q` not short. Words are returned in shortlex order.
pub fn build_hat_code(base: &SpoCode, max_len: usize, limits: &Limits) -> Result<DerivedCode> {
    if max_len < base.max_word_len() {
        return Err(crate::error::domain!(
            "truncation length {max_len} below the longest code word {}",
            base.max_word_len()
        ));
    }
    let bullet = base.bullet_flags();
    let empty = |diag: Option<String>| -> Result<DerivedCode> {
        Ok(DerivedCode {
            max_len,
            code: SpoCode::new(base.bifix().clone(), Vec::new())?,
            provenance: Vec::new(),
            collisions: Vec::new(),
            diagnostic: diag,
        })
    };
    if !bullet.iter().any(|&b| b) {
        return empty(Some("the code has no word with len(c) <= len(f⁻(c)) + len(f⁺(c)); the derived code is empty".into()));
    }
    let mut found: Vec<(MarkedWord, Vec<usize>)> = Vec::new();
    // stack of (product so far, provenance)
    let mut stack: Vec<(MarkedWord, Vec<usize>)> = Vec::new();
    for (i, c) in base.words().iter().enumerate() {
        if bullet[i] {
            found.push((c.clone(), alloc::vec![i]));
        } else {
            stack.push((c.clone(), alloc::vec![i]));
        }
    }
    while let Some((prod, prov)) = stack.pop() {
        let last = *prov.last().expect("nonempty provenance");
        for &j in base.successors(last) {
            let c = base.word(j);
            let len = prod.len() - prod.suffix_len() + c.len();
            if len > max_len {
                continue;
            }
            let next = ostar(&prod, c)?;
            let mut p = prov.clone();
            p.push(j);
            if bullet[j] {
                check_cap(found.len() + 1, limits.word_cap)?;
                found.push((next, p));
            } else {
                check_cap(stack.len() + found.len() + 1, limits.word_cap)?;
                stack.push((next, p));
            }
        }
    }
    found.sort_by(|a, b| shortlex(a.0.word(), b.0.word()).then_with(|| a.1.cmp(&b.1)));
    let mut words = Vec::new();
    let mut provenance = Vec::new();
    let mut collisions = Vec::new();
    for (w, p) in found {
        if words.last().is_some_and(|prev: &MarkedWord| prev.word() == w.word()) {
            collisions.push((w.word().clone(), p));
        } else {
            words.push(w);
            provenance.push(p);
        }
    }
    Ok(DerivedCode { max_len, code: SpoCode::new(base.bifix().clone(), words)?, provenance, collisions, diagnostic: None })
}

/// States `D` (rings of `Ĉ` words) with the 0-1 relation
/// `T(d, d') = 1` iff `d f⁻(d') ∈ Ĉ`.
#[derive(Clone, Debug)]
pub struct MarkovCode {
    pub states: Vec<Word>,
    /// `f⁻` of the `Ĉ` word each state came from.
    pub prefixes: Vec<Word>,
    /// Index into the derived code of the word each state came from.
    pub origin: Vec<usize>,
    pub transitions: SparseMatrix,
    /// Pairs of derived-code indices with equal rings; the second one was
    /// merged into the first.
    pub ring_collisions: Vec<(usize, usize)>,
}

impl MarkovCode {
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn transition_count(&self) -> usize {
        self.transitions.nnz()
    }

    /// Strongly connected components of the transition relation.
    pub fn components(&self) -> Vec<Vec<usize>> {
        strongly_connected_components(self.transitions.rows())
    }

    pub fn is_irreducible(&self) -> bool {
        !self.is_empty() && self.components().len() == 1 && self.transition_count() > 0
    }
}

pub fn build_markov_code(hat: &DerivedCode) -> Result<MarkovCode> {
    if hat.is_empty() {
        return Err(crate::error::domain!("the derived code is empty"));
    }
    let mut states: Vec<Word> = Vec::new();
    let mut prefixes = Vec::new();
    let mut origin = Vec::new();
    let mut ring_collisions = Vec::new();
    let mut by_ring: BTreeMap<Word, usize> = BTreeMap::new();
    for (i, c) in hat.code.words().iter().enumerate() {
        let ring = Word::from_slice(c.ring());
        if let Some(&s) = by_ring.get(&ring) {
            ring_collisions.push((origin[s], i));
            continue;
        }
        by_ring.insert(ring.clone(), states.len());
        states.push(ring);
        prefixes.push(Word::from_slice(c.prefix()));
        origin.push(i);
    }
    let members: BTreeSet<&Word> = hat.code.words().iter().map(MarkedWord::word).collect();
    let mut transitions = SparseMatrix::new(states.len());
    for (a, d) in states.iter().enumerate() {
        for (b, f) in prefixes.iter().enumerate() {
            if members.contains(&d.concat(f)) {
                transitions.set(a, b);
            }
        }
    }
    Ok(MarkovCode { states, prefixes, origin, transitions, ring_collisions })
}

/// The edge shift on `S = {(d, l) : 1 <= l <= len(d)}`.
#[derive(Clone, Debug)]
pub struct EdgeShift {
    /// `(state index in D, l)` for each vertex.
    pub states: Vec<(usize, usize)>,
    /// Symbol `d[l-1]` carried by each vertex.
    pub labels: Vec<Symbol>,
    pub matrix: SparseMatrix,
    offsets: Vec<usize>,
}

impl EdgeShift {
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    /// Vertex index of `(d, l)`.
    pub fn vertex(&self, d: usize, l: usize) -> usize {
        self.offsets[d] + l - 1
    }

    /// Automaton whose edges into a vertex carry that vertex's symbol; its
    /// trimmed language is the language of the edge shift.
    pub fn automaton(&self, n_symbols: usize) -> FactorAutomaton {
        let mut fa = FactorAutomaton::new(self.len(), n_symbols);
        for (s, row) in self.matrix.rows().iter().enumerate() {
            for &t in row {
                fa.add_edge(s, self.labels[t], t);
            }
        }
        fa
    }
}

pub fn build_edge_shift(mc: &MarkovCode) -> EdgeShift {
    let mut states = Vec::new();
    let mut labels = Vec::new();
    let mut offsets = Vec::with_capacity(mc.len());
    for (d, w) in mc.states.iter().enumerate() {
        offsets.push(states.len());
        for l in 1..=w.len() {
            states.push((d, l));
            labels.push(w[l - 1]);
        }
    }
    let mut matrix = SparseMatrix::new(states.len());
    for (d, w) in mc.states.iter().enumerate() {
        for l in 1..w.len() {
            matrix.set(offsets[d] + l - 1, offsets[d] + l);
        }
        let last = offsets[d] + w.len() - 1;
        for &e in mc.transitions.row(d) {
            matrix.set(last, offsets[e]);
        }
    }
    EdgeShift { states, labels, matrix, offsets }
}

/// One nested truncation of the edge shift.
#[derive(Clone, Debug, PartialEq)]
pub struct EntropyStep {
    /// Number of `D` states kept.
    pub d_states: usize,
    /// Size of the principal submatrix.
    pub size: usize,
    pub radius: f64,
    /// `ln radius`, or 0 when the radius is 0.
    pub entropy: f64,
    /// The submatrix has no cycle.
    pub zero_radius: bool,
    pub method: RadiusMethod,
    pub converged: bool,
}

/// `D` indices ordered by (length, lexicographic).
pub fn truncation_order(mc: &MarkovCode) -> Vec<usize> {
    let mut order: Vec<usize> = (0..mc.len()).collect();
    order.sort_by(|&a, &b| shortlex(&mc.states[a], &mc.states[b]));
    order
}

/// Log spectral radius of the principal submatrix on the vertices of the
/// first `k` states of `order`, for `k = 1..=len(order)`.
pub fn edge_shift_entropy(es: &EdgeShift, mc: &MarkovCode, order: &[usize]) -> Vec<EntropyStep> {
    let mut keep = Vec::new();
    let mut out = Vec::with_capacity(order.len());
    for (k, &d) in order.iter().enumerate() {
        for l in 1..=mc.states[d].len() {
            keep.push(es.vertex(d, l));
        }
        let mut sorted = keep.clone();
        sorted.sort_unstable();
        let sub = es.matrix.principal(&sorted);
        let r = spectral_radius(&sub);
        let zero = r.radius == 0.0;
        out.push(EntropyStep {
            d_states: k + 1,
            size: sorted.len(),
            radius: r.radius,
            entropy: if zero { 0.0 } else { libm::log(r.radius) },
            zero_radius: zero,
            method: r.method,
            converged: r.converged,
        });
    }
    out
}

/// Indices `k` of factors lying in the short-word set.
pub fn bullet_indices(code: &SpoCode, fact: &Factorization) -> Vec<usize> {
    fact.factors.iter().enumerate().filter(|(_, f)| code.word(f.word).is_bullet()).map(|(k, _)| k).collect()
}

/// The factor whose ring covers `origin`, and the offset of `origin` in it.
pub fn phi_index(code: &SpoCode, fact: &Factorization, origin: isize) -> Result<(usize, usize)> {
    for f in &fact.factors {
        let ring = code.word(f.word).ring_len() as isize;
        if f.start <= origin && origin < f.start + ring {
            return Ok((f.word, (origin - f.start) as usize));
        }
    }
    Err(crate::error::domain!("no factor ring covers position {origin}"))
}

/// Edge-shift vertex for [`phi_index`] on a factorization over the derived
/// code.
pub fn phi_vertex(hat: &DerivedCode, mc: &MarkovCode, es: &EdgeShift, fact: &Factorization, origin: isize) -> Result<usize> {
    let (word, offset) = phi_index(&hat.code, fact, origin)?;
    let ring = hat.code.word(word).ring();
    let d = mc
        .states
        .iter()
        .position(|s| s.as_slice() == ring)
        .ok_or_else(|| Error::Construction("ring missing from the Markov code".into()))?;
    Ok(es.vertex(d, offset + 1))
}

/// Counts behind a heuristic comparison of the entropy carried by windows
/// that contain a whole code word with that of windows that do not.
#[derive(Clone, Debug, PartialEq)]
pub struct GapReport {
    pub n: usize,
    pub total: u128,
    pub inside: u128,
    pub outside: u128,
    /// `ln(inside) / n`, absent when `inside = 0`.
    pub h_in: Option<f64>,
    pub h_out: Option<f64>,
}

/// Splits the words of length `n` of the concatenation language by whether
/// some factorization places a whole code word inside the window.
pub fn entropy_gap_report(code: &SpoCode, alphabet: &Alphabet, n: usize, limits: &Limits) -> Result<GapReport> {
    if n < 2 * code.max_word_len() {
        return Err(crate::error::domain!("gap report needs n >= {}", 2 * code.max_word_len()));
    }
    let sa = code.automaton(alphabet.len(), &[])?;
    let mut inside = 0u128;
    let mut outside = 0u128;
    let mut seen = 0usize;
    let mut buf: Vec<Word> = Vec::new();
    sa.automaton.visit_words(n, |w| {
        if w.len() == n {
            seen += 1;
            check_cap(seen, limits.word_cap)?;
            buf.push(Word::from_slice(w));
        }
        Ok(())
    })?;
    for w in &buf {
        let parses = crate::spo::parse_window_capped(code, w, limits.word_cap)?;
        if parses.iter().any(|p| !p.complete_factors(code).is_empty()) {
            inside += 1;
        } else {
            outside += 1;
        }
    }
    let h = |c: u128| (c > 0).then(|| ln_u128(c) / n as f64);
    Ok(GapReport { n, total: inside + outside, inside, outside, h_in: h(inside), h_out: h(outside) })
}
