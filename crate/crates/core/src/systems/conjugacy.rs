/*
 * SPDX-License-Identifier: Apache-2.0
 */

//! A sofic shift and its higher block presentation, related by block maps
//! in both directions, for checking that synchronizing words map to
//! synchronizing words.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::alphabet::{Alphabet, Symbol, Word};
use crate::automaton::FactorAutomaton;
use crate::block_map::BlockMap;
use crate::error::Result;
use crate::language::{Language, Limits};
use crate::presentation::AutomatonLanguage;
use crate::synchro::SyncAnalyzer;

#[derive(Clone, Debug)]
pub struct ConjugatePair {
    pub source: AutomatonLanguage,
    pub image: AutomatonLanguage,
    /// Radius `L` of `phi`; the inverse has radius 0.
    pub radius: usize,
    /// `x ↦ (x_[i-L, i+L])_i`.
    pub phi: BlockMap,
    /// Middle symbol of each block.
    pub inverse: BlockMap,
}

/// The `(2L+1)`-block presentation of the shift read off `fa`.
pub fn higher_block_pair(alphabet: &Alphabet, fa: &FactorAutomaton, radius: usize, limits: Limits) -> Result<ConjugatePair> {
    let q = alphabet.len();
    let span = 2 * radius + 1;
    let mut names: Vec<String> = Vec::new();
    let mut buf = alloc::vec![0usize; span];
    let total = q.pow(span as u32);
    let sep = if alphabet.is_compact() { "" } else { "_" };
    for idx in 0..total {
        let mut x = idx;
        for slot in buf.iter_mut().rev() {
            *slot = x % q;
            x /= q;
        }
        let parts: Vec<&str> = buf.iter().map(|&s| alphabet.name(Symbol(s as u16))).collect();
        names.push(format!("[{}]", parts.join(sep)));
    }
    let target = Alphabet::new(names)?;
    let phi = BlockMap::from_fn(alphabet, target.clone(), radius, |w| {
        Symbol(w.iter().fold(0usize, |acc, s| acc * q + s.index()) as u16)
    })?;
    let inverse = BlockMap::from_fn(&target, alphabet.clone(), 0, |w| {
        let mut x = w[0].index();
        for _ in 0..radius {
            x /= q;
        }
        Symbol((x % q) as u16)
    })?;
    let image_fa = phi.image_automaton(fa, limits.subset_cap)?.trim();
    let source = AutomatonLanguage::new(alphabet.clone(), fa.trim(), limits, true);
    let image = AutomatonLanguage::new(target, image_fa, limits, true);
    Ok(ConjugatePair { source, image, radius, phi, inverse })
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Lemma1Report {
    /// Source words `x_[-3L, 3L]` examined.
    pub windows: usize,
    /// Those whose centre `x_[-L, L]` is synchronizing.
    pub premise: usize,
    /// Images `x̄_[-2L, 2L]` that are not synchronizing.
    pub violations: Vec<Word>,
    /// Windows where applying `phi` then the inverse does not give back
    /// the middle.
    pub round_trip_failures: usize,
}

/// For every admissible source word of length `6L + 1` with synchronizing
/// centre, checks that its image of length `4L + 1` is synchronizing.
pub fn lemma1_check(pair: &ConjugatePair) -> Result<Lemma1Report> {
    let l = pair.radius;
    let mut src = SyncAnalyzer::new(&pair.source)?;
    let mut img = SyncAnalyzer::new(&pair.image)?;
    let mut words = Vec::new();
    let fa = pair.source.automaton().expect("automaton language");
    fa.visit_words(6 * l + 1, |w| {
        if w.len() == 6 * l + 1 {
            words.push(Word::from_slice(w));
        }
        Ok(())
    })?;
    let mut report = Lemma1Report { windows: words.len(), ..Default::default() };
    for u in words {
        let image = pair.phi.apply(&u)?;
        if pair.inverse.apply(&image)?.as_slice() != &u[l..u.len() - l] {
            report.round_trip_failures += 1;
        }
        if !src.is_synchronizing(&u[2 * l..4 * l + 1], 0)? {
            continue;
        }
        report.premise += 1;
        if !img.is_admissible(&image)? || !img.is_synchronizing(&image, 0)? {
            report.violations.push(image);
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{LabeledGraph, Presentation};

    #[test]
    fn even_shift_three_block_pair() {
        let bin = Alphabet::new(["0", "1"]).unwrap();
        let g = LabeledGraph {
            vertices: 2,
            edges: alloc::vec![(0, Symbol(1), 0), (0, Symbol(0), 1), (1, Symbol(0), 0)],
        };
        let lang = Presentation::sofic(bin.clone(), g).unwrap().compile(Limits::default()).unwrap();
        let pair = higher_block_pair(&bin, lang.automaton().unwrap(), 1, Limits::default()).unwrap();
        assert_eq!(pair.image.alphabet().len(), 8);
        let r = lemma1_check(&pair).unwrap();
        assert!(r.windows > 0 && r.premise > 0);
        assert!(r.violations.is_empty());
        assert_eq!(r.round_trip_failures, 0);
    }
}
