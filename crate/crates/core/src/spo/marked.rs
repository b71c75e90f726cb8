/*
 * SPDX-License-Identifier: Apache-2.0
 */

//! Words carrying a distinguished prefix and suffix from a bifix code, and
//! concatenation with overlap.

use super::bifix::BifixCode;
use crate::alphabet::{Symbol, Word};
use crate::error::{Error, Result};

/// A word of `C_F`: its prefix of length `prefix_len` and its suffix of
/// length `suffix_len` are proper and belong to the bifix code.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MarkedWord {
    word: Word,
    prefix_len: usize,
    suffix_len: usize,
}

impl MarkedWord {
    /// Validates explicit marks against `bifix`.
    pub fn new(word: Word, prefix_len: usize, suffix_len: usize, bifix: &BifixCode) -> Result<Self> {
        let n = word.len();
        if prefix_len == 0 || prefix_len >= n || suffix_len == 0 || suffix_len >= n {
            return Err(Error::InvalidCode(alloc::format!(
                "marks ({prefix_len},{suffix_len}) are not proper for a word of length {n}"
            )));
        }
        if !bifix.contains(&word[..prefix_len]) {
            return Err(Error::InvalidCode("marked prefix is not in the bifix code".into()));
        }
        if !bifix.contains(&word[n - suffix_len..]) {
            return Err(Error::InvalidCode("marked suffix is not in the bifix code".into()));
        }
        Ok(Self { word, prefix_len, suffix_len })
    }

    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn prefix_len(&self) -> usize {
        self.prefix_len
    }

    pub fn suffix_len(&self) -> usize {
        self.suffix_len
    }

    /// `f⁻`, the distinguished prefix.
    pub fn prefix(&self) -> &[Symbol] {
        &self.word[..self.prefix_len]
    }

    /// `f⁺`, the distinguished suffix.
    pub fn suffix(&self) -> &[Symbol] {
        &self.word[self.word.len() - self.suffix_len..]
    }

    /// The word with its distinguished suffix removed. Never empty; may be
    /// shorter than the prefix when the two marks overlap.
    pub fn ring(&self) -> &[Symbol] {
        &self.word[..self.word.len() - self.suffix_len]
    }

    pub fn ring_len(&self) -> usize {
        self.word.len() - self.suffix_len
    }

    /// `len(c) - len(f⁻(c)) - len(f⁺(c))`.
    pub fn gap(&self) -> i64 {
        self.word.len() as i64 - self.prefix_len as i64 - self.suffix_len as i64
    }

    /// Membership in `C_F•`: `len(c) <= len(f⁻(c)) + len(f⁺(c))`.
    pub fn is_bullet(&self) -> bool {
        self.gap() <= 0
    }
}

/// The marks of `w` over `bifix`, if `w` has a proper prefix and a proper
/// suffix in the code. Bifixity makes them unique.
pub fn find_marks(bifix: &BifixCode, w: &[Symbol]) -> Option<MarkedWord> {
    if w.is_empty() {
        return None;
    }
    let prefixes = bifix.proper_prefixes(w);
    let suffixes = bifix.proper_suffixes(w);
    debug_assert!(prefixes.len() <= 1 && suffixes.len() <= 1, "bifix code with ambiguous marks");
    match (prefixes.first(), suffixes.first()) {
        (Some(&p), Some(&s)) => Some(MarkedWord { word: Word::from_slice(w), prefix_len: p, suffix_len: s }),
        _ => None,
    }
}

/// The suffix word of `a` equals the prefix word of `b`.
pub fn chainable(a: &MarkedWord, b: &MarkedWord) -> bool {
    a.suffix() == b.prefix()
}

/// `a ⊛ b = ring(a) b`, with `f⁻(a ⊛ b) = f⁻(a)` and `f⁺(a ⊛ b) = f⁺(b)`.
///
/// Total on `C_F`; chainability is not required. An error is returned only
/// when the result fails to carry the inherited prefix mark, which can
/// happen for a non-chainable pair whose first factor has overlapping
/// marks.
pub fn ostar(a: &MarkedWord, b: &MarkedWord) -> Result<MarkedWord> {
    let word = Word::from_slice(a.ring()).concat(b.word());
    let n = word.len();
    if a.prefix_len >= n || word[..a.prefix_len] != *a.prefix() {
        return Err(Error::Construction("overlap product loses the prefix mark of its left factor".into()));
    }
    Ok(MarkedWord { word, prefix_len: a.prefix_len, suffix_len: b.suffix_len })
}

/// Left fold of [`ostar`].
pub fn ostar_product(cs: &[MarkedWord]) -> Result<MarkedWord> {
    let (first, rest) = cs.split_first().ok_or_else(|| crate::error::domain!("empty overlap product"))?;
    rest.iter().try_fold(first.clone(), |acc, c| ostar(&acc, c))
}

/// Consecutive elements are chainable.
pub fn is_chain(cs: &[MarkedWord]) -> bool {
    cs.windows(2).all(|p| chainable(&p[0], &p[1]))
}

/// Predicted length of a chainable product.
pub fn chain_length(cs: &[MarkedWord]) -> usize {
    let total: usize = cs.iter().map(MarkedWord::len).sum();
    let overlaps: usize = cs.iter().take(cs.len().saturating_sub(1)).map(MarkedWord::suffix_len).sum();
    total - overlaps
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    // γ = 0, δ = 1, zero symbol = 2
    const G: u16 = 0;
    const D: u16 = 1;
    const Z: u16 = 2;

    fn w(s: &[u16]) -> Word {
        s.iter().map(|&x| Symbol(x)).collect()
    }

    fn f2() -> BifixCode {
        BifixCode::new(vec![w(&[G, D, G]), w(&[G, D, D, G])]).unwrap()
    }

    #[test]
    fn marks_found_by_scan() {
        let c = find_marks(&f2(), &w(&[G, D, G, Z, G, D, D, G])).unwrap();
        assert_eq!((c.prefix_len(), c.suffix_len()), (3, 4));
        assert!(!c.is_bullet());
    }

    #[test]
    fn marks_must_be_proper() {
        let f = BifixCode::new(vec![w(&[G, D, G])]).unwrap();
        assert_eq!(find_marks(&f, &w(&[G, D, G])), None);
        assert!(MarkedWord::new(w(&[G, D, G]), 3, 3, &f).is_err());
    }

    #[test]
    fn overlapping_marks_are_bullet() {
        let f = BifixCode::new(vec![w(&[G, D, G])]).unwrap();
        let c = find_marks(&f, &w(&[G, D, G, D, G])).unwrap();
        assert_eq!((c.prefix_len(), c.suffix_len()), (3, 3));
        assert!(c.is_bullet());
        assert_eq!(c.ring(), &w(&[G, D])[..]);
    }

    #[test]
    fn ring_drops_suffix() {
        let c = find_marks(&f2(), &w(&[G, D, G, Z, G, D, D, G])).unwrap();
        assert_eq!(c.ring(), &w(&[G, D, G, Z])[..]);
        // boundary: suffix of length len - 1 leaves one symbol
        let f = BifixCode::new(vec![w(&[G]), w(&[D, D])]).unwrap();
        let c = MarkedWord::new(w(&[G, D, D]), 1, 2, &f).unwrap();
        assert_eq!(c.ring(), &w(&[G])[..]);
    }

    #[test]
    fn ostar_of_chainable_pair() {
        let a = find_marks(&f2(), &w(&[G, D, G, Z, G, D, D, G])).unwrap();
        let b = find_marks(&f2(), &w(&[G, D, D, G, Z, Z, G, D, G])).unwrap();
        assert!(chainable(&a, &b));
        let ab = ostar(&a, &b).unwrap();
        assert_eq!(ab.word(), &w(&[G, D, G, Z, G, D, D, G, Z, Z, G, D, G]));
        assert_eq!((ab.prefix_len(), ab.suffix_len()), (3, 3));
        assert_eq!(ab.len(), a.len() + b.len() - a.suffix_len());
        assert!(!chainable(&b, &b));
    }

    #[test]
    fn ostar_self_overlapping() {
        let f = BifixCode::new(vec![w(&[G, D, G])]).unwrap();
        let a = find_marks(&f, &w(&[G, D, G, D, G])).unwrap();
        let aa = ostar(&a, &a).unwrap();
        assert_eq!(aa.word(), &w(&[G, D, G, D, G, D, G]));
        assert_eq!(aa.len(), 7);
        assert_eq!((aa.prefix_len(), aa.suffix_len()), (3, 3));
    }

    #[test]
    fn product_identities() {
        let a = find_marks(&f2(), &w(&[G, D, G, Z, G, D, D, G])).unwrap();
        let b = find_marks(&f2(), &w(&[G, D, D, G, Z, Z, G, D, G])).unwrap();
        assert_eq!(ostar_product(core::slice::from_ref(&a)).unwrap(), a);
        assert_eq!(ostar_product(&[a.clone(), b.clone()]).unwrap(), ostar(&a, &b).unwrap());
        assert!(ostar_product(&[]).is_err());
        assert_eq!(chain_length(&[a.clone(), b.clone(), a.clone()]), ostar_product(&[a, b.clone(), find_marks(&f2(), &w(&[G, D, G, Z, G, D, D, G])).unwrap()]).unwrap().len());
    }
}
