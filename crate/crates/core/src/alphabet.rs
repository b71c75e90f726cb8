/*
 * SPDX-License-Identifier: Apache-2.0
 */

//! Symbols, alphabets and finite words.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::ops::Deref;

use crate::error::{Error, Result};

/// Index of a symbol in its [`Alphabet`]. The alphabet order is the symbol order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(pub u16);

impl Symbol {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A finite, ordered set of named symbols.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<String>,
}

impl Alphabet {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let names: Vec<String> = names.into_iter().map(|s| s.as_ref().to_string()).collect();
        if names.is_empty() {
            return Err(Error::InvalidAlphabet("alphabet is empty".into()));
        }
        if names.len() > u16::MAX as usize {
            return Err(Error::InvalidAlphabet("too many symbols".into()));
        }
        for (i, n) in names.iter().enumerate() {
            if n.is_empty() || n.chars().any(|c| c.is_whitespace() || c == ',' || c == '#') {
                return Err(Error::InvalidAlphabet(alloc::format!("bad symbol name `{n}`")));
            }
            if names[..i].contains(n) {
                return Err(Error::InvalidAlphabet(alloc::format!("duplicate symbol `{n}`")));
            }
        }
        Ok(Self { names })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn symbols(&self) -> impl DoubleEndedIterator<Item = Symbol> + ExactSizeIterator {
        (0..self.names.len() as u16).map(Symbol)
    }

    pub fn contains(&self, s: Symbol) -> bool {
        s.index() < self.names.len()
    }

    pub fn name(&self, s: Symbol) -> &str {
        &self.names[s.index()]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn symbol(&self, name: &str) -> Result<Symbol> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(|i| Symbol(i as u16))
            .ok_or_else(|| Error::UnknownSymbol(name.to_string()))
    }

    /// True when every symbol name is a single character, so words can be
    /// written without separators.
    pub fn is_compact(&self) -> bool {
        self.names.iter().all(|n| n.chars().count() == 1)
    }

    /// Parses a word. Comma-separated symbol names are always accepted; a
    /// separator-free string is read character by character when the
    /// alphabet is compact, and as a single symbol name otherwise.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let text = text.trim();
        if text.is_empty() {
            return Ok(Word::empty());
        }
        if text.contains(',') {
            return text.split(',').map(|t| self.symbol(t.trim())).collect();
        }
        if self.is_compact() {
            let mut buf = [0u8; 4];
            return text.chars().map(|c| self.symbol(c.encode_utf8(&mut buf))).collect();
        }
        self.symbol(text).map(|s| Word::from(alloc::vec![s]))
    }

    pub fn format_word(&self, w: &[Symbol]) -> String {
        let sep = if self.is_compact() { "" } else { "," };
        let mut out = String::new();
        for (i, &s) in w.iter().enumerate() {
            if i > 0 {
                out.push_str(sep);
            }
            out.push_str(self.name(s));
        }
        out
    }

    pub fn check_word(&self, w: &[Symbol]) -> Result<()> {
        match w.iter().find(|s| !self.contains(**s)) {
            Some(s) => Err(Error::UnknownSymbol(alloc::format!("#{}", s.0))),
            None => Ok(()),
        }
    }

    /// Appends symbols not yet present, keeping the existing order.
    pub fn extended<I, S>(&self, extra: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut names = self.names.clone();
        for e in extra {
            let e = e.as_ref();
            if !names.iter().any(|n| n == e) {
                names.push(e.to_string());
            }
        }
        Self::new(names)
    }
}

/// A finite word over some alphabet.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Symbol>);

impl Word {
    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn from_slice(s: &[Symbol]) -> Self {
        Self(s.to_vec())
    }

    pub fn repeat_symbol(s: Symbol, n: usize) -> Self {
        Self(alloc::vec![s; n])
    }

    pub fn as_slice(&self) -> &[Symbol] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<Symbol> {
        self.0
    }

    pub fn push(&mut self, s: Symbol) {
        self.0.push(s);
    }

    pub fn extend_from_slice(&mut self, s: &[Symbol]) {
        self.0.extend_from_slice(s);
    }

    /// Juxtaposition.
    pub fn concat(&self, other: &[Symbol]) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(other);
        Word(v)
    }

    pub fn join<'a, I: IntoIterator<Item = &'a [Symbol]>>(parts: I) -> Word {
        let mut v = Vec::new();
        for p in parts {
            v.extend_from_slice(p);
        }
        Word(v)
    }

    /// The symbols at positions `[start, start + len)` of the periodic
    /// extension of `self` (so `self` is one period).
    pub fn periodic_prefix(&self, len: usize) -> Word {
        assert!(!self.0.is_empty(), "period must be nonempty");
        Word((0..len).map(|i| self.0[i % self.0.len()]).collect())
    }
}

impl Deref for Word {
    type Target = [Symbol];
    fn deref(&self) -> &[Symbol] {
        &self.0
    }
}

impl AsRef<[Symbol]> for Word {
    fn as_ref(&self) -> &[Symbol] {
        &self.0
    }
}

impl From<Vec<Symbol>> for Word {
    fn from(v: Vec<Symbol>) -> Self {
        Self(v)
    }
}

impl From<&[Symbol]> for Word {
    fn from(v: &[Symbol]) -> Self {
        Self(v.to_vec())
    }
}

impl FromIterator<Symbol> for Word {
    fn from_iter<T: IntoIterator<Item = Symbol>>(iter: T) -> Self {
        Self(iter.into_iter().collect())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(".")?;
            }
            write!(f, "{}", s.0)?;
        }
        Ok(())
    }
}

/// Shortlex comparison: shorter words first, then lexicographic.
pub fn shortlex(a: &[Symbol], b: &[Symbol]) -> core::cmp::Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

/// True when `needle` occurs in `hay` as a factor.
pub fn contains_factor(hay: &[Symbol], needle: &[Symbol]) -> bool {
    needle.is_empty() || hay.windows(needle.len()).any(|w| w == needle)
}
