/*
 * SPDX-License-Identifier: Apache-2.0
 */

#![allow(dead_code)]

use spocode_core::spo::{BifixCode, MarkedWord, SpoCode};
use spocode_core::{Symbol, Word};

pub fn w(s: &[u16]) -> Word {
    s.iter().map(|&x| Symbol(x)).collect()
}

pub fn plain(w: &[Symbol]) -> Vec<u16> {
    w.iter().map(|s| s.0).collect()
}

// γ = 0, δ = 1, then 2, 3 as free symbols
pub fn loops_code() -> SpoCode {
    let f = BifixCode::new(vec![w(&[0, 1, 0])]).unwrap();
    let words = vec![
        MarkedWord::new(w(&[0, 1, 0, 2, 0, 1, 0]), 3, 3, &f).unwrap(),
        MarkedWord::new(w(&[0, 1, 0, 2, 2, 0, 1, 0]), 3, 3, &f).unwrap(),
        MarkedWord::new(w(&[0, 1, 0, 1, 0]), 3, 3, &f).unwrap(),
    ];
    SpoCode::new(f, words).unwrap()
}

pub fn two_marker_code() -> SpoCode {
    let f = BifixCode::new(vec![w(&[0, 1, 0]), w(&[0, 1, 1, 0])]).unwrap();
    SpoCode::from_words(
        f,
        vec![
            w(&[0, 1, 0, 2, 0, 1, 1, 0]),
            w(&[0, 1, 1, 0, 3, 0, 1, 0]),
            w(&[0, 1, 0, 2, 3, 0, 1, 0]),
            w(&[0, 1, 1, 0, 1, 0]),
        ],
    )
    .unwrap()
}

/// Overlapping marks everywhere: `aba`, `abba` over `a = 0`, `b = 1`.
pub fn bullet_code() -> SpoCode {
    let f = BifixCode::new(vec![w(&[0, 1, 0]), w(&[0, 1, 1, 0])]).unwrap();
    let words = vec![
        MarkedWord::new(w(&[0, 1, 0, 1, 0]), 3, 3, &f).unwrap(),
        MarkedWord::new(w(&[0, 1, 1, 0, 1, 0]), 4, 3, &f).unwrap(),
        MarkedWord::new(w(&[0, 1, 0, 1, 1, 0]), 3, 4, &f).unwrap(),
    ];
    SpoCode::new(f, words).unwrap()
}

pub fn synthetic_codes() -> Vec<SpoCode> {
    vec![loops_code(), two_marker_code(), bullet_code()]
}

/// All chains of at most `max` words, as index sequences.
pub fn chains(code: &SpoCode, max: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = (0..code.len()).map(|i| vec![i]).collect();
    let mut frontier = out.clone();
    for _ in 1..max {
        let mut next = Vec::new();
        for ch in &frontier {
            for j in 0..code.len() {
                let a = code.word(*ch.last().unwrap());
                let b = code.word(j);
                // chainability by hand: suffix mark equals prefix mark
                let suf = &a.word()[a.len() - a.suffix_len()..];
                let pre = &b.word()[..b.prefix_len()];
                if suf == pre {
                    let mut c = ch.clone();
                    c.push(j);
                    next.push(c);
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// The overlap product of a chain, by hand: each word after the first
/// contributes what follows its prefix mark.
pub fn glue(code: &SpoCode, chain: &[usize]) -> Vec<u16> {
    let mut out = plain(code.word(chain[0]).word());
    for &j in &chain[1..] {
        let c = code.word(j);
        out.extend(plain(&c.word()[c.prefix_len()..]));
    }
    out
}
