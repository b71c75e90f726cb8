/*
 * SPDX-License-Identifier: Apache-2.0
 */

//! A code over `{0, 1, γ, δ}` whose blocks are prefixes of the points
//! `p^(k)` of period `k` with a single `1`.

use alloc::format;
use alloc::vec::Vec;

use super::{gdg, DisplayBounds, DisplayInstance, DisplayReport};
use crate::alphabet::{Alphabet, Symbol, Word};
use crate::error::Result;
use crate::language::{Language, Limits};
use crate::presentation::{Compiled, Presentation};
use crate::spo::{BifixCode, MarkedWord, SpoCode};

/// `1 + k(k-1)/2`.
pub fn r_k(k: usize) -> usize {
    1 + k * k.saturating_sub(1) / 2
}

const ZERO: Symbol = Symbol(0);
const ONE: Symbol = Symbol(1);
const GAMMA: Symbol = Symbol(2);
const DELTA: Symbol = Symbol(3);

/// `p^(k)_[0, len)`: zeros with a `1` at every position `≡ k-1 (mod k)`.
pub fn p_block(k: usize, len: usize) -> Word {
    (0..len).map(|i| if i % k == k - 1 { ONE } else { ZERO }).collect()
}

#[derive(Clone, Debug)]
pub struct Example2System {
    /// Largest `k` included.
    pub k_max: usize,
    pub alphabet: Alphabet,
    pub code: SpoCode,
    /// `(k, m)` per code word, `m = 1` for the first family.
    pub params: Vec<(usize, usize)>,
}

impl Example2System {
    pub fn build(k_max: usize) -> Result<Self> {
        if k_max == 0 {
            return Err(crate::error::domain!("k_max must be at least 1"));
        }
        let alphabet = Alphabet::new(["0", "1", "γ", "δ"])?;
        let top = (1..=k_max).map(|k| r_k(k).max(2 * k - 1)).max().unwrap_or(1);
        let bifix = BifixCode::new((1..=top).map(|n| gdg(GAMMA, DELTA, n)).collect())?;
        let mut words = Vec::new();
        let mut params = Vec::new();
        for k in 1..=k_max {
            let w = Word::join([&gdg(GAMMA, DELTA, k)[..], &p_block(1, 2 * k), &gdg(GAMMA, DELTA, r_k(k))]);
            words.push(MarkedWord::new(w, k + 2, r_k(k) + 2, &bifix)?);
            params.push((k, 1));
            for m in 2..=k {
                let w = Word::join([&gdg(GAMMA, DELTA, k)[..], &p_block(m, 2 * m * k), &gdg(GAMMA, DELTA, k + m - 1)]);
                words.push(MarkedWord::new(w, k + 2, k + m + 1, &bifix)?);
                params.push((k, m));
            }
        }
        let code = SpoCode::new(bifix, words)?;
        Ok(Self { k_max, alphabet, code, params })
    }

    pub fn presentation(&self) -> Presentation {
        Presentation::spo(self.alphabet.clone(), self.code.clone(), Vec::new())
    }

    pub fn language(&self, limits: Limits) -> Result<Compiled> {
        self.presentation().compile(limits)
    }

    /// `δ^q γ p^(k)_[0, 2mk)`.
    pub fn b_minus(q: usize, k: usize, m: usize) -> Word {
        let mut w = Word::repeat_symbol(DELTA, q);
        w.push(GAMMA);
        w.extend_from_slice(&p_block(k, 2 * m * k));
        w
    }

    /// `δ^q γ p^(k)_[0, 2km)`; the same word as [`Self::b_minus`].
    pub fn b_plus(q: usize, k: usize, m: usize) -> Word {
        Self::b_minus(q, k, m)
    }

    /// Both follower displays, read literally:
    ///
    /// * after `γ δ^K b⁻(m, k, q)`, `K >= K°`: `p^(m)_[0, 2mk) γ` claimed
    ///   present and `p^(m)_[0, 2m(K+1)) γ` absent;
    /// * after `γ p^(k)_[0, 2kM) b⁺(q, k, m)`, `M >= M°`, with
    ///   `s = max(q, m) + M - M°`: `δ^(R_s + s - 1 - q) γ` claimed present
    ///   and `δ^(R_s + s - q)` absent.
    pub fn verify_boundary_displays(&self, lang: &dyn Language, bounds: DisplayBounds) -> Result<DisplayReport> {
        let mut report = DisplayReport::default();
        let top = self.code.bifix().max_len().saturating_sub(2);
        let b = bounds.max_param;
        for q in 1..=b {
            for k in 1..=b {
                for m in 1..=b {
                    // b⁻
                    let k0 = match q.cmp(&k) {
                        core::cmp::Ordering::Less => Some(k - q),
                        core::cmp::Ordering::Equal => Some(0),
                        core::cmp::Ordering::Greater => None,
                    };
                    match k0 {
                        None => report.skipped.push(format!("b- q={q},k={k},m={m}: K° undefined for q > k")),
                        Some(k0) => {
                            for kk in k0..=k0 + bounds.extra {
                                if kk + m > top {
                                    report.skipped.push(format!("b- q={q},k={k},m={m},K={kk}: beyond truncation"));
                                    continue;
                                }
                                let mut a = Word::empty();
                                a.push(GAMMA);
                                a.extend_from_slice(&Word::repeat_symbol(DELTA, kk));
                                a.extend_from_slice(&Self::b_minus(m, k, q));
                                let label = format!("b- q={q},k={k},m={m},K={kk}");
                                for (claim, len) in [(true, 2 * m * k), (false, 2 * m * (kk + 1))] {
                                    let mut f = p_block(m, len);
                                    f.push(GAMMA);
                                    let observed = lang.is_admissible(&a.concat(&f))?;
                                    report.instances.push(DisplayInstance {
                                        label: label.clone(),
                                        word: a.clone(),
                                        follower: f,
                                        claim,
                                        observed,
                                    });
                                }
                            }
                        }
                    }
                    // b⁺
                    let m0 = q.saturating_sub(m);
                    for mm in m0..=m0 + bounds.extra {
                        let s = q.max(m) + mm - m0;
                        let label = format!("b+ q={q},k={k},m={m},M={mm}");
                        let Some(present) = (r_k(s) + s).checked_sub(q + 1) else {
                            report.skipped.push(format!("{label}: negative exponent"));
                            continue;
                        };
                        if present + 1 > top {
                            report.skipped.push(format!("{label}: beyond truncation"));
                            continue;
                        }
                        let mut a = Word::empty();
                        a.push(GAMMA);
                        a.extend_from_slice(&p_block(k, 2 * k * mm));
                        a.extend_from_slice(&Self::b_plus(q, k, m));
                        let mut yes = Word::repeat_symbol(DELTA, present);
                        yes.push(GAMMA);
                        let no = Word::repeat_symbol(DELTA, present + 1);
                        for (claim, f) in [(true, yes), (false, no)] {
                            let observed = lang.is_admissible(&a.concat(&f))?;
                            report.instances.push(DisplayInstance {
                                label: label.clone(),
                                word: a.clone(),
                                follower: f,
                                claim,
                                observed,
                            });
                        }
                    }
                }
            }
        }
        Ok(report)
    }
}
