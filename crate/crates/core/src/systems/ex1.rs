/*
 * SPDX-License-Identifier: Apache-2.0
 */

//! A code built from a finite set of periodic points, with blocks
//! `p_[0, 2qR)` between `γδ^nγ` marks.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::{gdg, DisplayBounds, DisplayInstance, DisplayReport};
use crate::alphabet::{Alphabet, Symbol, Word};
use crate::error::{Error, Result};
use crate::language::{Language, Limits};
use crate::presentation::{Compiled, Presentation};
use crate::spo::{BifixCode, MarkedWord, SpoCode};

/// Periodic points over `Σ`, each given by one period.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Example1Config {
    pub sigma: Alphabet,
    pub points: Vec<Word>,
}

/// Length of the shortest period of the bi-infinite repetition of `w`.
pub fn least_period(w: &[Symbol]) -> usize {
    let n = w.len();
    (1..=n).find(|&d| n.is_multiple_of(d) && (0..n).all(|i| w[i] == w[i % d])).unwrap_or(n)
}

impl Example1Config {
    pub fn new(sigma: Alphabet, points: Vec<Word>) -> Result<Self> {
        if points.is_empty() || points.iter().any(|p| p.is_empty()) {
            return Err(Error::InvalidPresentation("need at least one nonempty period".into()));
        }
        for p in &points {
            sigma.check_word(p)?;
        }
        Ok(Self { sigma, points })
    }

    /// Product of the least periods.
    pub fn r(&self) -> usize {
        self.points.iter().map(|p| least_period(p)).product()
    }
}

#[derive(Clone, Debug)]
pub struct Example1System {
    pub config: Example1Config,
    pub k_max: usize,
    /// `Σ` followed by `γ`, `δ`.
    pub alphabet: Alphabet,
    pub gamma: Symbol,
    pub delta: Symbol,
    /// The first two families, marked over `γδ^nγ`, `n <= k_max + 1`.
    pub code: SpoCode,
    /// The third family: words ending in `δ^(n-1)`, which carry no suffix
    /// mark. They may end a product but never continue one.
    pub unmarked: Vec<Word>,
}

impl Example1System {
    /// All three families with `n, q <= k_max`.
    pub fn build(config: Example1Config, k_max: usize) -> Result<Self> {
        if k_max < 2 {
            return Err(crate::error::domain!("k_max must be at least 2"));
        }
        let alphabet = config.sigma.extended(["γ", "δ"])?;
        if alphabet.len() != config.sigma.len() + 2 {
            return Err(Error::InvalidAlphabet("Σ must not contain γ or δ".into()));
        }
        let gamma = alphabet.symbol("γ")?;
        let delta = alphabet.symbol("δ")?;
        let r = config.r();
        let bifix = BifixCode::new((1..=k_max + 1).map(|n| gdg(gamma, delta, n)).collect())?;
        let mut marked: Vec<MarkedWord> = Vec::new();
        let mut unmarked: Vec<Word> = Vec::new();
        let mut seen = alloc::collections::BTreeSet::new();
        for p in &config.points {
            let period = Word::from_slice(&p[..least_period(p)]);
            for q in 2..=k_max {
                let w = Word::join([&gdg(gamma, delta, 1)[..], &period.periodic_prefix(2 * q * r), &gdg(gamma, delta, 1)]);
                if seen.insert(w.clone()) {
                    marked.push(MarkedWord::new(w, 3, 3, &bifix)?);
                }
            }
            for n in 1..=k_max {
                for q in n..=k_max {
                    let w = Word::join([
                        &gdg(gamma, delta, n)[..],
                        &period.periodic_prefix(2 * q * r),
                        &gdg(gamma, delta, n + 1),
                    ]);
                    if seen.insert(w.clone()) {
                        marked.push(MarkedWord::new(w, n + 2, n + 3, &bifix)?);
                    }
                }
            }
            for n in 2..=k_max {
                for q in n..=k_max {
                    let w = Word::join([
                        &gdg(gamma, delta, n)[..],
                        &period.periodic_prefix(2 * q * r),
                        &Word::repeat_symbol(delta, n - 1),
                    ]);
                    if seen.insert(w.clone()) {
                        unmarked.push(w);
                    }
                }
            }
        }
        let code = SpoCode::new(bifix, marked)?;
        Ok(Self { config, k_max, alphabet, gamma, delta, code, unmarked })
    }

    pub fn presentation(&self) -> Presentation {
        Presentation::spo(self.alphabet.clone(), self.code.clone(), self.unmarked.clone())
    }

    pub fn language(&self, limits: Limits) -> Result<Compiled> {
        self.presentation().compile(limits)
    }

    /// `δ^(n+1) γ p_[0, R)`, the word whose followers the display
    /// describes.
    pub fn boundary_word(&self, point: usize, n: usize) -> Word {
        let p = &self.config.points[point];
        let mut w = Word::repeat_symbol(self.delta, n + 1);
        w.push(self.gamma);
        w.extend_from_slice(&p.periodic_prefix(self.config.r()));
        w
    }

    /// For each point and `n <= bounds.max_param`: the followers
    /// `p_[0, nR) γ` (claimed present) and `p_[0, (n+1)R) γ` (claimed
    /// absent).
    pub fn verify_boundary_displays(&self, lang: &dyn Language, bounds: DisplayBounds) -> Result<DisplayReport> {
        let mut report = DisplayReport::default();
        let r = self.config.r();
        for (pi, p) in self.config.points.iter().enumerate() {
            for n in 1..=bounds.max_param {
                if n + 1 > self.k_max + 1 {
                    report.skipped.push(format!("p{pi} n={n}: needs k_max >= {n}"));
                    continue;
                }
                let a = self.boundary_word(pi, n);
                for (claim, len) in [(true, n * r), (false, (n + 1) * r)] {
                    let mut follower = p.periodic_prefix(len);
                    follower.push(self.gamma);
                    let observed = lang.is_admissible(&a.concat(&follower))?;
                    let label: String = format!("p{pi} n={n}");
                    report.instances.push(DisplayInstance { label, word: a.clone(), follower, claim, observed });
                }
            }
        }
        Ok(report)
    }
}
