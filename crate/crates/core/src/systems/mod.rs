/*
 * SPDX-License-Identifier: Apache-2.0
 */

//! Concrete systems: two overlap codes over `Σ ∪ {γ, δ}` whose Markov
//! boundaries are checked by brute force, a coded system over `{-1, 0, 1}`
//! with excluded words, and a conjugate pair of sofic shifts.

use alloc::string::String;
use alloc::vec::Vec;

use crate::alphabet::{Symbol, Word};

pub mod conjugacy;
pub mod ex1;
pub mod ex2;
pub mod signed;

pub use conjugacy::{higher_block_pair, lemma1_check, ConjugatePair, Lemma1Report};
pub use ex1::{Example1Config, Example1System};
pub use ex2::{r_k, Example2System};
pub use signed::{Lemma10Report, Lemma9Result, Lemma9Sweep, RemarkCase, RemarkOutcome, RemarkSweep, SignedBlockSystem, Sign};

/// `γ δ^n γ`.
pub(crate) fn gdg(gamma: Symbol, delta: Symbol, n: usize) -> Word {
    let mut w = Word::empty();
    w.push(gamma);
    w.extend_from_slice(&Word::repeat_symbol(delta, n));
    w.push(gamma);
    w
}

/// One claimed containment or non-containment in a follower set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DisplayInstance {
    /// Parameters, e.g. `n=2` or `q=1,k=2,m=1,K=1`.
    pub label: String,
    pub word: Word,
    pub follower: Word,
    /// The claimed direction: `true` for "contains".
    pub claim: bool,
    pub observed: bool,
}

impl DisplayInstance {
    pub fn agrees(&self) -> bool {
        self.claim == self.observed
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DisplayReport {
    pub instances: Vec<DisplayInstance>,
    /// Instances the truncation cannot decide, with the reason.
    pub skipped: Vec<String>,
}

impl DisplayReport {
    pub fn discrepancies(&self) -> impl Iterator<Item = &DisplayInstance> {
        self.instances.iter().filter(|i| !i.agrees())
    }
}

/// Parameter ranges for the follower-set displays.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DisplayBounds {
    /// Largest `n`, resp. `q`, `k`, `m`.
    pub max_param: usize,
    /// How far past the threshold `K°` (resp. `M°`) to go.
    pub extra: usize,
}
