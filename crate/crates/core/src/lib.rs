/*
 * SPDX-License-Identifier: Apache-2.0
 */

//! Subshifts generated by codes whose words overlap on a shared bifix
//! block: presentations, finite languages, overlap products and their
//! parsing, derived Markov codes, bounded synchronization analysis and the
//! worked example systems.
//!
//! Everything here works on finite windows. Where a notion quantifies over
//! infinite contexts, the corresponding function takes a depth or length
//! bound and says in its result whether the answer is exact.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod alphabet;
pub mod automaton;
pub mod block_map;
pub mod derived;
pub mod error;
pub mod exclusion;
pub mod language;
pub mod presentation;
pub mod spectral;
pub mod spo;
pub mod synchro;
pub mod systems;
pub mod window;

pub use alphabet::{Alphabet, Symbol, Word};
pub use error::{Error, Result};
pub use language::{entropy_estimate, EntropyEstimate, Language, LanguageTable, Limits};
pub use presentation::{Compiled, Presentation, Variant};
