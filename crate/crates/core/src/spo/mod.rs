/*
 * SPDX-License-Identifier: Apache-2.0
 */

//! Codes whose words overlap on a shared bifix block.

mod bifix;
mod code;
mod marked;
mod parse;

pub use bifix::{BifixCode, BifixViolation};
pub use code::{SpoAutomaton, SpoCode};
pub use marked::{chain_length, chainable, find_marks, is_chain, ostar, ostar_product, MarkedWord};
pub use parse::{
    check_unambiguous, full_factorizations, parse_window, parse_window_capped, Cut, Factor, Factorization, Unambiguity,
};

use crate::alphabet::Alphabet;
use crate::error::Result;
use crate::language::{LanguageTable, Limits};

/// Words of length `1..=n` occurring in chainable overlap products.
pub fn concatenation_language(code: &SpoCode, alphabet: &Alphabet, n: usize, limits: &Limits) -> Result<LanguageTable> {
    if n == 0 {
        return Err(crate::error::domain!("concatenation language needs n >= 1"));
    }
    let sa = code.automaton(alphabet.len(), &[])?;
    let mut table = LanguageTable::new(n);
    let mut stored = 0usize;
    sa.automaton.visit_words(n, |w| {
        stored += 1;
        crate::language::check_cap(stored, limits.word_cap)?;
        table.insert(w.into());
        Ok(())
    })?;
    Ok(table)
}
