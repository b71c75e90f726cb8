/*
 * SPDX-License-Identifier: Apache-2.0
 */

//! Line-oriented serialization of language tables: `length<TAB>word`,
//! ordered by length and then lexicographically by symbol order.

use spocode_core::{Alphabet, LanguageTable};

use crate::error::ParseError;

pub fn serialize_table(table: &LanguageTable, alphabet: &Alphabet) -> String {
    let mut out = String::new();
    for (len, words) in &table.words_by_length {
        for w in words {
            out.push_str(&format!("{len}\t{}\n", alphabet.format_word(w)));
        }
    }
    out
}

pub fn parse_table(text: &str, alphabet: &Alphabet, max_length: usize) -> Result<LanguageTable, ParseError> {
    let mut table = LanguageTable::new(max_length);
    for (i, line) in text.lines().enumerate() {
        let err = |column: usize, message: String| ParseError { line: i + 1, column, message };
        if line.is_empty() {
            continue;
        }
        let (len, word) = line.split_once('\t').ok_or_else(|| err(1, "expected `length<TAB>word`".into()))?;
        let len: usize = len.parse().map_err(|_| err(1, format!("bad length `{len}`")))?;
        let col = line.find('\t').unwrap_or(0) + 2;
        let w = alphabet.parse_word(word).map_err(|e| err(col, e.to_string()))?;
        if w.len() != len {
            return Err(err(col, format!("word has length {}, line says {len}", w.len())));
        }
        table.insert(w);
    }
    Ok(table)
}
