/*
 * SPDX-License-Identifier: Apache-2.0
 */

use std::path::PathBuf;

use spocode::parse_document;

// every fenced example with a `kind` line must parse
#[test]
fn format_doc_examples_parse() {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../docs/presentation-format.md");
    let text = std::fs::read_to_string(path).unwrap();
    let mut seen = 0;
    for (i, block) in text.split("```").enumerate() {
        if i % 2 == 1 && block.lines().any(|l| l.starts_with("kind ")) {
            let body = block.strip_prefix('\n').unwrap_or(block);
            parse_document(body).unwrap_or_else(|e| panic!("example {seen}: {e}"));
            seen += 1;
        }
    }
    assert_eq!(seen, 8);
}

#[test]
fn every_fixture_parses() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let mut n = 0;
    for entry in std::fs::read_dir(dir).unwrap() {
        let p = entry.unwrap().path();
        if p.extension().is_some_and(|e| e == "pres") {
            parse_document(&std::fs::read_to_string(&p).unwrap()).unwrap_or_else(|e| panic!("{}: {e}", p.display()));
            n += 1;
        }
    }
    assert_eq!(n, 12);
}
