/*
 * SPDX-License-Identifier: Apache-2.0
 */

mod common;

use common::{chains, glue, synthetic_codes, w};
use proptest::prelude::*;
use spocode_core::spo::{check_unambiguous, full_factorizations, Factor};
use spocode_core::Limits;

fn starts(code: &spocode_core::spo::SpoCode, chain: &[usize]) -> Vec<Factor> {
    let mut at = 0isize;
    chain
        .iter()
        .map(|&i| {
            let f = Factor { word: i, start: at };
            at += code.word(i).ring_len() as isize;
            f
        })
        .collect()
}

#[test]
fn synthetic_codes_pass() {
    for code in synthetic_codes() {
        let n = 2 * code.max_word_len();
        assert!(check_unambiguous(&code, n, &Limits::default()).unwrap().is_pass());
    }
}

#[test]
fn every_short_chain_reparses() {
    for code in synthetic_codes() {
        for ch in chains(&code, 4) {
            let word = w(&glue(&code, &ch));
            let parses = full_factorizations(&code, &word).unwrap();
            assert_eq!(parses.len(), 1, "chain {ch:?}");
            assert_eq!(parses[0].factors, starts(&code, &ch));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]
    #[test]
    fn random_chains_reparse(which in 0usize..3, picks in proptest::collection::vec(0usize..64, 1..9)) {
        let code = &synthetic_codes()[which];
        let mut ch = vec![picks[0] % code.len()];
        for &p in &picks[1..] {
            let succ = code.successors(*ch.last().unwrap());
            if succ.is_empty() {
                break;
            }
            ch.push(succ[p % succ.len()]);
        }
        let word = w(&glue(code, &ch));
        let parses = full_factorizations(code, &word).unwrap();
        prop_assert_eq!(parses.len(), 1);
        prop_assert_eq!(&parses[0].factors, &starts(code, &ch));
    }
}
