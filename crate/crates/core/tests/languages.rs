/*
 * SPDX-License-Identifier: Apache-2.0
 */

mod common;

use std::collections::BTreeSet;

use common::{plain, w};
use proptest::prelude::*;
use spocode_core::block_map::BlockMap;
use spocode_core::presentation::LabeledGraph;
use spocode_core::{entropy_estimate, Alphabet, Language, Limits, Presentation, Symbol};

fn golden() -> Presentation {
    Presentation::sft(Alphabet::new(["0", "1"]).unwrap(), vec![w(&[1, 1])]).unwrap()
}

fn even() -> Presentation {
    let g = LabeledGraph { vertices: 2, edges: vec![(0, Symbol(1), 0), (0, Symbol(0), 1), (1, Symbol(0), 0)] };
    Presentation::sofic(Alphabet::new(["0", "1"]).unwrap(), g).unwrap()
}

fn all_words(q: u16, n: usize) -> Vec<Vec<u16>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out.iter().flat_map(|v| (0..q).map(move |a| [v.clone(), vec![a]].concat())).collect();
    }
    out
}

fn has(v: &[u16], f: &[u16]) -> bool {
    v.windows(f.len()).any(|x| x == f)
}

// a word of the even shift: every maximal 0-run bounded by 1s on both sides is even
fn even_ok(v: &[u16]) -> bool {
    let ones: Vec<usize> = v.iter().enumerate().filter(|(_, &a)| a == 1).map(|(i, _)| i).collect();
    ones.windows(2).all(|p| (p[1] - p[0] - 1) % 2 == 0)
}

#[test]
fn golden_mean_against_brute_force() {
    let lang = golden().compile(Limits::default()).unwrap();
    let table = lang.enumerate(12).unwrap();
    for n in 1..=12 {
        let mine: BTreeSet<Vec<u16>> = table.words(n).map(|x| plain(x)).collect();
        let oracle: BTreeSet<Vec<u16>> = all_words(2, n).into_iter().filter(|v| !has(v, &[1, 1])).collect();
        assert_eq!(mine, oracle, "length {n}");
    }
}

#[test]
fn even_shift_against_brute_force() {
    let lang = even().compile(Limits::default()).unwrap();
    let table = lang.enumerate(12).unwrap();
    for n in 1..=12 {
        let mine: BTreeSet<Vec<u16>> = table.words(n).map(|x| plain(x)).collect();
        let oracle: BTreeSet<Vec<u16>> = all_words(2, n).into_iter().filter(|v| even_ok(v)).collect();
        assert_eq!(mine, oracle, "length {n}");
    }
}

#[test]
fn factor_closed_and_extendable_to_12() {
    let coded = Presentation::coded(Alphabet::new(["0", "1"]).unwrap(), vec![w(&[1]), w(&[1, 0, 0])]).unwrap();
    let spo = Presentation::spo(Alphabet::new(["g", "d", "0", "1"]).unwrap(), common::loops_code(), vec![]);
    for p in [golden(), even(), coded, spo] {
        let t = p.compile(Limits::default()).unwrap().enumerate(12).unwrap();
        assert!(t.factor_closure_violations().is_empty(), "{}", p.kind());
        assert!(t.right_extension_failures().is_empty(), "{}", p.kind());
    }
}

#[test]
fn full_shift_counts_are_powers() {
    for q in [2usize, 3, 5] {
        let names: Vec<String> = (0..q).map(|i| i.to_string()).collect();
        let lang = Presentation::full_shift(Alphabet::new(names).unwrap()).compile(Limits::default()).unwrap();
        let est = entropy_estimate(&lang, 10).unwrap();
        for (k, c) in est.counts.iter().enumerate() {
            assert_eq!(*c, (q as u128).pow(k as u32 + 1));
        }
        assert!((est.estimates[9].unwrap() - (q as f64).ln()).abs() < 1e-12);
    }
}

proptest! {
    // followers can only shrink when the word is extended on the left
    #[test]
    fn followers_shrink_under_left_extension(u in proptest::collection::vec(0u16..2, 0..4), v in proptest::collection::vec(0u16..2, 1..5)) {
        let lang = even().compile(Limits::default()).unwrap();
        let uv = w(&[u.clone(), v.clone()].concat());
        prop_assume!(lang.is_admissible(&uv).unwrap());
        let big: BTreeSet<_> = lang.follower_set(&w(&v), 5).unwrap().into_iter().collect();
        let small: BTreeSet<_> = lang.follower_set(&uv, 5).unwrap().into_iter().collect();
        prop_assert!(small.is_subset(&big));
    }

    #[test]
    fn block_maps_compose(t1 in proptest::collection::vec(0u16..2, 8), t2 in proptest::collection::vec(0u16..2, 8), x in proptest::collection::vec(0u16..2, 5..12)) {
        let a = Alphabet::new(["0", "1"]).unwrap();
        let f = BlockMap::from_fn(&a, a.clone(), 1, |win| Symbol(t1[(win[0].0 * 4 + win[1].0 * 2 + win[2].0) as usize])).unwrap();
        let g = BlockMap::from_fn(&a, a.clone(), 1, |win| Symbol(t2[(win[0].0 * 4 + win[1].0 * 2 + win[2].0) as usize])).unwrap();
        let fg = f.then(&g).unwrap();
        let x = w(&x);
        prop_assert_eq!(fg.apply(&x).unwrap(), g.apply(&f.apply(&x).unwrap()).unwrap());
        // the composite by hand, with radius 2
        let by_hand: Vec<u16> = x.windows(5).map(|win| {
            let mid: Vec<u16> = win.windows(3).map(|y| t1[(y[0].0 * 4 + y[1].0 * 2 + y[2].0) as usize]).collect();
            t2[(mid[0] * 4 + mid[1] * 2 + mid[2]) as usize]
        }).collect();
        prop_assert_eq!(plain(&fg.apply(&x).unwrap()), by_hand);
    }
}
