/*
 * SPDX-License-Identifier: Apache-2.0
 */

//! The acceptance run: one `[PASS]`/`[FAIL]` line per criterion, with
//! timings. Exits nonzero if any criterion fails or overruns its budget.

use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;
use std::time::{Duration, Instant};

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use spocode::{execute, parse_document, Command, Document, Format, Request, System};
use spocode_core::derived::{build_edge_shift, build_hat_code, build_markov_code, edge_shift_entropy, truncation_order};
use spocode_core::presentation::LabeledGraph;
use spocode_core::spectral::{characteristic_polynomial, perron_root_exact, SparseMatrix};
use spocode_core::spo::{check_unambiguous, chainable, full_factorizations, ostar, Factor, SpoCode, Unambiguity};
use spocode_core::synchro::{condition_h_report, j_profile, SyncAnalyzer};
use spocode_core::systems::signed::{c as block, g_minus, g_plus, Sign};
use spocode_core::systems::{higher_block_pair, lemma1_check, DisplayBounds};
use spocode_core::{entropy_estimate, Alphabet, Language, Limits, Presentation, Symbol, Word};

type Outcome = Result<String, String>;

/// Name, check and time budget in seconds.
type Criterion = (&'static str, fn() -> Outcome, u64);

fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn load(name: &str) -> Document {
    parse_document(&std::fs::read_to_string(fixture_path(name)).unwrap()).unwrap()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// Overlap-code fixtures: the three synthetic codes and the two example
/// truncations.
const CODE_FIXTURES: [&str; 5] = ["spo-a.pres", "spo-b.pres", "spo-bullet.pres", "example1.pres", "example2.pres"];

fn codes() -> Vec<(&'static str, Document)> {
    CODE_FIXTURES.iter().map(|&n| (n, load(n))).collect()
}

fn plain(w: &[Symbol]) -> Vec<u16> {
    w.iter().map(|s| s.0).collect()
}

/// Overlap product of a chain glued by hand.
fn glue(code: &SpoCode, chain: &[usize]) -> Vec<u16> {
    let mut out = plain(code.word(chain[0]).word());
    for &j in &chain[1..] {
        let c = code.word(j);
        out.extend(plain(&c.word()[c.prefix_len()..]));
    }
    out
}

fn hand_chainable(code: &SpoCode, i: usize, j: usize) -> bool {
    let (a, b) = (code.word(i), code.word(j));
    a.word()[a.len() - a.suffix_len()..] == b.word()[..b.prefix_len()]
}

fn criterion_1() -> Outcome {
    let mut pairs = 0;
    let mut triples = 0;
    for (name, doc) in codes() {
        let code = doc.spo_code().unwrap();
        let n = code.len();
        for i in 0..n {
            for j in 0..n {
                let (a, b) = (code.word(i), code.word(j));
                ensure(chainable(a, b) == hand_chainable(code, i, j), || format!("{name}: chainability of ({i},{j})"))?;
                pairs += 1;
                match ostar(a, b) {
                    Ok(p) => {
                        ensure(p.prefix() == a.prefix() && p.suffix() == b.suffix(), || format!("{name}: marks of ({i},{j})"))?;
                        if chainable(a, b) {
                            ensure(plain(p.word()) == glue(code, &[i, j]), || format!("{name}: product ({i},{j})"))?;
                            ensure(p.len() == a.len() + b.len() - a.suffix_len(), || format!("{name}: length law ({i},{j})"))?;
                        }
                    }
                    Err(_) => ensure(!chainable(a, b), || format!("{name}: chainable pair ({i},{j}) has no product"))?,
                }
            }
        }
        for i in 0..n {
            for &j in code.successors(i) {
                for &k in code.successors(j) {
                    let (a, b, c) = (code.word(i), code.word(j), code.word(k));
                    let l = ostar(&ostar(a, b).map_err(err)?, c).map_err(err)?;
                    let r = ostar(a, &ostar(b, c).map_err(err)?).map_err(err)?;
                    ensure(l == r, || format!("{name}: associativity ({i},{j},{k})"))?;
                    ensure(plain(l.word()) == glue(code, &[i, j, k]), || format!("{name}: triple product"))?;
                    triples += 1;
                }
            }
        }
    }
    Ok(format!("{pairs} pairs, {triples} chainable triples"))
}

fn criterion_2() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut used = Vec::new();
    for (name, doc) in codes() {
        let code = doc.spo_code().unwrap();
        let n = 2 * code.max_word_len();
        if !check_unambiguous(code, n, &doc.limits).map_err(err)?.is_pass() {
            continue;
        }
        used.push(name);
        for _ in 0..1000 {
            let len = rng.random_range(1..=8);
            let mut chain = vec![rng.random_range(0..code.len())];
            while chain.len() < len {
                let succ = code.successors(*chain.last().unwrap());
                if succ.is_empty() {
                    break;
                }
                chain.push(succ[rng.random_range(0..succ.len())]);
            }
            let word: Word = glue(code, &chain).into_iter().map(Symbol).collect();
            let parses = full_factorizations(code, &word).map_err(err)?;
            let mut at = 0isize;
            let expected: Vec<Factor> = chain
                .iter()
                .map(|&i| {
                    let f = Factor { word: i, start: at };
                    at += code.word(i).ring_len() as isize;
                    f
                })
                .collect();
            ensure(parses.len() == 1 && parses[0].factors == expected, || format!("{name}: chain {chain:?} gave {} parses", parses.len()))?;
        }
    }
    ensure(used.len() >= 4, || format!("only {used:?} pass"))?;
    Ok(format!("1000 chains each on {}", used.join(", ")))
}

/// Words with two distinct chains, by hand: every chain whose product has
/// length at most `max`, grouped by product.
fn ambiguous_products(code: &SpoCode, max: usize) -> Vec<Vec<u16>> {
    let mut by_word: BTreeMap<Vec<u16>, BTreeSet<Vec<usize>>> = BTreeMap::new();
    let mut stack: Vec<Vec<usize>> = (0..code.len()).map(|i| vec![i]).collect();
    while let Some(ch) = stack.pop() {
        let w = glue(code, &ch);
        if w.len() > max {
            continue;
        }
        for j in 0..code.len() {
            if hand_chainable(code, *ch.last().unwrap(), j) {
                let mut c = ch.clone();
                c.push(j);
                stack.push(c);
            }
        }
        by_word.entry(w).or_default().insert(ch);
    }
    let mut out: Vec<Vec<u16>> = by_word.into_iter().filter(|(_, s)| s.len() > 1).map(|(w, _)| w).collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    out
}

fn criterion_3() -> Outcome {
    let doc = load("ambiguous.pres");
    let code = doc.spo_code().unwrap();
    let n = 2 * code.max_word_len();
    let Unambiguity::Fail { witness, .. } = check_unambiguous(code, n, &doc.limits).map_err(err)? else {
        return Err("planted ambiguity not detected".into());
    };
    let shown = doc.presentation.alphabet.format_word(&witness);
    let oracle = ambiguous_products(code, n);
    ensure(oracle.first() == Some(&plain(&witness)), || format!("witness {witness} but oracle {:?}", oracle.first()))?;

    let doc = load("example2.pres");
    let code = doc.spo_code().unwrap();
    let verdict = match check_unambiguous(code, 60, &doc.limits).map_err(err)? {
        Unambiguity::PassAt { .. } => "pass",
        Unambiguity::Fail { .. } => "fail",
    };
    let frozen: Value = serde_json::from_str(&std::fs::read_to_string(fixture_path("oracle/example2-unambiguous-60.json")).unwrap()).unwrap();
    ensure(frozen["result"]["verdict"] == verdict, || format!("example 2 verdict {verdict}, frozen {}", frozen["result"]["verdict"]))?;
    let collisions = ambiguous_products(code, 60);
    ensure(collisions.is_empty() == (verdict == "pass"), || "example 2 verdict disagrees with chain enumeration".into())?;
    Ok(format!("witness {shown} (len {}), example 2 {verdict} at 60", witness.len()))
}

const WINDOW: usize = 40;
const PAIR_CAP: usize = 2_000_000;

fn criterion_4() -> Outcome {
    let mut checked = Vec::new();
    for (name, doc) in codes() {
        let code = doc.spo_code().unwrap();
        let q = doc.presentation.alphabet.len();
        let hat = build_hat_code(code, code.max_word_len().max(24), &doc.limits).map_err(err)?;
        if hat.is_empty() {
            checked.push(format!("{name}: empty"));
            continue;
        }
        for (i, p) in hat.provenance.iter().enumerate() {
            ensure(plain(hat.code.word(i).word()) == glue(code, p), || format!("{name}: derived word {i} is not its provenance product"))?;
        }
        let base = code.automaton(q, &[]).map_err(err)?.automaton.trim();
        let derived = hat.code.automaton(q, &[]).map_err(err)?.automaton.trim();
        if let Some(w) = derived.inclusion_witness(&base, WINDOW, PAIR_CAP).map_err(err)? {
            return Err(format!("{name}: {w} in the derived language only"));
        }
        let mc = build_markov_code(&hat).map_err(err)?;
        let es = build_edge_shift(&mc);
        let total: usize = mc.states.iter().map(|d| d.len()).sum();
        ensure(es.len() == total, || format!("{name}: {} vertices, sum of lengths {total}", es.len()))?;
        let edge = es.automaton(q).trim();
        for (a, b, what) in [(&edge, &derived, "edge shift only"), (&derived, &edge, "derived code only")] {
            if let Some(w) = a.inclusion_witness(b, WINDOW, PAIR_CAP).map_err(err)? {
                return Err(format!("{name}: {w} in {what}"));
            }
        }
        checked.push(format!("{name}: {} words", hat.code.len()));
    }
    Ok(checked.join(", "))
}

fn criterion_5() -> Outcome {
    for q in [2usize, 3, 5] {
        let names: Vec<String> = (0..q).map(|i| i.to_string()).collect();
        let lang = Presentation::full_shift(Alphabet::new(names).map_err(err)?).compile(Limits::default()).map_err(err)?;
        let est = entropy_estimate(&lang, 12).map_err(err)?;
        ensure(est.counts.iter().enumerate().all(|(k, &c)| c == (q as u128).pow(k as u32 + 1)), || format!("q={q} counts"))?;
        ensure(est.estimates.iter().all(|e| e.is_some_and(|h| (h - (q as f64).ln()).abs() < 1e-12)), || format!("q={q} estimates"))?;
        // complete graph on q vertices: same entropy, checked spectrally
        let complete = SparseMatrix::from_rows(vec![(0..q).collect(); q]);
        let root = perron_root_exact(&complete);
        ensure((root - q as f64).abs() < 1e-12, || format!("q={q} Perron root {root}"))?;
    }
    let golden = load("golden.pres");
    let lang = golden.presentation.compile(golden.limits).map_err(err)?;
    let fa = lang.automaton().ok_or("golden mean has no automaton")?.trim();
    let rows: Vec<Vec<usize>> = (0..fa.num_states())
        .map(|p| {
            let mut r: Vec<usize> = (0..2).flat_map(|a| fa.successors(p, Symbol(a)).iter().map(|&t| t as usize)).collect();
            r.sort_unstable();
            r
        })
        .collect();
    let m = SparseMatrix::from_rows(rows);
    let exact = ((1.0 + 5f64.sqrt()) / 2.0).ln();
    let spectral = perron_root_exact(&m).ln();
    ensure((spectral - exact).abs() < 1e-8, || format!("spectral {spectral}"))?;
    ensure(characteristic_polynomial(&m) == vec![-1, -1, 1], || "characteristic polynomial".into())?;
    let counted = entropy_estimate(&lang, 64).map_err(err)?.estimates[63].ok_or("no words")?;
    ensure((counted - exact).abs() < 1e-2, || format!("counted {counted}"))?;
    let mut sequences = 0;
    for (name, doc) in codes() {
        let code = doc.spo_code().unwrap();
        let hat = build_hat_code(code, code.max_word_len().max(24), &doc.limits).map_err(err)?;
        if hat.is_empty() {
            continue;
        }
        let mc = build_markov_code(&hat).map_err(err)?;
        let es = build_edge_shift(&mc);
        let steps = edge_shift_entropy(&es, &mc, &truncation_order(&mc));
        ensure(steps.windows(2).all(|p| p[1].entropy >= p[0].entropy - 1e-12), || format!("{name}: truncation entropies decrease"))?;
        sequences += 1;
    }
    Ok(format!("spectral err {:.1e}, counted err {:.1e}, {sequences} edge-shift sequences", (spectral - exact).abs(), (counted - exact).abs()))
}

const SYNC_FIXTURES: [&str; 10] = [
    "golden.pres",
    "even.pres",
    "coded.pres",
    "spo-a.pres",
    "spo-b.pres",
    "spo-bullet.pres",
    "exclusion.pres",
    "example1.pres",
    "example2.pres",
    "signed-blocks.pres",
];

fn criterion_6() -> Outcome {
    let even = load("even.pres");
    let lang = even.presentation.compile(even.limits).map_err(err)?;
    let mut an = SyncAnalyzer::new(&lang).map_err(err)?;
    let v = an.check(&[Symbol(1)], 0).map_err(err)?;
    ensure(v.is_synchronizing() && v.exact, || "even shift: 1 not certified".into())?;

    let a = Alphabet::new(["0", "1", "2"]).map_err(err)?;
    let one_step = Presentation::sft(a, vec![vec![Symbol(1), Symbol(1)].into(), vec![Symbol(2), Symbol(0)].into()])
        .map_err(err)?
        .compile(Limits::default())
        .map_err(err)?;
    let mut an = SyncAnalyzer::new(&one_step).map_err(err)?;
    for s in 0..3 {
        let v = an.check(&[Symbol(s)], 0).map_err(err)?;
        ensure(v.is_synchronizing() && v.exact, || format!("1-step SFT: symbol {s}"))?;
    }

    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut windows = 0;
    for name in SYNC_FIXTURES {
        let doc = load(name);
        let lang = doc.presentation.compile(doc.limits).map_err(err)?;
        let mut an = SyncAnalyzer::new(&lang).map_err(err)?;
        let len = 8;
        let pool: Vec<Word> = lang.enumerate(len).map_err(err)?.words(len).cloned().collect();
        let pool: Vec<Word> = pool.into_iter().filter(|w| an.is_admissible(w).unwrap_or(false)).collect();
        ensure(!pool.is_empty(), || format!("{name}: no windows"))?;
        for _ in 0..1000 {
            let w = &pool[rng.random_range(0..pool.len())];
            let p = j_profile(&mut an, w, 2).map_err(err)?;
            ensure(p.monotonicity_violations().is_empty(), || format!("{name}: window {w} violates monotonicity"))?;
            windows += 1;
        }
    }

    let g = LabeledGraph { vertices: 2, edges: vec![(0, Symbol(1), 0), (0, Symbol(0), 1), (1, Symbol(0), 0)] };
    let src = Presentation::sofic(Alphabet::new(["0", "1"]).map_err(err)?, g).map_err(err)?;
    let src_lang = src.compile(Limits::default()).map_err(err)?;
    let pair = higher_block_pair(&src.alphabet, src_lang.automaton().unwrap(), 1, Limits::default()).map_err(err)?;
    let r = lemma1_check(&pair).map_err(err)?;
    ensure(r.premise > 0, || "lemma 1: no synchronizing centre".into())?;
    ensure(r.violations.is_empty() && r.round_trip_failures == 0, || format!("lemma 1: {} violations", r.violations.len()))?;
    Ok(format!("{windows} windows, lemma 1 on {} of {} windows", r.premise, r.windows))
}

fn structured(input: &str, command: Command, max_len: usize, depth: usize, seed: u64, word: Option<&str>) -> Result<String, String> {
    execute(&Request {
        input: fixture_path(input),
        command,
        max_len,
        depth,
        seed,
        format: Format::Structured,
        out: None,
        word: word.map(str::to_string),
        table: None,
    })
    .map_err(err)
}

fn criterion_7() -> Outcome {
    for k in 1..=10 {
        for a in Sign::ALL {
            for kp in 0..=k {
                ensure(g_plus(kp, a).concat(&g_minus(k - kp, a)) == block(k, a), || format!("identity k={k} k'={kp}"))?;
            }
        }
    }
    let doc = load("signed-blocks.pres");
    let Some(System::SignedBlocks(sys)) = &doc.system else { return Err("signed-blocks fixture".into()) };
    let lang = doc.presentation.compile(doc.limits).map_err(err)?;
    let remark = sys.remark_sweep(&lang, 5).map_err(err)?;
    ensure(remark.failures.is_empty(), || format!("remark: {} failures", remark.failures.len()))?;
    let l9 = sys.lemma9_sweep(&lang, 6, 5).map_err(err)?;
    ensure(l9.failures.is_empty(), || format!("lemma 9: {} inadmissible continuations", l9.failures.len()))?;
    ensure(l9.admissible + l9.gaps.len() == l9.instances, || "lemma 9 bookkeeping".into())?;

    let mut listed = Vec::new();
    for (fixture, frozen) in [("example1.pres", "oracle/example1-displays.json"), ("example2.pres", "oracle/example2-displays.json")] {
        let now: Value = serde_json::from_str(&structured(fixture, Command::ExamplesVerify, 10, 3, 0, None)?).map_err(err)?;
        let then: Value = serde_json::from_str(&std::fs::read_to_string(fixture_path(frozen)).unwrap()).map_err(err)?;
        ensure(now == then, || format!("{fixture}: displays differ from frozen oracle"))?;
        let d = &now["result"]["displays"];
        ensure(d["discrepancies"].as_array().map(Vec::len) == Some(d["instances"].as_u64().unwrap() as usize - d["agreeing"].as_u64().unwrap() as usize), || "discrepancy list incomplete".into())?;
        listed.push(format!("{fixture} {} discrepancies listed", d["discrepancies"].as_array().unwrap().len()));
        // the verifier itself is exercised through the core as well
        let doc = load(fixture);
        let lang = doc.presentation.compile(doc.limits).map_err(err)?;
        let bounds = DisplayBounds { max_param: 3, extra: 1 };
        let r = match doc.system.as_ref().unwrap() {
            System::Example1(s) => s.verify_boundary_displays(&lang, bounds),
            System::Example2(s) => s.verify_boundary_displays(&lang, bounds),
            System::SignedBlocks(_) => unreachable!(),
        }
        .map_err(err)?;
        ensure(r.instances.len() == d["instances"].as_u64().unwrap() as usize, || "instance count".into())?;
    }
    Ok(format!(
        "remark {} shapes, lemma 9 {} instances ({} admissible, {} precondition gaps), {}",
        remark.shapes,
        l9.instances,
        l9.admissible,
        l9.gaps.len(),
        listed.join(", ")
    ))
}

fn criterion_8() -> Outcome {
    let v: Value = serde_json::from_str(&structured("example2.pres", Command::ConditionH, 60, 4, 0, None)?).map_err(err)?;
    let maxes: Vec<(u64, Option<i64>)> = v["result"]["running_max"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| (x["n"].as_u64().unwrap(), x["max_gap"].as_i64()))
        .collect();
    ensure(maxes.iter().map(|m| m.0).collect::<Vec<_>>() == vec![20, 40, 60], || format!("lengths {maxes:?}"))?;
    ensure(maxes.windows(2).all(|p| matches!((p[0].1, p[1].1), (Some(a), Some(b)) if b > a)), || format!("not increasing: {maxes:?}"))?;
    let doc = load("spo-bullet.pres");
    let code = doc.spo_code().unwrap();
    ensure(code.bullet_flags().iter().all(|&b| b), || "bullet fixture has a long word".into())?;
    let r = condition_h_report(code, &[4, 8, 12]);
    ensure(r.running_max.iter().all(|(_, g)| g.is_none_or(|g| g <= 0)), || format!("bullet max {:?}", r.running_max))?;
    Ok(format!("example 2 running max {:?}, bullet max {:?}", maxes.iter().map(|m| m.1.unwrap()).collect::<Vec<_>>(), r.running_max.last().unwrap().1))
}

fn criterion_9() -> Outcome {
    let runs: [(&str, Command, usize, usize, Option<&str>); 12] = [
        ("golden.pres", Command::Lang, 10, 4, None),
        ("spo-a.pres", Command::Parse, 8, 4, Some("gdg0gdg00gdg")),
        ("ambiguous.pres", Command::Unambiguous, 22, 4, None),
        ("spo-a.pres", Command::Derive, 16, 4, None),
        ("even.pres", Command::Entropy, 20, 4, None),
        ("spo-a.pres", Command::Gap, 16, 4, None),
        ("even.pres", Command::Synchro, 8, 4, Some("0")),
        ("signed-blocks.pres", Command::Jprofile, 8, 2, None),
        ("example1.pres", Command::Canonical, 12, 4, None),
        ("example2.pres", Command::ConditionH, 60, 4, None),
        ("example2.pres", Command::Boundary, 5, 4, Some("1")),
        ("signed-blocks.pres", Command::ExamplesVerify, 8, 3, None),
    ];
    for (input, cmd, n, d, word) in runs {
        let a = structured(input, cmd, n, d, 17, word)?;
        let b = structured(input, cmd, n, d, 17, word)?;
        ensure(a == b, || format!("{} on {input} differs between runs", cmd.name()))?;
    }
    Ok(format!("{} commands byte-identical", runs.len()))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("1 overlap-product algebra", criterion_1, 10),
        ("2 round trip", criterion_2, 60),
        ("3 ambiguity detection", criterion_3, 120),
        ("4 derived pipeline", criterion_4, 120),
        ("5 entropy", criterion_5, 60),
        ("6 synchronization", criterion_6, 60),
        ("7 example verifiers", criterion_7, 600),
        ("8 condition (H) evidence", criterion_8, 60),
        ("9 determinism", criterion_9, 600),
    ];
    let mut failed = 0;
    for (name, run, budget) in criteria {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let took = start.elapsed();
        let over = took > Duration::from_secs(budget);
        match (&outcome, over) {
            (Ok(detail), false) => println!("[PASS] {name} ({:.2}s): {detail}", took.as_secs_f64()),
            (Ok(detail), true) => println!("[FAIL] {name} ({:.2}s, budget {budget}s): {detail}", took.as_secs_f64()),
            (Err(e), _) => println!("[FAIL] {name} ({:.2}s): {e}", took.as_secs_f64()),
        }
        if outcome.is_err() || over {
            failed += 1;
        }
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
