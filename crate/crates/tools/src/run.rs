/*
 * SPDX-License-Identifier: Apache-2.0
 */

//! Command execution: one request, one report.

use std::path::PathBuf;

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use spocode_core::derived::{build_edge_shift, build_hat_code, build_markov_code, edge_shift_entropy, entropy_gap_report, truncation_order};
use spocode_core::language::Language;
use spocode_core::spectral::{characteristic_polynomial, perron_root_exact, SparseMatrix};
use spocode_core::spo::{check_unambiguous, parse_window, Factorization, SpoCode, Unambiguity};
use spocode_core::synchro::{
    condition_h_report, extract_canonical_code, j_profile, markov_boundary_test, omega_set_bounded, Side, SyncAnalyzer,
    SyncOutcome,
};
use spocode_core::systems::signed::{c as block, g_minus, g_plus, Sign};
use spocode_core::systems::{DisplayBounds, Example1System, Example2System};
use spocode_core::systems::DisplayReport;
use spocode_core::{entropy_estimate, Alphabet, Compiled, Word};

use crate::error::{ToolError, ToolResult};
use crate::format::{parse_document, Document, System};
use crate::report::{Params, Report, SCHEMA};
use crate::table::serialize_table;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Command {
    Lang,
    Parse,
    Unambiguous,
    Derive,
    Entropy,
    Gap,
    Synchro,
    Jprofile,
    Canonical,
    ConditionH,
    Boundary,
    ExamplesVerify,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Lang => "lang",
            Command::Parse => "parse",
            Command::Unambiguous => "unambiguous",
            Command::Derive => "derive",
            Command::Entropy => "entropy",
            Command::Gap => "gap",
            Command::Synchro => "synchro",
            Command::Jprofile => "jprofile",
            Command::Canonical => "canonical",
            Command::ConditionH => "condition-h",
            Command::Boundary => "boundary",
            Command::ExamplesVerify => "examples-verify",
        }
    }

    fn needs_word(self) -> bool {
        matches!(self, Command::Parse | Command::Synchro | Command::Boundary)
    }

    fn needs_spo(self) -> bool {
        matches!(self, Command::Parse | Command::Unambiguous | Command::Derive | Command::Gap)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Structured,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Request {
    pub input: PathBuf,
    pub command: Command,
    pub max_len: usize,
    pub depth: usize,
    pub seed: u64,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub word: Option<String>,
    /// Where `lang` writes the `length<TAB>word` table.
    pub table: Option<PathBuf>,
}

fn usage(msg: impl Into<String>) -> ToolError {
    ToolError::Usage(msg.into())
}

/// Checks bounds and command/parameter compatibility.
fn validate(req: &Request, doc: &Document) -> ToolResult<()> {
    if req.max_len == 0 {
        return Err(usage("--max-len must be at least 1"));
    }
    if req.depth == 0 {
        return Err(usage("--depth must be at least 1"));
    }
    if req.command.needs_word() && req.word.is_none() {
        return Err(usage(format!("command `{}` needs --word", req.command.name())));
    }
    if req.command.needs_spo() && doc.spo_code().is_none() {
        return Err(usage(format!("command `{}` needs an overlap-code presentation", req.command.name())));
    }
    if req.command == Command::ExamplesVerify && doc.system.is_none() {
        return Err(usage("examples-verify needs kind example1, example2 or signed-blocks"));
    }
    if req.table.is_some() && req.command != Command::Lang {
        return Err(usage("--table only applies to `lang`"));
    }
    Ok(())
}

/// Loads the input and runs the command. Writes the `lang` table if asked.
pub fn run(req: &Request) -> ToolResult<Report> {
    let text = std::fs::read_to_string(&req.input)?;
    let doc = parse_document(&text)?;
    run_document(req, &doc)
}

pub fn run_document(req: &Request, doc: &Document) -> ToolResult<Report> {
    validate(req, doc)?;
    let alphabet = doc.presentation.alphabet.clone();
    let word = match &req.word {
        Some(w) => Some(alphabet.parse_word(w).map_err(|e| usage(format!("--word: {e}")))?),
        None => None,
    };
    let lang = doc.presentation.compile(doc.limits)?;
    let ctx = Ctx { req, doc, alphabet: &alphabet, lang: &lang, word: word.as_ref() };
    let result = match req.command {
        Command::Lang => ctx.lang_cmd()?,
        Command::Parse => ctx.parse_cmd()?,
        Command::Unambiguous => ctx.unambiguous_cmd()?,
        Command::Derive => ctx.derive_cmd()?,
        Command::Entropy => ctx.entropy_cmd()?,
        Command::Gap => ctx.gap_cmd()?,
        Command::Synchro => ctx.synchro_cmd()?,
        Command::Jprofile => ctx.jprofile_cmd()?,
        Command::Canonical => ctx.canonical_cmd()?,
        Command::ConditionH => ctx.condition_h_cmd()?,
        Command::Boundary => ctx.boundary_cmd()?,
        Command::ExamplesVerify => ctx.examples_cmd()?,
    };
    Ok(Report {
        schema: SCHEMA,
        command: req.command.name().into(),
        presentation: doc.presentation.kind().into(),
        params: Params { max_len: req.max_len, depth: req.depth, seed: req.seed, word: req.word.clone() },
        result,
    })
}

/// Runs and writes the report to `--out` or returns it as text.
pub fn execute(req: &Request) -> ToolResult<String> {
    let report = run(req)?;
    let body = match req.format {
        Format::Text => report.to_text(),
        Format::Structured => report.to_json(),
    };
    match &req.out {
        Some(path) => {
            std::fs::write(path, &body)?;
            Ok(String::new())
        }
        None => Ok(body),
    }
}

struct Ctx<'a> {
    req: &'a Request,
    doc: &'a Document,
    alphabet: &'a Alphabet,
    lang: &'a Compiled,
    word: Option<&'a Word>,
}

const SHOW: usize = 20;

impl Ctx<'_> {
    fn fmt(&self, w: &[spocode_core::Symbol]) -> String {
        self.alphabet.format_word(w)
    }

    fn fmt_all(&self, ws: &[Word]) -> Vec<String> {
        ws.iter().map(|w| self.fmt(w)).collect()
    }

    fn code(&self) -> &SpoCode {
        self.doc.spo_code().expect("validated")
    }

    fn certification(&self) -> &'static str {
        if self.lang.is_exact() {
            "exact"
        } else {
            "window"
        }
    }

    fn lang_cmd(&self) -> ToolResult<Value> {
        let n = self.req.max_len;
        let table = self.lang.enumerate(n)?;
        if let Some(path) = &self.req.table {
            std::fs::write(path, serialize_table(&table, self.alphabet))?;
        }
        let counts: Vec<usize> = (1..=n).map(|k| table.count(k)).collect();
        let closure = table.factor_closure_violations();
        let ext = table.right_extension_failures();
        Ok(json!({
            "certification": self.certification(),
            "counts": counts,
            "total": table.total(),
            "factor_closure_violations": closure.len(),
            "extension_failures": ext.len(),
            "first_extension_failures": self.fmt_all(&ext[..ext.len().min(SHOW)]),
        }))
    }

    fn factorization_json(&self, f: &Factorization) -> Value {
        let code = self.code();
        let factors: Vec<Value> = f
            .factors
            .iter()
            .map(|x| json!({"word": x.word, "start": x.start, "text": self.fmt(code.word(x.word).word())}))
            .collect();
        let cuts: Vec<Value> = f.cuts(code).iter().map(|c| json!([c.pair().0, c.pair().1])).collect();
        json!({
            "factors": factors,
            "cuts": cuts,
            "left_truncated": f.left_truncated,
            "right_truncated": f.right_truncated,
            "full": f.is_full(),
        })
    }

    fn parse_cmd(&self) -> ToolResult<Value> {
        let w = self.word.expect("validated");
        let parses = parse_window(self.code(), w)?;
        let full = parses.iter().filter(|p| p.is_full()).count();
        Ok(json!({
            "window": self.fmt(w),
            "count": parses.len(),
            "full": full,
            "factorizations": parses.iter().map(|p| self.factorization_json(p)).collect::<Vec<_>>(),
        }))
    }

    fn unambiguous_cmd(&self) -> ToolResult<Value> {
        let n = self.req.max_len;
        let need = 2 * self.code().max_word_len();
        if n < need {
            return Err(usage(format!("unambiguous needs --max-len >= {need}")));
        }
        Ok(match check_unambiguous(self.code(), n, &self.doc.limits)? {
            Unambiguity::PassAt { n } => json!({"verdict": "pass", "n": n}),
            Unambiguity::Fail { witness, first, second } => json!({
                "verdict": "fail",
                "n": n,
                "witness": self.fmt(&witness),
                "first": self.factorization_json(&first),
                "second": self.factorization_json(&second),
            }),
        })
    }

    fn derive_cmd(&self) -> ToolResult<Value> {
        let hat = build_hat_code(self.code(), self.req.max_len, &self.doc.limits)?;
        if hat.is_empty() {
            return Ok(json!({"hat_words": 0, "diagnostic": hat.diagnostic}));
        }
        let mc = build_markov_code(&hat)?;
        let es = build_edge_shift(&mc);
        let order = truncation_order(&mc);
        let steps = edge_shift_entropy(&es, &mc, &order);
        let sum_len: usize = mc.states.iter().map(|d| d.len()).sum();
        Ok(json!({
            "hat_words": hat.code.len(),
            "hat_sample": hat.code.words().iter().take(SHOW).map(|c| self.fmt(c.word())).collect::<Vec<_>>(),
            "hat_collisions": hat.collisions.len(),
            "diagnostic": hat.diagnostic,
            "markov_states": mc.len(),
            "transitions": mc.transition_count(),
            "irreducible": mc.is_irreducible(),
            "components": mc.components().len(),
            "ring_collisions": mc.ring_collisions.len(),
            "edge_shift_vertices": es.len(),
            "sum_state_lengths": sum_len,
            "entropy_sequence": steps.iter().map(|s| json!({
                "d_states": s.d_states,
                "size": s.size,
                "entropy": s.entropy,
                "zero_radius": s.zero_radius,
                "converged": s.converged,
            })).collect::<Vec<_>>(),
        }))
    }

    fn entropy_cmd(&self) -> ToolResult<Value> {
        let est = entropy_estimate(self.lang, self.req.max_len)?;
        let mut v = json!({
            "certification": self.certification(),
            "counts": est.counts.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            "estimates": est.estimates,
            "final": est.estimates.last().cloned().flatten(),
        });
        if let Some(spec) = self.lang.automaton().and_then(spectral_entropy) {
            v["spectral"] = spec;
        }
        if let Some(code) = self.doc.spo_code() {
            let hat = build_hat_code(code, self.req.max_len.max(code.max_word_len()), &self.doc.limits)?;
            if !hat.is_empty() {
                let mc = build_markov_code(&hat)?;
                let es = build_edge_shift(&mc);
                let steps = edge_shift_entropy(&es, &mc, &truncation_order(&mc));
                v["edge_shift"] = json!(steps.iter().map(|s| s.entropy).collect::<Vec<_>>());
            }
        }
        Ok(v)
    }

    fn gap_cmd(&self) -> ToolResult<Value> {
        let g = entropy_gap_report(self.code(), self.alphabet, self.req.max_len, &self.doc.limits)
            .map_err(|e| match e {
                spocode_core::Error::Domain(m) => usage(m),
                other => other.into(),
            })?;
        Ok(json!({
            "n": g.n,
            "total": g.total.to_string(),
            "inside": g.inside.to_string(),
            "outside": g.outside.to_string(),
            "h_inside": g.h_in,
            "h_outside": g.h_out,
            "inside_exceeds_outside": matches!((g.h_in, g.h_out), (Some(a), Some(b)) if a > b) || (g.h_in.is_some() && g.h_out.is_none()),
        }))
    }

    fn require_admissible(&self, an: &SyncAnalyzer<'_>, w: &Word) -> ToolResult<()> {
        if !an.is_admissible(w)? {
            return Err(usage(format!("word {} is not admissible", self.fmt(w))));
        }
        Ok(())
    }

    fn synchro_cmd(&self) -> ToolResult<Value> {
        let w = self.word.expect("validated");
        let mut an = SyncAnalyzer::new(self.lang)?;
        self.require_admissible(&an, w)?;
        let v = an.check(w, self.req.depth)?;
        let (left, right) = match &v.outcome {
            SyncOutcome::Synchronizing => (None, None),
            SyncOutcome::Refuted { left, right } => (Some(self.fmt(left)), Some(self.fmt(right))),
        };
        let om_plus = omega_set_bounded(&an, w, self.req.depth, Side::Plus)?;
        let om_minus = omega_set_bounded(&an, w, self.req.depth, Side::Minus)?;
        Ok(json!({
            "word": self.fmt(w),
            "synchronizing": v.is_synchronizing(),
            "exact": v.exact,
            "witness_left": left,
            "witness_right": right,
            "omega_plus_size": om_plus.len(),
            "omega_minus_size": om_minus.len(),
            "follower_size": an.follower_set(w, self.req.depth)?.len(),
            "predecessor_size": an.predecessor_set(w, self.req.depth)?.len(),
        }))
    }

    /// Windows to profile: `--word`, or random admissible windows of
    /// length `--max-len` drawn with `--seed`.
    fn sample_windows(&self, an: &SyncAnalyzer<'_>, count: usize) -> ToolResult<Vec<Word>> {
        if let Some(w) = self.word {
            self.require_admissible(an, w)?;
            return Ok(vec![w.clone()]);
        }
        let n = self.req.max_len;
        let mut rng = ChaCha8Rng::seed_from_u64(self.req.seed);
        let pool: Vec<Word> = self.lang.enumerate(n)?.words(n).cloned().collect();
        let pool: Vec<Word> = pool.into_iter().filter(|w| an.is_admissible(w).unwrap_or(false)).collect();
        if pool.is_empty() {
            return Ok(Vec::new());
        }
        Ok((0..count).map(|_| pool[rng.random_range(0..pool.len())].clone()).collect())
    }

    fn jprofile_cmd(&self) -> ToolResult<Value> {
        let mut an = SyncAnalyzer::new(self.lang)?;
        let windows = self.sample_windows(&an, 10)?;
        let mut out = Vec::new();
        let mut violations = 0;
        for w in &windows {
            let p = j_profile(&mut an, w, self.req.depth)?;
            violations += p.monotonicity_violations().len();
            out.push(json!({
                "window": self.fmt(w),
                "values": p.values,
                "increase_positions": p.increase_positions(),
            }));
        }
        Ok(json!({
            "exact": an.is_exact(),
            "profiles": out,
            "monotonicity_violations": violations,
        }))
    }

    fn canonical_cmd(&self) -> ToolResult<Value> {
        let mut an = SyncAnalyzer::new(self.lang)?;
        let r = extract_canonical_code(&mut an, self.req.max_len, self.req.depth)?;
        let code: Vec<Value> = r
            .code
            .as_ref()
            .map(|c| c.words().iter().map(|m| json!({"word": self.fmt(m.word()), "marks": [m.prefix_len(), m.suffix_len()]})).collect())
            .unwrap_or_default();
        Ok(json!({
            "exact": r.exact,
            "max_len": r.max_len,
            "depth": r.depth,
            "minimal": self.fmt_all(&r.minimal),
            "bifix_violations": r.bifix_violations.len(),
            "code": code,
            "transitive": r.transitive,
            "diagnostic": r.diagnostic,
        }))
    }

    fn condition_h_cmd(&self) -> ToolResult<Value> {
        let n = self.req.max_len;
        let lengths: Vec<usize> = [n / 3, 2 * n / 3, n].into_iter().filter(|&x| x > 0).collect();
        let covering = self.covering_code(n)?;
        let (code, source) = match (covering, self.doc.spo_code()) {
            (Some(c), _) => (c, "truncation"),
            (None, Some(c)) => (c.clone(), "presentation"),
            (None, None) => {
                let mut an = SyncAnalyzer::new(self.lang)?;
                let r = extract_canonical_code(&mut an, n, self.req.depth)?;
                match r.code {
                    Some(c) => (c, "canonical"),
                    None => return Ok(json!({"source": "canonical", "diagnostic": r.diagnostic})),
                }
            }
        };
        let r = condition_h_report(&code, &lengths);
        Ok(json!({
            "source": source,
            "words": r.gaps.len(),
            "running_max": r.running_max.iter().map(|(n, g)| json!({"n": n, "max_gap": g})).collect::<Vec<_>>(),
            "consistent_with_unbounded_gaps": r.consistent,
        }))
    }

    /// For Examples 1 and 2: the smallest truncation holding every code word
    /// of length at most `n`. Truncations grow with `k_max`; stop once a
    /// step adds no word that short.
    fn covering_code(&self, n: usize) -> ToolResult<Option<SpoCode>> {
        let build = |k: usize| -> ToolResult<Option<SpoCode>> {
            Ok(match &self.doc.system {
                Some(System::Example1(sys)) => Some(Example1System::build(sys.config.clone(), k)?.code),
                Some(System::Example2(_)) => Some(Example2System::build(k)?.code),
                _ => None,
            })
        };
        let start = match &self.doc.system {
            Some(System::Example1(sys)) => sys.k_max,
            Some(System::Example2(sys)) => sys.k_max,
            _ => return Ok(None),
        };
        let Some(mut code) = build(start)? else { return Ok(None) };
        for k in start + 1..=n.max(start + 1) {
            let next = build(k)?.expect("same system");
            let adds_short = next.words().iter().any(|c| c.len() <= n && code.index_of(c.word()).is_none());
            if !adds_short {
                break;
            }
            code = next;
        }
        Ok(Some(code))
    }

    fn boundary_cmd(&self) -> ToolResult<Value> {
        let w = self.word.expect("validated");
        let an = SyncAnalyzer::new(self.lang)?;
        self.require_admissible(&an, w)?;
        let counts = markov_boundary_test(&an, w, self.req.max_len, self.req.depth)?;
        let growing = counts.windows(2).all(|p| p[1] > p[0]);
        Ok(json!({
            "word": self.fmt(w),
            "exact": an.is_exact(),
            "distinct_follower_counts": counts,
            "strictly_growing": growing,
        }))
    }

    fn display_json(&self, r: &DisplayReport) -> Value {
        let disc: Vec<Value> = r
            .discrepancies()
            .map(|i| json!({"label": i.label, "word": self.fmt(&i.word), "follower": self.fmt(&i.follower), "claimed": i.claim, "observed": i.observed}))
            .collect();
        json!({
            "instances": r.instances.len(),
            "agreeing": r.instances.len() - disc.len(),
            "discrepancies": disc,
            "skipped": r.skipped.len(),
        })
    }

    fn examples_cmd(&self) -> ToolResult<Value> {
        let bounds = DisplayBounds { max_param: self.req.depth, extra: 1 };
        match self.doc.system.as_ref().expect("validated") {
            System::Example1(sys) => {
                let r = sys.verify_boundary_displays(self.lang, bounds)?;
                Ok(json!({"system": "example1", "r": sys.config.r(), "displays": self.display_json(&r)}))
            }
            System::Example2(sys) => {
                let r = sys.verify_boundary_displays(self.lang, bounds)?;
                Ok(json!({"system": "example2", "displays": self.display_json(&r)}))
            }
            System::SignedBlocks(sys) => {
                let mut identity_failures = 0;
                for k in 1..=self.req.max_len {
                    for a in Sign::ALL {
                        for kp in 0..=k {
                            if g_plus(kp, a).concat(&g_minus(k - kp, a)) != block(k, a) {
                                identity_failures += 1;
                            }
                        }
                    }
                }
                let p = self.req.depth.min(sys.k_max);
                let remark = sys.remark_sweep(self.lang, p)?;
                let l9 = sys.lemma9_sweep(self.lang, p + 1, p)?;
                let a = match self.word {
                    Some(w) => w.clone(),
                    None => block(2, Sign::Plus),
                };
                let l10 = match sys.lemma10_witness(self.lang, &a, 3 * self.req.depth) {
                    Ok(r) => json!({
                        "word": self.fmt(&a),
                        "shape": r.shape,
                        "depth": r.depth,
                        "contexts": r.contexts,
                        "successes": r.successes,
                        "no_anchor": r.no_anchor,
                        "invalid_follower": r.invalid_follower,
                        "fraction": r.fraction,
                        "inconclusive": r.inconclusive,
                    }),
                    Err(e) => json!({"word": self.fmt(&a), "error": e.to_string()}),
                };
                Ok(json!({
                    "system": "signed-blocks",
                    "identity": {"k_max": self.req.max_len, "failures": identity_failures},
                    "remark": {
                        "shapes": remark.shapes,
                        "inadmissible": remark.inadmissible,
                        "literal": remark.literal,
                        "searched": remark.searched,
                        "failures": self.fmt_all(&remark.failures),
                    },
                    "lemma9": {
                        "products": l9.products,
                        "instances": l9.instances,
                        "admissible": l9.admissible,
                        "gaps": l9.gaps.len(),
                        "failures": l9.failures.len(),
                    },
                    "lemma10": l10,
                }))
            }
        }
    }
}

/// `ln` of the Perron root of a deterministic automaton without parallel
/// edges, which is the entropy of its shift.
fn spectral_entropy(fa: &spocode_core::automaton::FactorAutomaton) -> Option<Value> {
    let fa = fa.trim();
    let n = fa.num_states();
    if n == 0 {
        return None;
    }
    let mut rows = vec![Vec::new(); n];
    for (p, row) in rows.iter_mut().enumerate() {
        for a in 0..fa.num_symbols() {
            let succ = fa.successors(p, spocode_core::Symbol(a as u16));
            if succ.len() > 1 {
                return None;
            }
            row.extend(succ.iter().map(|&q| q as usize));
        }
        let before = row.len();
        row.sort_unstable();
        row.dedup();
        if row.len() != before {
            return None;
        }
    }
    let m = SparseMatrix::from_rows(rows);
    let root = perron_root_exact(&m);
    Some(json!({
        "states": n,
        "characteristic_polynomial": characteristic_polynomial(&m).iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        "perron_root": root,
        "entropy": if root > 0.0 { Some(root.ln()) } else { None },
    }))
}
