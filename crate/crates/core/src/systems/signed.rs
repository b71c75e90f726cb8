/*
 * SPDX-License-Identifier: Apache-2.0
 */

//! Blocks `α 0^k α` over `{-1, 0, 1}` with two kinds of excluded words:
//! a block followed by one at least two zeros longer, and the nested
//! words `α (…)⁺ α` built from `α 0 α`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::alphabet::{Alphabet, Symbol, Word};
use crate::error::{Error, Result};
use crate::exclusion::ExclusionFamily;
use crate::language::{Language, Limits};
use crate::presentation::{Compiled, Presentation};

pub const MINUS: Symbol = Symbol(0);
pub const ZERO: Symbol = Symbol(1);
pub const PLUS: Symbol = Symbol(2);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Minus,
    Plus,
}

impl Sign {
    pub const ALL: [Sign; 2] = [Sign::Minus, Sign::Plus];

    pub fn symbol(self) -> Symbol {
        match self {
            Sign::Minus => MINUS,
            Sign::Plus => PLUS,
        }
    }

    pub fn from_symbol(s: Symbol) -> Option<Sign> {
        match s {
            MINUS => Some(Sign::Minus),
            PLUS => Some(Sign::Plus),
            _ => None,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Minus => Sign::Plus,
            Sign::Plus => Sign::Minus,
        }
    }
}

/// `0^k α`.
pub fn g_minus(k: usize, a: Sign) -> Word {
    let mut w = Word::repeat_symbol(ZERO, k);
    w.push(a.symbol());
    w
}

/// `α 0^k`.
pub fn g_plus(k: usize, a: Sign) -> Word {
    let mut w = Word::empty();
    w.push(a.symbol());
    w.extend_from_slice(&Word::repeat_symbol(ZERO, k));
    w
}

/// `α 0^k α`.
pub fn c(k: usize, a: Sign) -> Word {
    let mut w = g_plus(k, a);
    w.push(a.symbol());
    w
}

/// `∏ c(k_r, α_r)`.
pub fn product(blocks: &[(usize, Sign)]) -> Word {
    let mut w = Word::empty();
    for &(k, a) in blocks {
        w.extend_from_slice(&c(k, a));
    }
    w
}

/// Some `α 0^k α` with `k >= 1` is a factor of `w`.
pub fn contains_code_word(w: &[Symbol]) -> bool {
    (0..w.len()).any(|i| match Sign::from_symbol(w[i]) {
        Some(_) => {
            let z = w[i + 1..].iter().take_while(|&&s| s == ZERO).count();
            z >= 1 && w.get(i + 1 + z) == Some(&w[i])
        }
        None => false,
    })
}

/// Splits `w` into blocks `α 0^k α`, `k >= 1`, if it is exactly such a
/// product.
pub fn parse_blocks(w: &[Symbol]) -> Option<Vec<(usize, Sign)>> {
    let mut out = Vec::new();
    let mut i = 0;
    while i < w.len() {
        let a = Sign::from_symbol(w[i])?;
        let z = w[i + 1..].iter().take_while(|&&s| s == ZERO).count();
        if z == 0 || w.get(i + 1 + z) != Some(&a.symbol()) {
            return None;
        }
        out.push((z, a));
        i += z + 2;
    }
    Some(out)
}

#[derive(Clone, Debug)]
pub struct SignedBlockSystem {
    pub k_max: usize,
    pub m_max: usize,
    pub alphabet: Alphabet,
    /// `c(k, α)` for `1 <= k <= k_max`.
    pub code: Vec<Word>,
    pub excluded: Vec<ExclusionFamily>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RemarkCase {
    /// `a = g⁺(k, α)`.
    GPlus { k: usize, alpha: Sign },
    /// `a = g⁻(k, α)`, `k >= 1`.
    GMinus { k: usize, alpha: Sign },
    /// `a = g⁻(k⁻, α⁻) g⁺(k⁺, α⁺)` with `k⁺ > k⁻`.
    Rising { k_minus: usize, a_minus: Sign, k_plus: usize, a_plus: Sign },
    /// The same shape with `k⁺ <= k⁻`.
    Falling { k_minus: usize, a_minus: Sign, k_plus: usize, a_plus: Sign },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RemarkOutcome {
    pub case: RemarkCase,
    pub b: Word,
    /// `b` is the case formula itself; otherwise it was found by search.
    pub literal: bool,
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Lemma9Result {
    Extended {
        /// `r_1 > r_2 > …`, 1-based.
        indices: Vec<usize>,
        continuation: Vec<(usize, Sign)>,
        word: Word,
        admissible: bool,
    },
    /// The recursion's maximum ran over an empty set at step `q`.
    PreconditionGap { q: usize },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Lemma10Report {
    /// `"a"` for a product of blocks, `"b"` when a `g⁻` word comes first.
    pub shape: &'static str,
    pub depth: usize,
    /// Left contexts of length `depth` tried.
    pub contexts: usize,
    pub successes: usize,
    /// Contexts with no block to copy within the window.
    pub no_anchor: usize,
    /// Contexts whose constructed continuation does not follow `a`.
    pub invalid_follower: usize,
    pub fraction: f64,
    pub inconclusive: bool,
}

impl SignedBlockSystem {
    pub fn build(k_max: usize, m_max: usize) -> Result<Self> {
        if k_max < 2 || m_max < 1 {
            return Err(crate::error::domain!("need k_max >= 2 and m_max >= 1"));
        }
        let alphabet = Alphabet::new(["-1", "0", "1"])?;
        let code = (1..=k_max).flat_map(|k| Sign::ALL.map(|a| c(k, a))).collect();
        let signs = alloc::vec![MINUS, PLUS];
        let excluded = alloc::vec![
            ExclusionFamily::GrowthPairs { zero: ZERO, signs: signs.clone() },
            ExclusionFamily::NestedBlocks { zero: ZERO, signs, max_level: m_max },
        ];
        Ok(Self { k_max, m_max, alphabet, code, excluded })
    }

    pub fn presentation(&self) -> Presentation {
        Presentation::exclusion(self.alphabet.clone(), self.code.clone(), self.excluded.clone(), None)
    }

    pub fn language(&self, limits: Limits) -> Result<Compiled> {
        self.presentation().compile(limits)
    }

    /// Which of the four extension cases `a` falls in.
    pub fn classify(a: &[Symbol]) -> Result<RemarkCase> {
        let bad = || Error::Domain(format!("word {} has none of the four extension shapes", Word::from_slice(a)));
        let z0 = a.iter().take_while(|&&s| s == ZERO).count();
        let rest = &a[z0..];
        let s1 = rest.first().and_then(|&s| Sign::from_symbol(s)).ok_or_else(bad)?;
        let tail = &rest[1..];
        if z0 == 0 && tail.iter().all(|&s| s == ZERO) {
            return Ok(RemarkCase::GPlus { k: tail.len(), alpha: s1 });
        }
        if tail.is_empty() {
            return Ok(RemarkCase::GMinus { k: z0, alpha: s1 });
        }
        let s2 = Sign::from_symbol(tail[0]).ok_or_else(bad)?;
        if !tail[1..].iter().all(|&s| s == ZERO) {
            return Err(bad());
        }
        let kp = tail.len() - 1;
        Ok(if kp > z0 {
            RemarkCase::Rising { k_minus: z0, a_minus: s1, k_plus: kp, a_plus: s2 }
        } else {
            RemarkCase::Falling { k_minus: z0, a_minus: s1, k_plus: kp, a_plus: s2 }
        })
    }

    fn remark_literal(a: &[Symbol], case: RemarkCase) -> Word {
        let a = Word::from_slice(a);
        match case {
            RemarkCase::GPlus { alpha, .. } => a.concat(&g_minus(0, alpha)),
            RemarkCase::GMinus { k, alpha } => a.concat(&c(k + 1, alpha)),
            RemarkCase::Rising { a_plus, .. } => a.concat(&g_minus(0, a_plus)),
            RemarkCase::Falling { k_minus, k_plus, a_plus, .. } => a.concat(&g_minus(k_minus - k_plus + 1, a_plus)),
        }
    }

    /// A right extension of `a` containing a code word. The case formula is
    /// tried first; when its result is not admissible the shortlex-least
    /// valid extension up to twice the longest code word is returned and
    /// the outcome is flagged.
    pub fn remark_extension(&self, lang: &dyn Language, a: &[Symbol]) -> Result<RemarkOutcome> {
        if !lang.is_admissible(a)? {
            return Err(crate::error::domain!("word is not admissible"));
        }
        if contains_code_word(a) {
            return Err(crate::error::domain!("word already contains a code word"));
        }
        let case = Self::classify(a)?;
        let b = Self::remark_literal(a, case);
        if contains_code_word(&b) && lang.is_admissible(&b)? {
            return Ok(RemarkOutcome { case, b, literal: true, note: None });
        }
        let depth = 2 * (self.k_max + 2);
        for f in lang.follower_set(a, depth)? {
            let cand = Word::from_slice(a).concat(&f);
            if contains_code_word(&cand) {
                return Ok(RemarkOutcome {
                    case,
                    b: cand,
                    literal: false,
                    note: Some(format!("case formula gives {b}, which is not admissible")),
                });
            }
        }
        Err(Error::Construction(format!("no extension of {} within {depth} symbols", Word::from_slice(a))))
    }

    /// Continues `∏ c(k_r, α_r)` by `c(k_R + q, α_{r_q})` for
    /// `q = 1..=Q`, `Q = max k_r - k_R`, where `r_1` is the last `r < R`
    /// with `k_r = k_R + 1` and `r_{q+1}` the last `r < r_q` with
    /// `k_r = k_R + q + 1`.
    pub fn lemma9_continuation(&self, lang: &dyn Language, ks: &[(usize, Sign)]) -> Result<Lemma9Result> {
        let Some(&(k_last, _)) = ks.last() else {
            return Err(crate::error::domain!("need at least one block"));
        };
        if ks.iter().any(|&(k, _)| k == 0) {
            return Err(crate::error::domain!("block lengths must be positive"));
        }
        let a = product(ks);
        if !lang.is_admissible(&a)? {
            return Err(crate::error::domain!("product is not admissible"));
        }
        let top = ks.iter().map(|&(k, _)| k).max().unwrap_or(0);
        let q_total = top - k_last;
        if q_total == 0 {
            return Err(crate::error::domain!("the last block is already the longest"));
        }
        let mut indices = Vec::with_capacity(q_total);
        let mut bound = ks.len(); // r ranges over [1, bound)
        for q in 1..=q_total {
            let want = k_last + q;
            match (1..bound).rev().find(|&r| ks[r - 1].0 == want) {
                Some(r) => {
                    indices.push(r);
                    bound = r;
                }
                None => return Ok(Lemma9Result::PreconditionGap { q }),
            }
        }
        let continuation: Vec<(usize, Sign)> =
            indices.iter().enumerate().map(|(i, &r)| (k_last + i + 1, ks[r - 1].1)).collect();
        let word = a.concat(&product(&continuation));
        let admissible = lang.is_admissible(&word)?;
        Ok(Lemma9Result::Extended { indices, continuation, word, admissible })
    }

    /// Runs the continuation argument against every left context of `a`
    /// of length `depth`: copy the last block `c(k_R + 1, β)` (or
    /// `c(k_R + 2, β)`) seen in the context, follow with growing `+1`
    /// blocks, and check that the result follows `a` but not the context.
    pub fn lemma10_witness(&self, lang: &dyn Language, a: &[Symbol], depth: usize) -> Result<Lemma10Report> {
        let (shape, lead, blocks) = match parse_blocks(a) {
            Some(b) if !b.is_empty() => ("a", None, b),
            _ => {
                let z = a.iter().take_while(|&&s| s == ZERO).count();
                let alpha = a.get(z).and_then(|&s| Sign::from_symbol(s));
                match (alpha, parse_blocks(&a[(z + 1).min(a.len())..])) {
                    (Some(al), Some(b)) if !b.is_empty() => ("b", Some((z, al)), b),
                    _ => return Err(crate::error::domain!("word is not a product of blocks, optionally after 0^k α")),
                }
            }
        };
        let k_r = blocks.last().map(|b| b.0).unwrap_or(0);
        if blocks.iter().any(|&(k, _)| k > k_r) {
            return Err(crate::error::domain!("the last block must be the longest"));
        }
        if !lang.is_admissible(a)? {
            return Err(crate::error::domain!("word is not admissible"));
        }
        let mut report = Lemma10Report {
            shape,
            depth,
            contexts: 0,
            successes: 0,
            no_anchor: 0,
            invalid_follower: 0,
            fraction: 0.0,
            inconclusive: false,
        };
        if depth < k_r + 3 {
            report.inconclusive = true;
            return Ok(report);
        }
        let contexts: Vec<Word> = lang.predecessor_set(a, depth)?.into_iter().filter(|x| x.len() == depth).collect();
        report.contexts = contexts.len();
        for x in &contexts {
            let special = lead.and_then(|(k, al)| {
                let suffix = g_plus(k_r + 1 - k.min(k_r + 1), al);
                x.ends_with(&suffix).then_some(al)
            });
            let anchor_k = if special.is_some() { k_r + 2 } else { k_r + 1 };
            let Some(beta) = last_block(x, anchor_k) else {
                report.no_anchor += 1;
                continue;
            };
            let mut y = Word::empty();
            let mut next = match special {
                Some(al) => {
                    y.extend_from_slice(&c(k_r + 1, al.flip()));
                    y.extend_from_slice(&c(k_r + 2, beta));
                    k_r + 3
                }
                None => {
                    y.extend_from_slice(&c(k_r + 1, beta));
                    k_r + 2
                }
            };
            while y.len() < depth {
                y.extend_from_slice(&c(next, Sign::Plus));
                next += 1;
            }
            let y = Word::from_slice(&y[..depth]);
            let ay = Word::from_slice(a).concat(&y);
            if !lang.is_admissible(&ay)? {
                report.invalid_follower += 1;
                continue;
            }
            if !lang.is_admissible(&x.concat(&ay))? {
                report.successes += 1;
            }
        }
        if report.contexts > 0 {
            report.fraction = report.successes as f64 / report.contexts as f64;
        }
        report.inconclusive = report.contexts == 0 || (report.successes == 0 && report.no_anchor == report.contexts);
        Ok(report)
    }
}

/// Outcome of [`SignedBlockSystem::remark_sweep`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RemarkSweep {
    /// Shaped words tried.
    pub shapes: usize,
    /// Shaped words that are not admissible, hence outside the claim.
    pub inadmissible: usize,
    pub literal: usize,
    pub searched: usize,
    /// Words for which no valid extension came back.
    pub failures: Vec<Word>,
}

/// Outcome of [`SignedBlockSystem::lemma9_sweep`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Lemma9Sweep {
    /// Admissible block products generated.
    pub products: usize,
    /// Those with a positive `Q`.
    pub instances: usize,
    pub admissible: usize,
    /// Products whose recursion hit an empty maximum.
    pub gaps: Vec<Vec<(usize, Sign)>>,
    /// Products whose continuation is not admissible.
    pub failures: Vec<Vec<(usize, Sign)>>,
}

impl SignedBlockSystem {
    /// Every word of the four shapes with zero-run lengths at most
    /// `max_param`.
    pub fn remark_shapes(max_param: usize) -> Vec<Word> {
        let mut out = Vec::new();
        for a in Sign::ALL {
            for k in 0..=max_param {
                out.push(g_plus(k, a));
            }
            for k in 1..=max_param {
                out.push(g_minus(k, a));
            }
        }
        for am in Sign::ALL {
            for ap in Sign::ALL {
                for km in 0..=max_param {
                    for kp in 0..=max_param {
                        out.push(g_minus(km, am).concat(&g_plus(kp, ap)));
                    }
                }
            }
        }
        out.sort();
        out.dedup();
        out
    }

    pub fn remark_sweep(&self, lang: &dyn Language, max_param: usize) -> Result<RemarkSweep> {
        let mut sweep = RemarkSweep::default();
        for a in Self::remark_shapes(max_param) {
            sweep.shapes += 1;
            if !lang.is_admissible(&a)? {
                sweep.inadmissible += 1;
                continue;
            }
            match self.remark_extension(lang, &a) {
                Ok(out) => {
                    let ok = out.b.starts_with(&a) && contains_code_word(&out.b) && lang.is_admissible(&out.b)?;
                    if !ok {
                        sweep.failures.push(a);
                    } else if out.literal {
                        sweep.literal += 1;
                    } else {
                        sweep.searched += 1;
                    }
                }
                Err(Error::ResourceCap { what, cap }) => return Err(Error::ResourceCap { what, cap }),
                Err(_) => sweep.failures.push(a),
            }
        }
        Ok(sweep)
    }

    /// Runs the continuation on every admissible product of at most `r_max`
    /// blocks with lengths at most `k_lim`.
    pub fn lemma9_sweep(&self, lang: &dyn Language, r_max: usize, k_lim: usize) -> Result<Lemma9Sweep> {
        let mut sweep = Lemma9Sweep::default();
        let mut stack: Vec<Vec<(usize, Sign)>> = alloc::vec![Vec::new()];
        while let Some(seq) = stack.pop() {
            if !seq.is_empty() {
                sweep.products += 1;
                let top = seq.iter().map(|b| b.0).max().unwrap_or(0);
                if top > seq[seq.len() - 1].0 {
                    sweep.instances += 1;
                    match self.lemma9_continuation(lang, &seq)? {
                        Lemma9Result::Extended { admissible: true, .. } => sweep.admissible += 1,
                        Lemma9Result::Extended { .. } => sweep.failures.push(seq.clone()),
                        Lemma9Result::PreconditionGap { .. } => sweep.gaps.push(seq.clone()),
                    }
                }
            }
            if seq.len() == r_max {
                continue;
            }
            for k in (1..=k_lim).rev() {
                for a in Sign::ALL {
                    let mut next = seq.clone();
                    next.push((k, a));
                    if lang.is_admissible(&product(&next))? {
                        stack.push(next);
                    }
                }
            }
        }
        Ok(sweep)
    }
}

/// Sign of the rightmost block `c(k, β)` occurring in `x`.
fn last_block(x: &[Symbol], k: usize) -> Option<Sign> {
    let n = k + 2;
    if x.len() < n {
        return None;
    }
    (0..=x.len() - n).rev().find_map(|i| Sign::ALL.into_iter().find(|&b| x[i..i + n] == *c(k, b)))
}
