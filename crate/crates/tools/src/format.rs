/*
 * SPDX-License-Identifier: Apache-2.0
 */

//! The presentation file format.
//!
//! One directive per line, `#` starts a comment. Words are written as in
//! [`Alphabet::parse_word`]: comma-separated symbol names, or plain
//! strings when every symbol name is one character. See
//! `docs/presentation-format.md` for the grammar.

use spocode_core::exclusion::ExclusionFamily;
use spocode_core::presentation::LabeledGraph;
use spocode_core::spo::{find_marks, BifixCode, MarkedWord, SpoCode};
use spocode_core::systems::ex1::Example1Config;
use spocode_core::systems::{Example1System, Example2System, SignedBlockSystem};
use spocode_core::{Alphabet, Limits, Presentation, Symbol, Word};

use crate::error::ParseError;

/// A worked system the file asked for by name.
#[derive(Clone, Debug)]
pub enum System {
    Example1(Box<Example1System>),
    Example2(Box<Example2System>),
    SignedBlocks(Box<SignedBlockSystem>),
}

#[derive(Clone, Debug)]
pub struct Document {
    pub presentation: Presentation,
    pub system: Option<System>,
    pub limits: Limits,
}

impl Document {
    pub fn spo_code(&self) -> Option<&SpoCode> {
        match &self.presentation.variant {
            spocode_core::Variant::SpoCoded { code, .. } => Some(code),
            _ => None,
        }
    }
}

struct Token<'a> {
    text: &'a str,
    column: usize,
}

struct Line<'a> {
    number: usize,
    tokens: Vec<Token<'a>>,
}

impl<'a> Line<'a> {
    fn err(&self, column: usize, message: impl Into<String>) -> ParseError {
        ParseError { line: self.number, column, message: message.into() }
    }

    fn at(&self, i: usize, message: impl Into<String>) -> ParseError {
        let column = self.tokens.get(i).map(|t| t.column).unwrap_or_else(|| self.end_column());
        self.err(column, message)
    }

    fn end_column(&self) -> usize {
        self.tokens.last().map(|t| t.column + t.text.chars().count()).unwrap_or(1)
    }

    fn arg(&self, i: usize, what: &str) -> Result<&Token<'a>, ParseError> {
        self.tokens.get(i).ok_or_else(|| self.at(i, format!("missing {what}")))
    }

    fn arity(&self, n: usize) -> Result<(), ParseError> {
        if self.tokens.len() > n {
            return Err(self.at(n, "unexpected extra argument"));
        }
        if self.tokens.len() < n {
            return Err(self.at(self.tokens.len(), "missing argument"));
        }
        Ok(())
    }

    fn usize_arg(&self, i: usize, what: &str) -> Result<usize, ParseError> {
        let t = self.arg(i, what)?;
        t.text.parse().map_err(|_| self.err(t.column, format!("expected a nonnegative integer for {what}, found `{}`", t.text)))
    }

    fn word_arg(&self, i: usize, alphabet: Option<&Alphabet>) -> Result<Word, ParseError> {
        let t = self.arg(i, "word")?;
        let a = alphabet.ok_or_else(|| self.err(t.column, "`alphabet` must come before any word"))?;
        a.parse_word(t.text).map_err(|e| self.err(t.column, e.to_string()))
    }

    fn symbol_arg(&self, i: usize, alphabet: &Alphabet) -> Result<Symbol, ParseError> {
        let t = self.arg(i, "symbol")?;
        alphabet.symbol(t.text).map_err(|e| self.err(t.column, e.to_string()))
    }
}

fn tokenize(text: &str) -> Vec<Line<'_>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let content = match raw.find('#') {
            Some(p) => &raw[..p],
            None => raw,
        };
        let mut tokens = Vec::new();
        let mut start: Option<usize> = None;
        let mut col = 0;
        let mut start_col = 0;
        for (byte, ch) in content.char_indices() {
            col += 1;
            if ch.is_whitespace() {
                if let Some(s) = start.take() {
                    tokens.push(Token { text: &content[s..byte], column: start_col });
                }
            } else if start.is_none() {
                start = Some(byte);
                start_col = col;
            }
        }
        if let Some(s) = start {
            tokens.push(Token { text: &content[s..], column: start_col });
        }
        if !tokens.is_empty() {
            out.push(Line { number: i + 1, tokens });
        }
    }
    out
}

/// A `word` line: the word, its marks if given, and the line number.
type WordLine = (Word, Option<(usize, usize)>, usize);

#[derive(Default)]
struct Builder {
    kind: Option<(String, usize, usize)>,
    alphabet: Option<Alphabet>,
    forbid: Vec<Word>,
    vertices: Option<usize>,
    edges: Vec<(usize, Symbol, usize)>,
    words: Vec<WordLine>,
    bifix: Vec<Word>,
    dangling: Vec<Word>,
    excluded: Vec<ExclusionFamily>,
    margin: Option<usize>,
    sigma: Option<Alphabet>,
    points: Vec<Word>,
    k_max: Option<usize>,
    m_max: Option<usize>,
    limits: Limits,
}

const KINDS: [&str; 8] = ["sft", "sofic", "coded", "spo", "exclusion", "example1", "example2", "signed-blocks"];

fn key_values<'a>(line: &'a Line<'a>, from: usize) -> Result<Vec<(&'a str, &'a str, usize)>, ParseError> {
    line.tokens[from..]
        .iter()
        .map(|t| match t.text.split_once('=') {
            Some((k, v)) => Ok((k, v, t.column)),
            None => Err(line.err(t.column, format!("expected key=value, found `{}`", t.text))),
        })
        .collect()
}

fn exclusion_family(line: &Line<'_>, alphabet: Option<&Alphabet>) -> Result<ExclusionFamily, ParseError> {
    let head = line.arg(1, "excluded word or family")?;
    let generator = matches!(head.text, "growth-pairs" | "nested");
    if !generator {
        line.arity(2)?;
        return Ok(ExclusionFamily::Words(vec![line.word_arg(1, alphabet)?]));
    }
    let a = alphabet.ok_or_else(|| line.err(head.column, "`alphabet` must come before exclusions"))?;
    let mut zero = None;
    let mut signs = None;
    let mut levels = None;
    for (k, v, col) in key_values(line, 2)? {
        match k {
            "zero" => zero = Some(a.symbol(v).map_err(|e| line.err(col, e.to_string()))?),
            "signs" => {
                let s: Result<Vec<Symbol>, _> = v.split(',').map(|x| a.symbol(x)).collect();
                signs = Some(s.map_err(|e| line.err(col, e.to_string()))?);
            }
            "levels" if head.text == "nested" => {
                levels = Some(v.parse::<usize>().map_err(|_| line.err(col, "levels must be an integer"))?)
            }
            _ => return Err(line.err(col, format!("unknown parameter `{k}`"))),
        }
    }
    let zero = zero.ok_or_else(|| line.err(head.column, "missing zero=<symbol>"))?;
    let signs = signs.ok_or_else(|| line.err(head.column, "missing signs=<symbol>,<symbol>"))?;
    Ok(if head.text == "nested" {
        let max_level = levels.ok_or_else(|| line.err(head.column, "missing levels=<n>"))?;
        ExclusionFamily::NestedBlocks { zero, signs, max_level }
    } else {
        ExclusionFamily::GrowthPairs { zero, signs }
    })
}

/// Parses a presentation file.
pub fn parse_document(text: &str) -> Result<Document, ParseError> {
    let lines = tokenize(text);
    let mut b = Builder::default();
    for line in &lines {
        let key = &line.tokens[0];
        match key.text {
            "kind" => {
                line.arity(2)?;
                let t = &line.tokens[1];
                if !KINDS.contains(&t.text) {
                    return Err(line.err(t.column, format!("unknown kind `{}`; expected one of {}", t.text, KINDS.join(", "))));
                }
                if b.kind.is_some() {
                    return Err(line.err(key.column, "`kind` given twice"));
                }
                b.kind = Some((t.text.to_string(), line.number, t.column));
            }
            "alphabet" => {
                if line.tokens.len() < 2 {
                    return Err(line.at(1, "alphabet needs at least one symbol"));
                }
                let names: Vec<&str> = line.tokens[1..].iter().map(|t| t.text).collect();
                b.alphabet = Some(Alphabet::new(names).map_err(|e| line.err(line.tokens[1].column, e.to_string()))?);
            }
            "sigma" => {
                if line.tokens.len() < 2 {
                    return Err(line.at(1, "sigma needs at least one symbol"));
                }
                let names: Vec<&str> = line.tokens[1..].iter().map(|t| t.text).collect();
                b.sigma = Some(Alphabet::new(names).map_err(|e| line.err(line.tokens[1].column, e.to_string()))?);
            }
            "point" => {
                line.arity(2)?;
                b.points.push(line.word_arg(1, b.sigma.as_ref())?);
            }
            "forbid" => {
                line.arity(2)?;
                b.forbid.push(line.word_arg(1, b.alphabet.as_ref())?);
            }
            "vertices" => {
                line.arity(2)?;
                b.vertices = Some(line.usize_arg(1, "vertex count")?);
            }
            "edge" => {
                line.arity(4)?;
                let a = b.alphabet.as_ref().ok_or_else(|| line.err(key.column, "`alphabet` must come before edges"))?;
                let from = line.usize_arg(1, "source vertex")?;
                let s = line.symbol_arg(2, a)?;
                let to = line.usize_arg(3, "target vertex")?;
                b.edges.push((from, s, to));
            }
            "word" => {
                let w = line.word_arg(1, b.alphabet.as_ref())?;
                let marks = match line.tokens.len() {
                    2 => None,
                    5 if line.tokens[2].text == "marks" => Some((line.usize_arg(3, "prefix mark")?, line.usize_arg(4, "suffix mark")?)),
                    _ => return Err(line.at(2, "expected `word <word>` or `word <word> marks <p> <s>`")),
                };
                b.words.push((w, marks, line.number));
            }
            "bifix" => {
                line.arity(2)?;
                b.bifix.push(line.word_arg(1, b.alphabet.as_ref())?);
            }
            "dangling" => {
                line.arity(2)?;
                b.dangling.push(line.word_arg(1, b.alphabet.as_ref())?);
            }
            "exclude" => b.excluded.push(exclusion_family(line, b.alphabet.as_ref())?),
            "margin" => {
                line.arity(2)?;
                b.margin = Some(line.usize_arg(1, "margin")?);
            }
            "k-max" => {
                line.arity(2)?;
                b.k_max = Some(line.usize_arg(1, "k-max")?);
            }
            "m-max" => {
                line.arity(2)?;
                b.m_max = Some(line.usize_arg(1, "m-max")?);
            }
            "limit" => {
                line.arity(3)?;
                let n = line.usize_arg(2, "limit")?;
                match line.tokens[1].text {
                    "words" => b.limits.word_cap = n,
                    "subsets" => b.limits.subset_cap = n,
                    other => return Err(line.err(line.tokens[1].column, format!("unknown limit `{other}`"))),
                }
            }
            other => return Err(line.err(key.column, format!("unknown directive `{other}`"))),
        }
    }
    finish(b, &lines)
}

fn finish(b: Builder, lines: &[Line<'_>]) -> Result<Document, ParseError> {
    let end = lines.last().map(|l| l.number + 1).unwrap_or(1);
    let Some((kind, kline, kcol)) = b.kind.clone() else {
        return Err(ParseError { line: end, column: 1, message: "missing `kind` directive".into() });
    };
    let here = |message: String| ParseError { line: kline, column: kcol, message };
    let need_alphabet = || b.alphabet.clone().ok_or_else(|| here(format!("kind `{kind}` needs an `alphabet` line")));
    let limits = b.limits;
    let simple = |presentation: Presentation| Document { presentation, system: None, limits };
    match kind.as_str() {
        "sft" => {
            let a = need_alphabet()?;
            if b.forbid.is_empty() {
                return Ok(simple(Presentation::full_shift(a)));
            }
            Presentation::sft(a, b.forbid).map(simple).map_err(|e| here(e.to_string()))
        }
        "sofic" => {
            let a = need_alphabet()?;
            let vertices = b.vertices.ok_or_else(|| here("sofic presentation needs `vertices`".into()))?;
            Presentation::sofic(a, LabeledGraph { vertices, edges: b.edges }).map(simple).map_err(|e| here(e.to_string()))
        }
        "coded" => {
            let a = need_alphabet()?;
            let words = b.words.into_iter().map(|(w, _, _)| w).collect();
            Presentation::coded(a, words).map(simple).map_err(|e| here(e.to_string()))
        }
        "spo" => {
            let a = need_alphabet()?;
            let bifix = BifixCode::new(b.bifix).map_err(|e| here(e.to_string()))?;
            let mut marked = Vec::new();
            for (w, marks, line) in b.words {
                let at = |message: String| ParseError { line, column: 1, message };
                let m = match marks {
                    Some((p, s)) => MarkedWord::new(w, p, s, &bifix).map_err(|e| at(e.to_string()))?,
                    None => find_marks(&bifix, &w).ok_or_else(|| at(format!("word {w} has no proper bifix prefix and suffix")))?,
                };
                marked.push(m);
            }
            let code = SpoCode::new(bifix, marked).map_err(|e| here(e.to_string()))?;
            Ok(simple(Presentation::spo(a, code, b.dangling)))
        }
        "exclusion" => {
            let a = need_alphabet()?;
            let words: Vec<Word> = b.words.into_iter().map(|(w, _, _)| w).collect();
            if words.is_empty() {
                return Err(here("exclusion presentation needs code words".into()));
            }
            Ok(simple(Presentation::exclusion(a, words, b.excluded, b.margin)))
        }
        "example1" => {
            let sigma = b.sigma.ok_or_else(|| here("example1 needs a `sigma` line".into()))?;
            let cfg = Example1Config::new(sigma, b.points).map_err(|e| here(e.to_string()))?;
            let sys = Example1System::build(cfg, b.k_max.unwrap_or(3)).map_err(|e| here(e.to_string()))?;
            Ok(Document { presentation: sys.presentation(), system: Some(System::Example1(Box::new(sys))), limits })
        }
        "example2" => {
            let sys = Example2System::build(b.k_max.unwrap_or(3)).map_err(|e| here(e.to_string()))?;
            Ok(Document { presentation: sys.presentation(), system: Some(System::Example2(Box::new(sys))), limits })
        }
        "signed-blocks" => {
            let sys = SignedBlockSystem::build(b.k_max.unwrap_or(6), b.m_max.unwrap_or(2)).map_err(|e| here(e.to_string()))?;
            Ok(Document { presentation: sys.presentation(), system: Some(System::SignedBlocks(Box::new(sys))), limits })
        }
        _ => unreachable!("kind validated while reading"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_mean_file() {
        let doc = parse_document("# golden mean\nkind sft\nalphabet 0 1\nforbid 11\n").unwrap();
        assert_eq!(doc.presentation.kind(), "sft");
    }

    #[test]
    fn positions_are_reported() {
        let e = parse_document("kind sft\nalphabet 0 1\nforbid 12\n").unwrap_err();
        assert_eq!((e.line, e.column), (3, 8));
        let e = parse_document("kind sft\nalphabet 0 1\n  bogus 1\n").unwrap_err();
        assert_eq!((e.line, e.column), (3, 3));
        let e = parse_document("alphabet 0 1\n").unwrap_err();
        assert!(e.message.contains("kind"));
    }

    #[test]
    fn spo_with_marks() {
        let text = "kind spo\nalphabet g d 0\nbifix gdg\nword gdg0gdg marks 3 3\nword gdgdg\n";
        let doc = parse_document(text).unwrap();
        assert_eq!(doc.spo_code().unwrap().len(), 2);
        let bad = "kind spo\nalphabet g d 0\nbifix gdg\nword gdg0gdg marks 2 3\n";
        assert_eq!(parse_document(bad).unwrap_err().line, 4);
    }

    #[test]
    fn exclusion_generators() {
        let text = "kind exclusion\nalphabet -1 0 1\nword -1,0,0,-1\nword 1,0,0,1\nexclude growth-pairs zero=0 signs=-1,1\nexclude nested zero=0 signs=-1,1 levels=2\n";
        let doc = parse_document(text).unwrap();
        assert_eq!(doc.presentation.kind(), "exclusion");
        let e = parse_document("kind exclusion\nalphabet -1 0 1\nword 1,0,1\nexclude nested zero=0 signs=-1,1\n").unwrap_err();
        assert_eq!(e.line, 4);
    }
}
