//! Deterministic sentence segmentation, tokenization, and n-gram extraction.
//!
//! The segmenter is rule-based: a sentence ends at a run of `.`/`!`/`?`
//! (plus any closing quotes or brackets) that is followed by whitespace and
//! an upper-case letter or digit. A guard list of known abbreviations
//! suppresses splits after tokens like "fig." or "et al.". Everything here
//! is a pure function of its inputs; no model files, no global state.

use std::collections::BTreeSet;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Byte-offset half-open interval `[start, end)` into the enclosing text.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl Span {
    pub fn new(start: usize, end: usize) -> Self {
        Span { start, end }
    }

    pub fn len(&self) -> usize {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.start == self.end
    }
}

/// A single token of a sentence. `normalized` is the case-folded surface form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Token {
    pub surface: String,
    pub normalized: String,
    /// Byte span within the owning sentence's `text`.
    pub span: Span,
}

/// A sentence with its tokens and its byte span within the raw document text.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sentence {
    pub index: usize,
    pub text: String,
    /// Byte span within the owning document's `raw_text`.
    pub span: Span,
    pub tokens: Vec<Token>,
}

impl Sentence {
    /// Lower-cased token forms, in order.
    pub fn normalized_tokens(&self) -> Vec<&str> {
        self.tokens.iter().map(|t| t.normalized.as_str()).collect()
    }
}

/// A document broken into sentences. Sentence indices are contiguous from 0.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Document {
    pub doc_id: String,
    pub raw_text: String,
    pub sentences: Vec<Sentence>,
}

impl Document {
    /// Segment and tokenize `raw_text` with the default segmenter.
    pub fn from_text(doc_id: impl Into<String>, raw_text: impl Into<String>) -> Document {
        Segmenter::default().document(doc_id, raw_text)
    }

    /// Build a document from externally segmented sentences, bypassing the
    /// rule-based splitter. Sentences that tokenize to nothing are dropped.
    pub fn from_sentences<S: AsRef<str>>(doc_id: impl Into<String>, sentences: &[S]) -> Document {
        let raw_text = sentences
            .iter()
            .map(|s| s.as_ref())
            .collect::<Vec<_>>()
            .join("\n");
        let mut out = Vec::new();
        let mut offset = 0;
        for s in sentences {
            let s = s.as_ref();
            let tokens = tokenize(s);
            if !tokens.is_empty() {
                out.push(Sentence {
                    index: out.len(),
                    text: s.to_string(),
                    span: Span::new(offset, offset + s.len()),
                    tokens,
                });
            }
            offset += s.len() + 1; // joining '\n'
        }
        Document {
            doc_id: doc_id.into(),
            raw_text,
            sentences: out,
        }
    }

    pub fn n_sentences(&self) -> usize {
        self.sentences.len()
    }
}

/// Tokens that legitimately end in a period mid-sentence (stored lower-case,
/// without the trailing dot). Compared against the whitespace-delimited word
/// preceding a candidate split, so dotted forms like "e.g" are listed as-is.
const DEFAULT_ABBREVIATIONS: &[&str] = &[
    "al", "approx", "ca", "cf", "co", "dept", "dr", "e.g", "ed", "eds", "eq", "eqs", "et", "fig",
    "figs", "i.e", "inc", "jr", "ltd", "mr", "mrs", "ms", "no", "pp", "prof", "ref", "refs",
    "resp", "sec", "secs", "sr", "st", "univ", "vol", "vols", "vs",
];

/// Rule-based sentence splitter with a configurable abbreviation guard.
#[derive(Debug, Clone)]
pub struct Segmenter {
    abbreviations: BTreeSet<String>,
}

impl Default for Segmenter {
    fn default() -> Self {
        Segmenter {
            abbreviations: DEFAULT_ABBREVIATIONS
                .iter()
                .map(|s| s.to_string())
                .collect(),
        }
    }
}

impl Segmenter {
    /// Load a guard list (one token per line, `#` comments allowed) replacing
    /// the built-in abbreviations.
    pub fn from_abbreviations_file(path: impl AsRef<Path>) -> Result<Segmenter> {
        let path = path.as_ref();
        let content = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let mut abbreviations = BTreeSet::new();
        for line in content.lines() {
            let word = line.trim();
            if word.is_empty() || word.starts_with('#') {
                continue;
            }
            abbreviations.insert(word.trim_end_matches('.').to_lowercase());
        }
        Ok(Segmenter { abbreviations })
    }

    pub fn document(&self, doc_id: impl Into<String>, raw_text: impl Into<String>) -> Document {
        let raw_text = raw_text.into();
        let sentences = self.segment(&raw_text);
        Document {
            doc_id: doc_id.into(),
            raw_text,
            sentences,
        }
    }

    /// Split `raw_text` into tokenized sentences. Total function: empty or
    /// token-free input yields an empty sequence.
    pub fn segment(&self, raw_text: &str) -> Vec<Sentence> {
        let mut sentences = Vec::new();
        let mut start = 0;
        for end in self.boundaries(raw_text) {
            self.push_sentence(raw_text, start, end, &mut sentences);
            start = end;
        }
        self.push_sentence(raw_text, start, raw_text.len(), &mut sentences);
        sentences
    }

    fn push_sentence(&self, raw: &str, start: usize, end: usize, out: &mut Vec<Sentence>) {
        let slice = &raw[start..end];
        let trimmed = slice.trim();
        if trimmed.is_empty() {
            return;
        }
        let lead = slice.len() - slice.trim_start().len();
        let tokens = tokenize(trimmed);
        if tokens.is_empty() {
            return;
        }
        out.push(Sentence {
            index: out.len(),
            text: trimmed.to_string(),
            span: Span::new(start + lead, start + lead + trimmed.len()),
            tokens,
        });
    }

    /// Byte offsets at which a new sentence starts (exclusive ends of the
    /// preceding sentence including its closing punctuation).
    fn boundaries(&self, text: &str) -> Vec<usize> {
        const CLOSERS: &[char] = &['"', '\'', ')', ']', '\u{201D}', '\u{2019}', '\u{00BB}'];
        const OPENERS: &[char] = &['"', '\'', '(', '[', '\u{201C}', '\u{2018}', '\u{00AB}'];

        let mut cuts = Vec::new();
        let chars: Vec<(usize, char)> = text.char_indices().collect();
        let mut i = 0;
        while i < chars.len() {
            if !is_terminal(chars[i].1) {
                i += 1;
                continue;
            }
            let run_start = i;
            while i < chars.len() && is_terminal(chars[i].1) {
                i += 1;
            }
            let run_end = i; // exclusive index into `chars`
            let mut j = run_end;
            while j < chars.len() && CLOSERS.contains(&chars[j].1) {
                j += 1;
            }
            // Require whitespace, then (optionally after opening punctuation)
            // an upper-case letter or digit.
            let mut k = j;
            while k < chars.len() && chars[k].1.is_whitespace() {
                k += 1;
            }
            if k == j {
                continue; // no whitespace after the terminal run
            }
            let mut m = k;
            while m < chars.len() && OPENERS.contains(&chars[m].1) {
                m += 1;
            }
            let starts_sentence =
                m < chars.len() && (chars[m].1.is_uppercase() || chars[m].1.is_ascii_digit());
            if !starts_sentence {
                continue;
            }
            // Abbreviation guard applies only to a bare "." terminal.
            if run_end - run_start == 1 && chars[run_start].1 == '.' {
                let word = preceding_word(text, chars[run_start].0);
                if self.abbreviations.contains(&word) {
                    continue;
                }
            }
            let cut = if j < chars.len() {
                chars[j].0
            } else {
                text.len()
            };
            cuts.push(cut);
        }
        cuts
    }
}

/// The whitespace-delimited word immediately before byte offset `dot`,
/// lower-cased, with surrounding punctuation (other than internal dots,
/// as in "e.g") stripped.
fn preceding_word(text: &str, dot: usize) -> String {
    let before = &text[..dot];
    let word = before
        .rsplit(char::is_whitespace)
        .next()
        .unwrap_or("")
        .trim_matches(|c: char| !c.is_alphanumeric() && c != '.');
    word.trim_matches('.').to_lowercase()
}

fn is_terminal(c: char) -> bool {
    matches!(c, '.' | '!' | '?')
}

/// Segment with the default abbreviation guard.
pub fn segment_sentences(raw_text: &str) -> Vec<Sentence> {
    Segmenter::default().segment(raw_text)
}

/// Split on whitespace and punctuation; hyphens flanked by alphanumerics are
/// kept inside the token ("tRNA-Ile" stays one token). Punctuation itself is
/// never a token.
pub fn tokenize(sentence_text: &str) -> Vec<Token> {
    let mut tokens = Vec::new();
    let chars: Vec<(usize, char)> = sentence_text.char_indices().collect();
    let mut i = 0;
    while i < chars.len() {
        if !chars[i].1.is_alphanumeric() {
            i += 1;
            continue;
        }
        let start = i;
        while i < chars.len() {
            let c = chars[i].1;
            if c.is_alphanumeric() {
                i += 1;
            } else if c == '-'
                && i > start
                && i + 1 < chars.len()
                && chars[i + 1].1.is_alphanumeric()
            {
                i += 1;
            } else {
                break;
            }
        }
        let byte_start = chars[start].0;
        let byte_end = if i < chars.len() {
            chars[i].0
        } else {
            sentence_text.len()
        };
        let surface = &sentence_text[byte_start..byte_end];
        tokens.push(Token {
            surface: surface.to_string(),
            normalized: surface.to_lowercase(),
            span: Span::new(byte_start, byte_end),
        });
    }
    tokens
}

/// All contiguous length-`n` windows of `items`, in order (a multiset when
/// treated orderlessly). A sequence shorter than `n` has no n-grams.
pub fn ngrams<T>(items: &[T], n: usize) -> Result<Vec<&[T]>> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "n-gram order must be at least 1".into(),
        ));
    }
    if items.len() < n {
        return Ok(Vec::new());
    }
    Ok(items.windows(n).collect())
}
