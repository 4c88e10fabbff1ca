//! Irregular-word dictionary keyed on vocalized stems.
//!
//! File format: UTF-8, one `surface<TAB>ipa` entry per line, `#` comments
//! and blank lines ignored. Keys are stems in canonical mark order with the
//! stress mark and prefix separator removed; values use broad symbols with
//! the stress mark directly before the vowel.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::phoneme::{parse_ipa_word, Convention, IpaGrammar, WordTranscription};
use crate::text::{normalize, parse_word, tokenize, MarkKind, SegmentKind, Word};

static BUILTIN: &str = include_str!("../data/lexicon.tsv");

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LexiconEntry {
    pub key: String,
    pub ipa: String,
    /// 1-based source line.
    pub line: usize,
    transcription: WordTranscription,
}

impl LexiconEntry {
    pub fn transcription(&self) -> &WordTranscription {
        &self.transcription
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LexiconError {
    #[error("line {line}: {reason}")]
    ParseError { line: usize, reason: &'static str },
    #[error("line {line}: invalid key: {reason}")]
    InvalidKey { line: usize, reason: String },
    #[error("line {line}: invalid IPA: {reason}")]
    InvalidIpa { line: usize, reason: String },
    #[error("line {line}: duplicate key (first defined on line {first_line})")]
    DuplicateKey { line: usize, first_line: usize },
}

impl LexiconError {
    pub fn line(&self) -> usize {
        match self {
            LexiconError::ParseError { line, .. }
            | LexiconError::InvalidKey { line, .. }
            | LexiconError::InvalidIpa { line, .. }
            | LexiconError::DuplicateKey { line, .. } => *line,
        }
    }
}

/// Entries in file order plus a key index.
#[derive(Debug, Clone, Default)]
pub struct Lexicon {
    entries: Vec<LexiconEntry>,
    index: BTreeMap<String, usize>,
}

impl PartialEq for Lexicon {
    fn eq(&self, other: &Self) -> bool {
        self.entries.len() == other.entries.len()
            && self
                .entries
                .iter()
                .zip(&other.entries)
                .all(|(a, b)| a.key == b.key && a.ipa == b.ipa)
    }
}

impl Eq for Lexicon {}

/// Lookup key of a word's stem: the clusters after the last prefix boundary,
/// without stress marks.
pub fn stem_key(word: &Word) -> String {
    let mut out = String::new();
    for c in &word.clusters[word.stem_start()..] {
        let mut c = *c;
        c.marks.remove(MarkKind::Stress);
        c.prefix_boundary_after = false;
        out.push_str(&crate::text::serialize(&Word {
            clusters: alloc::vec![c],
            raw_span: 0..0,
        }));
    }
    out
}

fn key_form(raw: &str) -> Result<String, String> {
    let key = normalize(raw);
    let doc = tokenize(&key);
    match doc.segments.as_slice() {
        [seg] if seg.kind == SegmentKind::Word => {}
        _ => return Err("not a single Hebrew word".to_string()),
    }
    let word = parse_word(&key).map_err(|e| e.to_string())?;
    if word.stressed_cluster().is_some() {
        return Err("stress mark in key".to_string());
    }
    if word.clusters.iter().any(|c| c.prefix_boundary_after) {
        return Err("prefix separator in key".to_string());
    }
    Ok(key)
}

fn storage_form(ipa: &str) -> Result<WordTranscription, String> {
    let t = parse_ipa_word(ipa, IpaGrammar::Broad).map_err(|e| e.to_string())?;
    if t.render(Convention::STORAGE) != ipa {
        return Err("stress mark must directly precede the stressed vowel".to_string());
    }
    Ok(t)
}

impl Lexicon {
    pub fn new() -> Self {
        Self::default()
    }

    /// The starter lexicon shipped with the crate.
    pub fn builtin() -> Self {
        Self::parse_tsv(BUILTIN).expect("builtin lexicon is valid")
    }

    pub fn parse_tsv(text: &str) -> Result<Self, LexiconError> {
        let mut lex = Lexicon::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.trim_end_matches('\r');
            if content.trim().is_empty() || content.starts_with('#') {
                continue;
            }
            let mut fields = content.split('\t');
            let (Some(surface), Some(ipa), None) = (fields.next(), fields.next(), fields.next())
            else {
                return Err(LexiconError::ParseError {
                    line,
                    reason: "expected exactly two tab-separated fields",
                });
            };
            lex.insert(surface.trim(), ipa.trim(), line)?;
        }
        Ok(lex)
    }

    /// Validates and appends one entry.
    pub fn insert(&mut self, surface: &str, ipa: &str, line: usize) -> Result<(), LexiconError> {
        let key = key_form(surface).map_err(|reason| LexiconError::InvalidKey { line, reason })?;
        let transcription =
            storage_form(ipa).map_err(|reason| LexiconError::InvalidIpa { line, reason })?;
        if let Some(&first) = self.index.get(&key) {
            return Err(LexiconError::DuplicateKey {
                line,
                first_line: self.entries[first].line,
            });
        }
        self.index.insert(key.clone(), self.entries.len());
        self.entries.push(LexiconEntry {
            key,
            ipa: ipa.to_string(),
            line,
            transcription,
        });
        Ok(())
    }

    /// Entries in insertion order, one per line, no comments.
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            out.push_str(&e.key);
            out.push('\t');
            out.push_str(&e.ipa);
            out.push('\n');
        }
        out
    }

    pub fn get(&self, key: &str) -> Option<&LexiconEntry> {
        self.index.get(key).map(|&i| &self.entries[i])
    }

    /// Looks up the stem after the last prefix boundary.
    pub fn lookup_stem(&self, word: &Word) -> Option<&LexiconEntry> {
        if self.entries.is_empty() {
            return None;
        }
        self.get(&stem_key(word))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &LexiconEntry> {
        self.entries.iter()
    }
}
