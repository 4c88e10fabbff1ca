//! IPA inventory, transcription conventions, stress placement and the
//! phoneme-string grammar.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// Primary stress delimiter (U+02C8).
pub const STRESS_MARK: char = 'ˈ';

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Phoneme {
    B,
    V,
    G,
    Dzh,
    D,
    H,
    W,
    Z,
    Zh,
    X,
    T,
    J,
    K,
    L,
    M,
    N,
    S,
    Glottal,
    P,
    F,
    Ts,
    Tsh,
    R,
    Sh,
    A,
    E,
    I,
    O,
    U,
}

impl Phoneme {
    pub const ALL: [Phoneme; 29] = [
        Phoneme::B,
        Phoneme::V,
        Phoneme::G,
        Phoneme::Dzh,
        Phoneme::D,
        Phoneme::H,
        Phoneme::W,
        Phoneme::Z,
        Phoneme::Zh,
        Phoneme::X,
        Phoneme::T,
        Phoneme::J,
        Phoneme::K,
        Phoneme::L,
        Phoneme::M,
        Phoneme::N,
        Phoneme::S,
        Phoneme::Glottal,
        Phoneme::P,
        Phoneme::F,
        Phoneme::Ts,
        Phoneme::Tsh,
        Phoneme::R,
        Phoneme::Sh,
        Phoneme::A,
        Phoneme::E,
        Phoneme::I,
        Phoneme::O,
        Phoneme::U,
    ];

    pub const fn is_vowel(self) -> bool {
        matches!(
            self,
            Phoneme::A | Phoneme::E | Phoneme::I | Phoneme::O | Phoneme::U
        )
    }

    pub const fn symbol(self, narrowness: Narrowness) -> &'static str {
        match (self, narrowness) {
            (Phoneme::X, Narrowness::Narrow) => "χ",
            (Phoneme::R, Narrowness::Narrow) => "ʁ",
            (Phoneme::B, _) => "b",
            (Phoneme::V, _) => "v",
            (Phoneme::G, _) => "g",
            (Phoneme::Dzh, _) => "dʒ",
            (Phoneme::D, _) => "d",
            (Phoneme::H, _) => "h",
            (Phoneme::W, _) => "w",
            (Phoneme::Z, _) => "z",
            (Phoneme::Zh, _) => "ʒ",
            (Phoneme::X, _) => "x",
            (Phoneme::T, _) => "t",
            (Phoneme::J, _) => "j",
            (Phoneme::K, _) => "k",
            (Phoneme::L, _) => "l",
            (Phoneme::M, _) => "m",
            (Phoneme::N, _) => "n",
            (Phoneme::S, _) => "s",
            (Phoneme::Glottal, _) => "ʔ",
            (Phoneme::P, _) => "p",
            (Phoneme::F, _) => "f",
            (Phoneme::Ts, _) => "ts",
            (Phoneme::Tsh, _) => "tʃ",
            (Phoneme::R, _) => "r",
            (Phoneme::Sh, _) => "ʃ",
            (Phoneme::A, _) => "a",
            (Phoneme::E, _) => "e",
            (Phoneme::I, _) => "i",
            (Phoneme::O, _) => "o",
            (Phoneme::U, _) => "u",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum StressPosition {
    /// Before the onset of the stressed syllable.
    #[default]
    BeforeSyllable,
    /// Immediately before the stressed vowel.
    BeforeVowel,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Narrowness {
    /// `x` and `r` for the dorsal fricative and the rhotic.
    #[default]
    Broad,
    /// Uvular `χ` and `ʁ`.
    Narrow,
}

/// Output convention: stress placement and symbol set are independent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Convention {
    pub stress_position: StressPosition,
    pub narrowness: Narrowness,
}

impl Convention {
    pub const fn new(stress_position: StressPosition, narrowness: Narrowness) -> Self {
        Convention {
            stress_position,
            narrowness,
        }
    }

    /// Broad symbols, stress before the syllable.
    pub const BROAD_SYLLABLE: Convention =
        Convention::new(StressPosition::BeforeSyllable, Narrowness::Broad);
    /// Broad symbols, stress before the vowel: the lexicon storage form.
    pub const STORAGE: Convention = Convention::new(StressPosition::BeforeVowel, Narrowness::Broad);
    /// Narrow symbols, stress before the vowel.
    pub const NARROW_VOWEL: Convention =
        Convention::new(StressPosition::BeforeVowel, Narrowness::Narrow);
}

/// A word as a phoneme sequence plus the index of its stressed vowel.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct WordTranscription {
    pub phonemes: Vec<Phoneme>,
    /// Index into `phonemes`; always a vowel when present.
    pub stressed_vowel: Option<usize>,
}

impl WordTranscription {
    pub fn has_vowel(&self) -> bool {
        self.phonemes.iter().any(|p| p.is_vowel())
    }

    /// Renders the word; the stress mark goes where `convention` says.
    pub fn render(&self, convention: Convention) -> String {
        let mark_at = self
            .stressed_vowel
            .and_then(|v| stress_insertion(&self.phonemes, v, convention.stress_position).ok());
        let mut out = String::new();
        for (i, p) in self.phonemes.iter().enumerate() {
            if mark_at == Some(i) {
                out.push(STRESS_MARK);
            }
            out.push_str(p.symbol(convention.narrowness));
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StressError {
    #[error("phoneme index {0} is not a vowel")]
    IndexNotVowel(usize),
}

fn stress_insertion(
    phones: &[Phoneme],
    stressed_vowel_index: usize,
    position: StressPosition,
) -> Result<usize, StressError> {
    match phones.get(stressed_vowel_index) {
        Some(p) if p.is_vowel() => {}
        _ => return Err(StressError::IndexNotVowel(stressed_vowel_index)),
    }
    Ok(match position {
        StressPosition::BeforeVowel => stressed_vowel_index,
        StressPosition::BeforeSyllable => {
            let first_vowel = phones.iter().position(|p| p.is_vowel());
            if first_vowel == Some(stressed_vowel_index) {
                0
            } else if stressed_vowel_index > 0 && !phones[stressed_vowel_index - 1].is_vowel() {
                stressed_vowel_index - 1
            } else {
                stressed_vowel_index
            }
        }
    })
}

/// Marks the vowel at `stressed_vowel_index` as stressed.
///
/// Before-syllable placement takes the whole initial consonant cluster when
/// the stressed vowel is the first vowel, otherwise the one consonant right
/// before the vowel (or nothing after another vowel).
pub fn place_stress(
    phones: &[Phoneme],
    stressed_vowel_index: usize,
    convention: Convention,
) -> Result<String, StressError> {
    stress_insertion(phones, stressed_vowel_index, convention.stress_position)?;
    Ok(WordTranscription {
        phonemes: phones.to_vec(),
        stressed_vowel: Some(stressed_vowel_index),
    }
    .render(convention))
}

/// Which symbol set a phoneme string may use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IpaGrammar {
    Broad,
    Narrow,
    /// Either symbol set (mixing is rejected).
    Any,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IpaError {
    #[error("symbol {symbol:?} at byte {offset} is outside the inventory")]
    UnknownSymbol { offset: usize, symbol: char },
    #[error("word {word} has {count} stress marks")]
    StressCount { word: usize, count: usize },
    #[error("word {word} has a vowel but no stress mark")]
    MissingStress { word: usize },
    #[error("word {word}: stress mark not followed by a vowel")]
    DanglingStress { word: usize },
    #[error("empty word or stray space at byte {offset}")]
    Spacing { offset: usize },
    #[error("broad and narrow symbols mixed")]
    MixedSymbols,
}

fn symbol_table(narrowness: Narrowness) -> impl Iterator<Item = (Phoneme, &'static str)> {
    Phoneme::ALL
        .into_iter()
        .map(move |p| (p, p.symbol(narrowness)))
}

/// Splits one IPA word (no spaces) into phonemes by longest match.
///
/// Returns the phonemes and the stressed vowel: the first vowel after the
/// stress mark.
pub fn parse_ipa_word(word: &str, grammar: IpaGrammar) -> Result<WordTranscription, IpaError> {
    parse_word_at(word, 0, 0, grammar)
}

fn parse_word_at(
    word: &str,
    base_offset: usize,
    word_index: usize,
    grammar: IpaGrammar,
) -> Result<WordTranscription, IpaError> {
    let narrowness = match grammar {
        IpaGrammar::Broad => Narrowness::Broad,
        IpaGrammar::Narrow => Narrowness::Narrow,
        IpaGrammar::Any => {
            let broad = word.contains(['x', 'r']);
            let narrow = word.contains(['χ', 'ʁ']);
            if broad && narrow {
                return Err(IpaError::MixedSymbols);
            }
            if narrow {
                Narrowness::Narrow
            } else {
                Narrowness::Broad
            }
        }
    };
    let mut phonemes = Vec::new();
    let mut marks = 0;
    let mut mark_at = None;
    let mut rest = word;
    while !rest.is_empty() {
        let offset = base_offset + (word.len() - rest.len());
        if let Some(tail) = rest.strip_prefix(STRESS_MARK) {
            marks += 1;
            mark_at = Some(phonemes.len());
            rest = tail;
            continue;
        }
        let best = symbol_table(narrowness)
            .filter(|(_, sym)| rest.starts_with(sym))
            .max_by_key(|(_, sym)| sym.len());
        match best {
            Some((p, sym)) => {
                phonemes.push(p);
                rest = &rest[sym.len()..];
            }
            None => {
                let symbol = rest.chars().next().unwrap_or(' ');
                return Err(IpaError::UnknownSymbol { offset, symbol });
            }
        }
    }
    let has_vowel = phonemes.iter().any(|p| p.is_vowel());
    if marks > 1 {
        return Err(IpaError::StressCount {
            word: word_index,
            count: marks,
        });
    }
    if has_vowel && marks == 0 {
        return Err(IpaError::MissingStress { word: word_index });
    }
    let stressed_vowel = match mark_at {
        None => None,
        Some(at) => Some(
            phonemes[at..]
                .iter()
                .position(|p| p.is_vowel())
                .map(|k| at + k)
                .ok_or(IpaError::DanglingStress { word: word_index })?,
        ),
    };
    Ok(WordTranscription {
        phonemes,
        stressed_vowel,
    })
}

/// Validates a full phoneme string: single spaces between words, inventory
/// symbols only, and exactly one stress mark in every word with a vowel.
pub fn parse_phoneme_string(
    s: &str,
    grammar: IpaGrammar,
) -> Result<Vec<WordTranscription>, IpaError> {
    if s.is_empty() {
        return Ok(Vec::new());
    }
    if matches!(grammar, IpaGrammar::Any) && s.contains(['x', 'r']) && s.contains(['χ', 'ʁ']) {
        return Err(IpaError::MixedSymbols);
    }
    let mut words = Vec::new();
    let mut offset = 0;
    for (i, w) in s.split(' ').enumerate() {
        if w.is_empty() {
            return Err(IpaError::Spacing { offset });
        }
        words.push(parse_word_at(w, offset, i, grammar)?);
        offset += w.len() + 1;
    }
    Ok(words)
}

pub fn validate_phoneme_string(s: &str, grammar: IpaGrammar) -> Result<(), IpaError> {
    parse_phoneme_string(s, grammar).map(|_| ())
}

/// Broad-to-narrow symbol substitution on rendered text.
pub fn to_narrow(s: &str) -> String {
    s.chars()
        .map(|c| match c {
            'x' => 'χ',
            'r' => 'ʁ',
            c => c,
        })
        .collect()
}

impl fmt::Display for Phoneme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol(Narrowness::Broad))
    }
}
