//! Pipe-delimited transcription metadata and the built-in example sets.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::phoneme::{parse_phoneme_string, Convention, IpaError, IpaGrammar};

/// One `id|hebrew|ipa` record.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusItem {
    pub id: String,
    pub hebrew: String,
    pub ipa: String,
    /// 1-based source line; 0 for items built in memory.
    pub line: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CorpusError {
    #[error("line {line}: expected 2 '|' delimiters, found {found}")]
    BadDelimiterCount { line: usize, found: usize },
    #[error("line {line}: duplicate id {id:?} (first on line {first_line})")]
    DuplicateId {
        line: usize,
        id: String,
        first_line: usize,
    },
    #[error("line {line}: invalid IPA: {source}")]
    InvalidIpa { line: usize, source: IpaError },
    #[error("line {line}: empty {field} field")]
    EmptyField { line: usize, field: &'static str },
}

impl CorpusError {
    pub fn line(&self) -> usize {
        match self {
            CorpusError::BadDelimiterCount { line, .. }
            | CorpusError::DuplicateId { line, .. }
            | CorpusError::InvalidIpa { line, .. }
            | CorpusError::EmptyField { line, .. } => *line,
        }
    }
}

/// Parses metadata text. Empty lines are skipped.
pub fn parse_metadata(text: &str) -> Result<Vec<CorpusItem>, CorpusError> {
    let mut items = Vec::new();
    let mut seen: BTreeMap<String, usize> = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let raw = raw.trim_end_matches('\r');
        if raw.is_empty() {
            continue;
        }
        let found = raw.matches('|').count();
        if found != 2 {
            return Err(CorpusError::BadDelimiterCount { line, found });
        }
        let mut fields = raw.splitn(3, '|');
        let (id, hebrew, ipa) = (
            fields.next().unwrap_or_default(),
            fields.next().unwrap_or_default(),
            fields.next().unwrap_or_default(),
        );
        for (value, field) in [(id, "id"), (hebrew, "hebrew"), (ipa, "ipa")] {
            if value.trim().is_empty() {
                return Err(CorpusError::EmptyField { line, field });
            }
        }
        parse_phoneme_string(ipa, IpaGrammar::Any)
            .map_err(|source| CorpusError::InvalidIpa { line, source })?;
        if let Some(&first_line) = seen.get(id) {
            return Err(CorpusError::DuplicateId {
                line,
                id: String::from(id),
                first_line,
            });
        }
        seen.insert(String::from(id), line);
        items.push(CorpusItem {
            id: String::from(id),
            hebrew: String::from(hebrew),
            ipa: String::from(ipa),
            line,
        });
    }
    Ok(items)
}

pub fn write_metadata(items: &[CorpusItem]) -> String {
    let mut out = String::new();
    for item in items {
        out.push_str(&format!("{}|{}|{}\n", item.id, item.hebrew, item.ipa));
    }
    out
}

/// A fully marked input with its expected transcription.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GoldenExample {
    pub hebrew: &'static str,
    pub ipa: &'static str,
    pub convention: Convention,
    /// What the example illustrates.
    pub note: &'static str,
}

const fn golden(hebrew: &'static str, ipa: &'static str, note: &'static str) -> GoldenExample {
    GoldenExample {
        hebrew,
        ipa,
        convention: Convention::BROAD_SYLLABLE,
        note,
    }
}

static GOLDEN: &[GoldenExample] = &[
    golden("סֵ\u{5AB}פֶר", "ˈsefer", "ספר read as 'book'"),
    golden("סַפָּר", "saˈpar", "ספר read as 'barber'"),
    golden("סָפַר", "saˈfar", "ספר read as 'he counted'"),
    golden("סְפָר", "ˈsfar", "ספר read as 'suburb'"),
    golden("בִּ\u{5AB}ירָה", "ˈbira", "vocalized homograph: 'beer'"),
    golden(
        "בִּירָה",
        "biˈra",
        "vocalized homograph: 'capital city', unmarked final stress",
    ),
    golden("טְחִ\u{5AB}ינָה", "ˈtxina", "stress minimal pair: 'tahini'"),
    golden("טְחִינָה", "txiˈna", "stress minimal pair: 'grinding'"),
    golden(
        "בְּ\u{5BD}לוֹ\u{5AB}נְדוֹן",
        "beˈlondon",
        "vocal shva: 'in London'",
    ),
    golden("בְּלוֹנְדִ\u{5AB}ינִי", "blonˈdini", "silent shva: 'blonde'"),
    golden(
        "פִּינְגְּוִין",
        "ˈpingwin",
        "loanword /w/ from the lexicon: 'penguin'",
    ),
    golden(
        "יִשָּׂשכָר",
        "jisaˈxar",
        "irregular spelling from the lexicon: 'Issachar'",
    ),
    golden("לֶ\u{5AB}חֶם", "ˈlexem", "stress mark: 'bread'"),
    golden("מְ\u{5BD}תִיחָה", "metiˈxa", "vocal shva mark: 'stretch'"),
    golden("הַ\u{5C0}קּוֹד", "haˈkod", "prefix boundary: 'the code'"),
    golden("בּוֹ\u{5AB}קֶר טוֹב", "ˈboker ˈtov", "phrase: 'good morning'"),
    golden("רוּחַ", "ˈruax", "furtive patah, stress before the syllable"),
    GoldenExample {
        hebrew: "רוּחַ",
        ipa: "ʁˈuaχ",
        convention: Convention::NARROW_VOWEL,
        note: "furtive patah, narrow symbols, stress before the vowel",
    },
    golden("סִוּוּג", "siˈvug", "consonantal vav followed by shuruk"),
];

pub fn golden_examples() -> &'static [GoldenExample] {
    GOLDEN
}

/// Words stressed before the last syllable: (marked spelling, IPA).
static NON_FINAL: &[(&str, &str)] = &[
    ("לֶ\u{5AB}חֶם", "ˈlexem"),
    ("סֵ\u{5AB}פֶר", "ˈsefer"),
    ("בּוֹ\u{5AB}קֶר", "ˈboker"),
    ("יֶ\u{5AB}לֶד", "ˈjeled"),
    ("בַּ\u{5AB}יִת", "ˈbajit"),
    ("חֶ\u{5AB}דֶר", "ˈxeder"),
    ("שֶׁ\u{5AB}מֶשׁ", "ˈʃemeʃ"),
    ("כֶּ\u{5AB}לֶב", "ˈkelev"),
    ("עֶ\u{5AB}רֶב", "ˈʔerev"),
    ("מֶ\u{5AB}לֶךְ", "ˈmelex"),
    ("אֹ\u{5AB}זֶן", "ˈʔozen"),
    ("סַ\u{5AB}בְתָּא", "ˈsavta"),
    ("אִ\u{5AB}מָּא", "ˈʔima"),
    ("אַ\u{5AB}בָּא", "ˈʔaba"),
    ("לַ\u{5AB}יְלָה", "ˈlajla"),
    ("בִּ\u{5AB}ירָה", "ˈbira"),
    ("טְחִ\u{5AB}ינָה", "ˈtxina"),
];

/// Words with final stress, which needs no mark.
static FINAL: &[(&str, &str)] = &[
    ("טוֹב", "ˈtov"),
    ("שָׁלוֹם", "ʃaˈlom"),
    ("תּוֹדָה", "toˈda"),
    ("חַלּוֹן", "xaˈlon"),
    ("בִּירָה", "biˈra"),
];

/// A marked phrase and its reference transcription.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkedPhrase {
    pub id: String,
    pub marked: String,
    pub ipa: String,
}

/// 50 two-word phrases, each opening with a non-final-stress word.
pub fn stress_phrase_corpus() -> Vec<MarkedPhrase> {
    (0..50)
        .map(|i| {
            // Distinct pairs for i < 85: the pool sizes are coprime.
            let (a, a_ipa) = NON_FINAL[i % NON_FINAL.len()];
            let (b, b_ipa) = FINAL[i % FINAL.len()];
            MarkedPhrase {
                id: format!("phrase{:02}", i + 1),
                marked: format!("{a} {b}"),
                ipa: format!("{a_ipa} {b_ipa}"),
            }
        })
        .collect()
}

/// Unvocalized Hebrew version of the North Wind and the Sun fable.
pub static NORTH_WIND: &str = include_str!("../data/north_wind.txt");
