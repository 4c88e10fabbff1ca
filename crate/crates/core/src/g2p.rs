//! Word and text transcription.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Range;

use crate::lexicon::{stem_key, Lexicon};
use crate::phoneme::{Convention, Phoneme, WordTranscription};
use crate::rules::{qamats_qatan_positions, Glyph, Lookahead, RuleTable, State};
use crate::text::{normalize, parse_word, tokenize, Document, Word, WordError};

/// One phoneme together with the cluster that produced it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Emission {
    pub phoneme: Phoneme,
    pub cluster: usize,
    /// A vowel realized before its consonant (furtive patah).
    pub furtive: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum G2pError {
    #[error("cluster {cluster} ({letter}) has no applicable rule: {reason}")]
    UnmappableCluster {
        cluster: usize,
        letter: char,
        reason: crate::rules::SelectError,
    },
}

/// Reduces a word to transducer input, resolving qamats qatan from the
/// exception list.
pub fn glyphs(word: &Word) -> Vec<Glyph> {
    let stem_start = word.stem_start();
    let qatan = qamats_qatan_positions(&stem_key(word)).unwrap_or_default();
    word.clusters
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let is_qatan = i >= stem_start && qatan.contains(&(i - stem_start));
            Glyph::from_cluster(c, is_qatan)
        })
        .collect()
}

/// Runs the transducer left to right over a word's glyphs.
pub fn transduce(glyphs: &[Glyph], rules: &RuleTable) -> Result<Vec<Emission>, G2pError> {
    let mut state = State::Start;
    let mut out = Vec::with_capacity(glyphs.len() * 2);
    let mut phones = Vec::with_capacity(2);
    for (i, g) in glyphs.iter().enumerate() {
        let ahead = Lookahead {
            next: glyphs.get(i + 1).copied(),
            next2: glyphs.get(i + 2).copied(),
        };
        let step = rules
            .step(g, state, &ahead)
            .map_err(|reason| G2pError::UnmappableCluster {
                cluster: i,
                letter: g.letter.as_char(),
                reason,
            })?;
        phones.clear();
        phones.extend(step.iter().map(|(p, _)| *p));
        state = state.after(&phones);
        out.extend(step.into_iter().map(|(phoneme, furtive)| Emission {
            phoneme,
            cluster: i,
            furtive,
        }));
    }
    Ok(out)
}

/// Index of the stressed vowel among `emissions`.
///
/// An explicit stress mark selects the first vowel its cluster produced,
/// falling back to the next later vowel, then the last earlier one. Without
/// a mark the last vowel that is not furtive is stressed.
fn stressed_emission(emissions: &[Emission], stressed_cluster: Option<usize>) -> Option<usize> {
    let vowels = || {
        emissions
            .iter()
            .enumerate()
            .filter(|(_, e)| e.phoneme.is_vowel())
    };
    match stressed_cluster {
        Some(c) => vowels()
            .find(|(_, e)| e.cluster >= c)
            .or_else(|| vowels().rfind(|(_, e)| e.cluster < c))
            .map(|(i, _)| i),
        None => vowels()
            .rfind(|(_, e)| !e.furtive)
            .or_else(|| vowels().next_back())
            .map(|(i, _)| i),
    }
}

/// Cluster index of every syllable nucleus, in order. Furtive vowels are
/// not nuclei.
pub fn vowel_clusters(word: &Word) -> Result<Vec<usize>, G2pError> {
    let emissions = transduce(&glyphs(word), RuleTable::builtin())?;
    Ok(emissions
        .iter()
        .filter(|e| e.phoneme.is_vowel() && !e.furtive)
        .map(|e| e.cluster)
        .collect())
}

/// Transcribes a word: lexicon first on the prefix-stripped stem, rules
/// otherwise.
pub fn transcribe(word: &Word, lexicon: &Lexicon) -> Result<WordTranscription, G2pError> {
    let emissions = transduce(&glyphs(word), RuleTable::builtin())?;
    let stem_start = word.stem_start();
    if let Some(entry) = lexicon.lookup_stem(word) {
        let mut phonemes: Vec<Phoneme> = emissions
            .iter()
            .filter(|e| e.cluster < stem_start)
            .map(|e| e.phoneme)
            .collect();
        let offset = phonemes.len();
        let stem = entry.transcription();
        phonemes.extend_from_slice(&stem.phonemes);
        let stressed_vowel = stem
            .stressed_vowel
            .map(|v| v + offset)
            .or_else(|| phonemes.iter().rposition(|p| p.is_vowel()));
        return Ok(WordTranscription {
            phonemes,
            stressed_vowel,
        });
    }
    let stressed_vowel = stressed_emission(&emissions, word.stressed_cluster());
    Ok(WordTranscription {
        phonemes: emissions.iter().map(|e| e.phoneme).collect(),
        stressed_vowel,
    })
}

pub fn phonemize_word(
    word: &Word,
    convention: Convention,
    lexicon: &Lexicon,
) -> Result<String, G2pError> {
    Ok(transcribe(word, lexicon)?.render(convention))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DiagnosticKind {
    InvalidWord(WordError),
    Unmappable(G2pError),
}

/// A word skipped during text phonemization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    /// Byte span in the phonemized (normalized) text.
    pub span: Range<usize>,
    pub word: String,
    pub kind: DiagnosticKind,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "bytes {}..{} {:?}: ",
            self.span.start, self.span.end, self.word
        )?;
        match &self.kind {
            DiagnosticKind::InvalidWord(e) => write!(f, "{e}"),
            DiagnosticKind::Unmappable(e) => write!(f, "{e}"),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Phonemized {
    pub ipa: String,
    pub diagnostics: Vec<Diagnostic>,
}

/// Phonemizes every word of a tokenized document. Words are joined by single
/// spaces; words that fail are left out and reported.
pub fn phonemize_document(
    doc: &Document<'_>,
    convention: Convention,
    lexicon: &Lexicon,
) -> Phonemized {
    let mut out = Phonemized::default();
    for seg in doc.words() {
        let result = parse_word(seg.text)
            .map_err(DiagnosticKind::InvalidWord)
            .and_then(|w| {
                phonemize_word(&w, convention, lexicon).map_err(DiagnosticKind::Unmappable)
            });
        match result {
            Ok(ipa) if ipa.is_empty() => {}
            Ok(ipa) => {
                if !out.ipa.is_empty() {
                    out.ipa.push(' ');
                }
                out.ipa.push_str(&ipa);
            }
            Err(kind) => out.diagnostics.push(Diagnostic {
                span: seg.span.clone(),
                word: String::from(seg.text),
                kind,
            }),
        }
    }
    out
}

/// Normalizes, tokenizes and phonemizes one line of text.
pub fn phonemize_text(text: &str, convention: Convention, lexicon: &Lexicon) -> Phonemized {
    let normalized = normalize(text);
    phonemize_document(&tokenize(&normalized), convention, lexicon)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::{PREFIX_SEP, STRESS, VOCAL_SHVA};
    use alloc::format;

    fn ipa(s: &str) -> String {
        let p = phonemize_text(s, Convention::BROAD_SYLLABLE, &Lexicon::new());
        assert!(p.diagnostics.is_empty(), "{:?}", p.diagnostics);
        p.ipa
    }

    #[test]
    fn stress_default_and_marked() {
        // bira
        let bira = "בִּירָה";
        assert_eq!(ipa(bira), "biˈra");
        assert_eq!(ipa(&format!("בִּ{STRESS}ירָה")), "ˈbira");
    }

    #[test]
    fn lexem() {
        assert_eq!(ipa("לֶ\u{5AB}חֶם"), "ˈlexem");
    }

    #[test]
    fn vocal_shva() {
        assert_eq!(ipa(&format!("בְּ{VOCAL_SHVA}לוֹ{STRESS}נְדוֹן")), "beˈlondon");
        assert_eq!(ipa("בְּלוֹנְדִּ\u{5AB}ינִי"), "blonˈdini");
    }

    #[test]
    fn furtive_patah() {
        assert_eq!(ipa("רוּחַ"), "ˈruax");
        let p = phonemize_text("רוּחַ", Convention::NARROW_VOWEL, &Lexicon::new());
        assert_eq!(p.ipa, "ʁˈuaχ");
    }

    #[test]
    fn vav_readings() {
        assert_eq!(ipa("סִוּוּג"), "siˈvug");
        assert_eq!(ipa("טוֹב"), "ˈtov");
        assert_eq!(ipa("וְ"), "v");
    }

    #[test]
    fn prefix_boundary_is_transparent_to_rules() {
        assert_eq!(ipa(&format!("הַ{PREFIX_SEP}קּוֹד")), "haˈkod");
    }

    #[test]
    fn qamats_qatan_from_list() {
        assert_eq!(ipa("כָּל"), "ˈkol");
        assert_eq!(ipa("חָכְמָה"), "xoxˈma");
    }

    #[test]
    fn silent_letters() {
        assert_eq!(ipa("הוּא"), "ˈhu");
        assert_eq!(ipa("הִיא"), "ˈhi");
        // A word of silent letters only contributes nothing.
        assert_eq!(ipa("ה"), "");
    }

    #[test]
    fn invalid_word_is_reported_and_skipped() {
        let p = phonemize_text("טוֹב בַָּ טוֹב", Convention::BROAD_SYLLABLE, &Lexicon::new());
        assert_eq!(p.ipa, "ˈtov ˈtov");
        assert_eq!(p.diagnostics.len(), 1);
    }

    #[test]
    fn empty_text() {
        assert_eq!(ipa(""), "");
    }

    #[test]
    fn stress_on_vowelless_cluster_moves_forward() {
        assert_eq!(ipa("בְּ\u{5AB}רָכָה"), "ˈbraxa");
        // Stress on a silent final he falls back to the last vowel.
        assert_eq!(ipa("בִּירָה\u{5AB}"), "biˈra");
    }
}
