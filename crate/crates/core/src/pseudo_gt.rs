//! Turning morphological hints into enhanced marks, and the
//! frequency-sorted correction workflow.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::g2p::{vowel_clusters, G2pError};
use crate::text::{
    normalize, parse_word, serialize, tokenize, Letter, MarkKind, SegmentKind, Word,
};

/// Vocal-shva rules. Each can be switched off on its own.
///
/// All rules read only the presence of plain shva and the other vowel marks,
/// never the vocal-shva mark itself, so applying them twice changes nothing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ShvaRules {
    /// Second of two adjacent shvas inside the word.
    pub second_of_pair: bool,
    /// Shva on a letter repeating the previous letter, or on a letter with
    /// dagesh forte (dagesh right after a full vowel).
    pub geminate: bool,
    /// Shva on a one-letter clitic ב כ ל ו when the next letter has shva too.
    pub clitic_before_shva: bool,
}

impl Default for ShvaRules {
    fn default() -> Self {
        ShvaRules {
            second_of_pair: true,
            geminate: true,
            clitic_before_shva: true,
        }
    }
}

fn has_full_vowel(c: &crate::text::GraphemeCluster) -> bool {
    matches!(
        c.vowel(),
        Some(
            MarkKind::Hiriq
                | MarkKind::Tsere
                | MarkKind::Segol
                | MarkKind::Patah
                | MarkKind::Qamats
                | MarkKind::Holam
                | MarkKind::HolamHaserForVav
                | MarkKind::Qubuts
        )
    )
}

/// Adds the vocal-shva mark where the rules call for it. Never removes marks.
pub fn apply_shva_rules(word: &Word, rules: &ShvaRules) -> Word {
    let n = word.clusters.len();
    let shva = |i: usize| word.clusters[i].has(MarkKind::Shva);
    let mut out = word.clone();
    for i in 0..n {
        if !shva(i) || i + 1 == n {
            continue;
        }
        let cur = &word.clusters[i];
        let vocal = if i == 0 {
            rules.clitic_before_shva
                && matches!(
                    cur.letter,
                    Letter::Bet | Letter::Kaf | Letter::Lamed | Letter::Vav
                )
                && shva(1)
        } else {
            let prev = &word.clusters[i - 1];
            let pair = rules.second_of_pair && i >= 2 && shva(i - 1);
            let geminate = rules.geminate
                && (prev.letter.base() == cur.letter.base()
                    || (cur.has(MarkKind::Dagesh) && has_full_vowel(prev)));
            pair || geminate
        };
        if vocal {
            out.clusters[i].marks.insert(MarkKind::VocalShva);
        }
    }
    out
}

/// Hints for one word from an external morphological analysis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnnotationRecord {
    pub token: Word,
    /// Number of prefix letters.
    pub prefix_len: usize,
    /// 1-based syllable index counted from the end of the word.
    pub stress_syllable: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PseudoGtError {
    #[error("stress syllable {syllable} out of range for a word with {syllables} syllables")]
    SyllableOutOfRange { syllable: usize, syllables: usize },
    #[error("word already stressed on cluster {existing}, hint points at cluster {requested}")]
    StressConflict { existing: usize, requested: usize },
    #[error("prefix length {prefix_len} leaves no stem in a {letters}-letter word")]
    PrefixOutOfRange { prefix_len: usize, letters: usize },
    #[error(transparent)]
    G2p(#[from] G2pError),
}

/// Marks a non-final stressed syllable. Final stress stays unmarked.
pub fn mark_stress(record: &AnnotationRecord) -> Result<Word, PseudoGtError> {
    let word = &record.token;
    let Some(syllable) = record.stress_syllable else {
        return Ok(word.clone());
    };
    let nuclei = vowel_clusters(word)?;
    if syllable == 0 || syllable > nuclei.len() {
        return Err(PseudoGtError::SyllableOutOfRange {
            syllable,
            syllables: nuclei.len(),
        });
    }
    if syllable == 1 {
        return Ok(word.clone());
    }
    let target = nuclei[nuclei.len() - syllable];
    match word.stressed_cluster() {
        Some(existing) if existing == target => Ok(word.clone()),
        Some(existing) => Err(PseudoGtError::StressConflict {
            existing,
            requested: target,
        }),
        None => {
            let mut out = word.clone();
            out.clusters[target].marks.insert(MarkKind::Stress);
            Ok(out)
        }
    }
}

/// Sets the prefix boundary after the first `prefix_len` letters.
pub fn mark_prefixes(record: &AnnotationRecord) -> Result<Word, PseudoGtError> {
    let word = &record.token;
    let letters = word.clusters.len();
    if record.prefix_len == 0 {
        return Ok(word.clone());
    }
    if record.prefix_len >= letters {
        return Err(PseudoGtError::PrefixOutOfRange {
            prefix_len: record.prefix_len,
            letters,
        });
    }
    let mut out = word.clone();
    out.clusters[record.prefix_len - 1].prefix_boundary_after = true;
    Ok(out)
}

/// Prefix boundary, vocal shva, then stress.
pub fn annotate_record(
    record: &AnnotationRecord,
    rules: &ShvaRules,
) -> Result<Word, PseudoGtError> {
    let with_prefix = mark_prefixes(record)?;
    let with_shva = apply_shva_rules(&with_prefix, rules);
    mark_stress(&AnnotationRecord {
        token: with_shva,
        prefix_len: record.prefix_len,
        stress_syllable: record.stress_syllable,
    })
}

/// Per-token hint as it arrives from the analyzer dump.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TokenHint {
    pub voc: String,
    pub prefix_len: usize,
    pub stress_syllable: Option<usize>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AnnotatedLine {
    pub text: String,
    pub diagnostics: Vec<String>,
}

fn letters_of(s: &str) -> String {
    s.chars()
        .filter(|c| Letter::from_char(*c).is_some())
        .collect()
}

/// Annotates one line from its token hints.
///
/// When the hinted tokens spell the same words as the line, each word of the
/// line is replaced in place and punctuation is kept. Otherwise the annotated
/// tokens are joined by spaces. Tokens that cannot be annotated fall back to
/// their letters alone, so the output always validates.
pub fn annotate_line(text: &str, hints: &[TokenHint], rules: &ShvaRules) -> AnnotatedLine {
    let mut diagnostics = Vec::new();
    let mut words = Vec::with_capacity(hints.len());
    for (i, hint) in hints.iter().enumerate() {
        let voc = normalize(&hint.voc);
        let annotated = parse_word(&voc)
            .map_err(|e| e.to_string())
            .and_then(|token| {
                annotate_record(
                    &AnnotationRecord {
                        token,
                        prefix_len: hint.prefix_len,
                        stress_syllable: hint.stress_syllable,
                    },
                    rules,
                )
                .map_err(|e| e.to_string())
            });
        match annotated {
            Ok(w) => words.push(serialize(&w)),
            Err(e) => {
                diagnostics.push(format!("token {i} {voc:?}: {e}"));
                words.push(letters_of(&voc));
            }
        }
    }

    let normalized = normalize(text);
    let doc = tokenize(&normalized);
    let aligned = doc.words().count() == words.len()
        && doc
            .words()
            .zip(&words)
            .all(|(seg, w)| letters_of(seg.text) == letters_of(w));
    let text = if aligned {
        let mut words = words.into_iter();
        doc.segments
            .iter()
            .map(|seg| match seg.kind {
                SegmentKind::Word => words.next().unwrap_or_default(),
                SegmentKind::Passthrough => seg.text.to_string(),
            })
            .collect()
    } else {
        if !hints.is_empty() || doc.words().next().is_some() {
            diagnostics
                .push("tokens do not spell the line's words; emitting tokens only".to_string());
        }
        words.join(" ")
    };
    AnnotatedLine { text, diagnostics }
}

/// Distinct word types with counts, most frequent first, ties by surface.
pub fn build_review_list<'a, I>(lines: I) -> Vec<(String, usize)>
where
    I: IntoIterator<Item = &'a str>,
{
    let mut counts: BTreeMap<String, usize> = BTreeMap::new();
    for line in lines {
        let normalized = normalize(line);
        for seg in tokenize(&normalized).words() {
            *counts.entry(seg.text.to_string()).or_default() += 1;
        }
    }
    let mut out: Vec<(String, usize)> = counts.into_iter().collect();
    out.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    out
}

pub fn review_list_tsv(list: &[(String, usize)]) -> String {
    let mut out = String::new();
    for (surface, count) in list {
        out.push_str(surface);
        out.push('\t');
        out.push_str(&count.to_string());
        out.push('\n');
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("corrections line {line}: {reason}")]
pub struct InvalidCorrection {
    pub line: usize,
    pub reason: String,
}

/// Surface word type to corrected form, in file order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CorrectionFile {
    entries: Vec<(String, String)>,
    index: BTreeMap<String, usize>,
}

fn single_word(s: &str) -> Result<Word, String> {
    let doc = tokenize(s);
    match doc.segments.as_slice() {
        [seg] if seg.kind == SegmentKind::Word => parse_word(s).map_err(|e| e.to_string()),
        _ => Err("not a single Hebrew word".to_string()),
    }
}

impl CorrectionFile {
    /// TSV `surface<TAB>corrected`; `#` comments and blank lines ignored.
    pub fn parse_tsv(text: &str) -> Result<Self, InvalidCorrection> {
        let mut file = CorrectionFile::default();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let raw = raw.trim_end_matches('\r');
            if raw.trim().is_empty() || raw.starts_with('#') {
                continue;
            }
            let fail = |reason: String| InvalidCorrection { line, reason };
            let mut fields = raw.split('\t');
            let (Some(surface), Some(corrected), None) =
                (fields.next(), fields.next(), fields.next())
            else {
                return Err(fail("expected two tab-separated fields".to_string()));
            };
            let surface = normalize(surface.trim());
            let corrected = normalize(corrected.trim());
            single_word(&surface).map_err(|e| fail(format!("surface: {e}")))?;
            single_word(&corrected).map_err(|e| fail(format!("correction: {e}")))?;
            if file.index.contains_key(&surface) {
                return Err(fail(format!("duplicate surface {surface}")));
            }
            file.index.insert(surface.clone(), file.entries.len());
            file.entries.push((surface, corrected));
        }
        Ok(file)
    }

    pub fn get(&self, surface: &str) -> Option<&str> {
        self.index.get(surface).map(|&i| self.entries[i].1.as_str())
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Replaces every word whose surface has a correction. Returns the corrected
/// line and the number of replacements.
pub fn correct_line(line: &str, corrections: &CorrectionFile) -> (String, usize) {
    let normalized = normalize(line);
    let doc = tokenize(&normalized);
    let mut count = 0;
    let mut out = String::with_capacity(normalized.len());
    for seg in &doc.segments {
        match (seg.kind, corrections.get(seg.text)) {
            (SegmentKind::Word, Some(fixed)) => {
                count += 1;
                out.push_str(fixed);
            }
            _ => out.push_str(seg.text),
        }
    }
    (out, count)
}

pub fn apply_corrections<'a, I>(lines: I, corrections: &CorrectionFile) -> (Vec<String>, usize)
where
    I: IntoIterator<Item = &'a str>,
{
    let mut total = 0;
    let out = lines
        .into_iter()
        .map(|l| {
            let (fixed, n) = correct_line(l, corrections);
            total += n;
            fixed
        })
        .collect();
    (out, total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::{STRESS, VOCAL_SHVA};
    use alloc::vec;

    fn word(s: &str) -> Word {
        parse_word(&normalize(s)).unwrap()
    }

    fn rec(s: &str, prefix_len: usize, stress_syllable: Option<usize>) -> AnnotationRecord {
        AnnotationRecord {
            token: word(s),
            prefix_len,
            stress_syllable,
        }
    }

    #[test]
    fn stress_marking() {
        assert_eq!(mark_stress(&rec("בִּירָה", 0, Some(1))).unwrap(), word("בִּירָה"));
        let lexem = mark_stress(&rec("לֶחֶם", 0, Some(2))).unwrap();
        assert_eq!(lexem.stressed_cluster(), Some(0));
        assert_eq!(
            mark_stress(&rec("לֶחֶם", 0, Some(5))),
            Err(PseudoGtError::SyllableOutOfRange {
                syllable: 5,
                syllables: 2
            })
        );
        let conflict = rec(&alloc::format!("לֶחֶ{STRESS}ם"), 0, Some(2));
        assert!(matches!(
            mark_stress(&conflict),
            Err(PseudoGtError::StressConflict { .. })
        ));
    }

    #[test]
    fn prefix_marking() {
        assert_eq!(mark_prefixes(&rec("הַקּוֹד", 0, None)).unwrap(), word("הַקּוֹד"));
        let one = mark_prefixes(&rec("הַקּוֹד", 1, None)).unwrap();
        assert_eq!(one.stem_start(), 1);
        let two = mark_prefixes(&rec("וְהַקּוֹד", 2, None)).unwrap();
        assert!(two.clusters[1].prefix_boundary_after);
        assert_eq!(two.stem_start(), 2);
        assert!(mark_prefixes(&rec("הַ", 1, None)).is_err());
    }

    #[test]
    fn shva_rules() {
        let rules = ShvaRules::default();
        // Dagesh forte after a full vowel.
        let dibru = apply_shva_rules(&word("דִּבְּרוּ"), &rules);
        assert!(dibru.clusters[1].has(MarkKind::VocalShva));
        // Word-initial shva before a plain letter stays silent.
        let blondini = word("בְּלוֹנְדִינִי");
        assert_eq!(apply_shva_rules(&blondini, &rules), blondini);
        // Second of a medial pair.
        let yishmeru = apply_shva_rules(&word("יִשְׁמְרוּ"), &rules);
        assert!(!yishmeru.clusters[1].has(MarkKind::VocalShva));
        assert!(yishmeru.clusters[2].has(MarkKind::VocalShva));
        // Clitic before shva.
        let bishvil = apply_shva_rules(&word("בְּשְׁבִיל"), &rules);
        assert!(bishvil.clusters[0].has(MarkKind::VocalShva));
        // No shva, no change; final shva stays silent.
        assert_eq!(apply_shva_rules(&word("טוֹב"), &rules), word("טוֹב"));
        let melekh = word("מֶלֶךְ");
        assert_eq!(apply_shva_rules(&melekh, &rules), melekh);
        let off = ShvaRules {
            geminate: false,
            ..rules
        };
        assert!(!apply_shva_rules(&word("דִּבְּרוּ"), &off).clusters[1].has(MarkKind::VocalShva));
    }

    #[test]
    fn annotate_keeps_punctuation_when_aligned() {
        let hints = vec![
            TokenHint {
                voc: "הַקּוֹד".into(),
                prefix_len: 1,
                stress_syllable: Some(1),
            },
            TokenHint {
                voc: "לֶחֶם".into(),
                prefix_len: 0,
                stress_syllable: Some(2),
            },
        ];
        let out = annotate_line("הקוד, לחם.", &hints, &ShvaRules::default());
        assert!(out.diagnostics.is_empty(), "{:?}", out.diagnostics);
        assert_eq!(out.text, normalize("הַ\u{5C0}קּוֹד, לֶ\u{5AB}חֶם."));
    }

    #[test]
    fn annotate_misaligned_and_bad_tokens() {
        let hints = vec![TokenHint {
            voc: "בַָּ".into(),
            prefix_len: 0,
            stress_syllable: None,
        }];
        let out = annotate_line("שלום", &hints, &ShvaRules::default());
        assert_eq!(out.text, "ב");
        assert_eq!(out.diagnostics.len(), 2);
    }

    #[test]
    fn review_list_order() {
        let lines = ["בַּיִת", "בַּיִת בַּיִת"];
        assert_eq!(build_review_list(lines), vec![(normalize("בַּיִת"), 3)]);
        let list = build_review_list(["ב ב ב א", "ג"]);
        assert_eq!(
            list,
            vec![("ב".into(), 3), ("א".into(), 1), ("ג".into(), 1)]
        );
        assert_eq!(review_list_tsv(&list[..1]), "ב\t3\n");
    }

    #[test]
    fn corrections() {
        let empty = CorrectionFile::default();
        let (same, n) = apply_corrections(["שלום עולם"], &empty);
        assert_eq!((same, n), (vec!["שלום עולם".to_string()], 0));

        let file =
            CorrectionFile::parse_tsv(&alloc::format!("# c\nבלונדון\tבְּ{VOCAL_SHVA}לוֹנְדּוֹן\n"))
                .unwrap();
        let (fixed, n) = apply_corrections(["בלונדון, בלונדון", "ב בלונדון"], &file);
        assert_eq!(n, 3);
        assert!(fixed[0].contains(VOCAL_SHVA));
        let after = build_review_list(fixed.iter().map(String::as_str));
        assert_eq!(after[0].1, 3);

        assert!(CorrectionFile::parse_tsv("א\tבַָּ\n").is_err());
        assert_eq!(CorrectionFile::parse_tsv("א\tב\nא\tג").unwrap_err().line, 2);
        assert_eq!(CorrectionFile::parse_tsv("א").unwrap_err().line, 1);
    }
}
