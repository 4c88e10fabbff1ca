//! Unicode model of Hebrew text.
//!
//! Text is first brought into a canonical form by [`normalize`], split into
//! word and passthrough segments by [`tokenize`], and each word is parsed into
//! [`GraphemeCluster`]s by [`parse_word`]. A cluster is one base letter plus
//! the standard nikud and enhanced marks attached to it.
//!
//! Canonical mark order inside a cluster is: geresh, dagesh, shin/sin dot,
//! vowel, stress, vocal shva, and finally the prefix separator.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Range;

use unicode_normalization::char::decompose_compatible;
use unicode_normalization::UnicodeNormalization;

/// Superscript stress mark (HEBREW ACCENT OLE).
pub const STRESS: char = '\u{05AB}';
/// Subscript line marking a pronounced shva (HEBREW POINT METEG).
pub const VOCAL_SHVA: char = '\u{05BD}';
/// Vertical bar closing a cliticized prefix (HEBREW PUNCTUATION PASEQ).
pub const PREFIX_SEP: char = '\u{05C0}';
/// Loan-digraph geresh (HEBREW PUNCTUATION GERESH).
pub const GERESH: char = '\u{05F3}';

const QAMATS_QATAN: char = '\u{05C7}';
const QAMATS: char = '\u{05B8}';
const MAQAF: char = '\u{05BE}';

/// One of the diacritic marks a cluster can carry.
///
/// The declaration order is the canonical serialization order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MarkKind {
    Dagesh,
    ShinDot,
    SinDot,
    Shva,
    HatafSegol,
    HatafPatah,
    HatafQamats,
    Hiriq,
    Tsere,
    Segol,
    Patah,
    Qamats,
    Holam,
    HolamHaserForVav,
    Qubuts,
    Stress,
    VocalShva,
    PrefixSep,
}

impl MarkKind {
    pub const ALL: [MarkKind; 18] = [
        MarkKind::Dagesh,
        MarkKind::ShinDot,
        MarkKind::SinDot,
        MarkKind::Shva,
        MarkKind::HatafSegol,
        MarkKind::HatafPatah,
        MarkKind::HatafQamats,
        MarkKind::Hiriq,
        MarkKind::Tsere,
        MarkKind::Segol,
        MarkKind::Patah,
        MarkKind::Qamats,
        MarkKind::Holam,
        MarkKind::HolamHaserForVav,
        MarkKind::Qubuts,
        MarkKind::Stress,
        MarkKind::VocalShva,
        MarkKind::PrefixSep,
    ];

    pub const fn codepoint(self) -> char {
        match self {
            MarkKind::Dagesh => '\u{05BC}',
            MarkKind::ShinDot => '\u{05C1}',
            MarkKind::SinDot => '\u{05C2}',
            MarkKind::Shva => '\u{05B0}',
            MarkKind::HatafSegol => '\u{05B1}',
            MarkKind::HatafPatah => '\u{05B2}',
            MarkKind::HatafQamats => '\u{05B3}',
            MarkKind::Hiriq => '\u{05B4}',
            MarkKind::Tsere => '\u{05B5}',
            MarkKind::Segol => '\u{05B6}',
            MarkKind::Patah => '\u{05B7}',
            MarkKind::Qamats => '\u{05B8}',
            MarkKind::Holam => '\u{05B9}',
            MarkKind::HolamHaserForVav => '\u{05BA}',
            MarkKind::Qubuts => '\u{05BB}',
            MarkKind::Stress => STRESS,
            MarkKind::VocalShva => VOCAL_SHVA,
            MarkKind::PrefixSep => PREFIX_SEP,
        }
    }

    pub fn from_codepoint(c: char) -> Option<MarkKind> {
        MarkKind::ALL.iter().copied().find(|m| m.codepoint() == c)
    }

    /// Vowel-class marks: at most one per cluster.
    pub const fn is_vowel(self) -> bool {
        matches!(
            self,
            MarkKind::Shva
                | MarkKind::HatafSegol
                | MarkKind::HatafPatah
                | MarkKind::HatafQamats
                | MarkKind::Hiriq
                | MarkKind::Tsere
                | MarkKind::Segol
                | MarkKind::Patah
                | MarkKind::Qamats
                | MarkKind::Holam
                | MarkKind::HolamHaserForVav
                | MarkKind::Qubuts
        )
    }

    pub const fn is_enhanced(self) -> bool {
        matches!(
            self,
            MarkKind::Stress | MarkKind::VocalShva | MarkKind::PrefixSep
        )
    }

    const fn rank(self) -> u8 {
        match self {
            MarkKind::Dagesh => 1,
            MarkKind::ShinDot | MarkKind::SinDot => 2,
            MarkKind::Stress => 4,
            MarkKind::VocalShva => 5,
            MarkKind::PrefixSep => 6,
            _ => 3,
        }
    }

    const fn bit(self) -> u32 {
        1 << (self as u32)
    }
}

/// The 27 Hebrew letterforms, final forms included.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[repr(u8)]
pub enum Letter {
    Alef = 0,
    Bet,
    Gimel,
    Dalet,
    He,
    Vav,
    Zayin,
    Het,
    Tet,
    Yod,
    FinalKaf,
    Kaf,
    Lamed,
    FinalMem,
    Mem,
    FinalNun,
    Nun,
    Samekh,
    Ayin,
    FinalPe,
    Pe,
    FinalTsadi,
    Tsadi,
    Qof,
    Resh,
    Shin,
    Tav,
}

impl Letter {
    pub const ALL: [Letter; 27] = [
        Letter::Alef,
        Letter::Bet,
        Letter::Gimel,
        Letter::Dalet,
        Letter::He,
        Letter::Vav,
        Letter::Zayin,
        Letter::Het,
        Letter::Tet,
        Letter::Yod,
        Letter::FinalKaf,
        Letter::Kaf,
        Letter::Lamed,
        Letter::FinalMem,
        Letter::Mem,
        Letter::FinalNun,
        Letter::Nun,
        Letter::Samekh,
        Letter::Ayin,
        Letter::FinalPe,
        Letter::Pe,
        Letter::FinalTsadi,
        Letter::Tsadi,
        Letter::Qof,
        Letter::Resh,
        Letter::Shin,
        Letter::Tav,
    ];

    pub fn from_char(c: char) -> Option<Letter> {
        let cp = c as u32;
        if (0x05D0..=0x05EA).contains(&cp) {
            Some(Letter::ALL[(cp - 0x05D0) as usize])
        } else {
            None
        }
    }

    pub fn as_char(self) -> char {
        char::from_u32(0x05D0 + self as u32).unwrap_or('\u{05D0}')
    }

    /// Non-final form of the letter (identity for non-final letters).
    pub fn base(self) -> Letter {
        match self {
            Letter::FinalKaf => Letter::Kaf,
            Letter::FinalMem => Letter::Mem,
            Letter::FinalNun => Letter::Nun,
            Letter::FinalPe => Letter::Pe,
            Letter::FinalTsadi => Letter::Tsadi,
            other => other,
        }
    }

    /// Letters that form a loan digraph with a following geresh.
    pub fn takes_geresh(self) -> bool {
        matches!(
            self,
            Letter::Gimel | Letter::Zayin | Letter::Tsadi | Letter::FinalTsadi | Letter::Tav
        )
    }
}

/// Small bitset of [`MarkKind`]s. Iteration follows canonical order.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct MarkSet(u32);

impl MarkSet {
    pub const fn empty() -> Self {
        MarkSet(0)
    }

    pub const fn contains(self, mark: MarkKind) -> bool {
        self.0 & mark.bit() != 0
    }

    pub fn insert(&mut self, mark: MarkKind) -> bool {
        let fresh = !self.contains(mark);
        self.0 |= mark.bit();
        fresh
    }

    pub fn remove(&mut self, mark: MarkKind) -> bool {
        let present = self.contains(mark);
        self.0 &= !mark.bit();
        present
    }

    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn iter(self) -> impl Iterator<Item = MarkKind> {
        MarkKind::ALL.into_iter().filter(move |m| self.contains(*m))
    }

    /// The vowel-class mark, if any.
    pub fn vowel(self) -> Option<MarkKind> {
        self.iter().find(|m| m.is_vowel())
    }

    /// True when every mark of `other` is also in `self`.
    pub fn is_superset(self, other: MarkSet) -> bool {
        self.0 & other.0 == other.0
    }
}

impl fmt::Debug for MarkSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<MarkKind> for MarkSet {
    fn from_iter<I: IntoIterator<Item = MarkKind>>(iter: I) -> Self {
        let mut set = MarkSet::empty();
        for m in iter {
            set.insert(m);
        }
        set
    }
}

/// A base letter with its attached marks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GraphemeCluster {
    pub letter: Letter,
    pub geresh: bool,
    /// Never contains [`MarkKind::PrefixSep`]; see `prefix_boundary_after`.
    pub marks: MarkSet,
    pub prefix_boundary_after: bool,
}

impl GraphemeCluster {
    pub fn new(letter: Letter) -> Self {
        GraphemeCluster {
            letter,
            geresh: false,
            marks: MarkSet::empty(),
            prefix_boundary_after: false,
        }
    }

    pub fn with(mut self, mark: MarkKind) -> Self {
        if mark == MarkKind::PrefixSep {
            self.prefix_boundary_after = true;
        } else {
            self.marks.insert(mark);
        }
        self
    }

    pub fn has(&self, mark: MarkKind) -> bool {
        match mark {
            MarkKind::PrefixSep => self.prefix_boundary_after,
            m => self.marks.contains(m),
        }
    }

    pub fn vowel(&self) -> Option<MarkKind> {
        self.marks.vowel()
    }

    fn check(&self, index: usize) -> Result<(), WordError> {
        let conflict = |reason| {
            Err(WordError::MarkConflict {
                cluster: index,
                reason,
            })
        };
        if self.marks.contains(MarkKind::PrefixSep) {
            return conflict("prefix separator stored as a mark");
        }
        let shin_dot = self.marks.contains(MarkKind::ShinDot);
        let sin_dot = self.marks.contains(MarkKind::SinDot);
        if shin_dot && sin_dot {
            return conflict("shin dot and sin dot on one letter");
        }
        if (shin_dot || sin_dot) && self.letter != Letter::Shin {
            return conflict("shin/sin dot on a letter other than shin");
        }
        if self.marks.contains(MarkKind::VocalShva) && !self.marks.contains(MarkKind::Shva) {
            return conflict("vocal shva mark without shva");
        }
        if self.geresh && !self.letter.takes_geresh() {
            return conflict("geresh on a letter without a loan digraph");
        }
        if self.marks.iter().filter(|m| m.is_vowel()).count() > 1 {
            return conflict("more than one vowel mark");
        }
        Ok(())
    }

    fn write_to(&self, out: &mut String) {
        out.push(self.letter.as_char());
        if self.geresh {
            out.push(GERESH);
        }
        for m in self.marks.iter() {
            out.push(m.codepoint());
        }
        if self.prefix_boundary_after {
            out.push(PREFIX_SEP);
        }
    }
}

/// A parsed Hebrew word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Word {
    pub clusters: Vec<GraphemeCluster>,
    /// Byte range of the word in the text it was tokenized from.
    pub raw_span: Range<usize>,
}

impl Word {
    /// Builds a word from clusters, checking every cluster and word invariant.
    pub fn new(clusters: Vec<GraphemeCluster>, raw_span: Range<usize>) -> Result<Word, WordError> {
        let word = Word { clusters, raw_span };
        word.validate()?;
        Ok(word)
    }

    pub fn validate(&self) -> Result<(), WordError> {
        let mut stressed = None;
        for (i, c) in self.clusters.iter().enumerate() {
            c.check(i)?;
            if c.marks.contains(MarkKind::Stress) {
                if stressed.is_some() {
                    return Err(WordError::DuplicateStress { cluster: i });
                }
                stressed = Some(i);
            }
        }
        Ok(())
    }

    pub fn is_empty(&self) -> bool {
        self.clusters.is_empty()
    }

    pub fn len(&self) -> usize {
        self.clusters.len()
    }

    /// Index of the first stem cluster: one past the last prefix boundary.
    pub fn stem_start(&self) -> usize {
        self.clusters
            .iter()
            .rposition(|c| c.prefix_boundary_after)
            .map_or(0, |i| i + 1)
    }

    pub fn stressed_cluster(&self) -> Option<usize> {
        self.clusters
            .iter()
            .position(|c| c.marks.contains(MarkKind::Stress))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&serialize(self))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WordError {
    #[error("malformed word at byte {offset}: {reason}")]
    MalformedWord { offset: usize, reason: &'static str },
    #[error("cluster {cluster} carries a second {mark:?}")]
    DuplicateMark { cluster: usize, mark: MarkKind },
    #[error("second stress mark on cluster {cluster}")]
    DuplicateStress { cluster: usize },
    #[error("cluster {cluster}: {reason}")]
    MarkConflict {
        cluster: usize,
        reason: &'static str,
    },
}

fn is_stripped(c: char) -> bool {
    let cp = c as u32;
    ((0x0591..=0x05AF).contains(&cp) && c != STRESS)
        || matches!(cp, 0x05BF | 0x05C4 | 0x05C5 | 0xFB1E | 0x034F)
}

fn is_presentation_form(c: char) -> bool {
    ('\u{FB1D}'..='\u{FB4F}').contains(&c)
}

fn push_mapped(out: &mut String, c: char) {
    if c == QAMATS_QATAN {
        out.push(QAMATS);
    } else if !is_stripped(c) {
        out.push(c);
    }
}

/// Canonical rank of `c` when it follows the base `base`; `None` if `c` is
/// not reorderable there.
fn mark_rank(c: char, base: Option<char>) -> Option<u8> {
    let base_letter = base.and_then(Letter::from_char);
    match c {
        GERESH => base_letter.filter(|l| l.takes_geresh()).map(|_| 0),
        PREFIX_SEP => base_letter.map(|_| MarkKind::PrefixSep.rank()),
        _ => MarkKind::from_codepoint(c).map(MarkKind::rank),
    }
}

fn flush_run(out: &mut String, run: &mut Vec<(u8, char)>) {
    run.sort_unstable();
    out.extend(run.drain(..).map(|(_, c)| c));
}

/// Brings text into canonical form.
///
/// Presentation forms are folded to their base sequences, qamats qatan is
/// folded to qamats, rafe and cantillation (other than the stress mark) are
/// removed, the text is NFC-composed, and the marks following each base
/// letter are put into canonical order. An apostrophe directly after a
/// letter that takes a geresh becomes a geresh. Idempotent.
pub fn normalize(text: &str) -> String {
    let mut mapped = String::with_capacity(text.len());
    for c in text.chars() {
        if is_presentation_form(c) {
            decompose_compatible(c, |d| push_mapped(&mut mapped, d));
        } else {
            push_mapped(&mut mapped, c);
        }
    }

    let mut out = String::with_capacity(mapped.len());
    let mut run: Vec<(u8, char)> = Vec::new();
    let mut base: Option<char> = None;
    for c in mapped.nfc() {
        let c = match c {
            '\'' | '\u{2019}'
                if base
                    .and_then(Letter::from_char)
                    .is_some_and(Letter::takes_geresh)
                    && !run.iter().any(|&(_, r)| r == GERESH) =>
            {
                GERESH
            }
            c => c,
        };
        if let Some(rank) = mark_rank(c, base) {
            run.push((rank, c));
            continue;
        }
        flush_run(&mut out, &mut run);
        out.push(c);
        base = Some(c);
    }
    flush_run(&mut out, &mut run);
    out
}

/// Removes the stress, vocal shva and prefix separator marks.
pub fn strip_enhanced(text: &str) -> String {
    text.chars()
        .filter(|c| !matches!(*c, STRESS | VOCAL_SHVA | PREFIX_SEP))
        .collect()
}

/// Removes every mark, keeping letters and everything else.
pub fn strip_marks(text: &str) -> String {
    text.chars()
        .filter(|&c| MarkKind::from_codepoint(c).is_none() && c != GERESH)
        .collect()
}

pub fn has_enhanced_marks(text: &str) -> bool {
    text.chars()
        .any(|c| matches!(c, STRESS | VOCAL_SHVA | PREFIX_SEP))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SegmentKind {
    Word,
    Passthrough,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Segment<'a> {
    pub kind: SegmentKind,
    pub span: Range<usize>,
    pub text: &'a str,
}

/// A tokenized text: word runs and the verbatim text between them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document<'a> {
    pub text: &'a str,
    pub segments: Vec<Segment<'a>>,
}

impl<'a> Document<'a> {
    pub fn words(&self) -> impl Iterator<Item = &Segment<'a>> {
        self.segments.iter().filter(|s| s.kind == SegmentKind::Word)
    }

    /// Concatenation of all segment texts; equals the tokenized input.
    pub fn reassemble(&self) -> String {
        self.segments.iter().map(|s| s.text).collect()
    }
}

/// Splits normalized text into maximal Hebrew word runs and passthrough spans.
///
/// A word run starts at a Hebrew letter and continues over letters, marks,
/// the prefix separator, and a geresh directly after a letter that takes one.
/// Maqaf and everything else end the run.
pub fn tokenize(text: &str) -> Document<'_> {
    let mut segments: Vec<Segment<'_>> = Vec::new();
    let mut push = |kind: SegmentKind, span: Range<usize>| {
        if span.is_empty() {
            return;
        }
        match segments.last_mut() {
            Some(last) if last.kind == kind && kind == SegmentKind::Passthrough => {
                last.span.end = span.end;
                last.text = &text[last.span.clone()];
            }
            _ => segments.push(Segment {
                kind,
                text: &text[span.clone()],
                span,
            }),
        }
    };

    let mut word_start: Option<usize> = None;
    let mut current_letter: Option<Letter> = None;
    let mut current_has_geresh = false;
    let mut pass_start = 0;
    for (i, c) in text.char_indices() {
        if let Some(letter) = Letter::from_char(c) {
            if word_start.is_none() {
                push(SegmentKind::Passthrough, pass_start..i);
                word_start = Some(i);
            }
            current_letter = Some(letter);
            current_has_geresh = false;
            continue;
        }
        if word_start.is_some() {
            let continues = match c {
                GERESH => {
                    let ok =
                        current_letter.is_some_and(Letter::takes_geresh) && !current_has_geresh;
                    current_has_geresh |= ok;
                    ok
                }
                PREFIX_SEP => true,
                MAQAF => false,
                c => MarkKind::from_codepoint(c).is_some(),
            };
            if continues {
                continue;
            }
            let start = word_start.take().unwrap_or(i);
            push(SegmentKind::Word, start..i);
            current_letter = None;
            pass_start = i;
        }
    }
    match word_start {
        Some(start) => push(SegmentKind::Word, start..text.len()),
        None => push(SegmentKind::Passthrough, pass_start..text.len()),
    }
    Document { text, segments }
}

/// Parses one normalized word run into clusters.
pub fn parse_word(run: &str) -> Result<Word, WordError> {
    let mut clusters: Vec<GraphemeCluster> = Vec::new();
    for (offset, c) in run.char_indices() {
        if let Some(letter) = Letter::from_char(c) {
            clusters.push(GraphemeCluster::new(letter));
            continue;
        }
        let index = clusters.len().wrapping_sub(1);
        let Some(cur) = clusters.last_mut() else {
            return Err(WordError::MalformedWord {
                offset,
                reason: "mark without a preceding letter",
            });
        };
        if cur.prefix_boundary_after {
            return Err(WordError::MalformedWord {
                offset,
                reason: "mark after the prefix separator",
            });
        }
        match c {
            GERESH => {
                if cur.geresh || !cur.letter.takes_geresh() {
                    return Err(WordError::MarkConflict {
                        cluster: index,
                        reason: "misplaced geresh",
                    });
                }
                cur.geresh = true;
            }
            PREFIX_SEP => cur.prefix_boundary_after = true,
            c => {
                let Some(mark) = MarkKind::from_codepoint(c) else {
                    return Err(WordError::MalformedWord {
                        offset,
                        reason: "character is not a Hebrew letter or mark",
                    });
                };
                if mark == MarkKind::Stress && cur.marks.contains(mark) {
                    return Err(WordError::DuplicateStress { cluster: index });
                }
                let vowel_clash = mark.is_vowel() && cur.vowel().is_some();
                if !cur.marks.insert(mark) || vowel_clash {
                    return Err(WordError::DuplicateMark {
                        cluster: index,
                        mark,
                    });
                }
            }
        }
    }
    Word::new(clusters, 0..run.len())
}

/// Writes a word back in canonical order.
pub fn serialize(word: &Word) -> String {
    let mut out = String::with_capacity(word.clusters.len() * 6);
    for c in &word.clusters {
        c.write_to(&mut out);
    }
    out
}

/// Parses every word of a normalized line, reporting the first failure.
pub fn validate_line(line: &str) -> Result<(), (Range<usize>, WordError)> {
    for seg in tokenize(line).words() {
        parse_word(seg.text).map_err(|e| (seg.span.clone(), e))?;
    }
    Ok(())
}
