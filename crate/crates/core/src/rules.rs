//! Compiled-in rule tables for the transducer.
//!
//! Three tables drive conversion:
//!
//! * the consonant map: letter plus dagesh, shin/sin dot and geresh to one
//!   phoneme or silence,
//! * the vowel map: vowel mark to one phoneme or silence,
//! * contextual transitions: for the current cluster, the transducer state
//!   (what the previous clusters emitted) and up to two clusters of
//!   lookahead, an output template built from the two maps.
//!
//! Contextual rules carry a priority. The applicable transition is the
//! unique matching rule of highest priority; [`RuleTable::select`] reports
//! both a missing match and a tie. `docs/rules.md` mirrors these tables.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write;

use crate::phoneme::Phoneme;
use crate::text::{GraphemeCluster, Letter, MarkKind};

/// Vowel symbol seen by the transducer. Qamats qatan and vocal shva are
/// resolved before transduction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Vowel {
    Shva,
    VocalShva,
    HatafSegol,
    HatafPatah,
    HatafQamats,
    Hiriq,
    Tsere,
    Segol,
    Patah,
    Qamats,
    QamatsQatan,
    Holam,
    HolamHaser,
    Qubuts,
}

impl Vowel {
    pub const ALL: [Vowel; 14] = [
        Vowel::Shva,
        Vowel::VocalShva,
        Vowel::HatafSegol,
        Vowel::HatafPatah,
        Vowel::HatafQamats,
        Vowel::Hiriq,
        Vowel::Tsere,
        Vowel::Segol,
        Vowel::Patah,
        Vowel::Qamats,
        Vowel::QamatsQatan,
        Vowel::Holam,
        Vowel::HolamHaser,
        Vowel::Qubuts,
    ];

    fn name(self) -> &'static str {
        match self {
            Vowel::Shva => "shva",
            Vowel::VocalShva => "shva+vocal",
            Vowel::HatafSegol => "hataf-segol",
            Vowel::HatafPatah => "hataf-patah",
            Vowel::HatafQamats => "hataf-qamats",
            Vowel::Hiriq => "hiriq",
            Vowel::Tsere => "tsere",
            Vowel::Segol => "segol",
            Vowel::Patah => "patah",
            Vowel::Qamats => "qamats",
            Vowel::QamatsQatan => "qamats-qatan",
            Vowel::Holam => "holam",
            Vowel::HolamHaser => "holam-haser-for-vav",
            Vowel::Qubuts => "qubuts",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Dot {
    None,
    Shin,
    Sin,
}

/// One transducer input symbol: a cluster reduced to what the rules read.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Glyph {
    pub letter: Letter,
    pub geresh: bool,
    pub dagesh: bool,
    pub dot: Dot,
    pub vowel: Option<Vowel>,
}

impl Glyph {
    pub fn from_cluster(c: &GraphemeCluster, qamats_qatan: bool) -> Glyph {
        let vowel = c.vowel().map(|m| match m {
            MarkKind::Shva if c.has(MarkKind::VocalShva) => Vowel::VocalShva,
            MarkKind::Shva => Vowel::Shva,
            MarkKind::HatafSegol => Vowel::HatafSegol,
            MarkKind::HatafPatah => Vowel::HatafPatah,
            MarkKind::HatafQamats => Vowel::HatafQamats,
            MarkKind::Hiriq => Vowel::Hiriq,
            MarkKind::Tsere => Vowel::Tsere,
            MarkKind::Segol => Vowel::Segol,
            MarkKind::Patah => Vowel::Patah,
            MarkKind::Qamats if qamats_qatan => Vowel::QamatsQatan,
            MarkKind::Qamats => Vowel::Qamats,
            MarkKind::Holam => Vowel::Holam,
            MarkKind::HolamHaserForVav => Vowel::HolamHaser,
            _ => Vowel::Qubuts,
        });
        let dot = if c.has(MarkKind::ShinDot) {
            Dot::Shin
        } else if c.has(MarkKind::SinDot) {
            Dot::Sin
        } else {
            Dot::None
        };
        Glyph {
            letter: c.letter,
            geresh: c.geresh,
            dagesh: c.has(MarkKind::Dagesh),
            dot,
            vowel,
        }
    }

    /// No vowel and no dagesh.
    pub fn is_bare(&self) -> bool {
        self.vowel.is_none() && !self.dagesh
    }
}

/// Vowel quality of the last emitted phoneme.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Quality {
    A,
    E,
    I,
    O,
    U,
}

impl Quality {
    pub const ALL: [Quality; 5] = [Quality::A, Quality::E, Quality::I, Quality::O, Quality::U];

    pub fn of(p: Phoneme) -> Option<Quality> {
        match p {
            Phoneme::A => Some(Quality::A),
            Phoneme::E => Some(Quality::E),
            Phoneme::I => Some(Quality::I),
            Phoneme::O => Some(Quality::O),
            Phoneme::U => Some(Quality::U),
            _ => None,
        }
    }
}

/// Transducer state: a summary of what has been emitted so far in the word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum State {
    Start,
    Consonant,
    Vowel(Quality),
}

impl State {
    pub const ALL: [State; 7] = [
        State::Start,
        State::Consonant,
        State::Vowel(Quality::A),
        State::Vowel(Quality::E),
        State::Vowel(Quality::I),
        State::Vowel(Quality::O),
        State::Vowel(Quality::U),
    ];

    /// State after emitting `out`; silence keeps the state.
    pub fn after(self, out: &[Phoneme]) -> State {
        match out.last() {
            None => self,
            Some(p) => Quality::of(*p).map_or(State::Consonant, State::Vowel),
        }
    }
}

/// Up to two clusters of lookahead.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Lookahead {
    pub next: Option<Glyph>,
    pub next2: Option<Glyph>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cond<T: 'static> {
    Any,
    Is(T),
}

impl<T: PartialEq + Copy> Cond<T> {
    fn matches(&self, v: T) -> bool {
        match self {
            Cond::Any => true,
            Cond::Is(x) => *x == v,
        }
    }
}

pub struct ConsonantRule {
    pub id: &'static str,
    pub letters: &'static [Letter],
    pub dagesh: Cond<bool>,
    pub dot: Cond<Dot>,
    pub geresh: Cond<bool>,
    pub output: Option<Phoneme>,
}

impl ConsonantRule {
    fn matches(&self, g: &Glyph) -> bool {
        self.letters.contains(&g.letter)
            && self.dagesh.matches(g.dagesh)
            && self.dot.matches(g.dot)
            && self.geresh.matches(g.geresh)
    }
}

pub struct VowelRule {
    pub vowel: Vowel,
    pub output: Option<Phoneme>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VowelCond {
    Any,
    Absent,
    Present,
    Is(Vowel),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LeftCond {
    Any,
    StartOrConsonant,
    Consonant,
    VowelIs(Quality),
    VowelNot(Quality),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RightCond {
    Any,
    WordEnd,
    /// Next cluster is a vav without vowel or dagesh.
    NextBareVav,
    /// Next cluster is a bare vav and it ends the word.
    BareVavThenEnd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Out {
    /// The consonant map entry for this cluster.
    Consonant,
    /// The vowel map entry for this cluster.
    Vowel,
    /// The vowel map entry, emitted before the consonant (furtive patah).
    FurtiveVowel,
    /// A fixed phoneme.
    Emit(Phoneme),
}

pub struct ContextRule {
    pub id: &'static str,
    pub priority: u8,
    pub letters: Option<&'static [Letter]>,
    pub vowel: VowelCond,
    pub dagesh: Cond<bool>,
    pub left: LeftCond,
    pub right: RightCond,
    pub output: &'static [Out],
}

impl ContextRule {
    pub fn matches(&self, g: &Glyph, state: State, ahead: &Lookahead) -> bool {
        let letter_ok = self.letters.is_none_or(|ls| ls.contains(&g.letter));
        let vowel_ok = match self.vowel {
            VowelCond::Any => true,
            VowelCond::Absent => g.vowel.is_none(),
            VowelCond::Present => g.vowel.is_some(),
            VowelCond::Is(v) => g.vowel == Some(v),
        };
        let left_ok = match self.left {
            LeftCond::Any => true,
            LeftCond::StartOrConsonant => matches!(state, State::Start | State::Consonant),
            LeftCond::Consonant => state == State::Consonant,
            LeftCond::VowelIs(q) => state == State::Vowel(q),
            LeftCond::VowelNot(q) => matches!(state, State::Vowel(p) if p != q),
        };
        let bare_vav = |g: Option<Glyph>| g.is_some_and(|g| g.letter == Letter::Vav && g.is_bare());
        let right_ok = match self.right {
            RightCond::Any => true,
            RightCond::WordEnd => ahead.next.is_none(),
            RightCond::NextBareVav => bare_vav(ahead.next),
            RightCond::BareVavThenEnd => bare_vav(ahead.next) && ahead.next2.is_none(),
        };
        letter_ok && vowel_ok && self.dagesh.matches(g.dagesh) && left_ok && right_ok
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SelectError {
    #[error("no rule covers {0:?}")]
    NoRule(Glyph),
    #[error("rules {0} and {1} tie")]
    Ambiguous(&'static str, &'static str),
}

use Letter::*;

const GUTTURAL_FURTIVE: &[Letter] = &[Het, Ayin];

pub static CONSONANTS: &[ConsonantRule] = &[
    c(
        "c.alef",
        &[Alef],
        Cond::Any,
        Cond::Any,
        Some(Phoneme::Glottal),
    ),
    c(
        "c.bet.dagesh",
        &[Bet],
        Cond::Is(true),
        Cond::Any,
        Some(Phoneme::B),
    ),
    c(
        "c.bet",
        &[Bet],
        Cond::Is(false),
        Cond::Any,
        Some(Phoneme::V),
    ),
    c(
        "c.gimel",
        &[Gimel],
        Cond::Any,
        Cond::Is(false),
        Some(Phoneme::G),
    ),
    c(
        "c.gimel.geresh",
        &[Gimel],
        Cond::Any,
        Cond::Is(true),
        Some(Phoneme::Dzh),
    ),
    c("c.dalet", &[Dalet], Cond::Any, Cond::Any, Some(Phoneme::D)),
    c("c.he", &[He], Cond::Any, Cond::Any, Some(Phoneme::H)),
    c("c.vav", &[Vav], Cond::Any, Cond::Any, Some(Phoneme::V)),
    c(
        "c.zayin",
        &[Zayin],
        Cond::Any,
        Cond::Is(false),
        Some(Phoneme::Z),
    ),
    c(
        "c.zayin.geresh",
        &[Zayin],
        Cond::Any,
        Cond::Is(true),
        Some(Phoneme::Zh),
    ),
    c("c.het", &[Het], Cond::Any, Cond::Any, Some(Phoneme::X)),
    c("c.tet", &[Tet], Cond::Any, Cond::Any, Some(Phoneme::T)),
    c("c.yod", &[Yod], Cond::Any, Cond::Any, Some(Phoneme::J)),
    c(
        "c.kaf.dagesh",
        &[Kaf, FinalKaf],
        Cond::Is(true),
        Cond::Any,
        Some(Phoneme::K),
    ),
    c(
        "c.kaf",
        &[Kaf, FinalKaf],
        Cond::Is(false),
        Cond::Any,
        Some(Phoneme::X),
    ),
    c("c.lamed", &[Lamed], Cond::Any, Cond::Any, Some(Phoneme::L)),
    c(
        "c.mem",
        &[Mem, FinalMem],
        Cond::Any,
        Cond::Any,
        Some(Phoneme::M),
    ),
    c(
        "c.nun",
        &[Nun, FinalNun],
        Cond::Any,
        Cond::Any,
        Some(Phoneme::N),
    ),
    c(
        "c.samekh",
        &[Samekh],
        Cond::Any,
        Cond::Any,
        Some(Phoneme::S),
    ),
    c(
        "c.ayin",
        &[Ayin],
        Cond::Any,
        Cond::Any,
        Some(Phoneme::Glottal),
    ),
    c(
        "c.pe.dagesh",
        &[Pe, FinalPe],
        Cond::Is(true),
        Cond::Any,
        Some(Phoneme::P),
    ),
    c(
        "c.pe",
        &[Pe, FinalPe],
        Cond::Is(false),
        Cond::Any,
        Some(Phoneme::F),
    ),
    c(
        "c.tsadi",
        &[Tsadi, FinalTsadi],
        Cond::Any,
        Cond::Is(false),
        Some(Phoneme::Ts),
    ),
    c(
        "c.tsadi.geresh",
        &[Tsadi, FinalTsadi],
        Cond::Any,
        Cond::Is(true),
        Some(Phoneme::Tsh),
    ),
    c("c.qof", &[Qof], Cond::Any, Cond::Any, Some(Phoneme::K)),
    c("c.resh", &[Resh], Cond::Any, Cond::Any, Some(Phoneme::R)),
    shin("c.shin", Dot::None, Phoneme::Sh),
    shin("c.shin.shin-dot", Dot::Shin, Phoneme::Sh),
    shin("c.shin.sin-dot", Dot::Sin, Phoneme::S),
    c("c.tav", &[Tav], Cond::Any, Cond::Any, Some(Phoneme::T)),
];

const fn c(
    id: &'static str,
    letters: &'static [Letter],
    dagesh: Cond<bool>,
    geresh: Cond<bool>,
    output: Option<Phoneme>,
) -> ConsonantRule {
    ConsonantRule {
        id,
        letters,
        dagesh,
        dot: Cond::Any,
        geresh,
        output,
    }
}

const fn shin(id: &'static str, dot: Dot, output: Phoneme) -> ConsonantRule {
    ConsonantRule {
        id,
        letters: &[Shin],
        dagesh: Cond::Any,
        dot: Cond::Is(dot),
        geresh: Cond::Any,
        output: Some(output),
    }
}

pub static VOWELS: &[VowelRule] = &[
    VowelRule {
        vowel: Vowel::Shva,
        output: None,
    },
    VowelRule {
        vowel: Vowel::VocalShva,
        output: Some(Phoneme::E),
    },
    VowelRule {
        vowel: Vowel::HatafSegol,
        output: Some(Phoneme::E),
    },
    VowelRule {
        vowel: Vowel::HatafPatah,
        output: Some(Phoneme::A),
    },
    VowelRule {
        vowel: Vowel::HatafQamats,
        output: Some(Phoneme::O),
    },
    VowelRule {
        vowel: Vowel::Hiriq,
        output: Some(Phoneme::I),
    },
    VowelRule {
        vowel: Vowel::Tsere,
        output: Some(Phoneme::E),
    },
    VowelRule {
        vowel: Vowel::Segol,
        output: Some(Phoneme::E),
    },
    VowelRule {
        vowel: Vowel::Patah,
        output: Some(Phoneme::A),
    },
    VowelRule {
        vowel: Vowel::Qamats,
        output: Some(Phoneme::A),
    },
    VowelRule {
        vowel: Vowel::QamatsQatan,
        output: Some(Phoneme::O),
    },
    VowelRule {
        vowel: Vowel::Holam,
        output: Some(Phoneme::O),
    },
    VowelRule {
        vowel: Vowel::HolamHaser,
        output: Some(Phoneme::O),
    },
    VowelRule {
        vowel: Vowel::Qubuts,
        output: Some(Phoneme::U),
    },
];

#[allow(clippy::too_many_arguments)]
const fn rule(
    id: &'static str,
    priority: u8,
    letters: Option<&'static [Letter]>,
    vowel: VowelCond,
    dagesh: Cond<bool>,
    left: LeftCond,
    right: RightCond,
    output: &'static [Out],
) -> ContextRule {
    ContextRule {
        id,
        priority,
        letters,
        vowel,
        dagesh,
        left,
        right,
        output,
    }
}

pub static CONTEXT: &[ContextRule] = &[
    rule(
        "t.voweled",
        0,
        None,
        VowelCond::Present,
        Cond::Any,
        LeftCond::Any,
        RightCond::Any,
        &[Out::Consonant, Out::Vowel],
    ),
    rule(
        "t.bare",
        0,
        None,
        VowelCond::Absent,
        Cond::Any,
        LeftCond::Any,
        RightCond::Any,
        &[Out::Consonant],
    ),
    rule(
        "t.alef.silent",
        1,
        Some(&[Alef]),
        VowelCond::Absent,
        Cond::Any,
        LeftCond::Any,
        RightCond::Any,
        &[],
    ),
    rule(
        "t.he.final-silent",
        1,
        Some(&[He]),
        VowelCond::Absent,
        Cond::Any,
        LeftCond::Any,
        RightCond::WordEnd,
        &[],
    ),
    rule(
        "t.furtive.guttural",
        2,
        Some(GUTTURAL_FURTIVE),
        VowelCond::Is(Vowel::Patah),
        Cond::Any,
        LeftCond::VowelNot(Quality::A),
        RightCond::WordEnd,
        &[Out::FurtiveVowel, Out::Consonant],
    ),
    rule(
        "t.furtive.he-mappiq",
        2,
        Some(&[He]),
        VowelCond::Is(Vowel::Patah),
        Cond::Is(true),
        LeftCond::VowelNot(Quality::A),
        RightCond::WordEnd,
        &[Out::FurtiveVowel],
    ),
    rule(
        "t.vav.holam-male",
        2,
        Some(&[Vav]),
        VowelCond::Is(Vowel::Holam),
        Cond::Any,
        LeftCond::Consonant,
        RightCond::Any,
        &[Out::Vowel],
    ),
    rule(
        "t.vav.shuruk",
        2,
        Some(&[Vav]),
        VowelCond::Absent,
        Cond::Is(true),
        LeftCond::StartOrConsonant,
        RightCond::Any,
        &[Out::Emit(Phoneme::U)],
    ),
    rule(
        "t.vav.doubled",
        2,
        Some(&[Vav]),
        VowelCond::Absent,
        Cond::Is(false),
        LeftCond::Any,
        RightCond::NextBareVav,
        &[],
    ),
    rule(
        "t.yod.after-i",
        2,
        Some(&[Yod]),
        VowelCond::Absent,
        Cond::Is(false),
        LeftCond::VowelIs(Quality::I),
        RightCond::Any,
        &[],
    ),
    rule(
        "t.yod.glide-after-e",
        2,
        Some(&[Yod]),
        VowelCond::Absent,
        Cond::Is(false),
        LeftCond::VowelIs(Quality::E),
        RightCond::Any,
        &[Out::Consonant],
    ),
    rule(
        "t.yod.suffix-av",
        2,
        Some(&[Yod]),
        VowelCond::Absent,
        Cond::Is(false),
        LeftCond::VowelIs(Quality::A),
        RightCond::BareVavThenEnd,
        &[],
    ),
];

/// Words whose qamats marks are read as /o/, written with U+05C7 at the
/// qamats-qatan positions in canonical mark order.
pub static QAMATS_QATAN_WORDS: &[&str] = &[
    // kol
    "\u{5DB}\u{5BC}\u{5C7}\u{5DC}",
    // xoxma
    "\u{5D7}\u{5C7}\u{5DB}\u{5B0}\u{5DE}\u{5B8}\u{5D4}",
    // toxnit
    "\u{5EA}\u{5BC}\u{5C7}\u{5DB}\u{5B0}\u{5E0}\u{5B4}\u{5D9}\u{5EA}",
    // tsohorajim
    "\u{5E6}\u{5C7}\u{5D4}\u{5B3}\u{5E8}\u{5B7}\u{5D9}\u{5B4}\u{5DD}",
    // oznajim
    "\u{5D0}\u{5C7}\u{5D6}\u{5B0}\u{5E0}\u{5B7}\u{5D9}\u{5B4}\u{5DD}",
    // xofʃi
    "\u{5D7}\u{5C7}\u{5E4}\u{5B0}\u{5E9}\u{5C1}\u{5B4}\u{5D9}",
    // omnam
    "\u{5D0}\u{5C7}\u{5DE}\u{5B0}\u{5E0}\u{5B8}\u{5DD}",
];

/// Cluster indices read as qamats qatan for a stem key, if it is listed.
pub fn qamats_qatan_positions(stem_key: &str) -> Option<Vec<usize>> {
    QAMATS_QATAN_WORDS.iter().find_map(|entry| {
        let folded = entry
            .chars()
            .map(|c| if c == '\u{5C7}' { '\u{5B8}' } else { c });
        if !folded.eq(stem_key.chars()) {
            return None;
        }
        let mut positions = Vec::new();
        let mut cluster = None::<usize>;
        for c in entry.chars() {
            if Letter::from_char(c).is_some() {
                cluster = Some(cluster.map_or(0, |i| i + 1));
            } else if c == '\u{5C7}' {
                positions.extend(cluster);
            }
        }
        Some(positions)
    })
}

/// The full rule set. Immutable and shareable.
pub struct RuleTable {
    pub consonants: &'static [ConsonantRule],
    pub vowels: &'static [VowelRule],
    pub context: &'static [ContextRule],
}

pub static RULES: RuleTable = RuleTable {
    consonants: CONSONANTS,
    vowels: VOWELS,
    context: CONTEXT,
};

impl RuleTable {
    pub fn builtin() -> &'static RuleTable {
        &RULES
    }

    pub fn consonant(&self, g: &Glyph) -> Result<Option<Phoneme>, SelectError> {
        let mut hits = self.consonants.iter().filter(|r| r.matches(g));
        let first = hits.next().ok_or(SelectError::NoRule(*g))?;
        if let Some(second) = hits.next() {
            return Err(SelectError::Ambiguous(first.id, second.id));
        }
        Ok(first.output)
    }

    pub fn vowel(&self, v: Vowel) -> Option<Phoneme> {
        self.vowels
            .iter()
            .find(|r| r.vowel == v)
            .and_then(|r| r.output)
    }

    /// The unique highest-priority matching contextual rule.
    pub fn select(
        &self,
        g: &Glyph,
        state: State,
        ahead: &Lookahead,
    ) -> Result<&ContextRule, SelectError> {
        let mut best: Option<&ContextRule> = None;
        let mut tie: Option<&ContextRule> = None;
        for r in self.context.iter().filter(|r| r.matches(g, state, ahead)) {
            match best {
                Some(b) if r.priority < b.priority => {}
                Some(b) if r.priority == b.priority => tie = Some(r),
                _ => {
                    best = Some(r);
                    tie = None;
                }
            }
        }
        match (best, tie) {
            (None, _) => Err(SelectError::NoRule(*g)),
            (Some(b), Some(t)) => Err(SelectError::Ambiguous(b.id, t.id)),
            (Some(b), None) => Ok(b),
        }
    }

    /// One step: the phonemes for `g` and whether the first is a furtive vowel.
    pub fn step(
        &self,
        g: &Glyph,
        state: State,
        ahead: &Lookahead,
    ) -> Result<Vec<(Phoneme, bool)>, SelectError> {
        let rule = self.select(g, state, ahead)?;
        let mut out = Vec::with_capacity(rule.output.len());
        for o in rule.output {
            match o {
                Out::Consonant => out.extend(self.consonant(g)?.map(|p| (p, false))),
                Out::Vowel => out.extend(g.vowel.and_then(|v| self.vowel(v)).map(|p| (p, false))),
                Out::FurtiveVowel => {
                    out.extend(g.vowel.and_then(|v| self.vowel(v)).map(|p| (p, true)))
                }
                Out::Emit(p) => out.push((*p, false)),
            }
        }
        Ok(out)
    }

    pub fn transition_count(&self) -> usize {
        self.consonants.len() + self.vowels.len() + self.context.len()
    }

    /// Tab-separated dump of every table row, with a header line.
    pub fn dump_tsv(&self) -> String {
        let mut out = String::from("table\tid\tletters\tcondition\tleft\tright\toutput\n");
        for r in self.consonants {
            let letters: String = r.letters.iter().map(|l| l.as_char()).collect();
            let mut cond = String::new();
            push_cond(&mut cond, "dagesh", &r.dagesh);
            push_cond(&mut cond, "geresh", &r.geresh);
            if let Cond::Is(d) = r.dot {
                push_item(
                    &mut cond,
                    match d {
                        Dot::None => "no-dot",
                        Dot::Shin => "shin-dot",
                        Dot::Sin => "sin-dot",
                    },
                );
            }
            let output = r.output.map_or("∅", |p| p.symbol(crate::Narrowness::Broad));
            let _ = writeln!(
                out,
                "consonant\t{}\t{}\t{}\t*\t*\t{}",
                r.id,
                letters,
                or_star(&cond),
                output
            );
        }
        for r in self.vowels {
            let output = r.output.map_or("∅", |p| p.symbol(crate::Narrowness::Broad));
            let _ = writeln!(
                out,
                "vowel\tv.{}\t*\t{}\t*\t*\t{}",
                r.vowel.name(),
                r.vowel.name(),
                output
            );
        }
        for r in self.context {
            let letters: String = r.letters.map_or_else(
                || String::from("*"),
                |ls| ls.iter().map(|l| l.as_char()).collect(),
            );
            let mut cond = String::new();
            match r.vowel {
                VowelCond::Any => {}
                VowelCond::Absent => push_item(&mut cond, "no-vowel"),
                VowelCond::Present => push_item(&mut cond, "vowel"),
                VowelCond::Is(v) => push_item(&mut cond, v.name()),
            }
            push_cond(&mut cond, "dagesh", &r.dagesh);
            let left = match r.left {
                LeftCond::Any => String::from("*"),
                LeftCond::StartOrConsonant => String::from("start|consonant"),
                LeftCond::Consonant => String::from("consonant"),
                LeftCond::VowelIs(q) => alloc::format!("vowel={q:?}").to_lowercase(),
                LeftCond::VowelNot(q) => alloc::format!("vowel!={q:?}").to_lowercase(),
            };
            let right = match r.right {
                RightCond::Any => "*",
                RightCond::WordEnd => "end",
                RightCond::NextBareVav => "bare-vav",
                RightCond::BareVavThenEnd => "bare-vav end",
            };
            let mut output = String::new();
            for o in r.output {
                if !output.is_empty() {
                    output.push(' ');
                }
                match o {
                    Out::Consonant => output.push('C'),
                    Out::Vowel => output.push('V'),
                    Out::FurtiveVowel => output.push_str("V(furtive)"),
                    Out::Emit(p) => output.push_str(p.symbol(crate::Narrowness::Broad)),
                }
            }
            let _ = writeln!(
                out,
                "context\t{}\t{}\t{}\t{}\t{}\t{}",
                r.id,
                letters,
                or_star(&cond),
                left,
                right,
                if output.is_empty() { "∅" } else { &output }
            );
        }
        out
    }
}

fn push_item(s: &mut String, item: &str) {
    if !s.is_empty() {
        s.push(',');
    }
    s.push_str(item);
}

fn push_cond(s: &mut String, name: &str, cond: &Cond<bool>) {
    match cond {
        Cond::Any => {}
        Cond::Is(true) => push_item(s, name),
        Cond::Is(false) => push_item(s, &alloc::format!("no-{name}")),
    }
}

fn or_star(s: &str) -> &str {
    if s.is_empty() {
        "*"
    } else {
        s
    }
}
