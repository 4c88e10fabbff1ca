//! Generators and independent oracles shared by the integration tests.
#![allow(dead_code)]

use nikud_core::text::{GraphemeCluster, Letter, MarkKind, Word};
use proptest::prelude::*;
use proptest::sample::select;

pub const VOWEL_MARKS: [MarkKind; 12] = [
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
];

/// Any valid cluster without stress or prefix boundary.
pub fn cluster() -> impl Strategy<Value = GraphemeCluster> {
    (
        select(Letter::ALL.to_vec()),
        any::<bool>(),
        any::<bool>(),
        0u8..3,
        proptest::option::weighted(0.8, select(VOWEL_MARKS.to_vec())),
        any::<bool>(),
    )
        .prop_map(|(letter, geresh, dagesh, dot, vowel, vocal)| {
            let mut c = GraphemeCluster::new(letter);
            c.geresh = geresh && letter.takes_geresh();
            if dagesh {
                c = c.with(MarkKind::Dagesh);
            }
            if letter == Letter::Shin {
                match dot {
                    1 => c = c.with(MarkKind::ShinDot),
                    2 => c = c.with(MarkKind::SinDot),
                    _ => {}
                }
            }
            if let Some(v) = vowel {
                c = c.with(v);
                if v == MarkKind::Shva && vocal {
                    c = c.with(MarkKind::VocalShva);
                }
            }
            c
        })
}

/// A valid word with an optional stress mark and optional prefix boundary.
pub fn word() -> impl Strategy<Value = Word> {
    (
        proptest::collection::vec(cluster(), 1..9),
        proptest::option::of(0usize..9),
        proptest::option::of(0usize..4),
    )
        .prop_map(|(mut clusters, stress, prefix)| {
            let n = clusters.len();
            if let Some(s) = stress.filter(|&s| s < n) {
                clusters[s].marks.insert(MarkKind::Stress);
            }
            if let Some(p) = prefix.filter(|&p| p + 1 < n) {
                clusters[p].prefix_boundary_after = true;
            }
            Word::new(clusters, 0..0).expect("generator builds valid words")
        })
}

/// A valid word with no enhanced marks.
pub fn plain_word() -> impl Strategy<Value = Word> {
    proptest::collection::vec(cluster(), 1..9).prop_map(|mut clusters| {
        for c in &mut clusters {
            c.marks.remove(MarkKind::VocalShva);
        }
        Word::new(clusters, 0..0).expect("generator builds valid words")
    })
}

/// Characters likely to stress normalization.
pub fn fuzz_char() -> impl Strategy<Value = char> {
    let mut pool: Vec<char> = Vec::new();
    pool.extend('\u{5D0}'..='\u{5EA}');
    pool.extend('\u{591}'..='\u{5C7}');
    pool.extend('\u{FB1D}'..='\u{FB4F}');
    pool.extend([
        '\u{5F3}', '\u{5F4}', '\'', '\u{2019}', '\u{34F}', '\u{301}', '\u{200F}',
    ]);
    pool.extend(['a', 'Z', '0', ' ', ' ', ',', '.', '-', '\t', '|']);
    select(pool)
}

pub fn fuzz_string() -> impl Strategy<Value = String> {
    proptest::collection::vec(fuzz_char(), 0..24).prop_map(|v| v.into_iter().collect())
}

/// Unit-cost edit distance by exhaustive recursion over all alignments.
pub fn brute_edit_distance<T: PartialEq>(a: &[T], b: &[T]) -> usize {
    match (a.split_first(), b.split_first()) {
        (None, _) => b.len(),
        (_, None) => a.len(),
        (Some((x, ra)), Some((y, rb))) => {
            let sub = brute_edit_distance(ra, rb) + usize::from(x != y);
            let del = brute_edit_distance(ra, b) + 1;
            let ins = brute_edit_distance(a, rb) + 1;
            sub.min(del).min(ins)
        }
    }
}

/// Every sequence over `0..alphabet` of length `len`.
pub fn all_sequences(alphabet: u8, len: usize) -> Vec<Vec<u8>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|s| {
                (0..alphabet).map(move |c| {
                    let mut t = s.clone();
                    t.push(c);
                    t
                })
            })
            .collect();
    }
    out
}

pub const BROAD_CHARS: &str = "bvgdʒhwzxtjklmnsʔpfʃraeiouˈ ";
pub const NARROW_CHARS: &str = "bvgdʒhwzχtjklmnsʔpfʃʁaeiouˈ ";

/// Character-level inventory check plus one stress mark per voweled word,
/// written without the library's IPA parser.
pub fn check_output(ipa: &str, allowed: &str) -> Result<(), String> {
    if let Some(c) = ipa.chars().find(|c| !allowed.contains(*c)) {
        return Err(format!("{ipa:?}: symbol {c:?} outside the inventory"));
    }
    if ipa.is_empty() {
        return Ok(());
    }
    for w in ipa.split(' ') {
        if w.is_empty() {
            return Err(format!("{ipa:?}: empty word"));
        }
        let marks = w.matches('ˈ').count();
        let vowels = w.chars().filter(|c| "aeiou".contains(*c)).count();
        if vowels > 0 && marks != 1 || vowels == 0 && marks != 0 {
            return Err(format!("{ipa:?}: word {w:?} has {marks} stress marks"));
        }
    }
    Ok(())
}

/// Vowels after the stress mark in a word rendered with stress before the
/// vowel.
pub fn vowels_after_stress(word_ipa: &str) -> Option<usize> {
    let (_, tail) = word_ipa.split_once('ˈ')?;
    Some(tail.chars().filter(|c| "aeiou".contains(*c)).count())
}
