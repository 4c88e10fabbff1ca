mod common;

use common::*;
use nikud_core::phoneme::to_narrow;
use nikud_core::pseudo_gt::{
    apply_shva_rules, mark_prefixes, mark_stress, AnnotationRecord, ShvaRules,
};
use nikud_core::text::{
    normalize, parse_word, serialize, strip_enhanced, tokenize, validate_line, Letter, MarkKind,
    Word, PREFIX_SEP, STRESS, VOCAL_SHVA,
};
use nikud_core::{
    apply_defaults, g2p, phonemize_word, Convention, Lexicon, Narrowness, StressPosition,
};
use proptest::prelude::*;

const CONVENTIONS: [Convention; 4] = [
    Convention::new(StressPosition::BeforeSyllable, Narrowness::Broad),
    Convention::new(StressPosition::BeforeVowel, Narrowness::Broad),
    Convention::new(StressPosition::BeforeSyllable, Narrowness::Narrow),
    Convention::new(StressPosition::BeforeVowel, Narrowness::Narrow),
];

fn allowed(c: Convention) -> &'static str {
    match c.narrowness {
        Narrowness::Broad => BROAD_CHARS,
        Narrowness::Narrow => NARROW_CHARS,
    }
}

fn ends_in_patah(w: &Word) -> bool {
    w.clusters.last().is_some_and(|c| c.has(MarkKind::Patah))
}

fn marks_superset(after: &Word, before: &Word) -> bool {
    after.clusters.len() == before.clusters.len()
        && after.clusters.iter().zip(&before.clusters).all(|(a, b)| {
            a.letter == b.letter
                && a.geresh == b.geresh
                && a.marks.is_superset(b.marks)
                && (a.prefix_boundary_after || !b.prefix_boundary_after)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn normalize_is_idempotent(s in fuzz_string()) {
        let once = normalize(&s);
        prop_assert_eq!(normalize(&once), once.clone());
        prop_assert_eq!(tokenize(&once).reassemble(), once);
    }

    #[test]
    fn generated_words_transcribe_in_every_convention(w in word()) {
        let lexicon = Lexicon::new();
        for c in CONVENTIONS {
            let ipa = phonemize_word(&w, c, &lexicon);
            prop_assert!(ipa.is_ok(), "{}: {:?}", serialize(&w), ipa);
            let ipa = ipa.unwrap();
            prop_assert!(!ipa.contains(' '));
            if let Err(e) = check_output(&ipa, allowed(c)) {
                return Err(TestCaseError::fail(format!("{}: {e}", serialize(&w))));
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2_000))]

    #[test]
    fn serialize_parse_round_trip(w in word()) {
        let s = serialize(&w);
        prop_assert_eq!(normalize(&s), s.clone());
        let back = parse_word(&s).unwrap();
        prop_assert_eq!(back.clusters, w.clusters);
        let doc = tokenize(&s);
        prop_assert_eq!(doc.words().count(), 1);
    }

    #[test]
    fn unmarked_words_stress_the_last_vowel(w in plain_word()) {
        prop_assume!(!ends_in_patah(&w));
        let ipa = phonemize_word(&w, Convention::STORAGE, &Lexicon::new()).unwrap();
        if ipa.chars().any(|c| "aeiou".contains(c)) {
            prop_assert_eq!(vowels_after_stress(&ipa), Some(1), "{}", ipa);
        }
    }

    #[test]
    fn narrow_is_a_substitution_of_broad(w in word()) {
        let lexicon = Lexicon::builtin();
        for pos in [StressPosition::BeforeSyllable, StressPosition::BeforeVowel] {
            let broad = phonemize_word(&w, Convention::new(pos, Narrowness::Broad), &lexicon).unwrap();
            let narrow = phonemize_word(&w, Convention::new(pos, Narrowness::Narrow), &lexicon).unwrap();
            prop_assert_eq!(to_narrow(&broad), narrow);
        }
    }

    #[test]
    fn phonemization_is_deterministic(w in word()) {
        let lexicon = Lexicon::builtin();
        let a = phonemize_word(&w, Convention::BROAD_SYLLABLE, &lexicon).unwrap();
        let b = phonemize_word(&w.clone(), Convention::BROAD_SYLLABLE, &lexicon).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn defaults_output_validates_and_only_adds_vocal_shva(words in proptest::collection::vec(word(), 0..5)) {
        let line: Vec<String> = words.iter().map(serialize).collect();
        let plain = strip_enhanced(&line.join(" "));
        let out = apply_defaults(&plain);
        prop_assert!(validate_line(&out).is_ok());
        prop_assert!(!out.contains(STRESS) && !out.contains(PREFIX_SEP));
        let without: String = out.chars().filter(|&c| c != VOCAL_SHVA).collect();
        prop_assert_eq!(without, normalize(&plain));
        prop_assert_eq!(apply_defaults(&out), out);
    }

    #[test]
    fn shva_rules_are_idempotent_and_monotone(w in word(), mask in 0u8..8) {
        let rules = ShvaRules {
            second_of_pair: mask & 1 != 0,
            geminate: mask & 2 != 0,
            clitic_before_shva: mask & 4 != 0,
        };
        let once = apply_shva_rules(&w, &rules);
        prop_assert!(marks_superset(&once, &w));
        prop_assert_eq!(apply_shva_rules(&once, &rules), once);
    }

    #[test]
    fn prefix_marking_is_idempotent_and_monotone(w in word(), prefix_len in 0usize..4) {
        let record = AnnotationRecord { token: w.clone(), prefix_len, stress_syllable: None };
        match mark_prefixes(&record) {
            Ok(once) => {
                prop_assert!(marks_superset(&once, &w));
                let again = mark_prefixes(&AnnotationRecord { token: once.clone(), ..record }).unwrap();
                prop_assert_eq!(again, once);
            }
            Err(_) => prop_assert!(prefix_len >= w.len()),
        }
    }

    #[test]
    fn stress_marking_is_idempotent_and_monotone(w in plain_word(), k in 1usize..5) {
        let record = AnnotationRecord { token: w.clone(), prefix_len: 0, stress_syllable: Some(k) };
        let nuclei = g2p::vowel_clusters(&w).unwrap().len();
        match mark_stress(&record) {
            Ok(once) => {
                prop_assert!(k <= nuclei);
                prop_assert!(marks_superset(&once, &w));
                let again = mark_stress(&AnnotationRecord { token: once.clone(), ..record }).unwrap();
                prop_assert_eq!(&again, &once);
                // The marked syllable is the k-th from the end.
                let ipa = phonemize_word(&once, Convention::STORAGE, &Lexicon::new()).unwrap();
                if !ends_in_patah(&w) {
                    prop_assert_eq!(vowels_after_stress(&ipa), Some(k), "{}", ipa);
                }
            }
            Err(_) => prop_assert!(k > nuclei),
        }
    }

    #[test]
    fn lexicon_stem_wins_after_any_prefix(prefix in proptest::collection::vec(cluster(), 1..3)) {
        let lexicon = Lexicon::builtin();
        let stem = parse_word(&normalize("פִּינְגְּוִין")).unwrap();
        let mut clusters = prefix;
        clusters.last_mut().unwrap().prefix_boundary_after = true;
        clusters.extend(stem.clusters.iter().copied());
        let w = Word::new(clusters, 0..0).unwrap();
        let ipa = phonemize_word(&w, Convention::STORAGE, &lexicon).unwrap();
        prop_assert!(ipa.ends_with("pˈingwin"), "{}", ipa);
        prop_assert_eq!(ipa.matches('ˈ').count(), 1);
    }
}

#[test]
fn geresh_letters_are_the_loan_digraph_set() {
    let with: Vec<Letter> = Letter::ALL
        .into_iter()
        .filter(|l| l.takes_geresh())
        .collect();
    assert_eq!(
        with,
        [
            Letter::Gimel,
            Letter::Zayin,
            Letter::FinalTsadi,
            Letter::Tsadi,
            Letter::Tav
        ]
    );
}
