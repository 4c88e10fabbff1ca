use nikud_core::corpus::{golden_examples, stress_phrase_corpus};
use nikud_core::metrics::{wer, wer_sigma};
use nikud_core::text::strip_enhanced;
use nikud_core::{apply_defaults, phonemize_text, Convention, Lexicon};

#[test]
fn every_golden_example_phonemizes_exactly() {
    let lexicon = Lexicon::builtin();
    for g in golden_examples() {
        let out = phonemize_text(g.hebrew, g.convention, &lexicon);
        assert!(
            out.diagnostics.is_empty(),
            "{}: {:?}",
            g.note,
            out.diagnostics
        );
        assert_eq!(out.ipa, g.ipa, "{}", g.note);
    }
}

#[test]
fn stress_phrases_marked_vs_defaults() {
    let lexicon = Lexicon::builtin();
    for p in stress_phrase_corpus() {
        let marked = phonemize_text(&p.marked, Convention::BROAD_SYLLABLE, &lexicon).ipa;
        assert_eq!(marked, p.ipa, "{}", p.id);
        let defaults = apply_defaults(&strip_enhanced(&p.marked));
        let hyp = phonemize_text(&defaults, Convention::BROAD_SYLLABLE, &lexicon).ipa;
        assert_eq!(wer(&p.ipa, &hyp).unwrap(), 0.5, "{}: {hyp}", p.id);
        assert_eq!(wer_sigma(&p.ipa, &hyp).unwrap(), 0.0, "{}: {hyp}", p.id);
    }
}

#[test]
fn before_vowel_placement_of_bira() {
    let out = phonemize_text("בִּירָה", Convention::STORAGE, &Lexicon::new());
    assert_eq!(out.ipa, "birˈa");
}
