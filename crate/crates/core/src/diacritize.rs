//! Providers that add enhanced marks to vocalized text.

use alloc::string::String;

use crate::pseudo_gt::{apply_shva_rules, ShvaRules};
use crate::text::{has_enhanced_marks, normalize, parse_word, serialize, tokenize, SegmentKind};

/// Which diacritizer a pipeline runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum ProviderKind {
    /// Input is already fully marked; leave it alone.
    #[default]
    Passthrough,
    /// Add vocal-shva marks by rule; no stress or prefix marks.
    Defaults,
    /// An external service over HTTP (in the std crate).
    Remote,
}

/// Baseline enhancement: vocal-shva marks by rule, nothing else.
///
/// Lines that already carry any enhanced mark are treated as annotated and
/// only normalized. Words that fail to parse are copied unchanged.
pub fn apply_defaults(text: &str) -> String {
    apply_defaults_with(text, &ShvaRules::default())
}

pub fn apply_defaults_with(text: &str, rules: &ShvaRules) -> String {
    let normalized = normalize(text);
    if has_enhanced_marks(&normalized) {
        return normalized;
    }
    let doc = tokenize(&normalized);
    let mut out = String::with_capacity(normalized.len() + 8);
    for seg in &doc.segments {
        match seg.kind {
            SegmentKind::Word => match parse_word(seg.text) {
                Ok(w) => out.push_str(&serialize(&apply_shva_rules(&w, rules))),
                Err(_) => out.push_str(seg.text),
            },
            SegmentKind::Passthrough => out.push_str(seg.text),
        }
    }
    out
}

/// Runs one of the in-process providers over a line. Remote needs I/O and
/// is handled by the caller; here it behaves like passthrough.
pub fn diacritize_local(kind: ProviderKind, text: &str) -> String {
    match kind {
        ProviderKind::Defaults => apply_defaults(text),
        ProviderKind::Passthrough | ProviderKind::Remote => String::from(text),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::g2p::phonemize_text;
    use crate::lexicon::Lexicon;
    use crate::phoneme::Convention;
    use crate::text::{strip_enhanced, VOCAL_SHVA};

    #[test]
    fn defaults_boker_tov_gets_final_stress() {
        let marked = "בּוֹ\u{5AB}קֶר טוֹב";
        let plain = strip_enhanced(&normalize(marked));
        let out = apply_defaults(&plain);
        let ipa = phonemize_text(&out, Convention::BROAD_SYLLABLE, &Lexicon::new()).ipa;
        assert_eq!(ipa, "boˈker ˈtov");
        assert_eq!(
            phonemize_text(marked, Convention::BROAD_SYLLABLE, &Lexicon::new()).ipa,
            "ˈboker ˈtov"
        );
    }

    #[test]
    fn marked_input_unchanged_and_idempotent() {
        let marked = normalize("לֶ\u{5AB}חֶם");
        assert_eq!(apply_defaults(&marked), marked);
        let once = apply_defaults("דִּבְּרוּ יִשְׁמְרוּ");
        assert!(once.contains(VOCAL_SHVA));
        assert_eq!(apply_defaults(&once), once);
    }

    #[test]
    fn passthrough_is_identity() {
        let s = "abc \u{5D0}\u{5B8} !";
        assert_eq!(diacritize_local(ProviderKind::Passthrough, s), s);
    }
}
