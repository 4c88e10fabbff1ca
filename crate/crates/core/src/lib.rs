//! Rule-based Hebrew grapheme-to-phoneme conversion.
//!
//! Input is vocalized Hebrew, optionally carrying three extra marks: a stress
//! mark ([`text::STRESS`]), a vocal-shva mark ([`text::VOCAL_SHVA`]) and a
//! prefix boundary ([`text::PREFIX_SEP`]). Output is IPA in one of the
//! [`Convention`]s.
//!
//! ```
//! use nikud_core::{phonemize_text, Convention, Lexicon};
//!
//! let lexicon = Lexicon::builtin();
//! let out = phonemize_text("בּוֹ\u{5AB}קֶר טוֹב", Convention::BROAD_SYLLABLE, &lexicon);
//! assert_eq!(out.ipa, "ˈboker ˈtov");
//! ```
//!
//! The crate is `no_std` and needs only `alloc`.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod corpus;
pub mod diacritize;
pub mod g2p;
pub mod lexicon;
pub mod metrics;
pub mod phoneme;
pub mod pseudo_gt;
pub mod rules;
pub mod text;

pub use diacritize::{apply_defaults, ProviderKind};
pub use g2p::{
    phonemize_document, phonemize_text, phonemize_word, transcribe, Diagnostic, Phonemized,
};
pub use lexicon::{Lexicon, LexiconEntry, LexiconError};
pub use phoneme::{Convention, Narrowness, Phoneme, StressPosition, WordTranscription};
pub use rules::RuleTable;
pub use text::{normalize, parse_word, serialize, tokenize, Document, Word};
