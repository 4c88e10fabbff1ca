//! Word and character error rates over IPA strings.

use alloc::string::String;
use alloc::vec::Vec;

use crate::phoneme::STRESS_MARK;

/// Levenshtein distance with unit costs.
pub fn edit_distance<T: PartialEq>(reference: &[T], hypothesis: &[T]) -> usize {
    if reference.is_empty() {
        return hypothesis.len();
    }
    let mut row: Vec<usize> = (0..=hypothesis.len()).collect();
    for (i, r) in reference.iter().enumerate() {
        let mut diag = row[0];
        row[0] = i + 1;
        for (j, h) in hypothesis.iter().enumerate() {
            let sub = diag + usize::from(r != h);
            diag = row[j + 1];
            row[j + 1] = sub.min(row[j] + 1).min(diag + 1);
        }
    }
    row[hypothesis.len()]
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MetricsError {
    #[error("empty reference{}", id.as_deref().map(|i| alloc::format!(" for item {i}")).unwrap_or_default())]
    EmptyReference { id: Option<String> },
    #[error("empty corpus")]
    EmptyCorpus,
}

fn words(s: &str) -> Vec<&str> {
    s.split_whitespace().collect()
}

fn strip_stress(s: &str) -> String {
    s.chars().filter(|&c| c != STRESS_MARK).collect()
}

/// Word counts after removing stress marks token by token, so the token
/// count never changes.
fn stressless_word_counts(reference: &str, hypothesis: &str) -> Counts {
    let r: Vec<String> = words(reference).into_iter().map(strip_stress).collect();
    let h: Vec<String> = words(hypothesis).into_iter().map(strip_stress).collect();
    Counts {
        edits: edit_distance(&r, &h),
        reference_len: r.len(),
    }
}

/// Edits and reference length for one pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Counts {
    pub edits: usize,
    pub reference_len: usize,
}

impl Counts {
    pub fn ratio(self) -> f64 {
        self.edits as f64 / self.reference_len as f64
    }
}

fn word_counts(reference: &str, hypothesis: &str) -> Counts {
    let r = words(reference);
    Counts {
        edits: edit_distance(&r, &words(hypothesis)),
        reference_len: r.len(),
    }
}

fn char_counts(reference: &str, hypothesis: &str) -> Counts {
    let r: Vec<char> = reference.chars().collect();
    let h: Vec<char> = hypothesis.chars().collect();
    Counts {
        edits: edit_distance(&r, &h),
        reference_len: r.len(),
    }
}

fn nonempty_words(reference: &str) -> Result<(), MetricsError> {
    if words(reference).is_empty() {
        Err(MetricsError::EmptyReference { id: None })
    } else {
        Ok(())
    }
}

/// Word error rate; words compare as exact strings, stress included.
pub fn wer(reference: &str, hypothesis: &str) -> Result<f64, MetricsError> {
    nonempty_words(reference)?;
    Ok(word_counts(reference, hypothesis).ratio())
}

/// Word error rate after removing every stress mark.
pub fn wer_sigma(reference: &str, hypothesis: &str) -> Result<f64, MetricsError> {
    nonempty_words(reference)?;
    Ok(stressless_word_counts(reference, hypothesis).ratio())
}

/// Character error rate over Unicode scalars, spaces and stress included.
pub fn cer(reference: &str, hypothesis: &str) -> Result<f64, MetricsError> {
    if reference.is_empty() {
        return Err(MetricsError::EmptyReference { id: None });
    }
    Ok(char_counts(reference, hypothesis).ratio())
}

#[derive(Debug, Clone, PartialEq)]
pub struct ItemScore {
    pub id: String,
    pub wer: f64,
    pub cer: f64,
    pub wer_sigma: f64,
    pub reference: String,
    pub hypothesis: String,
}

/// Corpus scores, micro-averaged: total edits over total reference units.
#[derive(Debug, Clone, PartialEq)]
pub struct EvalReport {
    pub wer: f64,
    pub cer: f64,
    pub wer_sigma: f64,
    pub per_item: Vec<ItemScore>,
}

impl EvalReport {
    /// Fixed-width table: a header and one row with the corpus scores,
    /// each capped at 1.00 for display.
    pub fn table(&self) -> String {
        let cap = |x: f64| x.min(1.0);
        alloc::format!(
            "{:<8} {:>6} {:>6} {:>6}\n{:<8} {:>6.2} {:>6.2} {:>6.2}\n",
            "items",
            "WER",
            "WERσ",
            "CER",
            self.per_item.len(),
            cap(self.wer),
            cap(self.wer_sigma),
            cap(self.cer)
        )
    }
}

pub fn evaluate_corpus<'a, I>(pairs: I) -> Result<EvalReport, MetricsError>
where
    I: IntoIterator<Item = (&'a str, &'a str, &'a str)>,
{
    let mut per_item = Vec::new();
    let (mut w, mut ws, mut c) = (Counts::default(), Counts::default(), Counts::default());
    for (id, reference, hypothesis) in pairs {
        if words(reference).is_empty() {
            return Err(MetricsError::EmptyReference {
                id: Some(String::from(id)),
            });
        }
        let iw = word_counts(reference, hypothesis);
        let iws = stressless_word_counts(reference, hypothesis);
        let ic = char_counts(reference, hypothesis);
        for (total, item) in [(&mut w, iw), (&mut ws, iws), (&mut c, ic)] {
            total.edits += item.edits;
            total.reference_len += item.reference_len;
        }
        per_item.push(ItemScore {
            id: String::from(id),
            wer: iw.ratio(),
            cer: ic.ratio(),
            wer_sigma: iws.ratio(),
            reference: String::from(reference),
            hypothesis: String::from(hypothesis),
        });
    }
    if per_item.is_empty() {
        return Err(MetricsError::EmptyCorpus);
    }
    Ok(EvalReport {
        wer: w.ratio(),
        cer: c.ratio(),
        wer_sigma: ws.ratio(),
        per_item,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn distance_examples() {
        assert_eq!(edit_distance(&["x"], &["x"]), 0);
        assert_eq!(edit_distance(&["a", "b", "c"], &["a", "x", "c"]), 1);
        assert_eq!(edit_distance(&["a", "b"], &["b", "a"]), 2);
        assert_eq!(edit_distance::<u8>(&[], &[1, 2]), 2);
        assert_eq!(edit_distance::<u8>(&[1, 2, 3], &[]), 3);
    }

    #[test]
    fn rates() {
        assert_eq!(wer("ˈboker ˈtov", "ˈboker ˈtov").unwrap(), 0.0);
        assert_eq!(wer("ˈboker ˈtov", "boˈker ˈtov").unwrap(), 0.5);
        assert_eq!(wer("ˈboker ˈtov", "").unwrap(), 1.0);
        assert_eq!(wer_sigma("ˈboker ˈtov", "boˈker ˈtov").unwrap(), 0.0);
        assert_eq!(
            wer_sigma("ˈtov", "ˈtof").unwrap(),
            wer("ˈtov", "ˈtof").unwrap()
        );
        assert_eq!(cer("abcdefghij", "abcdefghiX").unwrap(), 0.1);
        assert!(matches!(
            wer("", "x"),
            Err(MetricsError::EmptyReference { .. })
        ));
        assert!(matches!(
            cer("", "x"),
            Err(MetricsError::EmptyReference { .. })
        ));
    }

    #[test]
    fn corpus_is_micro_averaged() {
        let r = evaluate_corpus([("1", "a b", "a x"), ("2", "c d", "c d")]).unwrap();
        assert_eq!(r.wer, 0.25);
        assert_eq!(r.per_item[0].wer, 0.5);
        let one = evaluate_corpus([("1", "ab cd", "ab ce")]).unwrap();
        assert_eq!(one.wer, one.per_item[0].wer);
        assert_eq!(one.cer, one.per_item[0].cer);
        assert_eq!(evaluate_corpus([]), Err(MetricsError::EmptyCorpus));
        assert_eq!(
            evaluate_corpus([("7", " ", "x")]),
            Err(MetricsError::EmptyReference {
                id: Some("7".into())
            })
        );
    }

    #[test]
    fn display_caps_at_one() {
        let r = evaluate_corpus([("1", "a", "b c d")]).unwrap();
        assert_eq!(r.wer, 3.0);
        assert!(r.table().contains("1.00"));
    }
}
