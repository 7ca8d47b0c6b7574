//! ROUGE-1/2/L/SU4 scoring.
//!
//! Texts are lower-cased and punctuation-stripped before scoring; stopword
//! removal and stemming are off by default and available as options. ROUGE-N
//! takes clipped n-gram overlap over the flattened token stream. ROUGE-L is
//! the summary-level union-LCS: per reference sentence, the union of LCS
//! matches against every system sentence, divided by reference length
//! (recall) and system length (precision). ROUGE-SU4 counts unigrams plus
//! skip-bigrams with at most four intervening tokens.

use std::collections::BTreeSet;
use std::collections::HashMap;

use rust_stemmers::{Algorithm, Stemmer};

use crate::error::Result;
use crate::text::segment_sentences;

use super::RougeScore;

/// Maximum number of tokens allowed between the two members of an SU4
/// skip-bigram.
pub const SU4_MAX_SKIP: usize = 4;

#[derive(Debug, Clone, Default)]
pub struct RougeOptions {
    /// Tokens to drop before scoring (already-normalized forms).
    pub stopwords: Option<BTreeSet<String>>,
    /// Apply English Snowball stemming to every token.
    pub stemming: bool,
}

impl RougeOptions {
    /// Sentence-segmented, normalized token view of a text.
    pub(super) fn sentences(&self, text: &str) -> Vec<Vec<String>> {
        let stemmer = self.stemming.then(|| Stemmer::create(Algorithm::English));
        segment_sentences(text)
            .iter()
            .map(|s| {
                s.tokens
                    .iter()
                    .map(|t| t.normalized.clone())
                    .filter(|t| {
                        self.stopwords
                            .as_ref()
                            .map_or(true, |stop| !stop.contains(t))
                    })
                    .map(|t| match &stemmer {
                        Some(st) => st.stem(&t).into_owned(),
                        None => t,
                    })
                    .collect()
            })
            .filter(|tokens: &Vec<String>| !tokens.is_empty())
            .collect()
    }

    pub(super) fn flat_tokens(&self, text: &str) -> Vec<String> {
        self.sentences(text).into_iter().flatten().collect()
    }
}

/// Length of the longest common subsequence, by dynamic programming over two
/// rolling rows.
pub fn lcs_length<T: PartialEq>(x: &[T], y: &[T]) -> usize {
    if x.is_empty() || y.is_empty() {
        return 0;
    }
    let mut prev = vec![0usize; y.len() + 1];
    let mut curr = vec![0usize; y.len() + 1];
    for xi in x {
        for (j, yj) in y.iter().enumerate() {
            curr[j + 1] = if xi == yj {
                prev[j] + 1
            } else {
                prev[j + 1].max(curr[j])
            };
        }
        std::mem::swap(&mut prev, &mut curr);
    }
    prev[y.len()]
}

/// Positions of `reference` covered by one canonical LCS alignment with
/// `candidate` (backtrace preferring the reference-side move on ties).
fn lcs_hit_positions(reference: &[String], candidate: &[String], hits: &mut [bool]) {
    let n = reference.len();
    let m = candidate.len();
    if n == 0 || m == 0 {
        return;
    }
    let mut dp = vec![vec![0usize; m + 1]; n + 1];
    for i in 1..=n {
        for j in 1..=m {
            dp[i][j] = if reference[i - 1] == candidate[j - 1] {
                dp[i - 1][j - 1] + 1
            } else {
                dp[i - 1][j].max(dp[i][j - 1])
            };
        }
    }
    let (mut i, mut j) = (n, m);
    while i > 0 && j > 0 {
        if reference[i - 1] == candidate[j - 1] && dp[i][j] == dp[i - 1][j - 1] + 1 {
            hits[i - 1] = true;
            i -= 1;
            j -= 1;
        } else if dp[i - 1][j] >= dp[i][j - 1] {
            i -= 1;
        } else {
            j -= 1;
        }
    }
}

/// Summary-level ROUGE-L with union-LCS across sentences.
pub fn rouge_l(system: &str, reference: &str, opts: &RougeOptions) -> RougeScore {
    let sys_sentences = opts.sentences(system);
    let ref_sentences = opts.sentences(reference);
    let n: usize = sys_sentences.iter().map(Vec::len).sum();
    let m: usize = ref_sentences.iter().map(Vec::len).sum();
    if n == 0 || m == 0 {
        return RougeScore::zeros();
    }
    let mut total_hits = 0usize;
    for ref_sentence in &ref_sentences {
        let mut hits = vec![false; ref_sentence.len()];
        for sys_sentence in &sys_sentences {
            lcs_hit_positions(ref_sentence, sys_sentence, &mut hits);
        }
        total_hits += hits.iter().filter(|h| **h).count();
    }
    RougeScore::from_counts(total_hits, m, n)
}

fn count_grams(tokens: &[String], n: usize) -> HashMap<&[String], usize> {
    let mut counts: HashMap<&[String], usize> = HashMap::new();
    if tokens.len() >= n {
        for gram in tokens.windows(n) {
            *counts.entry(gram).or_insert(0) += 1;
        }
    }
    counts
}

/// Clipped n-gram overlap over the flattened token stream.
pub fn rouge_n(system: &str, reference: &str, n: usize, opts: &RougeOptions) -> Result<RougeScore> {
    if n == 0 {
        return Err(crate::Error::InvalidArgument(
            "ROUGE-N order must be at least 1".into(),
        ));
    }
    let sys_tokens = opts.flat_tokens(system);
    let ref_tokens = opts.flat_tokens(reference);
    let sys_grams = count_grams(&sys_tokens, n);
    let ref_grams = count_grams(&ref_tokens, n);
    let sys_total: usize = sys_grams.values().sum();
    let ref_total: usize = ref_grams.values().sum();
    let overlap: usize = ref_grams
        .iter()
        .map(|(gram, ref_count)| sys_grams.get(gram).copied().unwrap_or(0).min(*ref_count))
        .sum();
    Ok(RougeScore::from_counts(overlap, ref_total, sys_total))
}

/// Counting units of ROUGE-SU4: every unigram plus every ordered pair
/// `(t_i, t_j)` with `i < j <= i + 1 + SU4_MAX_SKIP`.
fn count_su4_units(tokens: &[String]) -> HashMap<(Option<&str>, &str), usize> {
    let mut counts: HashMap<(Option<&str>, &str), usize> = HashMap::new();
    for (i, t) in tokens.iter().enumerate() {
        *counts.entry((None, t.as_str())).or_insert(0) += 1;
        for j in (i + 1)..tokens.len().min(i + 2 + SU4_MAX_SKIP) {
            *counts
                .entry((Some(t.as_str()), tokens[j].as_str()))
                .or_insert(0) += 1;
        }
    }
    counts
}

/// Skip-bigrams (max skip distance 4) unioned with unigrams, clipped.
pub fn rouge_su4(system: &str, reference: &str, opts: &RougeOptions) -> RougeScore {
    let sys_tokens = opts.flat_tokens(system);
    let ref_tokens = opts.flat_tokens(reference);
    let sys_units = count_su4_units(&sys_tokens);
    let ref_units = count_su4_units(&ref_tokens);
    let sys_total: usize = sys_units.values().sum();
    let ref_total: usize = ref_units.values().sum();
    let overlap: usize = ref_units
        .iter()
        .map(|(unit, ref_count)| sys_units.get(unit).copied().unwrap_or(0).min(*ref_count))
        .sum();
    RougeScore::from_counts(overlap, ref_total, sys_total)
}

#[cfg(test)]
mod tests {
    use super::*;

    const REFERENCE: &str = "The book was under the bed.";
    const SYSTEM_1: &str = "The book was found under the bed.";
    const SYSTEM_2: &str = "The little red book was found under the big funny bed.";

    fn opts() -> RougeOptions {
        RougeOptions::default()
    }

    #[test]
    fn lcs_of_the_worked_example_is_six() {
        let x = opts().flat_tokens(SYSTEM_1);
        let y = opts().flat_tokens(REFERENCE);
        assert_eq!(x.len(), 7);
        assert_eq!(y.len(), 6);
        assert_eq!(lcs_length(&x, &y), 6);
    }

    #[test]
    fn lcs_identities() {
        let x = opts().flat_tokens("alpha beta gamma delta");
        assert_eq!(lcs_length(&x, &x), x.len());
        let y = opts().flat_tokens("zeta eta theta");
        assert_eq!(lcs_length(&x, &y), 0);
        assert_eq!(lcs_length(&x, &y), lcs_length(&y, &x));
        let empty: Vec<String> = vec![];
        assert_eq!(lcs_length(&x, &empty), 0);
    }

    #[test]
    fn rouge_l_worked_example() {
        let s1 = rouge_l(SYSTEM_1, REFERENCE, &opts());
        assert!((s1.recall - 1.0).abs() < 1e-12);
        assert!((s1.precision - 6.0 / 7.0).abs() < 1e-12);
        let s2 = rouge_l(SYSTEM_2, REFERENCE, &opts());
        assert!((s2.recall - 1.0).abs() < 1e-12);
        assert!((s2.precision - 6.0 / 11.0).abs() < 1e-12);
    }

    #[test]
    fn rouge_l_perfect_and_empty() {
        let s = rouge_l(REFERENCE, REFERENCE, &opts());
        assert_eq!((s.recall, s.precision, s.f_measure), (1.0, 1.0, 1.0));
        let z = rouge_l("", REFERENCE, &opts());
        assert_eq!((z.recall, z.precision, z.f_measure), (0.0, 0.0, 0.0));
        let z = rouge_l(SYSTEM_1, "", &opts());
        assert_eq!((z.recall, z.precision, z.f_measure), (0.0, 0.0, 0.0));
    }

    #[test]
    fn rouge_l_union_lcs_spans_system_sentences() {
        // Reference sentence needs matches from both system sentences; the
        // union counts each reference position once.
        let reference = "alpha beta gamma delta.";
        let system = "alpha beta one. gamma delta two.";
        let s = rouge_l(system, reference, &opts());
        assert!((s.recall - 1.0).abs() < 1e-12, "{s:?}");
        assert!((s.precision - 4.0 / 6.0).abs() < 1e-12, "{s:?}");
    }

    #[test]
    fn rouge_1_worked_example() {
        // clipped unigrams {the x2, book, was, under, bed}
        let s = rouge_n(SYSTEM_1, REFERENCE, 1, &opts()).unwrap();
        assert!((s.recall - 1.0).abs() < 1e-12);
        assert!((s.precision - 6.0 / 7.0).abs() < 1e-12);
    }

    #[test]
    fn rouge_n_identity_and_disjoint() {
        for n in 1..=3 {
            let s = rouge_n(REFERENCE, REFERENCE, n, &opts()).unwrap();
            assert_eq!((s.recall, s.precision, s.f_measure), (1.0, 1.0, 1.0));
            let z = rouge_n("alpha beta gamma", "delta epsilon zeta", n, &opts()).unwrap();
            assert_eq!((z.recall, z.precision, z.f_measure), (0.0, 0.0, 0.0));
        }
        assert!(rouge_n("a", "b", 0, &opts()).is_err());
    }

    #[test]
    fn rouge_2_clipping_counts_repeats_once_per_occurrence() {
        // system repeats "beta gamma" twice, reference has it once
        let s = rouge_n("beta gamma beta gamma", "beta gamma", 2, &opts()).unwrap();
        assert!((s.recall - 1.0).abs() < 1e-12);
        assert!((s.precision - 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn su4_identity_and_disjoint() {
        let s = rouge_su4(REFERENCE, REFERENCE, &opts());
        assert_eq!((s.recall, s.precision, s.f_measure), (1.0, 1.0, 1.0));
        let z = rouge_su4("alpha beta", "gamma delta", &opts());
        assert_eq!((z.recall, z.precision, z.f_measure), (0.0, 0.0, 0.0));
    }

    #[test]
    fn su4_hand_enumeration() {
        // system "a b c", reference "a b c d".
        // ref units: unigrams a,b,c,d + pairs ab,ac,ad,bc,bd,cd = 10
        // sys units: unigrams a,b,c + pairs ab,ac,bc = 6; all 6 in ref.
        let s = rouge_su4("a b c", "a b c d", &opts());
        assert!((s.recall - 6.0 / 10.0).abs() < 1e-12, "{s:?}");
        assert!((s.precision - 1.0).abs() < 1e-12);
    }

    #[test]
    fn su4_respects_the_skip_window() {
        // five intervening tokens cannot pair
        let far = opts().flat_tokens("a p q r s t b");
        let units = count_su4_units(&far);
        assert!(!units.contains_key(&(Some("a"), "b")));
        // four intervening tokens still pair
        let near = opts().flat_tokens("a p q r s b");
        let units = count_su4_units(&near);
        assert!(units.contains_key(&(Some("a"), "b")));
    }

    #[test]
    fn stopword_and_stemming_options() {
        let mut o = RougeOptions::default();
        o.stopwords = Some(["the".to_string()].into_iter().collect());
        let tokens = o.flat_tokens("The book was under the bed.");
        assert_eq!(tokens, vec!["book", "was", "under", "bed"]);

        let o = RougeOptions {
            stemming: true,
            ..Default::default()
        };
        let a = o.flat_tokens("reduces reduced reducing");
        assert_eq!(a[0], a[1]);
        assert_eq!(a[1], a[2]);
    }
}
