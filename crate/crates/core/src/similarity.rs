//! Inter-sentence similarity scores for the three graph layers.
//!
//! All three scores are symmetric and live in `[0, 1]`. The semantic and
//! word layers share one primitive: the Dice coefficient over n-gram
//! multisets, applied to concept-id sequences and to normalized token
//! sequences respectively. The co-reference layer scores the overlap of the
//! chain sets touching each sentence.

use std::collections::BTreeSet;
use std::collections::HashMap;
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use crate::annotation::CorefChain;
use crate::error::Result;
use crate::text::{ngrams, Sentence};

/// The three relationship types a layer can carry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SimilarityKind {
    Semantic,
    Word,
    Coref,
}

impl SimilarityKind {
    pub const ALL: [SimilarityKind; 3] = [
        SimilarityKind::Semantic,
        SimilarityKind::Word,
        SimilarityKind::Coref,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            SimilarityKind::Semantic => "semantic",
            SimilarityKind::Word => "word",
            SimilarityKind::Coref => "coref",
        }
    }
}

impl std::fmt::Display for SimilarityKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for SimilarityKind {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "semantic" => Ok(SimilarityKind::Semantic),
            "word" => Ok(SimilarityKind::Word),
            "coref" | "co-reference" | "coreference" => Ok(SimilarityKind::Coref),
            other => Err(crate::Error::InvalidArgument(format!(
                "unknown layer {other:?} (expected semantic, word, or coref)"
            ))),
        }
    }
}

/// Dice coefficient over the n-gram multisets of two sequences:
/// `2 * |A ∩ B| / (|A| + |B|)` with min-multiplicity intersection.
/// Both multisets empty (sequences shorter than `n`) scores 0.
pub fn ngram_similarity<T: Eq + Hash>(a: &[T], b: &[T], n: usize) -> Result<f64> {
    let grams_a = ngrams(a, n)?;
    let grams_b = ngrams(b, n)?;
    if grams_a.is_empty() && grams_b.is_empty() {
        return Ok(0.0);
    }
    let mut counts: HashMap<&[T], usize> = HashMap::new();
    for g in &grams_a {
        *counts.entry(*g).or_insert(0) += 1;
    }
    let mut overlap = 0usize;
    for g in &grams_b {
        if let Some(c) = counts.get_mut(*g) {
            if *c > 0 {
                *c -= 1;
                overlap += 1;
            }
        }
    }
    Ok(2.0 * overlap as f64 / (grams_a.len() + grams_b.len()) as f64)
}

/// Similarity of two sentences' concept-id sequences (span order). A
/// sentence without concepts scores 0 against everything.
pub fn semantic_similarity(concepts_a: &[&str], concepts_b: &[&str], n: usize) -> Result<f64> {
    ngram_similarity(concepts_a, concepts_b, n)
}

/// Similarity of two sentences' normalized token sequences.
pub fn word_similarity(a: &Sentence, b: &Sentence, n: usize) -> Result<f64> {
    ngram_similarity(&a.normalized_tokens(), &b.normalized_tokens(), n)
}

/// Chain ids with at least one mention in each sentence, indexed by sentence.
/// Precomputing this makes all-pairs co-reference scoring linear in chains.
pub fn sentence_chain_sets(chains: &[CorefChain], n_sentences: usize) -> Vec<BTreeSet<&str>> {
    let mut sets: Vec<BTreeSet<&str>> = vec![BTreeSet::new(); n_sentences];
    for chain in chains {
        for m in &chain.mentions {
            if m.sentence_index < n_sentences {
                sets[m.sentence_index].insert(chain.chain_id.as_str());
            }
        }
    }
    sets
}

/// Overlap of the chain sets touching sentences `i` and `j`:
/// `|K_i ∩ K_j| / max(|K_i|, |K_j|)`; 0 when either set is empty.
pub fn coref_similarity(i: usize, j: usize, chains: &[CorefChain]) -> f64 {
    let n = chains
        .iter()
        .flat_map(|c| c.mentions.iter().map(|m| m.sentence_index))
        .max()
        .map_or(0, |m| m + 1)
        .max(i + 1)
        .max(j + 1);
    let sets = sentence_chain_sets(chains, n);
    coref_similarity_from_sets(&sets[i], &sets[j])
}

pub fn coref_similarity_from_sets(ki: &BTreeSet<&str>, kj: &BTreeSet<&str>) -> f64 {
    if ki.is_empty() || kj.is_empty() {
        return 0.0;
    }
    let shared = ki.intersection(kj).count();
    shared as f64 / ki.len().max(kj.len()) as f64
}
