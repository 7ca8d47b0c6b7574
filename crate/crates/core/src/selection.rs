//! Turning centralities into a summary.
//!
//! Basic mode ranks sentences by centrality alone. Enhanced mode blends the
//! min-max-normalized centrality with each sentence's share of the
//! document's concept mentions: `gamma * minmax(X) + theta * lencon`,
//! min-max-normalized again. The top `k = max(1, round(rate * n))` sentences
//! form the summary, emitted in document order by default.

use serde::{Deserialize, Serialize};

use crate::annotation::AnnotatedDocument;
use crate::error::{Error, Result};
use crate::text::Document;

/// How the centrality value enters the Enhanced combination. `MinMax`
/// (default) uses the normalized centrality value itself; `Rank` uses the
/// normalized descending rank position instead, as a sensitivity alternative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum CentralityTransform {
    #[default]
    MinMax,
    Rank,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "mode")]
pub enum SelectionMode {
    Basic,
    Enhanced { gamma: f64, theta: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum OutputOrder {
    #[default]
    DocumentOrder,
    ScoreOrder,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SummaryConfig {
    /// Fraction of the document's sentences to keep, in `(0, 1]`.
    pub compression_rate: f64,
    pub mode: SelectionMode,
    pub output_order: OutputOrder,
    pub centrality_transform: CentralityTransform,
}

impl Default for SummaryConfig {
    fn default() -> Self {
        SummaryConfig {
            compression_rate: 0.20,
            mode: SelectionMode::Basic,
            output_order: OutputOrder::DocumentOrder,
            centrality_transform: CentralityTransform::MinMax,
        }
    }
}

impl SummaryConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.compression_rate > 0.0 && self.compression_rate <= 1.0) {
            return Err(Error::InvalidArgument(format!(
                "compression rate must lie in (0, 1], got {}",
                self.compression_rate
            )));
        }
        Ok(())
    }
}

/// An extractive summary: the selected (sentence index, score) pairs, the
/// selected sentence texts in the same order, and their concatenation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub doc_id: String,
    pub selected: Vec<(usize, f64)>,
    pub sentence_texts: Vec<String>,
    pub text: String,
}

impl Summary {
    pub fn k(&self) -> usize {
        self.selected.len()
    }

    pub fn indices(&self) -> Vec<usize> {
        self.selected.iter().map(|(i, _)| *i).collect()
    }

    /// One sentence per line.
    pub fn plain_text(&self) -> String {
        let mut out = self.sentence_texts.join("\n");
        out.push('\n');
        out
    }

    /// The summary file format: `{doc_id, k, indices, scores, text}`.
    pub fn to_file(&self) -> SummaryFile {
        SummaryFile {
            doc_id: self.doc_id.clone(),
            k: self.k(),
            indices: self.indices(),
            scores: self.selected.iter().map(|(_, s)| *s).collect(),
            text: self.text.clone(),
        }
    }
}

/// Serialized form of a summary.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryFile {
    pub doc_id: String,
    pub k: usize,
    pub indices: Vec<usize>,
    pub scores: Vec<f64>,
    pub text: String,
}

/// Each sentence's share of the document's concept mentions. All zeros when
/// the document has no mentions at all.
pub fn len_con(doc: &AnnotatedDocument) -> Vec<f64> {
    let counts = doc.mention_counts();
    let total: usize = counts.iter().sum();
    if total == 0 {
        return vec![0.0; counts.len()];
    }
    counts.iter().map(|c| *c as f64 / total as f64).collect()
}

/// `(v - min) / (max - min)`; a constant vector (including a single element)
/// maps to all zeros.
pub fn min_max_normalize(v: &[f64]) -> Result<Vec<f64>> {
    if v.is_empty() {
        return Err(Error::InvalidArgument(
            "cannot min-max normalize an empty vector".into(),
        ));
    }
    let min = v.iter().cloned().fold(f64::INFINITY, f64::min);
    let max = v.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if max == min {
        return Ok(vec![0.0; v.len()]);
    }
    Ok(v.iter().map(|x| (x - min) / (max - min)).collect())
}

/// Indices sorted by centrality, descending; ties broken by the smaller
/// sentence index.
pub fn score_basic(x: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..x.len()).collect();
    order.sort_by(|&a, &b| x[b].partial_cmp(&x[a]).unwrap_or(std::cmp::Ordering::Equal).then(a.cmp(&b)));
    order
}

/// Enhanced combined score, min-max normalized: `gamma * t(X) + theta *
/// lencon` where `t` is the configured centrality transform.
pub fn score_enhanced(x: &[f64], lencon: &[f64], gamma: f64, theta: f64) -> Result<Vec<f64>> {
    score_enhanced_with(x, lencon, gamma, theta, CentralityTransform::MinMax)
}

pub fn score_enhanced_with(
    x: &[f64],
    lencon: &[f64],
    gamma: f64,
    theta: f64,
    transform: CentralityTransform,
) -> Result<Vec<f64>> {
    if x.len() != lencon.len() {
        return Err(Error::InvalidArgument(format!(
            "centrality has {} entries but lencon has {}",
            x.len(),
            lencon.len()
        )));
    }
    let centrality_term = match transform {
        CentralityTransform::MinMax => min_max_normalize(x)?,
        CentralityTransform::Rank => rank_values(x),
    };
    let combined: Vec<f64> = centrality_term
        .iter()
        .zip(lencon)
        .map(|(c, l)| gamma * c + theta * l)
        .collect();
    min_max_normalize(&combined)
}

/// Normalized descending-rank positions: the top-ranked sentence gets 1, the
/// bottom gets 0 (all zeros for a single sentence, mirroring min-max).
fn rank_values(x: &[f64]) -> Vec<f64> {
    let n = x.len();
    let mut values = vec![0.0; n];
    if n <= 1 {
        return values;
    }
    for (position, &index) in score_basic(x).iter().enumerate() {
        values[index] = (n - 1 - position) as f64 / (n - 1) as f64;
    }
    values
}

/// Keep the top `k = max(1, round(rate * n))` sentences by score (ties to
/// the smaller index) and emit them in the configured order.
pub fn select(scores: &[f64], doc: &Document, cfg: &SummaryConfig) -> Result<Summary> {
    cfg.validate()?;
    let n = doc.n_sentences();
    if n == 0 {
        return Err(Error::InvalidArgument(format!(
            "document {:?} has no sentences to select from",
            doc.doc_id
        )));
    }
    if scores.len() != n {
        return Err(Error::InvalidArgument(format!(
            "{} scores for {} sentences",
            scores.len(),
            n
        )));
    }

    let k = ((cfg.compression_rate * n as f64).round() as usize).clamp(1, n);
    let ranking = score_basic(scores);
    let mut chosen: Vec<usize> = ranking[..k].to_vec();
    match cfg.output_order {
        OutputOrder::DocumentOrder => chosen.sort_unstable(),
        OutputOrder::ScoreOrder => {}
    }

    let selected: Vec<(usize, f64)> = chosen.iter().map(|&i| (i, scores[i])).collect();
    let sentence_texts: Vec<String> = chosen
        .iter()
        .map(|&i| doc.sentences[i].text.clone())
        .collect();
    let text = sentence_texts.join(" ");
    Ok(Summary {
        doc_id: doc.doc_id.clone(),
        selected,
        sentence_texts,
        text,
    })
}
