//! Comparison systems: LexRank and a per-layer PageRank weighted average.
//!
//! LexRank builds a TF-IDF cosine similarity matrix over sentences, keeps
//! edges at or above a cosine threshold (weight 1), and ranks by PageRank.
//! IDF defaults to per-document computation (each sentence acting as a
//! "document"), so no corpus statistics are required; a corpus-level IDF
//! sidecar can be supplied instead.

use std::collections::{BTreeSet, HashMap};
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::MultiLayerGraph;
use crate::matrix::SquareMatrix;
use crate::multirank::pagerank;
use crate::selection::{select, Summary, SummaryConfig};
use crate::text::Document;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum IdfSource {
    /// Treat each sentence as a document when computing IDF.
    #[default]
    PerDocument,
    /// Use document frequencies from a corpus sidecar.
    CorpusComputed,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LexRankConfig {
    /// Pairs with cosine at or above this value become edges of weight 1.
    pub cosine_threshold: f64,
    pub damping: f64,
    pub idf_source: IdfSource,
}

impl Default for LexRankConfig {
    fn default() -> Self {
        LexRankConfig {
            cosine_threshold: 0.1,
            damping: 0.85,
            idf_source: IdfSource::PerDocument,
        }
    }
}

impl LexRankConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.cosine_threshold >= 0.0 && self.cosine_threshold < 1.0) {
            return Err(Error::InvalidArgument(format!(
                "cosine threshold must lie in [0, 1), got {}",
                self.cosine_threshold
            )));
        }
        if !(self.damping > 0.0 && self.damping < 1.0) {
            return Err(Error::InvalidArgument(format!(
                "damping must lie in (0, 1), got {}",
                self.damping
            )));
        }
        Ok(())
    }
}

/// Corpus-level document frequencies, loaded from a TSV sidecar with columns
/// `term`, `document_frequency`, `corpus_size`. Unseen terms fall back to a
/// document frequency of 1.
#[derive(Debug, Clone, Default)]
pub struct CorpusIdf {
    frequencies: HashMap<String, f64>,
    corpus_size: f64,
}

impl CorpusIdf {
    pub fn from_tsv(path: impl AsRef<Path>) -> Result<CorpusIdf> {
        let path = path.as_ref();
        let content = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let mut frequencies = HashMap::new();
        let mut corpus_size: Option<f64> = None;
        for (lineno, line) in content.lines().enumerate() {
            let line_number = lineno + 1;
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split('\t').collect();
            if fields.len() != 3 {
                return Err(Error::Parse {
                    path: path.to_path_buf(),
                    line: line_number,
                    message: format!(
                        "expected 3 tab-separated fields (term, document_frequency, corpus_size), got {}",
                        fields.len()
                    ),
                });
            }
            let df: f64 = fields[1].trim().parse().map_err(|_| Error::Parse {
                path: path.to_path_buf(),
                line: line_number,
                message: format!("document_frequency {:?} is not a number", fields[1]),
            })?;
            let size: f64 = fields[2].trim().parse().map_err(|_| Error::Parse {
                path: path.to_path_buf(),
                line: line_number,
                message: format!("corpus_size {:?} is not a number", fields[2]),
            })?;
            match corpus_size {
                None => corpus_size = Some(size),
                Some(prev) if prev != size => {
                    return Err(Error::Parse {
                        path: path.to_path_buf(),
                        line: line_number,
                        message: format!("corpus_size {size} disagrees with earlier value {prev}"),
                    });
                }
                Some(_) => {}
            }
            frequencies.insert(fields[0].trim().to_lowercase(), df.max(1.0));
        }
        Ok(CorpusIdf {
            frequencies,
            corpus_size: corpus_size.unwrap_or(1.0),
        })
    }

    pub fn idf(&self, term: &str) -> f64 {
        let df = self.frequencies.get(term).copied().unwrap_or(1.0);
        (self.corpus_size / df).ln().max(0.0)
    }
}

fn per_document_idf(doc: &Document) -> HashMap<String, f64> {
    let n = doc.n_sentences() as f64;
    let mut df: HashMap<String, f64> = HashMap::new();
    for sentence in &doc.sentences {
        let distinct: BTreeSet<&str> = sentence.normalized_tokens().into_iter().collect();
        for term in distinct {
            *df.entry(term.to_string()).or_insert(0.0) += 1.0;
        }
    }
    df.into_iter().map(|(t, d)| (t, (n / d).ln())).collect()
}

/// The thresholded 0/1 LexRank adjacency: cosine similarity of TF-IDF
/// sentence vectors, binarized at the configured threshold.
pub fn lexrank_graph(
    doc: &Document,
    corpus_idf: Option<&CorpusIdf>,
    cfg: &LexRankConfig,
) -> Result<SquareMatrix> {
    cfg.validate()?;
    let n = doc.n_sentences();
    if n == 0 {
        return Err(Error::InvalidArgument(format!(
            "document {:?} has no sentences",
            doc.doc_id
        )));
    }
    let local_idf;
    let idf_of: Box<dyn Fn(&str) -> f64> = match cfg.idf_source {
        IdfSource::PerDocument => {
            local_idf = per_document_idf(doc);
            Box::new(move |t: &str| local_idf.get(t).copied().unwrap_or(0.0))
        }
        IdfSource::CorpusComputed => {
            let corpus = corpus_idf.ok_or_else(|| {
                Error::InvalidArgument(
                    "LexRank was configured for corpus IDF but no sidecar was supplied".into(),
                )
            })?;
            Box::new(move |t: &str| corpus.idf(t))
        }
    };

    // TF-IDF vectors per sentence; cosine uses idf^2 in the dot product by
    // virtue of weighting both vectors.
    let vectors: Vec<HashMap<&str, f64>> = doc
        .sentences
        .iter()
        .map(|s| {
            let mut tf: HashMap<&str, f64> = HashMap::new();
            for t in s.normalized_tokens() {
                *tf.entry(t).or_insert(0.0) += 1.0;
            }
            tf.into_iter().map(|(t, c)| (t, c * idf_of(t))).collect()
        })
        .collect();
    let norms: Vec<f64> = vectors
        .iter()
        .map(|v| v.values().map(|w| w * w).sum::<f64>().sqrt())
        .collect();

    let mut m = SquareMatrix::zeros(n);
    for i in 0..n {
        for j in (i + 1)..n {
            let cosine = if norms[i] > 0.0 && norms[j] > 0.0 {
                let dot: f64 = vectors[i]
                    .iter()
                    .filter_map(|(t, wi)| vectors[j].get(t).map(|wj| wi * wj))
                    .sum();
                dot / (norms[i] * norms[j])
            } else {
                0.0
            };
            if cosine >= cfg.cosine_threshold {
                m.set_symmetric(i, j, 1.0);
            }
        }
    }
    Ok(m)
}

/// PageRank centrality over the thresholded LexRank graph.
pub fn lexrank_centrality(
    doc: &Document,
    corpus_idf: Option<&CorpusIdf>,
    cfg: &LexRankConfig,
) -> Result<Vec<f64>> {
    let graph = lexrank_graph(doc, corpus_idf, cfg)?;
    pagerank(&graph, cfg.damping)
}

/// Full LexRank baseline: centrality plus compression-rate selection, output
/// in document order.
pub fn lexrank_summarize(
    doc: &Document,
    corpus_idf: Option<&CorpusIdf>,
    cfg: &LexRankConfig,
    rate: f64,
) -> Result<Summary> {
    let centrality = lexrank_centrality(doc, corpus_idf, cfg)?;
    select(
        &centrality,
        doc,
        &SummaryConfig {
            compression_rate: rate,
            ..Default::default()
        },
    )
}

/// Rank each layer separately with PageRank, then average the per-layer
/// score vectors with the given weights. The result is a convex combination
/// of probability vectors, so it sums to 1.
pub fn simple_weighted_average(
    g: &MultiLayerGraph,
    layer_weights: &[f64],
    damping: f64,
) -> Result<Vec<f64>> {
    if layer_weights.len() != g.n_layers() {
        return Err(Error::InvalidArgument(format!(
            "{} weights for {} layers",
            layer_weights.len(),
            g.n_layers()
        )));
    }
    if layer_weights.iter().any(|w| *w < 0.0 || !w.is_finite()) {
        return Err(Error::InvalidArgument(
            "layer weights must be finite and nonnegative".into(),
        ));
    }
    let total: f64 = layer_weights.iter().sum();
    if total == 0.0 {
        return Err(Error::InvalidArgument(
            "layer weights must not all be zero".into(),
        ));
    }
    let mut scores = vec![0.0; g.n_nodes()];
    for (layer, &weight) in g.adjacency().iter().zip(layer_weights) {
        if weight == 0.0 {
            continue;
        }
        let pr = pagerank(layer, damping)?;
        for (s, p) in scores.iter_mut().zip(&pr) {
            *s += weight * p;
        }
    }
    for s in &mut scores {
        *s /= total;
    }
    Ok(scores)
}
