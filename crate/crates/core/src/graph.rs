//! The weighted, undirected multi-layer sentence graph.
//!
//! Nodes are sentences; each selected layer holds one symmetric nonnegative
//! adjacency matrix with a zero diagonal. Weighted mode stores raw similarity
//! scores; unweighted mode binarizes them at a threshold (score >= threshold
//! becomes an edge of weight 1).

use serde::{Deserialize, Serialize};

use crate::annotation::AnnotatedDocument;
use crate::error::{Error, Result};
use crate::matrix::SquareMatrix;
use crate::similarity::{
    coref_similarity_from_sets, semantic_similarity, sentence_chain_sets, word_similarity,
    SimilarityKind,
};

/// Raw scores vs. thresholded 0/1 edges. The threshold comparison is
/// inclusive (`score >= threshold`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "mode", content = "threshold")]
pub enum GraphMode {
    Weighted,
    Unweighted(f64),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphBuildConfig {
    pub mode: GraphMode,
    /// Layers to build, in the order they will appear in the graph.
    pub layer_subset: Vec<SimilarityKind>,
    /// n-gram order for the word layer.
    pub word_ngram: usize,
    /// n-gram order for the semantic (concept-sequence) layer.
    pub concept_ngram: usize,
}

impl Default for GraphBuildConfig {
    fn default() -> Self {
        GraphBuildConfig {
            mode: GraphMode::Weighted,
            layer_subset: SimilarityKind::ALL.to_vec(),
            word_ngram: 2,
            concept_ngram: 1,
        }
    }
}

impl GraphBuildConfig {
    pub fn validate(&self) -> Result<()> {
        if let GraphMode::Unweighted(t) = self.mode {
            if !(t > 0.0 && t < 1.0) {
                return Err(Error::InvalidArgument(format!(
                    "unweighted threshold must lie in (0, 1), got {t}"
                )));
            }
        }
        if self.layer_subset.is_empty() {
            return Err(Error::InvalidArgument(
                "layer subset must not be empty".into(),
            ));
        }
        let mut seen = self.layer_subset.clone();
        seen.sort();
        seen.dedup();
        if seen.len() != self.layer_subset.len() {
            return Err(Error::InvalidArgument(
                "layer subset contains duplicates".into(),
            ));
        }
        if self.word_ngram == 0 || self.concept_ngram == 0 {
            return Err(Error::InvalidArgument(
                "n-gram orders must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

/// Per-layer symmetric adjacency over sentence nodes.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiLayerGraph {
    n_nodes: usize,
    layers: Vec<SimilarityKind>,
    adjacency: Vec<SquareMatrix>,
}

impl MultiLayerGraph {
    /// Assemble a graph directly from matrices (used by solvers' tests and by
    /// callers that precomputed similarities). Matrices must be square of the
    /// same size, symmetric, nonnegative, zero-diagonal.
    pub fn from_matrices(
        layers: Vec<SimilarityKind>,
        adjacency: Vec<SquareMatrix>,
    ) -> Result<MultiLayerGraph> {
        if layers.is_empty() || layers.len() != adjacency.len() {
            return Err(Error::InvalidArgument(
                "need one adjacency matrix per layer".into(),
            ));
        }
        let n = adjacency[0].n();
        for (kind, m) in layers.iter().zip(&adjacency) {
            if m.n() != n {
                return Err(Error::InvalidArgument(format!(
                    "layer {kind} is {}x{} but the graph has {n} nodes",
                    m.n(),
                    m.n()
                )));
            }
            if !m.is_symmetric() {
                return Err(Error::InvalidArgument(format!(
                    "layer {kind} is not symmetric"
                )));
            }
            for i in 0..n {
                if m.get(i, i) != 0.0 {
                    return Err(Error::InvalidArgument(format!(
                        "layer {kind} has a nonzero diagonal at {i}"
                    )));
                }
                for j in 0..n {
                    if m.get(i, j) < 0.0 {
                        return Err(Error::InvalidArgument(format!(
                            "layer {kind} has a negative weight at ({i}, {j})"
                        )));
                    }
                }
            }
        }
        Ok(MultiLayerGraph {
            n_nodes: n,
            layers,
            adjacency,
        })
    }

    pub fn n_nodes(&self) -> usize {
        self.n_nodes
    }

    pub fn n_layers(&self) -> usize {
        self.layers.len()
    }

    pub fn layers(&self) -> &[SimilarityKind] {
        &self.layers
    }

    pub fn adjacency(&self) -> &[SquareMatrix] {
        &self.adjacency
    }

    pub fn layer(&self, kind: SimilarityKind) -> Option<&SquareMatrix> {
        self.layers
            .iter()
            .position(|k| *k == kind)
            .map(|i| &self.adjacency[i])
    }

    /// Edge-list dump used for inspection and test fixtures.
    pub fn dump(&self) -> GraphDump {
        GraphDump {
            n_nodes: self.n_nodes,
            layers: self
                .layers
                .iter()
                .zip(&self.adjacency)
                .map(|(kind, m)| LayerDump {
                    kind: *kind,
                    edges: {
                        let mut edges = Vec::new();
                        for i in 0..self.n_nodes {
                            for j in (i + 1)..self.n_nodes {
                                let w = m.get(i, j);
                                if w > 0.0 {
                                    edges.push((i, j, w));
                                }
                            }
                        }
                        edges
                    },
                })
                .collect(),
        }
    }
}

/// Serializable edge-list form of a [`MultiLayerGraph`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GraphDump {
    pub n_nodes: usize,
    pub layers: Vec<LayerDump>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LayerDump {
    pub kind: SimilarityKind,
    pub edges: Vec<(usize, usize, f64)>,
}

/// Compute every selected layer's similarity for each unordered sentence
/// pair and store it per `cfg.mode`. The diagonal stays zero.
pub fn build_graph(doc: &AnnotatedDocument, cfg: &GraphBuildConfig) -> Result<MultiLayerGraph> {
    cfg.validate()?;
    let n = doc.document.n_sentences();
    if n == 0 {
        return Err(Error::InvalidArgument(
            "cannot build a graph over an empty document".into(),
        ));
    }

    let concepts: Vec<Vec<&str>> = (0..n).map(|i| doc.concept_sequence(i)).collect();
    let chain_sets = sentence_chain_sets(&doc.coref_chains, n);

    let mut adjacency = Vec::with_capacity(cfg.layer_subset.len());
    for kind in &cfg.layer_subset {
        let mut m = SquareMatrix::zeros(n);
        for i in 0..n {
            for j in (i + 1)..n {
                let score = match kind {
                    SimilarityKind::Semantic => {
                        semantic_similarity(&concepts[i], &concepts[j], cfg.concept_ngram)?
                    }
                    SimilarityKind::Word => word_similarity(
                        &doc.document.sentences[i],
                        &doc.document.sentences[j],
                        cfg.word_ngram,
                    )?,
                    SimilarityKind::Coref => {
                        coref_similarity_from_sets(&chain_sets[i], &chain_sets[j])
                    }
                };
                let weight = match cfg.mode {
                    GraphMode::Weighted => score,
                    GraphMode::Unweighted(t) => {
                        if score >= t {
                            1.0
                        } else {
                            0.0
                        }
                    }
                };
                m.set_symmetric(i, j, weight);
            }
        }
        adjacency.push(m);
    }

    Ok(MultiLayerGraph {
        n_nodes: n,
        layers: cfg.layer_subset.clone(),
        adjacency,
    })
}
