//! Coupled centrality of sentence nodes and influence of layers.
//!
//! From the multi-layer adjacency three derived quantities drive the fixed
//! point: per-layer total weights `W`, the layer-by-node bipartite matrix
//! `B` (each positive-weight layer's row sums to 1), and the colored network
//! `G`, the influence-weighted sum of all layers. Node centralities `X` and
//! layer influences `Z` are iterated alternately — one damped random-walk
//! update of `X` on the current `G`, then a `Z` refresh normalized so the
//! influences sum to the layer count — until both stop moving in L1.
//!
//! With a single layer the whole system collapses to PageRank on that layer,
//! which doubles as an internal consistency check.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::MultiLayerGraph;
use crate::matrix::SquareMatrix;

/// L1 convergence tolerance of the standalone PageRank iteration.
pub const PAGERANK_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MultiRankParams {
    /// Random-walk damping (teleportation is `1 - damping`).
    pub damping: f64,
    /// L1 tolerance applied to both the `X` and the `Z` update.
    pub tolerance: f64,
    pub max_iterations: usize,
}

impl Default for MultiRankParams {
    fn default() -> Self {
        MultiRankParams {
            damping: 0.85,
            tolerance: 1e-9,
            max_iterations: 1000,
        }
    }
}

impl MultiRankParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.damping > 0.0 && self.damping < 1.0) {
            return Err(Error::InvalidArgument(format!(
                "damping must lie in (0, 1), got {}",
                self.damping
            )));
        }
        if !(self.tolerance > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "tolerance must be positive, got {}",
                self.tolerance
            )));
        }
        if self.max_iterations == 0 {
            return Err(Error::InvalidArgument(
                "max_iterations must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

/// The three networks derived from a multi-layer graph for a given influence
/// vector `Z`.
#[derive(Debug, Clone, PartialEq)]
pub struct DerivedNetworks {
    /// `W[α] = Σ_i Σ_j A_ij[α]` — aggregate weight per layer.
    pub layer_weights: Vec<f64>,
    /// `B[α][i] = Σ_j A_ji[α] / W[α]`; an all-zero row for a layer with
    /// `W[α] = 0`.
    pub bipartite: Vec<Vec<f64>>,
    /// `G_ij = Σ_α A_ij[α] Z[α]`.
    pub colored: SquareMatrix,
}

/// Evaluate the aggregate, bipartite, and colored networks.
pub fn derive_networks(g: &MultiLayerGraph, z: &[f64]) -> Result<DerivedNetworks> {
    if z.len() != g.n_layers() {
        return Err(Error::InvalidArgument(format!(
            "influence vector has {} entries for {} layers",
            z.len(),
            g.n_layers()
        )));
    }
    if z.iter().any(|v| *v < 0.0 || !v.is_finite()) {
        return Err(Error::InvalidArgument(
            "layer influences must be finite and nonnegative".into(),
        ));
    }
    Ok(DerivedNetworks {
        layer_weights: layer_weights(g),
        bipartite: bipartite(g),
        colored: colored(g, z),
    })
}

fn layer_weights(g: &MultiLayerGraph) -> Vec<f64> {
    g.adjacency().iter().map(|m| m.total()).collect()
}

fn bipartite(g: &MultiLayerGraph) -> Vec<Vec<f64>> {
    let n = g.n_nodes();
    g.adjacency()
        .iter()
        .map(|m| {
            let w = m.total();
            if w > 0.0 {
                (0..n).map(|i| m.column_sum(i) / w).collect()
            } else {
                vec![0.0; n]
            }
        })
        .collect()
}

fn colored(g: &MultiLayerGraph, z: &[f64]) -> SquareMatrix {
    let n = g.n_nodes();
    let mut out = SquareMatrix::zeros(n);
    for (m, &weight) in g.adjacency().iter().zip(z) {
        if weight == 0.0 {
            continue;
        }
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, out.get(i, j) + m.get(i, j) * weight);
            }
        }
    }
    out
}

/// Node centralities, layer influences, and convergence diagnostics.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CentralityResult {
    /// Nonnegative, sums to 1.
    pub x: Vec<f64>,
    /// Nonnegative, sums to the layer count.
    pub z: Vec<f64>,
    pub iterations: usize,
    /// `max(ΔX, ΔZ)` in L1 at the last iteration.
    pub final_residual: f64,
    pub converged: bool,
}

/// Residuals of one solver iteration, for the optional convergence trace.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IterationTrace {
    pub iteration: usize,
    pub residual_x: f64,
    pub residual_z: f64,
}

/// Solve the coupled fixed point. A graph whose layers are all empty returns
/// the uniform solution, converged after one iteration.
pub fn multirank(g: &MultiLayerGraph, params: &MultiRankParams) -> Result<CentralityResult> {
    multirank_traced(g, params).map(|(result, _)| result)
}

/// Like [`multirank`] but also returns the per-iteration residuals.
pub fn multirank_traced(
    g: &MultiLayerGraph,
    params: &MultiRankParams,
) -> Result<(CentralityResult, Vec<IterationTrace>)> {
    params.validate()?;
    let n = g.n_nodes();
    let m_layers = g.n_layers();
    if n == 0 {
        return Err(Error::InvalidArgument(
            "multirank requires at least one node".into(),
        ));
    }

    let weights = layer_weights(g);
    let b = bipartite(g);
    let mut x = vec![1.0 / n as f64; n];
    let mut z = vec![1.0; m_layers];

    if weights.iter().all(|w| *w == 0.0) {
        let result = CentralityResult {
            x,
            z,
            iterations: 1,
            final_residual: 0.0,
            converged: true,
        };
        return Ok((
            result,
            vec![IterationTrace {
                iteration: 1,
                residual_x: 0.0,
                residual_z: 0.0,
            }],
        ));
    }

    let beta = 1.0 - params.damping;
    let teleport = beta / n as f64;
    let mut trace = Vec::new();
    let mut residual = f64::INFINITY;
    let mut converged = false;
    let mut iterations = 0;

    for iteration in 1..=params.max_iterations {
        iterations = iteration;
        let g_colored = colored(g, &z);
        let strengths: Vec<f64> = (0..n).map(|j| g_colored.row_sum(j)).collect();

        let dangling_mass: f64 = (0..n)
            .filter(|&j| strengths[j] == 0.0)
            .map(|j| x[j])
            .sum();
        let mut x_next = vec![teleport + params.damping * dangling_mass / n as f64; n];
        for j in 0..n {
            if strengths[j] > 0.0 {
                let share = params.damping * x[j] / strengths[j];
                for i in 0..n {
                    x_next[i] += share * g_colored.get(j, i);
                }
            }
        }
        let total: f64 = x_next.iter().sum();
        for v in &mut x_next {
            *v /= total;
        }
        let residual_x: f64 = x.iter().zip(&x_next).map(|(a, b)| (a - b).abs()).sum();

        // Z update from the fresh X; omega keeps the influences summing to
        // the layer count.
        let raw: Vec<f64> = (0..m_layers)
            .map(|a| {
                let participation: f64 = b[a].iter().zip(&x_next).map(|(bi, xi)| bi * xi).sum();
                weights[a] * participation
            })
            .collect();
        let omega = raw.iter().sum::<f64>() / m_layers as f64;
        let z_next: Vec<f64> = if omega > 0.0 {
            raw.iter().map(|r| r / omega).collect()
        } else {
            z.clone()
        };
        let residual_z: f64 = z.iter().zip(&z_next).map(|(a, b)| (a - b).abs()).sum();

        x = x_next;
        z = z_next;
        residual = residual_x.max(residual_z);
        trace.push(IterationTrace {
            iteration,
            residual_x,
            residual_z,
        });
        if residual_x < params.tolerance && residual_z < params.tolerance {
            converged = true;
            break;
        }
    }

    Ok((
        CentralityResult {
            x,
            z,
            iterations,
            final_residual: residual,
            converged,
        },
        trace,
    ))
}

/// Standard damped power iteration on the column-stochastic normalization of
/// `adjacency`, uniform teleportation, dangling columns redistributed
/// uniformly. Converges to [`PAGERANK_TOLERANCE`] in L1.
pub fn pagerank(adjacency: &SquareMatrix, damping: f64) -> Result<Vec<f64>> {
    let n = adjacency.n();
    if n == 0 {
        return Err(Error::InvalidArgument(
            "pagerank requires at least one node".into(),
        ));
    }
    if !(damping > 0.0 && damping < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "damping must lie in (0, 1), got {damping}"
        )));
    }

    let column_sums: Vec<f64> = (0..n).map(|j| adjacency.column_sum(j)).collect();
    let teleport = (1.0 - damping) / n as f64;
    let mut x = vec![1.0 / n as f64; n];
    // 0.85^k shrinks any residual geometrically; this bound is never hit in
    // practice but keeps the loop finite.
    let max_iterations = 100_000;

    for _ in 0..max_iterations {
        let dangling_mass: f64 = (0..n)
            .filter(|&j| column_sums[j] == 0.0)
            .map(|j| x[j])
            .sum();
        let mut x_next = vec![teleport + damping * dangling_mass / n as f64; n];
        for j in 0..n {
            if column_sums[j] > 0.0 {
                let share = damping * x[j] / column_sums[j];
                for i in 0..n {
                    x_next[i] += share * adjacency.get(i, j);
                }
            }
        }
        let total: f64 = x_next.iter().sum();
        for v in &mut x_next {
            *v /= total;
        }
        let diff: f64 = x.iter().zip(&x_next).map(|(a, b)| (a - b).abs()).sum();
        x = x_next;
        if diff < PAGERANK_TOLERANCE {
            break;
        }
    }
    Ok(x)
}
