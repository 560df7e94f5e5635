//! Statistic vectors over persistence diagrams.
//!
//! For each selected homology dimension the block is
//! `[mean, max, min, median, std, betti, entropy]` of the bar lifetimes, and a
//! final entry holds the total persistence over finite bars of every
//! dimension.

use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::filtration::build_fsf;
use crate::graph::GraphDataset;
use crate::miner::PatternSet;
use crate::persistence::{compute_persistence, PersistenceDiagram};

/// Statistics per dimension block.
pub const BLOCK_LEN: usize = 7;

/// Names of the statistics in a block, in layout order.
pub const BLOCK_NAMES: [&str; BLOCK_LEN] = ["mean", "max", "min", "median", "std", "betti", "entropy"];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FeatureVector {
    /// Homology dimensions covered, ascending, one block each.
    pub dims: Vec<usize>,
    pub values: Vec<f64>,
}

impl FeatureVector {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// The block for homology dimension `dim`, if selected.
    pub fn block(&self, dim: usize) -> Option<&[f64]> {
        let i = self.dims.iter().position(|&d| d == dim)?;
        Some(&self.values[i * BLOCK_LEN..(i + 1) * BLOCK_LEN])
    }

    pub fn total_persistence(&self) -> f64 {
        *self.values.last().expect("feature vectors end with total persistence")
    }
}

/// Vector length for `dims` selected dimensions.
pub fn feature_len(dims: usize) -> usize {
    BLOCK_LEN * dims + 1
}

/// Features over dimensions `0..=d`; length `7 (d + 1) + 1`.
pub fn extract_features(diagram: &PersistenceDiagram, d: usize) -> FeatureVector {
    let dims: Vec<usize> = (0..=d).collect();
    extract_features_for_dims(diagram, &dims)
}

/// Features over an arbitrary set of dimensions. Unselected dimensions are
/// left out of the layout entirely.
pub fn extract_features_for_dims(diagram: &PersistenceDiagram, dims: &[usize]) -> FeatureVector {
    let mut dims = dims.to_vec();
    dims.sort_unstable();
    dims.dedup();
    let mut values = Vec::with_capacity(feature_len(dims.len()));
    for &dim in &dims {
        let mut lifetimes: Vec<f64> = diagram
            .in_dimension(dim)
            .map(|p| if p.is_essential() { 1.0 } else { p.death } - p.birth)
            .filter(|&l| l > 0.0)
            .collect();
        lifetimes.sort_by(f64::total_cmp);
        values.extend_from_slice(&block(&lifetimes));
    }
    let total: f64 = diagram.points().iter().filter(|p| !p.is_essential()).map(|p| p.death - p.birth).sum();
    values.push(total);
    FeatureVector { dims, values }
}

/// Statistics of sorted, strictly positive lifetimes; all zero when empty.
fn block(lifetimes: &[f64]) -> [f64; BLOCK_LEN] {
    let n = lifetimes.len();
    if n == 0 {
        return [0.0; BLOCK_LEN];
    }
    let sum: f64 = lifetimes.iter().sum();
    let mean = sum / n as f64;
    let median = if n % 2 == 1 { lifetimes[n / 2] } else { (lifetimes[n / 2 - 1] + lifetimes[n / 2]) / 2.0 };
    let var = lifetimes.iter().map(|l| (l - mean) * (l - mean)).sum::<f64>() / n as f64;
    let entropy = if sum > 0.0 {
        -lifetimes.iter().map(|l| l / sum).filter(|&p| p > 0.0).map(|p| p * libm::log(p)).sum::<f64>()
    } else {
        0.0
    };
    [mean, lifetimes[n - 1], lifetimes[0], median, libm::sqrt(var), n as f64, entropy.max(0.0)]
}

/// Per-graph feature vectors for a dataset, in dataset order.
///
/// Each graph's frequent-subgraph filtration is built from `patterns` with
/// patterns of at most `k` vertices, and persistence is computed up to
/// dimension `k - 1`.
pub fn features_for_dataset(
    dataset: &GraphDataset,
    patterns: &PatternSet,
    dims: &[usize],
    k: usize,
    cap: Option<usize>,
) -> Vec<FeatureVector> {
    dataset.graphs().iter().map(|g| graph_features(g, patterns, dims, k, cap)).collect()
}

/// Feature vector of a single graph; see [`features_for_dataset`].
pub fn graph_features(
    graph: &crate::graph::LabeledGraph,
    patterns: &PatternSet,
    dims: &[usize],
    k: usize,
    cap: Option<usize>,
) -> FeatureVector {
    let complex = build_fsf(graph, patterns, k, cap);
    let diagram = compute_persistence(&complex, k.saturating_sub(1)).expect("frequent-subgraph filtrations are valid");
    extract_features_for_dims(&diagram, dims)
}
