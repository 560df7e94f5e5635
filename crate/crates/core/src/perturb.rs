//! Random edge removal and addition.

use alloc::vec::Vec;

use rand::seq::index;
use serde::{Deserialize, Serialize};

use crate::graph::{LabeledGraph, VertexId};
use crate::rng::seeded;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum PerturbMode {
    Remove,
    Add,
}

impl PerturbMode {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Remove => "remove",
            Self::Add => "add",
        }
    }
}

impl core::str::FromStr for PerturbMode {
    type Err = PerturbError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "remove" | "R" | "r" => Ok(Self::Remove),
            "add" | "A" | "a" => Ok(Self::Add),
            _ => Err(PerturbError::UnknownMode),
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum PerturbError {
    #[error("perturbation ratio {0} is not in (0, 1)")]
    InvalidRatio(f64),
    #[error("cannot add {requested} edges: only {available} non-edges exist")]
    InsufficientNonEdges { requested: usize, available: usize },
    #[error("unknown perturbation mode (expected `remove` or `add`)")]
    UnknownMode,
}

/// Number of edges a perturbation at `ratio` touches: `floor(ratio * |E|)`.
pub fn perturbation_size(edge_count: usize, ratio: f64) -> usize {
    // The epsilon absorbs products like 0.29 * 100 = 28.999999999999996.
    libm::floor(ratio * edge_count as f64 + 1e-9) as usize
}

/// Removes or adds `floor(ratio * |E|)` edges chosen uniformly at random.
///
/// Added edges are drawn from all current non-edges regardless of labels.
/// Vertex count and labels never change, and the result depends only on the
/// inputs and `seed`.
pub fn perturb_graph(g: &LabeledGraph, mode: PerturbMode, ratio: f64, seed: u64) -> Result<LabeledGraph, PerturbError> {
    if !(ratio > 0.0 && ratio < 1.0) {
        return Err(PerturbError::InvalidRatio(ratio));
    }
    let count = perturbation_size(g.edge_count(), ratio);
    if count == 0 {
        return Ok(g.clone());
    }
    let mut rng = seeded(seed);
    let edges: Vec<(VertexId, VertexId)> = g.edges().collect();
    let new_edges = match mode {
        PerturbMode::Remove => {
            let mut drop = alloc::vec![false; edges.len()];
            for i in index::sample(&mut rng, edges.len(), count) {
                drop[i] = true;
            }
            edges.iter().zip(&drop).filter(|(_, &d)| !d).map(|(&e, _)| e).collect::<Vec<_>>()
        }
        PerturbMode::Add => {
            let n = g.vertex_count() as VertexId;
            let non_edges: Vec<(VertexId, VertexId)> = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .filter(|&(u, v)| !g.has_edge(u, v))
                .collect();
            if non_edges.len() < count {
                return Err(PerturbError::InsufficientNonEdges { requested: count, available: non_edges.len() });
            }
            let mut out = edges;
            out.extend(index::sample(&mut rng, non_edges.len(), count).into_iter().map(|i| non_edges[i]));
            out
        }
    };
    Ok(LabeledGraph::new(g.labels().to_vec(), new_edges).expect("perturbation keeps the graph simple"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    /// A 20-edge graph: the cycle on 20 vertices.
    fn cycle20() -> LabeledGraph {
        LabeledGraph::new(vec![0; 20], (0..20).map(|i| (i, (i + 1) % 20))).unwrap()
    }

    #[test]
    fn remove_five_percent_of_twenty() {
        let g = perturb_graph(&cycle20(), PerturbMode::Remove, 0.05, 7).unwrap();
        assert_eq!(g.edge_count(), 19);
    }

    #[test]
    fn add_ten_percent_of_twenty() {
        let g = perturb_graph(&cycle20(), PerturbMode::Add, 0.1, 7).unwrap();
        assert_eq!(g.edge_count(), 22);
    }

    #[test]
    fn seeded_runs_are_identical() {
        let a = perturb_graph(&cycle20(), PerturbMode::Add, 0.1, 99).unwrap();
        let b = perturb_graph(&cycle20(), PerturbMode::Add, 0.1, 99).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn zero_sized_perturbation_is_identity() {
        let g = LabeledGraph::new(vec![0, 1, 2], [(0, 1), (1, 2)]).unwrap();
        assert_eq!(perturb_graph(&g, PerturbMode::Remove, 0.1, 1).unwrap(), g);
    }

    #[test]
    fn complete_graph_cannot_grow() {
        let k4 = LabeledGraph::new(vec![0; 4], [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let err = perturb_graph(&k4, PerturbMode::Add, 0.5, 1).unwrap_err();
        assert_eq!(err, PerturbError::InsufficientNonEdges { requested: 3, available: 0 });
    }

    #[test]
    fn ratio_must_be_open_unit_interval() {
        assert!(perturb_graph(&cycle20(), PerturbMode::Add, 1.0, 1).is_err());
        assert!(perturb_graph(&cycle20(), PerturbMode::Add, 0.0, 1).is_err());
    }
}
