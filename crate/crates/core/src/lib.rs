//! Core algorithms for frequent-subgraph persistent homology (FPH).
//!
//! The pipeline is:
//!
//! 1. [`miner::mine_frequent`] mines connected vertex-labeled patterns with at
//!    most `k` vertices whose MNI support on the disjoint union of a dataset's
//!    graphs reaches a threshold.
//! 2. [`filtration::build_fsf`] turns the embeddings of those patterns into a
//!    filtered simplicial complex per graph: the vertex image of each embedding
//!    spans a simplex entering at `1 / support`.
//! 3. [`persistence::compute_persistence`] reduces the boundary matrix over
//!    GF(2) and yields a [`persistence::PersistenceDiagram`].
//! 4. [`features::extract_features`] summarizes diagrams as fixed-length
//!    statistic vectors, and [`classify`] evaluates them with k-NN.
//!
//! [`bottleneck`] and [`robustness`] measure how diagrams move under edge
//! perturbation.
//!
//! The crate is `no_std` and only needs an allocator; file formats, the CLI
//! and parallel drivers live in the `fph` crate.
#![no_std]

extern crate alloc;

pub mod bottleneck;
pub mod classify;
pub mod dfs_code;
pub mod features;
pub mod filtration;
pub mod graph;
pub mod matcher;
pub mod miner;
pub mod perturb;
pub mod persistence;
pub mod robustness;
mod rng;
pub mod value;

pub use bottleneck::{bottleneck_distance, Bottleneck};
pub use classify::{knn_cross_validate, ClassifyError, CvReport, KnnConfig};
pub use dfs_code::{min_dfs_code, DfsCode, DfsEdge};
pub use features::{extract_features, extract_features_for_dims, features_for_dataset, FeatureVector};
pub use filtration::{build_degree_filtration, build_fsf, FilteredComplex, Simplex};
pub use graph::{GraphDataset, GraphError, Label, LabeledGraph, VertexId};
pub use matcher::{enumerate_embeddings, Embedding};
pub use miner::{mine_frequent, mni_support, MiningConfig, MiningError, MiningStats, Pattern, PatternSet};
pub use persistence::{betti_numbers, compute_persistence, ComplexError, DiagramPoint, PersistenceDiagram};
pub use perturb::{perturb_graph, PerturbError, PerturbMode};
pub use robustness::{run_robustness, RobustnessCell, RobustnessConfig, RobustnessReport};
pub use value::Value;
