//! Parallel per-graph drivers over the core algorithms.
//!
//! Work is split across graphs (or folds) with rayon and collected in input
//! order, so every result matches the serial core functions exactly.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use fph_core::classify::{fold_accuracy, prepare, report};
use fph_core::robustness::{aggregate, graph_trials};
use fph_core::{
    build_degree_filtration, build_fsf, compute_persistence, extract_features_for_dims, mine_frequent, ClassifyError,
    ComplexError, CvReport, FeatureVector, FilteredComplex, GraphDataset, KnnConfig, LabeledGraph, MiningConfig,
    MiningError, PatternSet, PersistenceDiagram, PerturbError, RobustnessConfig, RobustnessReport,
};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Which filtration to build per graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Filtration {
    /// Frequent-subgraph filtration from a pattern set.
    Fph,
    /// Lower-star filtration on vertex degree.
    Dph,
}

impl Filtration {
    /// Highest homology dimension worth computing.
    pub fn max_dim(self, k: usize) -> usize {
        match self {
            Self::Fph => k.saturating_sub(1),
            Self::Dph => 1,
        }
    }
}

pub fn complex(graph: &LabeledGraph, filtration: Filtration, patterns: &PatternSet, k: usize, cap: Option<usize>) -> FilteredComplex {
    match filtration {
        Filtration::Fph => build_fsf(graph, patterns, k, cap),
        Filtration::Dph => build_degree_filtration(graph),
    }
}

pub fn complexes(
    dataset: &GraphDataset,
    filtration: Filtration,
    patterns: &PatternSet,
    k: usize,
    cap: Option<usize>,
) -> Vec<FilteredComplex> {
    dataset.graphs().par_iter().map(|g| complex(g, filtration, patterns, k, cap)).collect()
}

pub fn diagrams(
    dataset: &GraphDataset,
    filtration: Filtration,
    patterns: &PatternSet,
    k: usize,
    cap: Option<usize>,
) -> Result<Vec<PersistenceDiagram>, ComplexError> {
    let max_dim = filtration.max_dim(k);
    dataset
        .graphs()
        .par_iter()
        .map(|g| compute_persistence(&complex(g, filtration, patterns, k, cap), max_dim))
        .collect()
}

pub fn features(diagrams: &[PersistenceDiagram], dims: &[usize]) -> Vec<FeatureVector> {
    diagrams.par_iter().map(|d| extract_features_for_dims(d, dims)).collect()
}

pub fn robustness(
    dataset: &GraphDataset,
    patterns: &PatternSet,
    config: &RobustnessConfig,
) -> Result<RobustnessReport, PerturbError> {
    config.validate()?;
    let trials: Vec<_> =
        dataset.graphs().par_iter().enumerate().map(|(i, g)| graph_trials(g, i, patterns, config)).collect();
    Ok(aggregate(&trials, config))
}

/// Cross-validation with folds evaluated in parallel.
pub fn cross_validate(features: &[Vec<f64>], labels: &[u32], config: &KnnConfig) -> Result<CvReport, ClassifyError> {
    let (labels, assignment) = prepare(features, labels, config)?;
    let accs = (0..config.folds)
        .into_par_iter()
        .map(|f| fold_accuracy(features, &labels, &assignment, f, config.k_neighbors))
        .collect();
    Ok(report(accs, *config, features.first().map_or(0, Vec::len)))
}

/// Mines and records wall time in the stats.
pub fn mine_timed(dataset: &GraphDataset, config: MiningConfig) -> Result<PatternSet, MiningError> {
    let start = Instant::now();
    let mut set = mine_frequent(dataset, config)?;
    set.stats_mut().wall_time = Some(start.elapsed());
    Ok(set)
}

/// Largest support threshold (halving from a quarter of the union's vertex
/// count) at which mining yields at least `min_patterns` patterns.
pub fn sigma_for_pattern_count(
    dataset: &GraphDataset,
    k: usize,
    min_patterns: usize,
) -> Result<(u32, PatternSet), MiningError> {
    let vertices: usize = dataset.graphs().iter().map(LabeledGraph::vertex_count).sum();
    let mut sigma = (vertices / 4).max(1) as u32;
    loop {
        let set = mine_frequent(dataset, MiningConfig::new(sigma, k))?;
        if set.len() >= min_patterns || sigma == 1 {
            return Ok((sigma, set));
        }
        sigma /= 2;
    }
}

/// One row of a budget sweep.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BudgetRow {
    /// `None` for exact mining.
    pub budget: Option<usize>,
    pub runtime: Duration,
    pub patterns: usize,
    pub embeddings_retained: u64,
}

pub fn budget_sweep(dataset: &GraphDataset, sigma: u32, k: usize, budgets: &[Option<usize>]) -> Result<Vec<(BudgetRow, PatternSet)>, MiningError> {
    budgets
        .iter()
        .map(|&budget| {
            let set = mine_timed(dataset, MiningConfig::new(sigma, k).with_budget(budget))?;
            let row = BudgetRow {
                budget,
                runtime: set.stats().wall_time.unwrap_or_default(),
                patterns: set.len(),
                embeddings_retained: set.stats().embeddings_retained,
            };
            Ok((row, set))
        })
        .collect()
}

/// Indices of a class-stratified sample of `n` graphs, ascending. Each class
/// gets its proportional share (largest remainders round up).
pub fn stratified_subset(classes: &[u32], n: usize, seed: u64) -> Vec<usize> {
    if n >= classes.len() {
        return (0..classes.len()).collect();
    }
    let mut by_class: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
    for (i, &c) in classes.iter().enumerate() {
        by_class.entry(c).or_default().push(i);
    }
    let total = classes.len();
    let mut quotas: Vec<(usize, usize, u32)> = by_class
        .iter()
        .map(|(&c, rows)| (rows.len() * n / total, rows.len() * n % total, c))
        .collect();
    let short = n - quotas.iter().map(|q| q.0).sum::<usize>();
    let mut order: Vec<usize> = (0..quotas.len()).collect();
    order.sort_by_key(|&i| (std::cmp::Reverse(quotas[i].1), quotas[i].2));
    for &i in order.iter().take(short) {
        quotas[i].0 += 1;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut picked: Vec<usize> = Vec::with_capacity(n);
    for (quota, _, class) in quotas {
        let mut rows = by_class[&class].clone();
        rows.shuffle(&mut rng);
        picked.extend_from_slice(&rows[..quota]);
    }
    picked.sort_unstable();
    picked
}

/// Peak resident set size of this process in KiB, where the platform exposes it.
pub fn peak_rss_kib() -> Option<u64> {
    let status = std::fs::read_to_string("/proc/self/status").ok()?;
    let line = status.lines().find(|l| l.starts_with("VmHWM:"))?;
    line.split_whitespace().nth(1)?.parse().ok()
}
