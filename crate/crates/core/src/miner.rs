//! k-size MNI-frequent subgraph mining over the union of a dataset's graphs.
//!
//! Patterns grow by rightmost-path extension of minimum DFS codes. Each
//! candidate's embeddings into the union graph are streamed once: that pass
//! yields its MNI support and the set of extensions seen in the data. MNI is
//! anti-monotone, so a candidate below `sigma` is not extended.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Reverse;
use core::ops::ControlFlow;
use core::time::Duration;

use serde::{Deserialize, Serialize};

use crate::dfs_code::{min_dfs_code, DfsCode, DfsEdge};
use crate::graph::{GraphDataset, LabeledGraph, VertexId};
use crate::matcher::for_each_embedding;
use crate::value::Value;

/// Largest supported pattern size.
pub const MAX_PATTERN_VERTICES: usize = 32;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MiningError {
    #[error("minimum support sigma must be at least 1")]
    SigmaZero,
    #[error("maximum pattern size k must be at least 2 (got {0})")]
    KTooSmall(usize),
    #[error("maximum pattern size k must be at most {MAX_PATTERN_VERTICES} (got {0})")]
    KTooLarge(usize),
    #[error("embedding budget must be positive")]
    BudgetZero,
    #[error("cannot mine an empty dataset")]
    EmptyDataset,
    #[error("duplicate pattern with canonical code {0:02x?}")]
    DuplicatePattern(Vec<u8>),
    #[error("pattern is not a connected graph with at least one edge")]
    InvalidPattern,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MiningConfig {
    /// Minimum MNI support.
    pub sigma: u32,
    /// Maximum number of pattern vertices.
    pub k: usize,
    /// Per-candidate cap on retained embeddings; `None` mines exactly.
    pub embedding_budget: Option<usize>,
}

impl MiningConfig {
    pub fn new(sigma: u32, k: usize) -> Self {
        Self { sigma, k, embedding_budget: None }
    }

    pub fn with_budget(mut self, budget: Option<usize>) -> Self {
        self.embedding_budget = budget;
        self
    }

    pub fn validate(&self) -> Result<(), MiningError> {
        if self.sigma == 0 {
            return Err(MiningError::SigmaZero);
        }
        if self.k < 2 {
            return Err(MiningError::KTooSmall(self.k));
        }
        if self.k > MAX_PATTERN_VERTICES {
            return Err(MiningError::KTooLarge(self.k));
        }
        if self.embedding_budget == Some(0) {
            return Err(MiningError::BudgetZero);
        }
        Ok(())
    }
}

/// A connected labeled pattern in canonical vertex order, with its support.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pattern {
    code: DfsCode,
    graph: LabeledGraph,
    mni_support: u32,
}

impl Pattern {
    /// Canonicalizes `graph`; fails unless it is connected with an edge.
    pub fn from_graph(graph: &LabeledGraph, mni_support: u32) -> Result<Self, MiningError> {
        let code = min_dfs_code(graph).ok_or(MiningError::InvalidPattern)?;
        Ok(Self::from_min_code(code, mni_support))
    }

    fn from_min_code(code: DfsCode, mni_support: u32) -> Self {
        let graph = code.to_graph();
        Self { code, graph, mni_support }
    }

    /// The pattern graph, vertex `i` being the `i`-th vertex of the minimum DFS code.
    pub fn graph(&self) -> &LabeledGraph {
        &self.graph
    }

    pub fn code(&self) -> &DfsCode {
        &self.code
    }

    pub fn canonical_code(&self) -> Vec<u8> {
        self.code.to_bytes()
    }

    pub fn mni_support(&self) -> u32 {
        self.mni_support
    }

    /// `1 / support`, the value at which the pattern's simplices enter.
    /// Panics for a zero-support pattern, which is never frequent.
    pub fn filtration_value(&self) -> Value {
        Value::reciprocal(self.mni_support)
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn edge_count(&self) -> usize {
        self.graph.edge_count()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MiningStats {
    /// Candidates whose support was evaluated.
    pub patterns_explored: u64,
    /// Embeddings retained across all evaluated candidates.
    pub embeddings_retained: u64,
    /// Filled in by callers that can read a clock.
    pub wall_time: Option<Duration>,
}

/// Frequent patterns sorted by descending support, then ascending canonical code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternSet {
    patterns: Vec<Pattern>,
    config: MiningConfig,
    stats: MiningStats,
}

impl PatternSet {
    /// Assembles a set from already-known patterns (e.g. when reloading from
    /// disk), sorting them and rejecting duplicates.
    pub fn from_patterns(mut patterns: Vec<Pattern>, config: MiningConfig) -> Result<Self, MiningError> {
        sort_patterns(&mut patterns);
        if let Some(w) = patterns.windows(2).find(|w| w[0].code == w[1].code) {
            return Err(MiningError::DuplicatePattern(w[0].canonical_code()));
        }
        Ok(Self { patterns, config, stats: MiningStats::default() })
    }

    pub fn patterns(&self) -> &[Pattern] {
        &self.patterns
    }

    pub fn len(&self) -> usize {
        self.patterns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.patterns.is_empty()
    }

    pub fn config(&self) -> &MiningConfig {
        &self.config
    }

    pub fn stats(&self) -> &MiningStats {
        &self.stats
    }

    pub fn stats_mut(&mut self) -> &mut MiningStats {
        &mut self.stats
    }
}

fn sort_patterns(patterns: &mut [Pattern]) {
    patterns.sort_by(|a, b| {
        (Reverse(a.mni_support), a.code.to_bytes()).cmp(&(Reverse(b.mni_support), b.code.to_bytes()))
    });
}

/// MNI support of `pattern` in `graph`: the minimum over pattern vertices of
/// the number of distinct images. With `cap`, only the first `cap` embeddings
/// (lexicographic order) count, which gives a lower bound.
pub fn mni_support(pattern: &LabeledGraph, graph: &LabeledGraph, cap: Option<usize>) -> u32 {
    let mut images = ImageSets::new(pattern.vertex_count(), graph.vertex_count());
    let mut seen = 0usize;
    for_each_embedding(pattern, graph, |emb| {
        images.record(emb);
        seen += 1;
        budget_flow(seen, cap)
    });
    images.support()
}

fn budget_flow(seen: usize, cap: Option<usize>) -> ControlFlow<()> {
    if cap.is_some_and(|c| seen >= c) {
        ControlFlow::Break(())
    } else {
        ControlFlow::Continue(())
    }
}

struct ImageSets {
    hit: Vec<Vec<bool>>,
    counts: Vec<u32>,
}

impl ImageSets {
    fn new(pattern_vertices: usize, target_vertices: usize) -> Self {
        Self { hit: vec![vec![false; target_vertices]; pattern_vertices], counts: vec![0; pattern_vertices] }
    }

    fn record(&mut self, emb: &[VertexId]) {
        for (u, &v) in emb.iter().enumerate() {
            let slot = &mut self.hit[u][v as usize];
            if !*slot {
                *slot = true;
                self.counts[u] += 1;
            }
        }
    }

    fn support(&self) -> u32 {
        self.counts.iter().copied().min().unwrap_or(0)
    }
}

struct Evaluation {
    support: u32,
    retained: u64,
    extensions: BTreeSet<DfsEdge>,
}

struct Miner<'a> {
    union: &'a LabeledGraph,
    config: MiningConfig,
    found: Vec<Pattern>,
    stats: MiningStats,
}

impl Miner<'_> {
    fn evaluate(&mut self, code: &DfsCode) -> Evaluation {
        let pattern = code.to_graph();
        let n = pattern.vertex_count();
        let rightmost_path = code.rightmost_path();
        let rightmost = *rightmost_path.last().expect("non-empty code") as usize;
        let grow_forward = n < self.config.k;
        let union = self.union;
        let mut images = ImageSets::new(n, union.vertex_count());
        let mut extensions = BTreeSet::new();
        let mut retained = 0usize;
        for_each_embedding(&pattern, union, |emb| {
            images.record(emb);
            retained += 1;
            let rm_image = emb[rightmost];
            for &back in &rightmost_path[..rightmost_path.len() - 1] {
                let b = back as usize;
                if !pattern.has_edge(rightmost as VertexId, b as VertexId) && union.has_edge(rm_image, emb[b]) {
                    extensions.insert(DfsEdge {
                        from: rightmost as u8,
                        to: back,
                        from_label: pattern.label(rightmost as VertexId),
                        to_label: pattern.label(b as VertexId),
                    });
                }
            }
            if grow_forward {
                for &x in &rightmost_path {
                    for &w in union.neighbors(emb[x as usize]) {
                        if !emb.contains(&w) {
                            extensions.insert(DfsEdge {
                                from: x,
                                to: n as u8,
                                from_label: pattern.label(x as VertexId),
                                to_label: union.label(w),
                            });
                        }
                    }
                }
            }
            budget_flow(retained, self.config.embedding_budget)
        });
        self.stats.patterns_explored += 1;
        self.stats.embeddings_retained += retained as u64;
        Evaluation { support: images.support(), retained: retained as u64, extensions }
    }

    fn grow(&mut self, code: &DfsCode, extensions: &BTreeSet<DfsEdge>) {
        for &e in extensions {
            let child = code.with(e);
            if !child.is_min() {
                continue;
            }
            let eval = self.evaluate(&child);
            if eval.support >= self.config.sigma && eval.retained > 0 {
                self.found.push(Pattern::from_min_code(child.clone(), eval.support));
                self.grow(&child, &eval.extensions);
            }
        }
    }
}

/// Mines every connected pattern with 2..=k vertices whose MNI support on the
/// disjoint union of the dataset's graphs is at least `sigma`.
pub fn mine_frequent(dataset: &GraphDataset, config: MiningConfig) -> Result<PatternSet, MiningError> {
    config.validate()?;
    if dataset.is_empty() {
        return Err(MiningError::EmptyDataset);
    }
    let union = dataset.union_graph();
    Ok(mine_union(&union, config))
}

/// [`mine_frequent`] on an already-built union graph.
pub fn mine_union(union: &LabeledGraph, config: MiningConfig) -> PatternSet {
    let seeds: BTreeSet<DfsEdge> = union
        .edges()
        .map(|(u, v)| {
            let (a, b) = (union.label(u), union.label(v));
            DfsEdge { from: 0, to: 1, from_label: a.min(b), to_label: a.max(b) }
        })
        .collect();
    let mut miner = Miner { union, config, found: Vec::new(), stats: MiningStats::default() };
    miner.grow(&DfsCode::default(), &seeds);
    sort_patterns(&mut miner.found);
    PatternSet { patterns: miner.found, config, stats: miner.stats }
}
