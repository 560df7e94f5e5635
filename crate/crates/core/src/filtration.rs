//! Filtered simplicial complexes: the frequent-subgraph filtration (FSF) and
//! the degree-based lower-star baseline.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::graph::{LabeledGraph, VertexId};
use crate::matcher::for_each_embedding;
use crate::miner::PatternSet;
use crate::value::Value;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ComplexError {
    #[error("simplex {simplex:?} is missing its face {face:?}")]
    MissingFace { simplex: Vec<VertexId>, face: Vec<VertexId> },
    #[error("face {face:?} enters after its coface {simplex:?}")]
    FaceEntersLater { simplex: Vec<VertexId>, face: Vec<VertexId> },
    #[error("simplex {0:?} appears more than once")]
    DuplicateSimplex(Vec<VertexId>),
    #[error("simplex with no vertices")]
    EmptySimplex,
}

/// A simplex given by its sorted vertex set, entering at `value`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Simplex {
    vertices: Vec<VertexId>,
    value: Value,
}

impl Simplex {
    /// Sorts and deduplicates `vertices`.
    pub fn new(mut vertices: Vec<VertexId>, value: Value) -> Self {
        vertices.sort_unstable();
        vertices.dedup();
        Self { vertices, value }
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn value(&self) -> Value {
        self.value
    }

    /// `|vertices| - 1`. Panics on an empty simplex.
    pub fn dimension(&self) -> usize {
        self.vertices.len() - 1
    }

    /// Codimension-one faces, each missing one vertex.
    pub fn facets(&self) -> impl Iterator<Item = Vec<VertexId>> + '_ {
        let n = if self.vertices.len() > 1 { self.vertices.len() } else { 0 };
        (0..n).map(move |skip| {
            self.vertices.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v).collect()
        })
    }
}

/// Reduction order: value, then dimension, then lexicographic vertex set.
impl Ord for Simplex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.value
            .cmp(&other.value)
            .then(self.vertices.len().cmp(&other.vertices.len()))
            .then_with(|| self.vertices.cmp(&other.vertices))
    }
}

impl PartialOrd for Simplex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Simplices in reduction order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct FilteredComplex {
    simplices: Vec<Simplex>,
}

impl FilteredComplex {
    /// Sorts into reduction order. Validity is checked by [`Self::check`].
    pub fn from_simplices(mut simplices: Vec<Simplex>) -> Self {
        simplices.sort();
        Self { simplices }
    }

    pub fn simplices(&self) -> &[Simplex] {
        &self.simplices
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn max_dimension(&self) -> Option<usize> {
        self.simplices.iter().map(Simplex::dimension).max()
    }

    /// Distinct filtration values, ascending.
    pub fn values(&self) -> Vec<Value> {
        let mut v: Vec<Value> = self.simplices.iter().map(Simplex::value).collect();
        v.dedup();
        v
    }

    /// Number of simplices in each dimension `0..=max_dimension`.
    pub fn counts_by_dimension(&self) -> Vec<usize> {
        let mut counts = alloc::vec![0; self.max_dimension().map_or(0, |d| d + 1)];
        for s in &self.simplices {
            counts[s.dimension()] += 1;
        }
        counts
    }

    /// The sublevel complex of simplices with value `<= at`.
    pub fn sublevel(&self, at: Value) -> Self {
        Self { simplices: self.simplices.iter().filter(|s| s.value <= at).cloned().collect() }
    }

    /// Index of each vertex set in reduction order.
    pub(crate) fn index(&self) -> Result<BTreeMap<&[VertexId], usize>, ComplexError> {
        let mut index = BTreeMap::new();
        for (i, s) in self.simplices.iter().enumerate() {
            if s.vertices.is_empty() {
                return Err(ComplexError::EmptySimplex);
            }
            if index.insert(s.vertices.as_slice(), i).is_some() {
                return Err(ComplexError::DuplicateSimplex(s.vertices.clone()));
            }
        }
        Ok(index)
    }

    /// Closure (every facet present) and monotonicity (every facet enters no
    /// later than the simplex).
    pub fn check(&self) -> Result<(), ComplexError> {
        let index = self.index()?;
        for s in &self.simplices {
            for face in s.facets() {
                match index.get(face.as_slice()) {
                    None => return Err(ComplexError::MissingFace { simplex: s.vertices.clone(), face }),
                    Some(&j) if self.simplices[j].value > s.value => {
                        return Err(ComplexError::FaceEntersLater { simplex: s.vertices.clone(), face });
                    }
                    Some(_) => {}
                }
            }
        }
        Ok(())
    }
}

/// Builds the frequent-subgraph filtration of `graph`.
///
/// Every embedding of every pattern with at most `k` vertices spans a simplex
/// on its image; the simplex and all its faces enter at `1 / support`, and a
/// simplex induced several times keeps the smallest value. Embedding
/// enumeration per pattern stops after `cap` embeddings when given. Vertices
/// covered by no embedding are not part of the complex.
pub fn build_fsf(graph: &LabeledGraph, patterns: &PatternSet, k: usize, cap: Option<usize>) -> FilteredComplex {
    // Vertex set -> best (largest) support inducing it.
    let mut tops: BTreeMap<Vec<VertexId>, u32> = BTreeMap::new();
    for p in patterns.patterns().iter().filter(|p| p.vertex_count() <= k) {
        let support = p.mni_support();
        if support == 0 {
            continue;
        }
        let mut seen = 0usize;
        for_each_embedding(p.graph(), graph, |emb| {
            let mut set = emb.to_vec();
            set.sort_unstable();
            let slot = tops.entry(set).or_insert(0);
            *slot = (*slot).max(support);
            seen += 1;
            if cap.is_some_and(|c| seen >= c) {
                core::ops::ControlFlow::Break(())
            } else {
                core::ops::ControlFlow::Continue(())
            }
        });
    }
    let mut all: BTreeMap<Vec<VertexId>, u32> = BTreeMap::new();
    for (set, &support) in &tops {
        let n = set.len();
        for mask in 1u64..(1u64 << n) {
            let face: Vec<VertexId> = (0..n).filter(|&i| mask >> i & 1 == 1).map(|i| set[i]).collect();
            let slot = all.entry(face).or_insert(0);
            *slot = (*slot).max(support);
        }
    }
    FilteredComplex::from_simplices(
        all.into_iter().map(|(vertices, s)| Simplex { vertices, value: Value::reciprocal(s) }).collect(),
    )
}

/// Lower-star filtration on vertex degree, rescaled by `max_degree + 1`:
/// vertex `v` enters at `deg(v) / (max_deg + 1)`, edge `{u, v}` at the larger
/// of its endpoints' values.
pub fn build_degree_filtration(graph: &LabeledGraph) -> FilteredComplex {
    let n = graph.vertex_count() as VertexId;
    let scale = (0..n).map(|v| graph.degree(v)).max().unwrap_or(0) as u32 + 1;
    let at = |v: VertexId| Value::new(graph.degree(v) as u32, scale);
    let mut simplices: Vec<Simplex> = (0..n).map(|v| Simplex::new(alloc::vec![v], at(v))).collect();
    simplices.extend(graph.edges().map(|(u, v)| Simplex::new(alloc::vec![u, v], at(u).max(at(v)))));
    FilteredComplex::from_simplices(simplices)
}
