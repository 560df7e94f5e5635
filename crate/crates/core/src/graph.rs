//! Vertex-labeled undirected graphs and graph datasets.

use alloc::vec;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

pub type VertexId = u32;
pub type Label = u32;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("edge ({u}, {v}) references a vertex outside 0..{vertex_count}")]
    VertexOutOfRange { u: VertexId, v: VertexId, vertex_count: usize },
    #[error("self-loop on vertex {0}")]
    SelfLoop(VertexId),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(VertexId, VertexId),
    #[error("{graphs} graphs but {class_labels} class labels")]
    ClassCountMismatch { graphs: usize, class_labels: usize },
    #[error("graph {graph} uses vertex label {label} outside the alphabet 0..{alphabet}")]
    LabelOutOfAlphabet { graph: usize, label: Label, alphabet: usize },
}

/// An undirected, simple, vertex-labeled graph `G = (V, E, l)`.
///
/// Vertices are `0..vertex_count`; adjacency lists are kept sorted so that
/// neighbour iteration is deterministic.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LabeledGraph {
    labels: Vec<Label>,
    adjacency: Vec<Vec<VertexId>>,
    edge_count: usize,
}

impl LabeledGraph {
    /// Builds a graph, rejecting self-loops, repeated edges and out-of-range
    /// endpoints. An edge may be given in either orientation, but only once.
    pub fn new<I>(labels: Vec<Label>, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (VertexId, VertexId)>,
    {
        let n = labels.len();
        let mut adjacency = vec![Vec::new(); n];
        let mut edge_count = 0;
        for (u, v) in edges {
            if u as usize >= n || v as usize >= n {
                return Err(GraphError::VertexOutOfRange { u, v, vertex_count: n });
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adjacency[u as usize].push(v);
            adjacency[v as usize].push(u);
            edge_count += 1;
        }
        for (u, list) in adjacency.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                let (a, b) = (u as VertexId, w[0]);
                return Err(GraphError::DuplicateEdge(a.min(b), a.max(b)));
            }
        }
        Ok(Self { labels, adjacency, edge_count })
    }

    /// A graph with `labels.len()` vertices and no edges.
    pub fn edgeless(labels: Vec<Label>) -> Self {
        let adjacency = vec![Vec::new(); labels.len()];
        Self { labels, adjacency, edge_count: 0 }
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn label(&self, v: VertexId) -> Label {
        self.labels[v as usize]
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    /// Sorted neighbours of `v`.
    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adjacency[v as usize]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adjacency[v as usize].len()
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        let (a, b) = if self.degree(u) <= self.degree(v) { (u, v) } else { (v, u) };
        self.adjacency[a as usize].binary_search(&b).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.adjacency.iter().enumerate().flat_map(|(u, list)| {
            let u = u as VertexId;
            list.iter().copied().filter(move |&v| u < v).map(move |v| (u, v))
        })
    }

    pub fn max_label(&self) -> Option<Label> {
        self.labels.iter().copied().max()
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0 as VertexId];
        seen[0] = true;
        let mut reached = 1;
        while let Some(u) = stack.pop() {
            for &w in self.neighbors(u) {
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    reached += 1;
                    stack.push(w);
                }
            }
        }
        reached == n
    }

    /// Relabels vertex `v` as `perm[v]`. `perm` must be a permutation of
    /// `0..vertex_count`.
    pub fn permuted(&self, perm: &[VertexId]) -> Self {
        let n = self.vertex_count();
        assert_eq!(perm.len(), n, "permutation length mismatch");
        let mut labels = vec![0; n];
        for (v, &p) in perm.iter().enumerate() {
            labels[p as usize] = self.labels[v];
        }
        let edges: Vec<_> = self.edges().map(|(u, v)| (perm[u as usize], perm[v as usize])).collect();
        Self::new(labels, edges).expect("a permutation preserves simplicity")
    }

    /// The subgraph induced on `keep` (renumbered in the given order).
    pub fn induced(&self, keep: &[VertexId]) -> Self {
        let mut index = vec![u32::MAX; self.vertex_count()];
        for (i, &v) in keep.iter().enumerate() {
            index[v as usize] = i as VertexId;
        }
        let labels = keep.iter().map(|&v| self.label(v)).collect();
        let edges: Vec<_> = self
            .edges()
            .filter(|&(u, v)| index[u as usize] != u32::MAX && index[v as usize] != u32::MAX)
            .map(|(u, v)| (index[u as usize], index[v as usize]))
            .collect();
        Self::new(labels, edges).expect("induced subgraph of a simple graph is simple")
    }

    /// Disjoint union; graph `i`'s vertex `v` becomes `offsets[i] + v`.
    pub fn disjoint_union<'a, I>(graphs: I) -> (Self, Vec<usize>)
    where
        I: IntoIterator<Item = &'a LabeledGraph>,
    {
        let mut labels = Vec::new();
        let mut adjacency = Vec::new();
        let mut edge_count = 0;
        let mut offsets = Vec::new();
        for g in graphs {
            let off = labels.len();
            offsets.push(off);
            labels.extend_from_slice(&g.labels);
            adjacency.extend(g.adjacency.iter().map(|l| l.iter().map(|&w| w + off as VertexId).collect::<Vec<_>>()));
            edge_count += g.edge_count;
        }
        (Self { labels, adjacency, edge_count }, offsets)
    }
}

/// A labeled graph transaction dataset with one class label per graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDataset {
    graphs: Vec<LabeledGraph>,
    class_labels: Vec<u32>,
    label_alphabet: usize,
}

impl GraphDataset {
    /// `label_alphabet` is derived as one past the largest vertex label.
    pub fn new(graphs: Vec<LabeledGraph>, class_labels: Vec<u32>) -> Result<Self, GraphError> {
        let alphabet = graphs.iter().filter_map(|g| g.max_label()).max().map_or(0, |m| m as usize + 1);
        Self::with_alphabet(graphs, class_labels, alphabet)
    }

    pub fn with_alphabet(
        graphs: Vec<LabeledGraph>,
        class_labels: Vec<u32>,
        label_alphabet: usize,
    ) -> Result<Self, GraphError> {
        if graphs.len() != class_labels.len() {
            return Err(GraphError::ClassCountMismatch { graphs: graphs.len(), class_labels: class_labels.len() });
        }
        for (i, g) in graphs.iter().enumerate() {
            if let Some(l) = g.labels().iter().copied().find(|&l| l as usize >= label_alphabet) {
                return Err(GraphError::LabelOutOfAlphabet { graph: i, label: l, alphabet: label_alphabet });
            }
        }
        Ok(Self { graphs, class_labels, label_alphabet })
    }

    pub fn graphs(&self) -> &[LabeledGraph] {
        &self.graphs
    }

    pub fn class_labels(&self) -> &[u32] {
        &self.class_labels
    }

    pub fn label_alphabet(&self) -> usize {
        self.label_alphabet
    }

    pub fn len(&self) -> usize {
        self.graphs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.graphs.is_empty()
    }

    pub fn class_count(&self) -> usize {
        self.class_labels.iter().copied().max().map_or(0, |m| m as usize + 1)
    }

    /// The disjoint union of every graph, the single large graph mining runs on.
    pub fn union_graph(&self) -> LabeledGraph {
        LabeledGraph::disjoint_union(&self.graphs).0
    }

    /// Keeps the graphs at `indices`, in that order.
    pub fn subset(&self, indices: &[usize]) -> Self {
        Self {
            graphs: indices.iter().map(|&i| self.graphs[i].clone()).collect(),
            class_labels: indices.iter().map(|&i| self.class_labels[i]).collect(),
            label_alphabet: self.label_alphabet,
        }
    }
}
