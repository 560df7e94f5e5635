//! Non-induced, label-preserving subgraph embedding enumeration.
//!
//! Pattern vertices are assigned in index order and candidates are tried in
//! ascending target id, so embeddings come out in lexicographic order of their
//! image tuples. A `cap` therefore always keeps the same prefix.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::ControlFlow;

use crate::graph::{LabeledGraph, VertexId};

/// An injective, label- and adjacency-preserving map from pattern vertices to
/// target vertices; position `i` holds the image of pattern vertex `i`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Embedding(pub Vec<VertexId>);

impl Embedding {
    pub fn images(&self) -> &[VertexId] {
        &self.0
    }

    /// The image vertex set, sorted.
    pub fn vertex_set(&self) -> Vec<VertexId> {
        let mut s = self.0.clone();
        s.sort_unstable();
        s
    }
}

/// All embeddings of `pattern` into `target` in lexicographic order of image
/// tuples, truncated to the first `cap` when given.
pub fn enumerate_embeddings(pattern: &LabeledGraph, target: &LabeledGraph, cap: Option<usize>) -> Vec<Embedding> {
    let mut out = Vec::new();
    for_each_embedding(pattern, target, |images| {
        out.push(Embedding(images.to_vec()));
        if cap.is_some_and(|c| out.len() >= c) {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    out
}

/// Streams embeddings in the same order as [`enumerate_embeddings`]; the
/// callback stops the search by returning `Break`.
pub fn for_each_embedding<F>(pattern: &LabeledGraph, target: &LabeledGraph, mut visit: F)
where
    F: FnMut(&[VertexId]) -> ControlFlow<()>,
{
    let n = pattern.vertex_count();
    if n == 0 || n > target.vertex_count() {
        return;
    }
    if !labels_fit(pattern, target) {
        return;
    }
    let anchors: Vec<Vec<usize>> = (0..n)
        .map(|i| {
            pattern
                .neighbors(i as VertexId)
                .iter()
                .map(|&j| j as usize)
                .filter(|&j| j < i)
                .collect()
        })
        .collect();
    let roots: Vec<Vec<VertexId>> = (0..n)
        .map(|i| {
            if !anchors[i].is_empty() {
                return Vec::new();
            }
            let (label, degree) = (pattern.label(i as VertexId), pattern.degree(i as VertexId));
            (0..target.vertex_count() as VertexId)
                .filter(|&v| target.label(v) == label && target.degree(v) >= degree)
                .collect()
        })
        .collect();
    let mut search = Search {
        pattern,
        target,
        anchors,
        roots,
        images: Vec::with_capacity(n),
        used: vec![false; target.vertex_count()],
    };
    let _ = search.extend(&mut visit);
}

fn labels_fit(pattern: &LabeledGraph, target: &LabeledGraph) -> bool {
    let width = pattern.max_label().map_or(0, |m| m as usize + 1);
    let mut need = vec![0usize; width];
    for &l in pattern.labels() {
        need[l as usize] += 1;
    }
    let mut have = vec![0usize; width];
    for &l in target.labels() {
        if (l as usize) < width {
            have[l as usize] += 1;
        }
    }
    need.iter().zip(&have).all(|(n, h)| n <= h)
}

struct Search<'a> {
    pattern: &'a LabeledGraph,
    target: &'a LabeledGraph,
    /// Earlier pattern vertices adjacent to each pattern vertex.
    anchors: Vec<Vec<usize>>,
    /// Candidate lists for pattern vertices with no earlier neighbour.
    roots: Vec<Vec<VertexId>>,
    images: Vec<VertexId>,
    used: Vec<bool>,
}

impl Search<'_> {
    fn extend<F>(&mut self, visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&[VertexId]) -> ControlFlow<()>,
    {
        let i = self.images.len();
        if i == self.pattern.vertex_count() {
            return visit(&self.images);
        }
        let target = self.target;
        if self.anchors[i].is_empty() {
            for c in 0..self.roots[i].len() {
                let v = self.roots[i][c];
                if !self.used[v as usize] {
                    self.descend(v, visit)?;
                }
            }
            return ControlFlow::Continue(());
        }
        // Scan the sparsest anchor's neighbourhood; it is sorted, so the
        // candidate order stays ascending whichever anchor is picked.
        let pivot = *self.anchors[i]
            .iter()
            .min_by_key(|&&a| target.degree(self.images[a]))
            .expect("non-empty anchors");
        let label = self.pattern.label(i as VertexId);
        let degree = self.pattern.degree(i as VertexId);
        for &v in target.neighbors(self.images[pivot]) {
            if self.used[v as usize] || target.label(v) != label || target.degree(v) < degree {
                continue;
            }
            let consistent = self.anchors[i]
                .iter()
                .all(|&a| a == pivot || target.has_edge(self.images[a], v));
            if consistent {
                self.descend(v, visit)?;
            }
        }
        ControlFlow::Continue(())
    }

    fn descend<F>(&mut self, v: VertexId, visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&[VertexId]) -> ControlFlow<()>,
    {
        self.used[v as usize] = true;
        self.images.push(v);
        let flow = self.extend(visit);
        self.images.pop();
        self.used[v as usize] = false;
        flow
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(labels: &[u32], edges: &[(u32, u32)]) -> LabeledGraph {
        LabeledGraph::new(labels.to_vec(), edges.iter().copied()).unwrap()
    }

    #[test]
    fn edge_into_triangle_has_six_embeddings() {
        let edge = graph(&[0, 0], &[(0, 1)]);
        let tri = graph(&[0, 0, 0], &[(0, 1), (1, 2), (0, 2)]);
        let embs = enumerate_embeddings(&edge, &tri, None);
        assert_eq!(embs.len(), 6);
        let tuples: Vec<_> = embs.iter().map(|e| e.images().to_vec()).collect();
        assert_eq!(tuples, vec![vec![0, 1], vec![0, 2], vec![1, 0], vec![1, 2], vec![2, 0], vec![2, 1]]);
    }

    #[test]
    fn cap_keeps_lexicographic_prefix() {
        let edge = graph(&[0, 0], &[(0, 1)]);
        let tri = graph(&[0, 0, 0], &[(0, 1), (1, 2), (0, 2)]);
        let all = enumerate_embeddings(&edge, &tri, None);
        let capped = enumerate_embeddings(&edge, &tri, Some(4));
        assert_eq!(capped[..], all[..4]);
    }

    #[test]
    fn pigeonhole_gives_nothing() {
        let path = graph(&[0, 0, 0], &[(0, 1), (1, 2)]);
        let small = graph(&[0, 0], &[(0, 1)]);
        assert!(enumerate_embeddings(&path, &small, None).is_empty());
    }

    #[test]
    fn labels_and_adjacency_are_respected() {
        // a-b-a path: the a-b edge pattern maps b to the middle only.
        let pattern = graph(&[0, 1], &[(0, 1)]);
        let target = graph(&[0, 1, 0], &[(0, 1), (1, 2)]);
        let embs = enumerate_embeddings(&pattern, &target, None);
        assert_eq!(embs, vec![Embedding(vec![0, 1]), Embedding(vec![2, 1])]);
    }

    #[test]
    fn non_induced_matching_allows_extra_target_edges() {
        let path = graph(&[0, 0, 0], &[(0, 1), (1, 2)]);
        let tri = graph(&[0, 0, 0], &[(0, 1), (1, 2), (0, 2)]);
        assert_eq!(enumerate_embeddings(&path, &tri, None).len(), 6);
    }

    #[test]
    fn disconnected_pattern_vertices_use_label_scan() {
        let pattern = graph(&[0, 1, 1], &[(0, 1)]);
        let target = graph(&[0, 1, 1, 1], &[(0, 1)]);
        // vertex 2 of the pattern is free: images 2 or 3.
        assert_eq!(enumerate_embeddings(&pattern, &target, None).len(), 2);
    }
}
