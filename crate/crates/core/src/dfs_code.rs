//! Minimum DFS codes: the canonical form used to deduplicate patterns.
//!
//! A DFS code lists the edges of a connected graph in the order a depth-first
//! traversal discovers them. Vertices are numbered by discovery time; an edge
//! `(from, to)` with `from < to` is a forward (tree) edge, otherwise it is a
//! backward edge closing a cycle. Among all codes of a graph, the minimum under
//! the rightmost-extension order is a canonical form: two graphs are
//! isomorphic iff their minimum codes are equal.

use alloc::vec;
use alloc::vec::Vec;

use crate::graph::{Label, LabeledGraph, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DfsEdge {
    pub from: u8,
    pub to: u8,
    pub from_label: Label,
    pub to_label: Label,
}

impl DfsEdge {
    pub fn is_forward(&self) -> bool {
        self.from < self.to
    }

    /// Order among extensions of one common prefix: backward edges first (to
    /// the earliest vertex), then forward edges from the deepest rightmost-path
    /// vertex, then by the new vertex's label.
    pub(crate) fn extension_key(&self) -> (u8, u32, Label) {
        if self.is_forward() {
            (1, u8::MAX as u32 - self.from as u32, self.to_label)
        } else {
            (0, self.to as u32, 0)
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct DfsCode(Vec<DfsEdge>);

impl DfsCode {
    pub fn new(edges: Vec<DfsEdge>) -> Self {
        Self(edges)
    }

    pub fn edges(&self) -> &[DfsEdge] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn vertex_count(&self) -> usize {
        self.0.iter().map(|e| e.from.max(e.to) as usize + 1).max().unwrap_or(0)
    }

    pub fn push(&mut self, e: DfsEdge) {
        self.0.push(e);
    }

    pub fn with(&self, e: DfsEdge) -> Self {
        let mut c = self.clone();
        c.push(e);
        c
    }

    /// Vertex labels indexed by discovery order.
    pub fn vertex_labels(&self) -> Vec<Label> {
        let mut labels = vec![0; self.vertex_count()];
        for e in &self.0 {
            labels[e.from as usize] = e.from_label;
            labels[e.to as usize] = e.to_label;
        }
        labels
    }

    /// The graph this code describes, vertex `i` being the `i`-th discovered.
    pub fn to_graph(&self) -> LabeledGraph {
        let edges = self.0.iter().map(|e| (e.from as VertexId, e.to as VertexId));
        LabeledGraph::new(self.vertex_labels(), edges).expect("a DFS code describes a simple graph")
    }

    /// Discovery indices on the path from the root to the rightmost vertex.
    pub fn rightmost_path(&self) -> Vec<u8> {
        let Some(rightmost) = self.0.iter().filter(|e| e.is_forward()).map(|e| e.to).max() else {
            return Vec::new();
        };
        let mut path = vec![rightmost];
        let mut cur = rightmost;
        for e in self.0.iter().rev() {
            if e.is_forward() && e.to == cur {
                path.push(e.from);
                cur = e.from;
            }
        }
        path.reverse();
        path
    }

    pub fn is_min(&self) -> bool {
        min_dfs_code(&self.to_graph()).as_ref() == Some(self)
    }

    /// Serialized form: per edge `from`, `to`, then both labels as big-endian u32.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.0.len() * 10);
        for e in &self.0 {
            out.push(e.from);
            out.push(e.to);
            out.extend_from_slice(&e.from_label.to_be_bytes());
            out.extend_from_slice(&e.to_label.to_be_bytes());
        }
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Option<Self> {
        if !bytes.len().is_multiple_of(10) {
            return None;
        }
        let edges = bytes
            .chunks_exact(10)
            .map(|c| DfsEdge {
                from: c[0],
                to: c[1],
                from_label: u32::from_be_bytes([c[2], c[3], c[4], c[5]]),
                to_label: u32::from_be_bytes([c[6], c[7], c[8], c[9]]),
            })
            .collect();
        Some(Self(edges))
    }
}

const UNSEEN: u8 = u8::MAX;

#[derive(Clone)]
struct Walk {
    dfs_of: Vec<u8>,
    vertex_of: Vec<VertexId>,
    used: Vec<bool>,
    rightmost_path: Vec<u8>,
}

impl Walk {
    fn start(n: usize, u: VertexId, v: VertexId) -> Self {
        let mut w = Self { dfs_of: vec![UNSEEN; n], vertex_of: vec![u, v], used: vec![false; n * n], rightmost_path: vec![0, 1] };
        w.dfs_of[u as usize] = 0;
        w.dfs_of[v as usize] = 1;
        w.mark(u, v);
        w
    }

    fn mark(&mut self, u: VertexId, v: VertexId) {
        let n = self.dfs_of.len();
        self.used[u as usize * n + v as usize] = true;
        self.used[v as usize * n + u as usize] = true;
    }

    fn is_used(&self, u: VertexId, v: VertexId) -> bool {
        self.used[u as usize * self.dfs_of.len() + v as usize]
    }

    /// This walk's best next edges (all sharing one extension key), each with
    /// the pattern vertex a forward edge discovers.
    fn next_edges(&self, g: &LabeledGraph) -> Vec<(DfsEdge, Option<VertexId>)> {
        let rm = *self.rightmost_path.last().expect("non-empty walk");
        let rm_vertex = self.vertex_of[rm as usize];
        for &back in &self.rightmost_path[..self.rightmost_path.len() - 1] {
            let target = self.vertex_of[back as usize];
            if g.has_edge(rm_vertex, target) && !self.is_used(rm_vertex, target) {
                let e = DfsEdge { from: rm, to: back, from_label: g.label(rm_vertex), to_label: g.label(target) };
                return vec![(e, None)];
            }
        }
        let next = self.vertex_of.len() as u8;
        for &x in self.rightmost_path.iter().rev() {
            let xv = self.vertex_of[x as usize];
            let fresh: Vec<_> = g
                .neighbors(xv)
                .iter()
                .filter(|&&w| self.dfs_of[w as usize] == UNSEEN)
                .map(|&w| (DfsEdge { from: x, to: next, from_label: g.label(xv), to_label: g.label(w) }, Some(w)))
                .collect();
            if !fresh.is_empty() {
                return fresh;
            }
        }
        Vec::new()
    }

    fn apply(&self, e: &DfsEdge, discovered: Option<VertexId>) -> Self {
        let mut w = self.clone();
        let from = w.vertex_of[e.from as usize];
        match discovered {
            Some(v) => {
                w.dfs_of[v as usize] = e.to;
                w.vertex_of.push(v);
                w.mark(from, v);
                let keep = w.rightmost_path.iter().position(|&x| x == e.from).expect("forward edge from rightmost path");
                w.rightmost_path.truncate(keep + 1);
                w.rightmost_path.push(e.to);
            }
            None => {
                let to = w.vertex_of[e.to as usize];
                w.mark(from, to);
            }
        }
        w
    }
}

/// Minimum DFS code of a connected graph with at least one edge; `None`
/// otherwise.
pub fn min_dfs_code(g: &LabeledGraph) -> Option<DfsCode> {
    let n = g.vertex_count();
    if g.edge_count() == 0 || !g.is_connected() || n > UNSEEN as usize {
        return None;
    }
    let first = g
        .edges()
        .map(|(u, v)| {
            let (a, b) = (g.label(u), g.label(v));
            (a.min(b), a.max(b))
        })
        .min()?;
    let mut walks = Vec::new();
    for (u, v) in g.edges() {
        for (a, b) in [(u, v), (v, u)] {
            if (g.label(a), g.label(b)) == first {
                walks.push(Walk::start(n, a, b));
            }
        }
    }
    let mut code = DfsCode(vec![DfsEdge { from: 0, to: 1, from_label: first.0, to_label: first.1 }]);
    while code.len() < g.edge_count() {
        let options: Vec<Vec<(DfsEdge, Option<VertexId>)>> = walks.iter().map(|w| w.next_edges(g)).collect();
        let best = options
            .iter()
            .flatten()
            .map(|(e, _)| *e)
            .min_by_key(|e| e.extension_key())
            .expect("a connected graph always has a next edge");
        let mut next = Vec::new();
        for (walk, opts) in walks.iter().zip(&options) {
            for (e, v) in opts {
                if *e == best {
                    next.push(walk.apply(e, *v));
                }
            }
        }
        walks = next;
        code.push(best);
    }
    Some(code)
}
