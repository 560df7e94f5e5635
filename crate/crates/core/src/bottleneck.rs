//! Bottleneck distance between persistence diagrams.
//!
//! Finite points are matched by binary search over the candidate distances
//! (pairwise `l_inf` distances and distances to the diagonal), testing each
//! with a perfect-matching check on the usual bipartite graph where every
//! point also gets a diagonal twin on the other side. Essential points are
//! matched among themselves; in one dimension sorting births is optimal.

use alloc::vec;
use alloc::vec::Vec;

use crate::persistence::PersistenceDiagram;

/// Result of a bottleneck computation. When the two diagrams carry different
/// numbers of essential points no matching exists: `distance` is infinite and
/// `infinite_count_mismatch` is set.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Bottleneck {
    pub distance: f64,
    pub infinite_count_mismatch: bool,
}

/// Bottleneck distance between the dimension-`dim` parts of two diagrams.
pub fn bottleneck_distance(d1: &PersistenceDiagram, d2: &PersistenceDiagram, dim: usize) -> Bottleneck {
    let split = |d: &PersistenceDiagram| {
        let mut finite = Vec::new();
        let mut essential = Vec::new();
        for p in d.in_dimension(dim) {
            if p.is_essential() {
                essential.push(p.birth);
            } else {
                finite.push((p.birth, p.death));
            }
        }
        (finite, essential)
    };
    let (f1, mut e1) = split(d1);
    let (f2, mut e2) = split(d2);
    if e1.len() != e2.len() {
        return Bottleneck { distance: f64::INFINITY, infinite_count_mismatch: true };
    }
    e1.sort_by(f64::total_cmp);
    e2.sort_by(f64::total_cmp);
    let essential = e1.iter().zip(&e2).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    Bottleneck { distance: essential.max(finite_bottleneck(&f1, &f2)), infinite_count_mismatch: false }
}

fn linf(a: (f64, f64), b: (f64, f64)) -> f64 {
    (a.0 - b.0).abs().max((a.1 - b.1).abs())
}

fn to_diagonal(a: (f64, f64)) -> f64 {
    (a.1 - a.0) / 2.0
}

/// Bottleneck distance between two multisets of finite `(birth, death)` points.
pub fn finite_bottleneck(a: &[(f64, f64)], b: &[(f64, f64)]) -> f64 {
    if a.is_empty() && b.is_empty() {
        return 0.0;
    }
    let mut candidates: Vec<f64> = vec![0.0];
    candidates.extend(a.iter().chain(b).map(|&p| to_diagonal(p)));
    for &p in a {
        candidates.extend(b.iter().map(|&q| linf(p, q)));
    }
    candidates.sort_by(f64::total_cmp);
    candidates.dedup();
    // The largest candidate is always feasible (everything to the diagonal or
    // any pairing costs at most it).
    let (mut lo, mut hi) = (0, candidates.len() - 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if perfect_matching_within(a, b, candidates[mid]) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    candidates[lo]
}

/// Left side: points of `a`, then diagonal twins of `b`. Right side: points of
/// `b`, then diagonal twins of `a`.
fn perfect_matching_within(a: &[(f64, f64)], b: &[(f64, f64)], eps: f64) -> bool {
    let (n, m) = (a.len(), b.len());
    let size = n + m;
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); size];
    for (i, &p) in a.iter().enumerate() {
        for (j, &q) in b.iter().enumerate() {
            if linf(p, q) <= eps {
                adj[i].push(j);
            }
        }
        if to_diagonal(p) <= eps {
            adj[i].push(m + i);
        }
    }
    for (j, &q) in b.iter().enumerate() {
        let row = &mut adj[n + j];
        if to_diagonal(q) <= eps {
            row.push(j);
        }
        row.extend(m..m + n);
    }
    hopcroft_karp(&adj, size) == size
}

/// Maximum matching size in a bipartite graph with `left.len()` left vertices
/// and `right` right vertices.
fn hopcroft_karp(left: &[Vec<usize>], right: usize) -> usize {
    const NONE: usize = usize::MAX;
    let n = left.len();
    let mut match_l = vec![NONE; n];
    let mut match_r = vec![NONE; right];
    let mut dist = vec![0usize; n];
    let mut matched = 0;
    loop {
        // BFS layering from free left vertices.
        let mut queue = Vec::with_capacity(n);
        for u in 0..n {
            if match_l[u] == NONE {
                dist[u] = 0;
                queue.push(u);
            } else {
                dist[u] = NONE;
            }
        }
        let mut found = false;
        let mut head = 0;
        while head < queue.len() {
            let u = queue[head];
            head += 1;
            for &v in &left[u] {
                let w = match_r[v];
                if w == NONE {
                    found = true;
                } else if dist[w] == NONE {
                    dist[w] = dist[u] + 1;
                    queue.push(w);
                }
            }
        }
        if !found {
            return matched;
        }
        let mut next = vec![0usize; n];
        for u in 0..n {
            if match_l[u] == NONE && augment(u, left, &mut match_l, &mut match_r, &mut dist, &mut next) {
                matched += 1;
            }
        }
    }
}

fn augment(
    u: usize,
    left: &[Vec<usize>],
    match_l: &mut [usize],
    match_r: &mut [usize],
    dist: &mut [usize],
    next: &mut [usize],
) -> bool {
    while next[u] < left[u].len() {
        let v = left[u][next[u]];
        next[u] += 1;
        let w = match_r[v];
        if w == usize::MAX || (dist[w] == dist[u] + 1 && augment(w, left, match_l, match_r, dist, next)) {
            match_l[u] = v;
            match_r[v] = u;
            return true;
        }
    }
    dist[u] = usize::MAX;
    false
}
