//! Brute-force oracles and random instance generators.
//!
//! Everything here is deliberately naive and shares no code path with the
//! algorithms it checks: canonical forms come from trying every vertex
//! permutation, embeddings from trying every injective map, bottleneck
//! distances from trying every partial matching.

use std::collections::{BTreeMap, BTreeSet};

use fph_core::filtration::{FilteredComplex, Simplex};
use fph_core::graph::{Label, LabeledGraph, VertexId};
use fph_core::persistence::{DiagramPoint, PersistenceDiagram};
use fph_core::value::Value;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Every permutation of `0..n`, in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<u32>> {
    fn go(prefix: &mut Vec<u32>, used: &mut Vec<bool>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                prefix.push(v as u32);
                go(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Canonical form by exhaustive relabeling: the lexicographically smallest
/// `(labels, sorted edges)` over all vertex permutations.
pub type Form = (Vec<Label>, Vec<(u32, u32)>);

pub fn canonical_form(g: &LabeledGraph) -> Form {
    permutations(g.vertex_count())
        .into_iter()
        .map(|perm| {
            let p = g.permuted(&perm);
            (p.labels().to_vec(), p.edges().collect::<Vec<_>>())
        })
        .min()
        .unwrap_or_default()
}

pub fn is_isomorphic(a: &LabeledGraph, b: &LabeledGraph) -> bool {
    a.vertex_count() == b.vertex_count() && a.edge_count() == b.edge_count() && canonical_form(a) == canonical_form(b)
}

/// Every injective label- and adjacency-preserving map, by trying all
/// injective maps.
pub fn brute_embeddings(pattern: &LabeledGraph, target: &LabeledGraph) -> Vec<Vec<VertexId>> {
    fn go(i: usize, pattern: &LabeledGraph, target: &LabeledGraph, cur: &mut Vec<VertexId>, out: &mut Vec<Vec<VertexId>>) {
        if i == pattern.vertex_count() {
            let ok = pattern.edges().all(|(u, v)| target.has_edge(cur[u as usize], cur[v as usize]));
            let labels = (0..pattern.vertex_count()).all(|u| pattern.label(u as u32) == target.label(cur[u]));
            if ok && labels {
                out.push(cur.clone());
            }
            return;
        }
        for v in 0..target.vertex_count() as VertexId {
            if !cur.contains(&v) {
                cur.push(v);
                go(i + 1, pattern, target, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(0, pattern, target, &mut Vec::new(), &mut out);
    out
}

pub fn brute_mni(pattern: &LabeledGraph, target: &LabeledGraph) -> u32 {
    let embs = brute_embeddings(pattern, target);
    (0..pattern.vertex_count())
        .map(|u| embs.iter().map(|e| e[u]).collect::<BTreeSet<_>>().len() as u32)
        .min()
        .unwrap_or(0)
}

fn connected_mask(vertices: &[VertexId], edges: &[(VertexId, VertexId)]) -> bool {
    let mut comp: BTreeMap<VertexId, VertexId> = vertices.iter().map(|&v| (v, v)).collect();
    fn find(c: &mut BTreeMap<VertexId, VertexId>, v: VertexId) -> VertexId {
        let p = c[&v];
        if p == v {
            v
        } else {
            let r = find(c, p);
            c.insert(v, r);
            r
        }
    }
    for &(u, v) in edges {
        let (a, b) = (find(&mut comp, u), find(&mut comp, v));
        comp.insert(a, b);
    }
    let roots: BTreeSet<_> = vertices.iter().map(|&v| find(&mut comp, v)).collect();
    roots.len() == 1
}

/// Frequent patterns by exhaustive enumeration: every connected subgraph
/// (vertex subset plus spanning connected edge subset) of `union` with
/// `2..=k` vertices, canonicalized, with brute-force MNI `>= sigma`.
pub fn brute_force_mine(union: &LabeledGraph, sigma: u32, k: usize) -> BTreeMap<Form, u32> {
    let n = union.vertex_count();
    assert!(n <= 16, "brute-force miner is for tiny graphs");
    let mut forms: BTreeMap<Form, LabeledGraph> = BTreeMap::new();
    for mask in 1u32..(1 << n) {
        let size = mask.count_ones() as usize;
        if !(2..=k).contains(&size) {
            continue;
        }
        let verts: Vec<VertexId> = (0..n as VertexId).filter(|&v| mask >> v & 1 == 1).collect();
        let induced: Vec<(VertexId, VertexId)> =
            union.edges().filter(|&(u, v)| mask >> u & 1 == 1 && mask >> v & 1 == 1).collect();
        for emask in 1u32..(1 << induced.len()) {
            let chosen: Vec<_> = (0..induced.len()).filter(|&i| emask >> i & 1 == 1).map(|i| induced[i]).collect();
            if !connected_mask(&verts, &chosen) {
                continue;
            }
            let index = |v: VertexId| verts.iter().position(|&w| w == v).unwrap() as VertexId;
            let labels = verts.iter().map(|&v| union.label(v)).collect();
            let g = LabeledGraph::new(labels, chosen.iter().map(|&(u, v)| (index(u), index(v)))).unwrap();
            forms.entry(canonical_form(&g)).or_insert(g);
        }
    }
    forms
        .into_iter()
        .filter_map(|(form, g)| {
            let s = brute_mni(&g, union);
            (s >= sigma).then_some((form, s))
        })
        .collect()
}

/// Bottleneck distance between finite point multisets by enumerating every
/// partial matching (unmatched points pay half their persistence).
pub fn brute_finite_bottleneck(a: &[(f64, f64)], b: &[(f64, f64)]) -> f64 {
    fn go(i: usize, a: &[(f64, f64)], b: &[(f64, f64)], used: &mut Vec<bool>, worst: f64, best: &mut f64) {
        if worst >= *best {
            return;
        }
        if i == a.len() {
            let rest = b.iter().zip(used.iter()).filter(|(_, &u)| !u).map(|(q, _)| (q.1 - q.0) / 2.0).fold(0.0, f64::max);
            *best = best.min(worst.max(rest));
            return;
        }
        let p = a[i];
        go(i + 1, a, b, used, worst.max((p.1 - p.0) / 2.0), best);
        for j in 0..b.len() {
            if !used[j] {
                used[j] = true;
                let c = (p.0 - b[j].0).abs().max((p.1 - b[j].1).abs());
                go(i + 1, a, b, used, worst.max(c), best);
                used[j] = false;
            }
        }
    }
    let mut best = f64::INFINITY;
    go(0, a, b, &mut vec![false; b.len()], 0.0, &mut best);
    best
}

/// Full brute-force bottleneck distance in one dimension, essential points
/// matched by every bijection.
pub fn brute_bottleneck(d1: &PersistenceDiagram, d2: &PersistenceDiagram, dim: usize) -> f64 {
    let split = |d: &PersistenceDiagram| {
        let (mut f, mut e) = (Vec::new(), Vec::new());
        for p in d.in_dimension(dim) {
            if p.is_essential() {
                e.push(p.birth);
            } else {
                f.push((p.birth, p.death));
            }
        }
        (f, e)
    };
    let (f1, e1) = split(d1);
    let (f2, e2) = split(d2);
    if e1.len() != e2.len() {
        return f64::INFINITY;
    }
    let ess = permutations(e1.len())
        .iter()
        .map(|perm| e1.iter().zip(perm).map(|(a, &j)| (a - e2[j as usize]).abs()).fold(0.0, f64::max))
        .fold(f64::INFINITY, f64::min);
    let ess = if e1.is_empty() { 0.0 } else { ess };
    ess.max(brute_finite_bottleneck(&f1, &f2))
}

/// Random graph with `n` vertices, edge probability `p` and labels in `0..labels`.
pub fn random_graph(rng: &mut impl Rng, n: usize, p: f64, labels: u32) -> LabeledGraph {
    let lab = (0..n).map(|_| rng.gen_range(0..labels)).collect();
    let mut edges = Vec::new();
    for u in 0..n as u32 {
        for v in u + 1..n as u32 {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    LabeledGraph::new(lab, edges).unwrap()
}

/// Random connected graph: a random spanning tree plus extra edges.
pub fn random_connected_graph(rng: &mut impl Rng, n: usize, extra: f64, labels: u32) -> LabeledGraph {
    let lab = (0..n).map(|_| rng.gen_range(0..labels)).collect();
    let mut edges = BTreeSet::new();
    for v in 1..n as u32 {
        let u = rng.gen_range(0..v);
        edges.insert((u, v));
    }
    for u in 0..n as u32 {
        for v in u + 1..n as u32 {
            if rng.gen_bool(extra) {
                edges.insert((u, v));
            }
        }
    }
    LabeledGraph::new(lab, edges).unwrap()
}

pub fn random_permutation(rng: &mut impl Rng, n: usize) -> Vec<u32> {
    let mut p: Vec<u32> = (0..n as u32).collect();
    p.shuffle(rng);
    p
}

/// Random valid filtered complex with at most `max_simplices` simplices and
/// dimension at most 3; values are multiples of `1 / levels`.
pub fn random_complex(rng: &mut impl Rng, max_simplices: usize) -> FilteredComplex {
    let levels = rng.gen_range(1..=6u32);
    let n = rng.gen_range(1..=14u32);
    let mut level: BTreeMap<Vec<u32>, u32> = BTreeMap::new();
    let tops = rng.gen_range(1..=60);
    for _ in 0..tops {
        let size = rng.gen_range(1..=4usize).min(n as usize);
        let mut vs: Vec<u32> = (0..n).collect();
        vs.shuffle(rng);
        vs.truncate(size);
        vs.sort_unstable();
        let mut with_faces = level.clone();
        for mask in 1u32..(1 << size) {
            let face: Vec<u32> = (0..size).filter(|&i| mask >> i & 1 == 1).map(|i| vs[i]).collect();
            with_faces.entry(face).or_insert_with(|| rng.gen_range(1..=levels));
        }
        if with_faces.len() > max_simplices {
            break;
        }
        level = with_faces;
    }
    // Make faces enter no later than their cofaces.
    let mut by_size: Vec<Vec<u32>> = level.keys().cloned().collect();
    by_size.sort_by_key(|s| std::cmp::Reverse(s.len()));
    for s in by_size {
        let l = level[&s];
        if s.len() > 1 {
            for skip in 0..s.len() {
                let face: Vec<u32> = s.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v).collect();
                let f = level.get_mut(&face).unwrap();
                *f = (*f).min(l);
            }
        }
    }
    FilteredComplex::from_simplices(level.into_iter().map(|(vs, l)| Simplex::new(vs, Value::new(l, levels))).collect())
}

/// Random diagram in one dimension with up to `max_points` points, some of
/// them essential.
pub fn random_diagram(rng: &mut impl Rng, dim: usize, max_points: usize, essentials: usize) -> PersistenceDiagram {
    let n = rng.gen_range(0..=max_points.saturating_sub(essentials));
    let grid = |rng: &mut dyn rand::RngCore| rng.gen_range(0..=20) as f64 / 20.0;
    let mut points: Vec<DiagramPoint> = (0..n)
        .map(|_| {
            let a = grid(rng);
            let b = grid(rng);
            DiagramPoint { dim, birth: a.min(b), death: a.max(b) }
        })
        .collect();
    points.extend((0..essentials).map(|_| DiagramPoint { dim, birth: grid(rng), death: f64::INFINITY }));
    PersistenceDiagram::new(points)
}

/// The triangle with each edge subdivided: a 6-cycle `a-d-b-f-c-e-a`, all
/// vertices labeled 0. Vertex ids: a=0, b=1, c=2, d=3, e=4, f=5.
pub fn subdivided_triangle() -> LabeledGraph {
    LabeledGraph::new(vec![0; 6], [(0, 3), (3, 1), (1, 5), (5, 2), (2, 4), (4, 0)]).unwrap()
}

/// The six 2-simplices abd, ace, ade, bcf, bdf, cef with all faces, every
/// simplex at `value`.
pub fn subdivided_triangle_complex(value: Value) -> FilteredComplex {
    let tris: [[u32; 3]; 6] = [[0, 1, 3], [0, 2, 4], [0, 3, 4], [1, 2, 5], [1, 3, 5], [2, 4, 5]];
    let mut all = BTreeSet::new();
    for t in tris {
        for mask in 1u32..8 {
            all.insert((0..3).filter(|&i| mask >> i & 1 == 1).map(|i| t[i]).collect::<Vec<_>>());
        }
    }
    FilteredComplex::from_simplices(all.into_iter().map(|vs| Simplex::new(vs, value)).collect())
}

/// Betti numbers of the sublevel complex at `at`, from ranks of dense
/// boundary matrices over GF(2) (row-echelon elimination, no pairing).
pub fn rank_betti(complex: &FilteredComplex, at: Value) -> Vec<usize> {
    let mut by_dim: Vec<Vec<Vec<u32>>> = Vec::new();
    for s in complex.simplices().iter().filter(|s| s.value() <= at) {
        let d = s.vertices().len() - 1;
        if by_dim.len() <= d {
            by_dim.resize(d + 1, Vec::new());
        }
        by_dim[d].push(s.vertices().to_vec());
    }
    let Some(top) = complex.max_dimension() else { return Vec::new() };
    by_dim.resize(top + 1, Vec::new());
    // rank of the boundary map from dimension d to d - 1
    let rank = |d: usize| -> usize {
        if d == 0 || d > top {
            return 0;
        }
        let index: BTreeMap<&[u32], usize> = by_dim[d - 1].iter().enumerate().map(|(i, f)| (f.as_slice(), i)).collect();
        let mut rows: Vec<Vec<bool>> = by_dim[d]
            .iter()
            .map(|s| {
                let mut row = vec![false; index.len()];
                for skip in 0..s.len() {
                    let face: Vec<u32> = s.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v).collect();
                    row[index[face.as_slice()]] = true;
                }
                row
            })
            .collect();
        let mut r = 0;
        for col in 0..index.len() {
            let Some(p) = (r..rows.len()).find(|&i| rows[i][col]) else { continue };
            rows.swap(r, p);
            let pivot = rows[r].clone();
            for row in rows.iter_mut().skip(r + 1) {
                if row[col] {
                    row.iter_mut().zip(&pivot).for_each(|(x, &y)| *x ^= y);
                }
            }
            r += 1;
        }
        r
    };
    (0..=top).map(|d| by_dim[d].len() - rank(d) - rank(d + 1)).collect()
}
