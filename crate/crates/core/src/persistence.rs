//! Persistent homology over GF(2) by boundary-matrix column reduction.

use alloc::vec;
use alloc::vec::Vec;
use core::mem;

use serde::{Deserialize, Serialize};

pub use crate::filtration::ComplexError;
use crate::filtration::FilteredComplex;
use crate::value::Value;

/// A point `(birth, death)` of a persistence diagram in dimension `dim`.
/// Essential classes have `death == f64::INFINITY`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiagramPoint {
    pub dim: usize,
    pub birth: f64,
    pub death: f64,
}

impl DiagramPoint {
    pub fn is_essential(&self) -> bool {
        self.death.is_infinite()
    }

    pub fn lifetime(&self) -> f64 {
        self.death - self.birth
    }
}

/// A multiset of diagram points, kept sorted by `(dim, birth, death)`.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct PersistenceDiagram {
    points: Vec<DiagramPoint>,
}

impl PersistenceDiagram {
    pub fn new(mut points: Vec<DiagramPoint>) -> Self {
        points.sort_by(|a, b| {
            a.dim.cmp(&b.dim).then(a.birth.total_cmp(&b.birth)).then(a.death.total_cmp(&b.death))
        });
        Self { points }
    }

    pub fn points(&self) -> &[DiagramPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn in_dimension(&self, dim: usize) -> impl Iterator<Item = &DiagramPoint> + '_ {
        self.points.iter().filter(move |p| p.dim == dim)
    }

    pub fn max_dimension(&self) -> Option<usize> {
        self.points.iter().map(|p| p.dim).max()
    }

    /// Number of classes in `dim` alive at `v`, i.e. with `birth <= v < death`.
    pub fn alive_at(&self, dim: usize, v: f64) -> usize {
        self.in_dimension(dim).filter(|p| p.birth <= v && v < p.death).count()
    }

    /// Replaces infinite deaths by `cap`.
    pub fn with_capped_deaths(&self, cap: f64) -> Self {
        let points = self
            .points
            .iter()
            .map(|p| DiagramPoint { death: if p.is_essential() { cap } else { p.death }, ..*p })
            .collect();
        Self::new(points)
    }
}

fn add_column(target: &mut Vec<usize>, source: &[usize]) {
    let mut out = Vec::with_capacity(target.len() + source.len());
    let (mut i, mut j) = (0, 0);
    while i < target.len() && j < source.len() {
        match target[i].cmp(&source[j]) {
            core::cmp::Ordering::Less => {
                out.push(target[i]);
                i += 1;
            }
            core::cmp::Ordering::Greater => {
                out.push(source[j]);
                j += 1;
            }
            core::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&target[i..]);
    out.extend_from_slice(&source[j..]);
    *target = out;
}

/// Computes the persistence diagram in dimensions `0..=max_dim`.
///
/// Columns are reduced from the top dimension down with clearing: once a
/// column's lowest entry is fixed, the column of that row's simplex is known
/// to reduce to zero and is skipped. Zero-lifetime points are kept.
pub fn compute_persistence(complex: &FilteredComplex, max_dim: usize) -> Result<PersistenceDiagram, ComplexError> {
    let index = complex.index()?;
    let simplices = complex.simplices();
    let m = simplices.len();
    let dims: Vec<usize> = simplices.iter().map(|s| s.dimension()).collect();
    let mut columns: Vec<Vec<usize>> = vec![Vec::new(); m];
    for (j, s) in simplices.iter().enumerate() {
        for face in s.facets() {
            let Some(&i) = index.get(face.as_slice()) else {
                return Err(ComplexError::MissingFace { simplex: s.vertices().to_vec(), face });
            };
            if i > j {
                return Err(ComplexError::FaceEntersLater { simplex: s.vertices().to_vec(), face });
            }
            if dims[j] <= max_dim + 1 {
                columns[j].push(i);
            }
        }
        columns[j].sort_unstable();
    }

    let mut owner: Vec<Option<usize>> = vec![None; m];
    let mut cleared = vec![false; m];
    let top = dims.iter().copied().max().unwrap_or(0).min(max_dim + 1);
    for d in (1..=top).rev() {
        for j in (0..m).filter(|&j| dims[j] == d) {
            if cleared[j] {
                columns[j].clear();
                continue;
            }
            let mut col = mem::take(&mut columns[j]);
            while let Some(&low) = col.last() {
                match owner[low] {
                    Some(o) => add_column(&mut col, &columns[o]),
                    None => {
                        owner[low] = Some(j);
                        cleared[low] = true;
                        break;
                    }
                }
            }
            columns[j] = col;
        }
    }

    let mut points = Vec::new();
    for i in 0..m {
        if dims[i] > max_dim {
            continue;
        }
        let birth = simplices[i].value().to_f64();
        match owner[i] {
            Some(j) => points.push(DiagramPoint { dim: dims[i], birth, death: simplices[j].value().to_f64() }),
            None if columns[i].is_empty() => points.push(DiagramPoint { dim: dims[i], birth, death: f64::INFINITY }),
            None => {}
        }
    }
    Ok(PersistenceDiagram::new(points))
}

/// Rank over GF(2) of a set of columns given as dense bit vectors, by
/// inserting them into a basis keyed by highest set bit.
fn gf2_rank(columns: Vec<Vec<u64>>) -> usize {
    let words = columns.first().map_or(0, Vec::len);
    let mut basis: Vec<Option<Vec<u64>>> = vec![None; words * 64];
    let mut rank = 0;
    for mut col in columns {
        while let Some(w) = (0..words).rev().find(|&w| col[w] != 0) {
            let bit = w * 64 + 63 - col[w].leading_zeros() as usize;
            match &basis[bit] {
                Some(b) => col.iter_mut().zip(b).for_each(|(c, b)| *c ^= b),
                None => {
                    basis[bit] = Some(col);
                    rank += 1;
                    break;
                }
            }
        }
    }
    rank
}

/// Betti numbers `beta_0..=beta_top` of the sublevel complex at `at_value`,
/// computed as `dim Z_p - dim B_p` from dense boundary-matrix ranks. `top` is
/// the complex's maximum dimension; an empty complex gives an empty list.
pub fn betti_numbers(complex: &FilteredComplex, at_value: Value) -> Result<Vec<usize>, ComplexError> {
    complex.check()?;
    let Some(top) = complex.max_dimension() else { return Ok(Vec::new()) };
    let sub = complex.sublevel(at_value);
    let by_dim: Vec<Vec<&[u32]>> = (0..=top + 1)
        .map(|d| sub.simplices().iter().filter(|s| s.dimension() == d).map(|s| s.vertices()).collect())
        .collect();
    // rank of the boundary map from dimension d to d - 1
    let rank = |d: usize| -> usize {
        if d == 0 || d > top {
            return 0;
        }
        let rows = &by_dim[d - 1];
        let words = rows.len().div_ceil(64).max(1);
        let cols = by_dim[d]
            .iter()
            .map(|s| {
                let mut bits = vec![0u64; words];
                for skip in 0..s.len() {
                    let face: Vec<u32> = s.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v).collect();
                    let r = rows.iter().position(|f| *f == face.as_slice()).expect("closed sublevel complex");
                    bits[r / 64] ^= 1 << (r % 64);
                }
                bits
            })
            .collect();
        gf2_rank(cols)
    };
    Ok((0..=top).map(|p| by_dim[p].len() - rank(p) - rank(p + 1)).collect())
}
