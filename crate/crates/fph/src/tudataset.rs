//! Reader and writer for the TUDataset text layout.
//!
//! A dataset `DS` lives in one directory as `DS_A.txt` (edge rows `u, v`,
//! 1-indexed over all nodes), `DS_graph_indicator.txt` (graph id per node),
//! `DS_graph_labels.txt` (class per graph) and optionally
//! `DS_node_labels.txt`. Vertex labels are remapped to dense ids in ascending
//! order of their raw values; class labels in order of first occurrence.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fs;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use fph_core::{GraphDataset, Label, LabeledGraph};

use crate::error::DataError;

fn file(dir: &Path, name: &str, suffix: &str) -> PathBuf {
    dir.join(format!("{name}_{suffix}.txt"))
}

/// Non-blank lines as `(line_number, trimmed_text)`.
fn records(path: &Path) -> Result<Vec<(usize, String)>, DataError> {
    let text = fs::read_to_string(path).map_err(|e| match e.kind() {
        std::io::ErrorKind::NotFound => DataError::new(path, "missing file"),
        _ => DataError::io(path, e),
    })?;
    Ok(text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim().to_string()))
        .filter(|(_, l)| !l.is_empty())
        .collect())
}

fn int(path: &Path, line: usize, field: &str) -> Result<i64, DataError> {
    field.trim().parse().map_err(|_| DataError::at(path, line, format!("expected an integer, found `{}`", field.trim())))
}

/// Loads dataset `name` from `dir`.
pub fn load_tudataset(dir: &Path, name: &str) -> Result<GraphDataset, DataError> {
    let indicator_path = file(dir, name, "graph_indicator");
    let indicator: Vec<(usize, usize)> = records(&indicator_path)?
        .into_iter()
        .map(|(line, text)| match int(&indicator_path, line, &text)? {
            g if g >= 1 => Ok((line, g as usize - 1)),
            g => Err(DataError::at(&indicator_path, line, format!("graph id {g} is not positive"))),
        })
        .collect::<Result<_, _>>()?;

    let classes_path = file(dir, name, "graph_labels");
    let raw_classes = records(&classes_path)?;
    let graph_count = raw_classes.len();
    if let Some(&(line, g)) = indicator.iter().find(|(_, g)| *g >= graph_count) {
        return Err(DataError::at(
            &indicator_path,
            line,
            format!("graph id {} exceeds the {graph_count} graphs in {}", g + 1, classes_path.display()),
        ));
    }
    let mut class_ids: HashMap<i64, u32> = HashMap::new();
    let mut class_labels = Vec::with_capacity(graph_count);
    for (line, text) in &raw_classes {
        let raw = int(&classes_path, *line, text)?;
        let next = class_ids.len() as u32;
        class_labels.push(*class_ids.entry(raw).or_insert(next));
    }

    // Per-node (graph, local id), local ids in file order.
    let mut sizes = vec![0u32; graph_count];
    let nodes: Vec<(usize, u32)> = indicator
        .iter()
        .map(|&(_, g)| {
            sizes[g] += 1;
            (g, sizes[g] - 1)
        })
        .collect();

    let labels_path = file(dir, name, "node_labels");
    let raw_labels: Vec<i64> = if labels_path.exists() {
        let rows = records(&labels_path)?;
        if rows.len() != nodes.len() {
            let line = rows.get(nodes.len()).map_or(rows.last().map_or(0, |r| r.0), |r| r.0);
            return Err(DataError::at(
                &labels_path,
                line,
                format!("{} node labels for {} nodes in {}", rows.len(), nodes.len(), indicator_path.display()),
            ));
        }
        rows.iter()
            .map(|(line, text)| int(&labels_path, *line, text.split(',').next().unwrap_or("")))
            .collect::<Result<_, _>>()?
    } else {
        vec![0; nodes.len()]
    };
    if file(dir, name, "node_attributes").exists() {
        log::warn!("{name}: node attributes are ignored");
    }
    let alphabet: BTreeSet<i64> = raw_labels.iter().copied().collect();
    let dense: BTreeMap<i64, Label> = alphabet.iter().enumerate().map(|(i, &l)| (l, i as Label)).collect();

    let edges_path = file(dir, name, "A");
    let mut rows_seen: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut edges: Vec<BTreeSet<(u32, u32)>> = vec![BTreeSet::new(); graph_count];
    for (line, text) in records(&edges_path)? {
        let mut fields = text.split(',');
        let (Some(a), Some(b), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(DataError::at(&edges_path, line, "expected two comma-separated node ids"));
        };
        let node = |field: &str| -> Result<usize, DataError> {
            match int(&edges_path, line, field)? {
                v if v >= 1 && (v as usize) <= nodes.len() => Ok(v as usize - 1),
                v => Err(DataError::at(&edges_path, line, format!("edge references unknown node {v}"))),
            }
        };
        let (u, v) = (node(a)?, node(b)?);
        if u == v {
            return Err(DataError::at(&edges_path, line, format!("self-loop on node {}", u + 1)));
        }
        if !rows_seen.insert((u, v)) {
            return Err(DataError::at(&edges_path, line, format!("repeated edge {}, {}", u + 1, v + 1)));
        }
        let ((gu, lu), (gv, lv)) = (nodes[u], nodes[v]);
        if gu != gv {
            return Err(DataError::at(&edges_path, line, format!("edge joins graphs {} and {}", gu + 1, gv + 1)));
        }
        edges[gu].insert((lu.min(lv), lu.max(lv)));
    }

    let mut labels: Vec<Vec<Label>> = sizes.iter().map(|&n| Vec::with_capacity(n as usize)).collect();
    for (&(g, _), raw) in nodes.iter().zip(&raw_labels) {
        labels[g].push(dense[raw]);
    }
    let graphs = labels
        .into_iter()
        .zip(edges)
        .map(|(l, e)| LabeledGraph::new(l, e).expect("edges validated above"))
        .collect();
    GraphDataset::with_alphabet(graphs, class_labels, alphabet.len().max(1))
        .map_err(|e| DataError::new(&indicator_path, e.to_string()))
}

/// Writes `dataset` as `name` into `dir`. Edges are written in both
/// directions; labels and classes are written as their dense ids.
pub fn write_tudataset(dataset: &GraphDataset, dir: &Path, name: &str) -> Result<(), DataError> {
    fs::create_dir_all(dir).map_err(|e| DataError::io(dir, e))?;
    let open = |suffix: &str| -> Result<(PathBuf, BufWriter<fs::File>), DataError> {
        let path = file(dir, name, suffix);
        let f = fs::File::create(&path).map_err(|e| DataError::io(&path, e))?;
        Ok((path, BufWriter::new(f)))
    };
    let (a_path, mut a) = open("A")?;
    let (i_path, mut ind) = open("graph_indicator")?;
    let (n_path, mut nl) = open("node_labels")?;
    let (c_path, mut cl) = open("graph_labels")?;
    let mut offset = 0usize;
    for (g, (graph, class)) in dataset.graphs().iter().zip(dataset.class_labels()).enumerate() {
        for v in 0..graph.vertex_count() as u32 {
            writeln!(ind, "{}", g + 1).map_err(|e| DataError::io(&i_path, e))?;
            writeln!(nl, "{}", graph.label(v)).map_err(|e| DataError::io(&n_path, e))?;
        }
        for (u, v) in graph.edges() {
            let (u, v) = (offset + u as usize + 1, offset + v as usize + 1);
            write!(a, "{u}, {v}\n{v}, {u}\n").map_err(|e| DataError::io(&a_path, e))?;
        }
        writeln!(cl, "{class}").map_err(|e| DataError::io(&c_path, e))?;
        offset += graph.vertex_count();
    }
    for (path, mut w) in [(a_path, a), (i_path, ind), (n_path, nl), (c_path, cl)] {
        w.flush().map_err(|e| DataError::io(&path, e))?;
    }
    Ok(())
}
