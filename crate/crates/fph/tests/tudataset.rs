use std::fs;
use std::path::{Path, PathBuf};

use fph::{load_tudataset, write_tudataset};
use fph_core::{GraphDataset, LabeledGraph};
use fph_testkit as tk;
use proptest::prelude::*;
use rand::Rng;

fn data_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data/MUTAG")
}

fn write(dir: &Path, name: &str, files: &[(&str, &str)]) {
    for (suffix, body) in files {
        fs::write(dir.join(format!("{name}_{suffix}.txt")), body).unwrap();
    }
}

#[test]
fn mutag_loads() {
    let ds = load_tudataset(&data_dir(), "MUTAG").unwrap();
    assert_eq!(ds.len(), 188);
    assert_eq!(ds.class_count(), 2);
    assert_eq!(ds.label_alphabet(), 7);
    assert_eq!(ds.graphs().iter().map(LabeledGraph::vertex_count).sum::<usize>(), 3371);
    // every undirected edge is listed in both directions
    assert_eq!(ds.graphs().iter().map(LabeledGraph::edge_count).sum::<usize>(), 7442 / 2);
    // the first graph's class comes first
    assert_eq!(ds.class_labels()[0], 0);
}

#[test]
fn smallest_dataset() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "T", &[("A", "1, 2\n2, 1\n"), ("graph_indicator", "1\n1\n"), ("graph_labels", "-1\n")]);
    let ds = load_tudataset(dir.path(), "T").unwrap();
    assert_eq!(ds.len(), 1);
    assert_eq!(ds.graphs()[0].edges().collect::<Vec<_>>(), vec![(0, 1)]);
    assert_eq!(ds.graphs()[0].labels(), &[0, 0]);
    assert_eq!(ds.class_labels(), &[0]);
}

#[test]
fn crlf_and_one_directional_rows() {
    let dir = tempfile::tempdir().unwrap();
    write(
        dir.path(),
        "T",
        &[
            ("A", "1,2\r\n3, 4\r\n"),
            ("graph_indicator", "1\r\n1\r\n2\r\n2\r\n"),
            ("graph_labels", "5\r\n-3\r\n"),
            ("node_labels", "9\r\n2\r\n2\r\n9\r\n"),
        ],
    );
    let ds = load_tudataset(dir.path(), "T").unwrap();
    assert_eq!(ds.class_labels(), &[0, 1]);
    assert_eq!(ds.graphs()[0].labels(), &[1, 0]);
    assert_eq!(ds.graphs()[1].labels(), &[0, 1]);
    assert_eq!(ds.label_alphabet(), 2);
    assert!(ds.graphs().iter().all(|g| g.edge_count() == 1));
}

fn load_error(files: &[(&str, &str)]) -> String {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "T", files);
    load_tudataset(dir.path(), "T").unwrap_err().to_string()
}

#[test]
fn errors_name_file_and_line() {
    let base = [("graph_indicator", "1\n1\n"), ("graph_labels", "1\n")];
    let err = load_error(&[base[0], base[1], ("A", "1, 2\n2, 7\n")]);
    assert!(err.contains("T_A.txt:2:") && err.contains("unknown node 7"), "{err}");
    let err = load_error(&[base[0], base[1], ("A", "1, 1\n")]);
    assert!(err.contains("T_A.txt:1:") && err.contains("self-loop"), "{err}");
    let err = load_error(&[base[0], base[1], ("A", "1, 2\n1, 2\n")]);
    assert!(err.contains("T_A.txt:2:") && err.contains("repeated edge"), "{err}");
    let err = load_error(&[base[0], base[1], ("A", "1, 2\n"), ("node_labels", "0\n")]);
    assert!(err.contains("T_node_labels.txt") && err.contains("1 node labels for 2 nodes"), "{err}");
    let err = load_error(&[("graph_indicator", "1\n3\n"), base[1], ("A", "")]);
    assert!(err.contains("T_graph_indicator.txt:2:"), "{err}");
    let err = load_error(&[base[1], ("A", "")]);
    assert!(err.contains("T_graph_indicator.txt") && err.contains("missing file"), "{err}");
    let err = load_error(&[base[0], base[1], ("A", "1 2\n")]);
    assert!(err.contains("T_A.txt:1:"), "{err}");
}

#[test]
fn edges_across_graphs_are_rejected() {
    let err = load_error(&[("graph_indicator", "1\n2\n"), ("graph_labels", "0\n1\n"), ("A", "1, 2\n")]);
    assert!(err.contains("joins graphs 1 and 2"), "{err}");
}

fn random_dataset(seed: u64) -> GraphDataset {
    let mut rng = tk::rng(seed);
    let count = rng.gen_range(1..=6);
    let graphs: Vec<LabeledGraph> = (0..count)
        .map(|_| {
            let n = rng.gen_range(1..=8);
            tk::random_graph(&mut rng, n, 0.4, 3)
        })
        .collect();
    // classes in first-occurrence order, as the loader produces them
    let mut classes = Vec::new();
    let mut next = 0;
    for _ in 0..count {
        let c = rng.gen_range(0..=next);
        next = next.max(c + 1);
        classes.push(c);
    }
    let used: std::collections::BTreeSet<u32> = graphs.iter().flat_map(|g| g.labels().to_vec()).collect();
    let dense: std::collections::BTreeMap<u32, u32> = used.iter().enumerate().map(|(i, &l)| (l, i as u32)).collect();
    let graphs = graphs
        .into_iter()
        .map(|g| LabeledGraph::new(g.labels().iter().map(|l| dense[l]).collect(), g.edges()).unwrap())
        .collect();
    GraphDataset::new(graphs, classes).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn write_then_load_round_trips(seed in any::<u64>()) {
        let ds = random_dataset(seed);
        let dir = tempfile::tempdir().unwrap();
        write_tudataset(&ds, dir.path(), "RT").unwrap();
        let back = load_tudataset(dir.path(), "RT").unwrap();
        prop_assert_eq!(back, ds);
    }
}
