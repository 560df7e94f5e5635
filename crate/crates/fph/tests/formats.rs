use fph::formats::{self, Header};
use fph_core::{
    compute_persistence, extract_features, mine_frequent, DiagramPoint, GraphDataset, MiningConfig, PersistenceDiagram,
};
use fph_testkit as tk;
use proptest::prelude::*;
use rand::Rng;

fn header() -> Header {
    Header::new("test", &serde_json::json!({ "seed": 1 }))
}

fn bytes(f: impl FnOnce(&mut Vec<u8>) -> std::io::Result<()>) -> Vec<u8> {
    let mut buf = Vec::new();
    f(&mut buf).unwrap();
    buf
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn pattern_files_round_trip(seed in any::<u64>()) {
        let mut rng = tk::rng(seed);
        let graphs: Vec<_> = (0..3).map(|_| tk::random_graph(&mut rng, 7, 0.4, 2)).collect();
        let ds = GraphDataset::new(graphs, vec![0, 1, 0]).unwrap();
        let budget = if rng.gen_bool(0.5) { Some(rng.gen_range(1..20)) } else { None };
        let set = mine_frequent(&ds, MiningConfig::new(1, 4).with_budget(budget)).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("p.tsv");
        formats::write_file(&path, |w| formats::write_patterns(w, &header(), &set)).unwrap();
        let back = formats::read_patterns(&path).unwrap();
        prop_assert_eq!(back.patterns(), set.patterns());
        prop_assert_eq!(back.config(), set.config());
    }

    #[test]
    fn diagram_files_round_trip(seed in any::<u64>()) {
        let mut rng = tk::rng(seed);
        let diagrams: Vec<PersistenceDiagram> = (0..4)
            .map(|_| compute_persistence(&tk::random_complex(&mut rng, 60), 3).unwrap())
            .chain([PersistenceDiagram::default()])
            .collect();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("d.csv");
        formats::write_file(&path, |w| formats::write_diagrams(w, &header(), &diagrams)).unwrap();
        prop_assert_eq!(formats::read_diagrams(&path).unwrap(), diagrams);
    }
}

#[test]
fn feature_files_round_trip_exactly() {
    let d = PersistenceDiagram::new(vec![
        DiagramPoint { dim: 0, birth: 1.0 / 3.0, death: f64::INFINITY },
        DiagramPoint { dim: 1, birth: 0.1, death: 0.7 },
    ]);
    let fv = vec![extract_features(&d, 1), extract_features(&PersistenceDiagram::default(), 1)];
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("f.csv");
    formats::write_file(&path, |w| formats::write_features(w, &header(), &fv, &[1, 0])).unwrap();
    let table = formats::read_features(&path).unwrap();
    assert_eq!(table.graph_ids, vec![0, 1]);
    assert_eq!(table.classes, vec![1, 0]);
    assert_eq!(table.rows, fv.iter().map(|f| f.values.clone()).collect::<Vec<_>>());
}

#[test]
fn outputs_start_with_a_header() {
    let out = bytes(|w| formats::write_diagrams(w, &header(), &[]));
    let text = String::from_utf8(out).unwrap();
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("# fph "));
    assert_eq!(lines.next().unwrap(), r#"# config {"seed":1}"#);
}

#[test]
fn tampered_pattern_rows_are_rejected() {
    let g = fph_core::LabeledGraph::new(vec![0, 1, 0], [(0, 1), (1, 2)]).unwrap();
    let set = mine_frequent(&GraphDataset::new(vec![g], vec![0]).unwrap(), MiningConfig::new(1, 3)).unwrap();
    let text = String::from_utf8(bytes(|w| formats::write_patterns(w, &header(), &set))).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p.tsv");
    let row = text.lines().position(|l| !l.starts_with('#')).unwrap() + 1;

    std::fs::write(&path, text.replacen("\t1/", "\t2/", 1)).unwrap();
    let err = formats::read_patterns(&path).unwrap_err();
    assert_eq!(err.line, Some(row));

    let mut lines: Vec<&str> = text.lines().collect();
    let fields: Vec<&str> = lines[row - 1].split('\t').collect();
    let relabeled = fields[3].split(',').map(|_| "1").collect::<Vec<_>>().join(",");
    let swapped = format!("{}\t{}\t{}\t{relabeled}\t{}", fields[0], fields[1], fields[2], fields[4]);
    lines[row - 1] = &swapped;
    std::fs::write(&path, lines.join("\n")).unwrap();
    assert!(formats::read_patterns(&path).unwrap_err().to_string().contains("canonical code"));
}
