use fph_core::filtration::{build_degree_filtration, build_fsf, FilteredComplex};
use fph_core::graph::{GraphDataset, LabeledGraph};
use fph_core::miner::{mine_frequent, MiningConfig, Pattern, PatternSet};
use fph_core::persistence::{betti_numbers, compute_persistence, DiagramPoint};
use fph_core::{extract_features, Value};
use fph_testkit as tk;
use proptest::prelude::*;
use rand::Rng;

fn euler(c: &FilteredComplex) -> i64 {
    c.counts_by_dimension().iter().enumerate().map(|(d, &n)| if d % 2 == 0 { n as i64 } else { -(n as i64) }).sum()
}

fn faces_enter_first(c: &FilteredComplex) -> bool {
    let values: std::collections::BTreeMap<Vec<u32>, Value> =
        c.simplices().iter().map(|s| (s.vertices().to_vec(), s.value())).collect();
    c.simplices().iter().all(|s| s.facets().all(|f| values.get(&f).is_some_and(|&v| v <= s.value())))
}

#[test]
fn subdivided_triangle_has_one_essential_loop() {
    let complex = tk::subdivided_triangle_complex(Value::new(1, 1));
    assert_eq!(complex.counts_by_dimension(), vec![6, 12, 6]);
    assert_eq!(euler(&complex), 0);
    let diagram = compute_persistence(&complex, 2).unwrap();
    let h1: Vec<&DiagramPoint> = diagram.in_dimension(1).filter(|p| p.is_essential()).collect();
    assert_eq!(h1.len(), 1);
    assert_eq!(diagram.in_dimension(2).count(), 0);
    assert_eq!(betti_numbers(&complex, Value::new(1, 1)).unwrap(), vec![1, 1, 0]);
}

#[test]
fn subdivided_triangle_graph_yields_the_complex() {
    let g = tk::subdivided_triangle();
    assert_eq!((g.vertex_count(), g.edge_count()), (6, 6));
    let ds = GraphDataset::new(vec![g.clone()], vec![0]).unwrap();
    let patterns = mine_frequent(&ds, MiningConfig::new(1, 3)).unwrap();
    let complex = build_fsf(&g, &patterns, 3, None);
    // every three consecutive vertices span a 2-path, giving the six triangles
    assert_eq!(complex, tk::subdivided_triangle_complex(Value::new(1, 6)));
    let d = compute_persistence(&complex, 2).unwrap();
    assert_eq!(d.in_dimension(1).filter(|p| p.is_essential()).count(), 1);
}

#[test]
fn toy_filtration_values_follow_support() {
    // a-b-c path plus one extra a-b edge elsewhere: edge a-b has support 2.
    let g = LabeledGraph::new(vec![0, 1, 2], [(0, 1), (1, 2)]).unwrap();
    let h = LabeledGraph::new(vec![0, 1], [(0, 1)]).unwrap();
    let ds = GraphDataset::new(vec![g.clone(), h], vec![0, 1]).unwrap();
    let patterns = mine_frequent(&ds, MiningConfig::new(1, 3)).unwrap();
    let c = build_fsf(&g, &patterns, 3, None);
    let value = |vs: &[u32]| c.simplices().iter().find(|s| s.vertices() == vs).map(|s| s.value());
    assert_eq!(value(&[0, 1]), Some(Value::new(1, 2)));
    assert_eq!(value(&[1, 2]), Some(Value::new(1, 1)));
    assert_eq!(value(&[0, 1, 2]), Some(Value::new(1, 1)));
    assert_eq!(value(&[0]), Some(Value::new(1, 2)));
    assert_eq!(value(&[2]), Some(Value::new(1, 1)));
}

#[test]
fn uncovered_vertices_are_absent() {
    let g = LabeledGraph::new(vec![0, 0, 7], [(0, 1)]).unwrap();
    let p = Pattern::from_graph(&LabeledGraph::new(vec![0, 0], [(0, 1)]).unwrap(), 1).unwrap();
    let set = PatternSet::from_patterns(vec![p], MiningConfig::new(1, 2)).unwrap();
    let c = build_fsf(&g, &set, 2, None);
    assert!(c.simplices().iter().all(|s| !s.vertices().contains(&2)));
}

#[test]
fn degree_filtration_of_a_path() {
    let g = LabeledGraph::new(vec![0; 3], [(0, 1), (1, 2)]).unwrap();
    let d = compute_persistence(&build_degree_filtration(&g), 1).unwrap();
    let h0: Vec<(f64, f64)> = d.in_dimension(0).map(|p| (p.birth, p.death)).collect();
    assert_eq!(h0.len(), 3);
    assert_eq!(h0.iter().filter(|p| p.1.is_infinite()).count(), 1);
    assert!(h0.iter().any(|&(b, d)| b == 1.0 / 3.0 && (d - 2.0 / 3.0).abs() < 1e-15));
}

#[test]
fn degree_filtration_of_edgeless_graph() {
    let d = compute_persistence(&build_degree_filtration(&LabeledGraph::edgeless(vec![0; 4])), 1).unwrap();
    assert_eq!(d.in_dimension(0).filter(|p| p.is_essential()).count(), 4);
}

fn mined(graphs: Vec<LabeledGraph>, k: usize) -> PatternSet {
    let classes = vec![0; graphs.len()];
    mine_frequent(&GraphDataset::new(graphs, classes).unwrap(), MiningConfig::new(1, k)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn fsf_dimension_and_monotonicity(seed in any::<u64>(), k in 3usize..=4) {
        let mut rng = tk::rng(seed);
        let n = rng.gen_range(4..=9);
        let g = tk::random_graph(&mut rng, n, 0.45, 2);
        let patterns = mined(vec![g.clone()], k);
        let c = build_fsf(&g, &patterns, k, None);
        prop_assert!(c.check().is_ok());
        prop_assert!(faces_enter_first(&c));
        prop_assert!(c.max_dimension().unwrap_or(0) < k);
        for s in c.simplices() {
            prop_assert!(s.value() > Value::new(0, 1) && s.value() <= Value::new(1, 1));
        }
        let d = compute_persistence(&c, k - 1).unwrap();
        for p in d.points() {
            prop_assert!(p.dim < k);
            if p.dim == k - 1 {
                prop_assert!(p.is_essential());
            }
        }
    }

    #[test]
    fn fsf_is_isomorphism_invariant(seed in any::<u64>()) {
        let mut rng = tk::rng(seed);
        let n = rng.gen_range(4..=9);
        let g = tk::random_graph(&mut rng, n, 0.45, 2);
        let other = tk::random_graph(&mut rng, 6, 0.5, 2);
        let patterns = mined(vec![g.clone(), other], 3);
        let h = g.permuted(&tk::random_permutation(&mut rng, n));
        let dg = compute_persistence(&build_fsf(&g, &patterns, 3, None), 2).unwrap();
        let dh = compute_persistence(&build_fsf(&h, &patterns, 3, None), 2).unwrap();
        prop_assert_eq!(&dg, &dh);
        prop_assert_eq!(extract_features(&dg, 2), extract_features(&dh, 2));
        let mut vg = build_fsf(&g, &patterns, 3, None).values();
        let mut vh = build_fsf(&h, &patterns, 3, None).values();
        vg.sort();
        vh.sort();
        prop_assert_eq!(vg, vh);
    }

    #[test]
    fn fsf_is_deterministic(seed in any::<u64>()) {
        let mut rng = tk::rng(seed);
        let g = tk::random_graph(&mut rng, 8, 0.4, 3);
        let patterns = mined(vec![g.clone()], 4);
        prop_assert_eq!(build_fsf(&g, &patterns, 4, None), build_fsf(&g, &patterns, 4, None));
    }

    #[test]
    fn degree_filtration_is_valid(seed in any::<u64>()) {
        let mut rng = tk::rng(seed);
        let n = rng.gen_range(1..=10);
        let g = tk::random_graph(&mut rng, n, 0.4, 1);
        let c = build_degree_filtration(&g);
        prop_assert!(c.check().is_ok());
        prop_assert_eq!(c.counts_by_dimension()[0], n);
        let d = compute_persistence(&c, 1).unwrap();
        prop_assert_eq!(d.in_dimension(0).count(), n);
    }
}
