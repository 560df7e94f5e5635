use std::collections::BTreeMap;

use fph_core::dfs_code::min_dfs_code;
use fph_core::graph::{GraphDataset, LabeledGraph};
use fph_core::matcher::enumerate_embeddings;
use fph_core::miner::{mine_frequent, mni_support, MiningConfig, Pattern};
use fph_testkit as tk;
use proptest::prelude::*;
use rand::Rng;

fn random_dataset(seed: u64, max_union: usize) -> GraphDataset {
    let mut rng = tk::rng(seed);
    let labels = rng.gen_range(1..=3);
    let mut graphs = Vec::new();
    let mut used = 0;
    while used < max_union {
        let n = rng.gen_range(2..=5).min(max_union - used);
        if n < 2 {
            break;
        }
        graphs.push(tk::random_graph(&mut rng, n, 0.6, labels));
        used += n;
        if rng.gen_bool(0.3) {
            break;
        }
    }
    let classes = (0..graphs.len() as u32).map(|i| i % 2).collect();
    GraphDataset::new(graphs, classes).unwrap()
}

fn mined_forms(ds: &GraphDataset, config: MiningConfig) -> BTreeMap<tk::Form, u32> {
    mine_frequent(ds, config)
        .unwrap()
        .patterns()
        .iter()
        .map(|p| (tk::canonical_form(p.graph()), p.mni_support()))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn miner_matches_brute_force(seed in any::<u64>(), sigma in 1u32..=2, k in 2usize..=4) {
        let ds = random_dataset(seed, 10);
        let oracle = tk::brute_force_mine(&ds.union_graph(), sigma, k);
        let mined = mine_frequent(&ds, MiningConfig::new(sigma, k)).unwrap();
        // canonical codes are unique
        let forms: BTreeMap<_, _> = mined.patterns().iter().map(|p| (tk::canonical_form(p.graph()), p.mni_support())).collect();
        prop_assert_eq!(forms.len(), mined.len());
        prop_assert_eq!(forms, oracle);
    }

    #[test]
    fn matcher_matches_brute_force(seed in any::<u64>()) {
        let mut rng = tk::rng(seed);
        let (tn, pn) = (rng.gen_range(2..=7), rng.gen_range(2..=4));
        let target = tk::random_graph(&mut rng, tn, 0.5, 2);
        let pattern = tk::random_connected_graph(&mut rng, pn, 0.3, 2);
        let mut brute = tk::brute_embeddings(&pattern, &target);
        brute.sort();
        let fast: Vec<Vec<u32>> = enumerate_embeddings(&pattern, &target, None).into_iter().map(|e| e.0).collect();
        prop_assert_eq!(&fast, &brute);
        prop_assert_eq!(mni_support(&pattern, &target, None), tk::brute_mni(&pattern, &target));
    }

    #[test]
    fn embedding_vertex_sets_are_automorphism_invariant(seed in any::<u64>()) {
        let mut rng = tk::rng(seed);
        let target = tk::random_graph(&mut rng, 7, 0.5, 2);
        let pn = rng.gen_range(2..=4);
        let pattern = tk::random_connected_graph(&mut rng, pn, 0.4, 2);
        let sets = |p: &LabeledGraph| {
            let mut s: Vec<Vec<u32>> = enumerate_embeddings(p, &target, None).iter().map(|e| e.vertex_set()).collect();
            s.sort();
            s.dedup();
            s
        };
        let base = sets(&pattern);
        for perm in tk::permutations(pattern.vertex_count()) {
            let q = pattern.permuted(&perm);
            if q == pattern {
                prop_assert_eq!(&sets(&q), &base);
            }
        }
        // any relabeling, automorphism or not, describes the same pattern
        let q = pattern.permuted(&tk::random_permutation(&mut rng, pattern.vertex_count()));
        prop_assert_eq!(sets(&q), base);
    }

    #[test]
    fn support_is_downward_closed(seed in any::<u64>()) {
        let ds = random_dataset(seed, 10);
        let union = ds.union_graph();
        let set = mine_frequent(&ds, MiningConfig::new(1, 4)).unwrap();
        for p in set.patterns().iter().filter(|p| p.vertex_count() >= 3) {
            let g = p.graph();
            for drop in 0..g.vertex_count() as u32 {
                let keep: Vec<u32> = (0..g.vertex_count() as u32).filter(|&v| v != drop).collect();
                let sub = g.induced(&keep);
                if sub.is_connected() && sub.edge_count() > 0 {
                    prop_assert!(mni_support(&sub, &union, None) >= p.mni_support());
                }
            }
        }
    }

    #[test]
    fn budgets_are_monotone(seed in any::<u64>()) {
        let ds = random_dataset(seed, 12);
        let exact = mine_frequent(&ds, MiningConfig::new(1, 4)).unwrap();
        let mut previous: Option<fph_core::PatternSet> = None;
        for budget in [1usize, 2, 4, 8, 32] {
            let set = mine_frequent(&ds, MiningConfig::new(1, 4).with_budget(Some(budget))).unwrap();
            if let Some(prev) = &previous {
                prop_assert!(set.len() >= prev.len());
                prop_assert!(set.stats().embeddings_retained >= prev.stats().embeddings_retained);
                for p in prev.patterns() {
                    let q = set.patterns().iter().find(|q| q.code() == p.code());
                    prop_assert!(q.is_some_and(|q| q.mni_support() >= p.mni_support()));
                }
            }
            previous = Some(set);
        }
        let unbounded = mine_frequent(&ds, MiningConfig::new(1, 4).with_budget(Some(usize::MAX))).unwrap();
        prop_assert_eq!(unbounded.patterns(), exact.patterns());
    }
}

#[test]
fn canonical_codes_are_permutation_invariant() {
    let mut rng = tk::rng(2024);
    for _ in 0..1000 {
        let n = rng.gen_range(2..=6);
        let g = tk::random_connected_graph(&mut rng, n, 0.3, 3);
        let code = min_dfs_code(&g).unwrap();
        for _ in 0..3 {
            let p = g.permuted(&tk::random_permutation(&mut rng, n));
            assert_eq!(min_dfs_code(&p).unwrap(), code);
        }
        assert!(code.is_min());
        assert!(tk::is_isomorphic(&code.to_graph(), &g));
    }
}

#[test]
fn canonical_codes_separate_non_isomorphic_patterns() {
    let mut rng = tk::rng(77);
    let mut by_code: BTreeMap<Vec<u8>, LabeledGraph> = BTreeMap::new();
    for _ in 0..1500 {
        let n = rng.gen_range(2..=5);
        let g = tk::random_connected_graph(&mut rng, n, 0.35, 2);
        let code = Pattern::from_graph(&g, 1).unwrap().canonical_code();
        match by_code.get(&code) {
            Some(h) => assert!(tk::is_isomorphic(h, &g), "one code for two non-isomorphic graphs"),
            None => {
                by_code.insert(code, g);
            }
        }
    }
    // distinct codes must mean distinct isomorphism classes
    let forms: std::collections::BTreeSet<_> = by_code.values().map(tk::canonical_form).collect();
    assert_eq!(forms.len(), by_code.len());
}

#[test]
fn triangle_dataset_matches_enumeration() {
    let tri = LabeledGraph::new(vec![0; 3], [(0, 1), (1, 2), (0, 2)]).unwrap();
    let ds = GraphDataset::new(vec![tri], vec![0]).unwrap();
    let mined = mined_forms(&ds, MiningConfig::new(1, 3));
    assert_eq!(mined, tk::brute_force_mine(&ds.union_graph(), 1, 3));
    assert_eq!(mined.len(), 3);
}

#[test]
fn union_graph_support_counts_across_graphs() {
    // Two copies of a-b: the edge pattern's support counts both copies.
    let g = LabeledGraph::new(vec![0, 1], [(0, 1)]).unwrap();
    let ds = GraphDataset::new(vec![g.clone(), g], vec![0, 1]).unwrap();
    let set = mine_frequent(&ds, MiningConfig::new(2, 2)).unwrap();
    assert_eq!(set.len(), 1);
    assert_eq!(set.patterns()[0].mni_support(), 2);
    assert!(mine_frequent(&ds, MiningConfig::new(3, 2)).unwrap().is_empty());
}
