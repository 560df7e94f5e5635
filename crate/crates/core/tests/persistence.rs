use fph_core::filtration::{FilteredComplex, Simplex};
use fph_core::persistence::{betti_numbers, compute_persistence};
use fph_core::Value;
use fph_testkit as tk;
use proptest::prelude::*;

fn max_dim(c: &FilteredComplex) -> usize {
    c.max_dimension().unwrap_or(0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn alive_points_match_betti_numbers(seed in any::<u64>()) {
        let c = tk::random_complex(&mut tk::rng(seed), 200);
        let top = max_dim(&c);
        let d = compute_persistence(&c, top).unwrap();
        for v in c.values() {
            let betti = betti_numbers(&c, v).unwrap();
            for (dim, &b) in betti.iter().enumerate() {
                prop_assert_eq!(d.alive_at(dim, v.to_f64()), b, "dim {} at {}", dim, v);
            }
        }
    }

    #[test]
    fn betti_numbers_match_rank_oracle(seed in any::<u64>()) {
        let c = tk::random_complex(&mut tk::rng(seed), 200);
        for v in c.values() {
            prop_assert_eq!(betti_numbers(&c, v).unwrap(), tk::rank_betti(&c, v));
        }
    }

    #[test]
    fn euler_characteristic_matches_final_betti(seed in any::<u64>()) {
        let c = tk::random_complex(&mut tk::rng(seed), 200);
        let chi: i64 = c.counts_by_dimension().iter().enumerate()
            .map(|(d, &n)| if d % 2 == 0 { n as i64 } else { -(n as i64) }).sum();
        let d = compute_persistence(&c, max_dim(&c)).unwrap();
        let essential: i64 = d.points().iter().filter(|p| p.is_essential())
            .map(|p| if p.dim % 2 == 0 { 1 } else { -1 }).sum();
        prop_assert_eq!(chi, essential);
    }

    #[test]
    fn tie_order_does_not_change_the_diagram(seed in any::<u64>()) {
        let mut rng = tk::rng(seed);
        let c = tk::random_complex(&mut rng, 120);
        let perm = tk::random_permutation(&mut rng, 14);
        let relabeled = FilteredComplex::from_simplices(
            c.simplices().iter().map(|s| Simplex::new(s.vertices().iter().map(|&v| perm[v as usize]).collect(), s.value())).collect(),
        );
        let top = max_dim(&c);
        prop_assert_eq!(compute_persistence(&c, top).unwrap(), compute_persistence(&relabeled, top).unwrap());
    }
}

#[test]
fn missing_face_is_reported() {
    let c = FilteredComplex::from_simplices(vec![Simplex::new(vec![0], Value::new(1, 2)), Simplex::new(vec![0, 1], Value::new(1, 2))]);
    assert!(compute_persistence(&c, 1).is_err());
    assert!(betti_numbers(&c, Value::new(1, 1)).is_err());
}
