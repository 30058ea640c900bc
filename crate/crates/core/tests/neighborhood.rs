mod common;

use common::{oracle_matrix, oracle_neighbors, random_mixed_sample};
use hpofla_core::gower::{distance_matrix, DistanceMatrix};
use hpofla_core::neighborhood::{build_neighborhoods, compute_spec, NeighborhoodSpec};
use hpofla_core::rng::SeededRng;
use proptest::prelude::*;

fn spec_with_delta(delta: f64) -> NeighborhoodSpec {
    NeighborhoodSpec { max_dist: delta * 40.0, delta, c_const: 40 }
}

#[test]
fn fifty_rows_match_brute_force() {
    let mut rng = SeededRng::new(21);
    let s = random_mixed_sample(&mut rng, 50, 4, 0.1);
    let m = distance_matrix(&s).unwrap();
    let dense = oracle_matrix(&s);
    for delta in [0.0, 0.05, 0.1, 0.2, 0.35, 1.0, 1.01] {
        let idx = build_neighborhoods(&m, spec_with_delta(delta));
        let want = oracle_neighbors(&dense, delta);
        for i in 0..50 {
            assert_eq!(idx.neighbors(i), want[i].as_slice(), "row {i} delta {delta}");
        }
    }
}

#[test]
fn spec_max_matches_scan() {
    let mut rng = SeededRng::new(22);
    for _ in 0..100 {
        let n = 1 + rng.index(40);
        let d: Vec<f64> = (0..n).map(|_| rng.unit()).collect();
        let mut want = d[0];
        for &x in &d {
            if x > want {
                want = x;
            }
        }
        let s = compute_spec(&d, 40).unwrap();
        assert_eq!(s.max_dist, want);
        assert_eq!(s.delta, want / 40.0);
    }
}

fn matrix_strategy() -> impl Strategy<Value = DistanceMatrix> {
    (2usize..25).prop_flat_map(|n| {
        prop::collection::vec(0.0f64..=1.0, n * (n - 1) / 2)
            .prop_map(move |lower| DistanceMatrix::from_lower(n, lower).unwrap())
    })
}

proptest! {
    #[test]
    fn neighbor_relation_symmetric_and_strict(m in matrix_strategy(), delta in 0.0f64..1.2) {
        let idx = build_neighborhoods(&m, spec_with_delta(delta));
        for i in 0..m.len() {
            prop_assert!(!idx.neighbors(i).contains(&i));
            prop_assert!(idx.neighbors(i).windows(2).all(|w| w[0] < w[1]));
            for &j in idx.neighbors(i) {
                prop_assert!(m.get(i, j) < delta);
                prop_assert!(idx.neighbors(j).contains(&i));
            }
        }
    }

    #[test]
    fn monotone_in_delta(m in matrix_strategy(), a in 0.0f64..1.0, b in 0.0f64..1.0) {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        let small = build_neighborhoods(&m, spec_with_delta(lo));
        let large = build_neighborhoods(&m, spec_with_delta(hi));
        for i in 0..m.len() {
            prop_assert!(small.neighbors(i).iter().all(|j| large.neighbors(i).contains(j)));
        }
    }

    #[test]
    fn extreme_deltas(m in matrix_strategy()) {
        let none = build_neighborhoods(&m, spec_with_delta(0.0));
        prop_assert_eq!(none.empty_count(), m.len());
        let all = build_neighborhoods(&m, spec_with_delta(1.0001));
        for i in 0..m.len() {
            prop_assert_eq!(all.neighbors(i).len(), m.len() - 1);
        }
    }
}
