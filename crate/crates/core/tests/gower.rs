mod common;

use common::{oracle_gower, oracle_matrix, oracle_ranges, random_mixed_sample};
use hpofla_core::gower::{distance_matrix, distances_to_optima, find_optima, gower_distance, DistanceMatrix, OptimaSet};
use hpofla_core::ingest::{AnalysisParams, Cell, Configuration, FeatureSpec, LandscapeSample, Schema};
use hpofla_core::rng::SeededRng;
use proptest::prelude::*;

#[test]
fn random_pairs_match_oracle() {
    let mut rng = SeededRng::new(11);
    for _ in 0..100 {
        let k = 1 + rng.index(6);
        let s = random_mixed_sample(&mut rng, 8, k, 0.2);
        let ranges = oracle_ranges(s.schema(), s.configs());
        for i in 0..s.len() {
            for j in 0..s.len() {
                let got = gower_distance(&s.configs()[i], &s.configs()[j], s.schema(), s.ranges()).unwrap();
                let want = oracle_gower(s.schema(), &ranges, &s.configs()[i], &s.configs()[j]).unwrap();
                assert!((got - want).abs() <= 1e-12, "{got} vs {want}");
            }
        }
    }
}

#[test]
fn twenty_rows_six_features_match_oracle() {
    let mut rng = SeededRng::new(12);
    let s = random_mixed_sample(&mut rng, 20, 6, 0.1);
    let m = distance_matrix(&s).unwrap();
    let o = oracle_matrix(&s);
    for i in 0..20 {
        for j in 0..20 {
            assert!((m.get(i, j) - o[i][j]).abs() <= 1e-12);
        }
    }
}

#[test]
fn triangle_inequality_on_complete_data() {
    let mut rng = SeededRng::new(13);
    let s = random_mixed_sample(&mut rng, 60, 6, 0.0);
    let m = distance_matrix(&s).unwrap();
    for _ in 0..1000 {
        let (x, y, z) = (rng.index(60), rng.index(60), rng.index(60));
        assert!(m.get(x, z) <= m.get(x, y) + m.get(y, z) + 1e-12);
    }
}

#[test]
fn parallel_matrix_is_bit_identical_across_pool_sizes() {
    let mut rng = SeededRng::new(14);
    let s = random_mixed_sample(&mut rng, 150, 6, 0.1);
    let run = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| distance_matrix(&s).unwrap())
    };
    let one = run(1);
    let bits = |m: &DistanceMatrix| m.lower_triangle().iter().map(|x| x.to_bits()).collect::<Vec<_>>();
    for threads in [2, 3, 8] {
        assert_eq!(bits(&one), bits(&run(threads)));
    }
    // Sequential reference: the same entry function evaluated in a plain loop.
    for i in 1..s.len() {
        for j in 0..i {
            let seq = gower_distance(&s.configs()[i], &s.configs()[j], s.schema(), s.ranges()).unwrap();
            assert_eq!(seq.to_bits(), one.get(i, j).to_bits());
        }
    }
}

#[test]
fn optima_and_distances_match_linear_scans() {
    let mut rng = SeededRng::new(15);
    for _ in 0..50 {
        let n = 2 + rng.index(30);
        // Few distinct values so ties are common.
        let fitness: Vec<f64> = (0..n).map(|_| rng.index(5) as f64).collect();
        for maximize in [true, false] {
            let o = find_optima(&fitness, maximize);
            let mut best = fitness[0];
            for &f in &fitness {
                if (maximize && f > best) || (!maximize && f < best) {
                    best = f;
                }
            }
            let want: Vec<usize> = (0..n).filter(|&i| fitness[i] == best).collect();
            assert_eq!(o.indices, want);
            assert_eq!(o.optimal_fitness, best);
        }

        let lower: Vec<f64> = (0..n * (n - 1) / 2).map(|_| rng.unit()).collect();
        let m = DistanceMatrix::from_lower(n, lower).unwrap();
        let k = 1 + rng.index(3.min(n));
        let mut idx: Vec<usize> = (0..k).map(|_| rng.index(n)).collect();
        idx.sort_unstable();
        idx.dedup();
        let optima = OptimaSet { indices: idx.clone(), optimal_fitness: 0.0 };
        let got = distances_to_optima(&m, &optima);
        for y in 0..n {
            let mut best = f64::INFINITY;
            for &o in &idx {
                let d = if o == y { 0.0 } else { m.get(o, y) };
                if d < best {
                    best = d;
                }
            }
            assert_eq!(got[y], best);
        }
        for &o in &idx {
            assert_eq!(got[o], 0.0);
        }
    }
}

fn cell_strategy(numeric: bool) -> BoxedStrategy<Cell> {
    if numeric {
        prop_oneof![4 => (-5.0f64..5.0).prop_map(Cell::Num), 1 => Just(Cell::Missing)].boxed()
    } else {
        prop_oneof![4 => (0u8..4).prop_map(|k| Cell::Cat(format!("c{k}"))), 1 => Just(Cell::Missing)].boxed()
    }
}

fn sample_strategy(complete: bool) -> impl Strategy<Value = LandscapeSample> {
    (prop::collection::vec(any::<bool>(), 1..6), 3usize..12).prop_flat_map(move |(kinds, n)| {
        let row = kinds
            .iter()
            .map(|&numeric| {
                if complete {
                    cell_strategy(numeric).prop_filter("complete", |c| !c.is_missing()).boxed()
                } else {
                    cell_strategy(numeric)
                }
            })
            .collect::<Vec<_>>();
        let kinds = kinds.clone();
        prop::collection::vec(row, n).prop_map(move |rows| {
            let features = kinds
                .iter()
                .enumerate()
                .map(|(j, &numeric)| {
                    if numeric {
                        FeatureSpec::numeric(format!("f{j}"))
                    } else {
                        FeatureSpec::categorical(format!("f{j}"))
                    }
                })
                .collect();
            let schema = Schema::new(features, "fit").unwrap();
            let n = rows.len();
            LandscapeSample::new(
                schema,
                rows.into_iter().map(Configuration).collect(),
                vec![1.0; n],
                AnalysisParams::default(),
                0,
                (0..n).collect(),
            )
            .unwrap()
        })
    })
}

proptest! {
    #[test]
    fn symmetric_bounded_zero_diagonal(s in sample_strategy(false)) {
        for x in s.configs() {
            for y in s.configs() {
                let xy = gower_distance(x, y, s.schema(), s.ranges());
                let yx = gower_distance(y, x, s.schema(), s.ranges());
                prop_assert_eq!(xy.map(f64::to_bits), yx.map(f64::to_bits));
                if let Some(d) = xy {
                    prop_assert!((0.0..=1.0).contains(&d));
                }
            }
            if x.values().iter().any(|c| !c.is_missing()) {
                prop_assert_eq!(gower_distance(x, x, s.schema(), s.ranges()), Some(0.0));
            }
        }
    }

    #[test]
    fn triangle_inequality(s in sample_strategy(true)) {
        let c = s.configs();
        let d = |a: usize, b: usize| gower_distance(&c[a], &c[b], s.schema(), s.ranges()).unwrap();
        for x in 0..c.len() {
            for y in 0..c.len() {
                for z in 0..c.len() {
                    prop_assert!(d(x, z) <= d(x, y) + d(y, z) + 1e-12);
                }
            }
        }
    }

    #[test]
    fn all_categorical_is_hamming_fraction(rows in prop::collection::vec(prop::collection::vec(0u8..3, 4), 2..10)) {
        let schema = Schema::new((0..4).map(|j| FeatureSpec::categorical(format!("c{j}"))).collect(), "f").unwrap();
        let configs: Vec<Configuration> = rows
            .iter()
            .map(|r| Configuration(r.iter().map(|k| Cell::Cat(k.to_string())).collect()))
            .collect();
        let ranges = vec![None; 4];
        for (a, x) in rows.iter().zip(&configs) {
            for (b, y) in rows.iter().zip(&configs) {
                let hamming = a.iter().zip(b).filter(|(p, q)| p != q).count();
                prop_assert_eq!(gower_distance(x, y, &schema, &ranges), Some(hamming as f64 / 4.0));
            }
        }
    }

    #[test]
    fn monotone_in_one_numeric_gap(base in 0.0f64..1.0, g1 in 0.0f64..1.0, g2 in 0.0f64..1.0, other in 0.0f64..1.0, label in 0u8..2) {
        let schema = Schema::new(
            vec![FeatureSpec::numeric_in("a", -1.0, 2.0), FeatureSpec::numeric_in("b", 0.0, 1.0), FeatureSpec::categorical("c")],
            "f",
        ).unwrap();
        let ranges = [Some((-1.0, 2.0)), Some((0.0, 1.0)), None];
        let x = Configuration(vec![Cell::Num(base), Cell::Num(other), Cell::Cat("p".into())]);
        let (small, large) = if g1 <= g2 { (g1, g2) } else { (g2, g1) };
        let y = |gap: f64| Configuration(vec![Cell::Num(base + gap), Cell::Num(0.5), Cell::Cat(format!("l{label}"))]);
        let near = gower_distance(&x, &y(small), &schema, &ranges).unwrap();
        let far = gower_distance(&x, &y(large), &schema, &ranges).unwrap();
        prop_assert!(near <= far);
    }
}
