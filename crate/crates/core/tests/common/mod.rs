//! Independent reference computations and fixture builders shared by the
//! integration and acceptance tests. Nothing here calls into the distance,
//! neighborhood or analysis code it is used to check.
#![allow(dead_code)]

use hpofla_core::ingest::{AnalysisParams, Cell, Configuration, FeatureKind, FeatureSpec, LandscapeSample, Schema};
use hpofla_core::rng::SeededRng;

/// Random mixed table: `n_features` features (kinds drawn at random, feature 0
/// always numeric and never missing so every pair stays comparable) with
/// roughly `missing_rate` of the remaining cells blank, at least one blank
/// when `missing_rate > 0` and `n_features > 1`.
pub fn random_mixed_sample(rng: &mut SeededRng, n_rows: usize, n_features: usize, missing_rate: f64) -> LandscapeSample {
    let mut features = vec![FeatureSpec::numeric("f0")];
    for j in 1..n_features {
        if rng.unit() < 0.5 {
            features.push(FeatureSpec::numeric(format!("f{j}")));
        } else {
            features.push(FeatureSpec::categorical(format!("f{j}")));
        }
    }
    let arities: Vec<usize> = (0..n_features).map(|_| 2 + rng.index(3)).collect();
    let mut configs: Vec<Configuration> = (0..n_rows)
        .map(|_| {
            Configuration(
                features
                    .iter()
                    .enumerate()
                    .map(|(j, f)| {
                        if j > 0 && rng.unit() < missing_rate {
                            return Cell::Missing;
                        }
                        match f.kind {
                            // Coarse grid so equal values and zero-width ranges occur.
                            FeatureKind::Numeric => Cell::Num((rng.index(9) as f64) * 0.25 - 1.0),
                            FeatureKind::Categorical => Cell::Cat(format!("L{}", rng.index(arities[j]))),
                        }
                    })
                    .collect(),
            )
        })
        .collect();
    if missing_rate > 0.0 && n_features > 1 && !configs.iter().any(|c| c.values().iter().any(Cell::is_missing)) {
        let i = rng.index(n_rows);
        let j = 1 + rng.index(n_features - 1);
        configs[i].0[j] = Cell::Missing;
    }
    let fitness = (0..n_rows).map(|_| rng.uniform(0.0, 100.0)).collect();
    let schema = Schema::new(features, "fitness").unwrap();
    LandscapeSample::new(schema, configs, fitness, AnalysisParams::default(), 0, (0..n_rows).collect()).unwrap()
}

/// Observed (min, max) per numeric column, declared range when present.
pub fn oracle_ranges(schema: &Schema, rows: &[Configuration]) -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    for (j, f) in schema.features().iter().enumerate() {
        if let Some(r) = f.range {
            out.push(r);
            continue;
        }
        let vals: Vec<f64> = rows
            .iter()
            .filter_map(|r| match r.values()[j] {
                Cell::Num(v) => Some(v),
                _ => None,
            })
            .collect();
        if vals.is_empty() {
            out.push((0.0, 0.0));
        } else {
            let mut lo = vals[0];
            let mut hi = vals[0];
            for v in vals {
                if v < lo {
                    lo = v;
                }
                if v > hi {
                    hi = v;
                }
            }
            out.push((lo, hi));
        }
    }
    out
}

/// Gower distance as one minus the weighted mean of per-feature similarities.
pub fn oracle_gower(schema: &Schema, ranges: &[(f64, f64)], x: &Configuration, y: &Configuration) -> Option<f64> {
    let mut sim = 0.0;
    let mut weights = 0.0;
    for j in 0..schema.len() {
        let s = match (&x.values()[j], &y.values()[j]) {
            (Cell::Missing, _) | (_, Cell::Missing) => continue,
            (Cell::Num(a), Cell::Num(b)) => {
                let r = ranges[j].1 - ranges[j].0;
                if r == 0.0 {
                    1.0
                } else {
                    1.0 - (a - b).abs() / r
                }
            }
            (Cell::Cat(a), Cell::Cat(b)) => {
                if a == b {
                    1.0
                } else {
                    0.0
                }
            }
            _ => panic!("kind mismatch in fixture"),
        };
        sim += s;
        weights += 1.0;
    }
    if weights == 0.0 {
        None
    } else {
        Some(1.0 - sim / weights)
    }
}

pub fn oracle_matrix(sample: &LandscapeSample) -> Vec<Vec<f64>> {
    let ranges = oracle_ranges(sample.schema(), sample.configs());
    let n = sample.len();
    let mut m = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..n {
            m[i][j] = oracle_gower(sample.schema(), &ranges, &sample.configs()[i], &sample.configs()[j]).unwrap();
        }
    }
    m
}

/// Textbook two-pass least squares and Pearson correlation:
/// `(slope, intercept, r)`.
pub fn oracle_regression(points: &[(f64, f64)]) -> (f64, f64, f64) {
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    let syy: f64 = points.iter().map(|p| (p.1 - my) * (p.1 - my)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    (slope, my - slope * mx, sxy / (sxx * syy).sqrt())
}

pub fn oracle_pearson(points: &[(f64, f64)]) -> f64 {
    oracle_regression(points).2
}

/// Brute-force neighbor lists for threshold `delta` on a dense matrix.
pub fn oracle_neighbors(m: &[Vec<f64>], delta: f64) -> Vec<Vec<usize>> {
    let n = m.len();
    let mut out = vec![Vec::new(); n];
    for i in 0..n {
        for j in 0..n {
            if i != j && m[i][j] < delta {
                out[i].push(j);
            }
        }
    }
    out
}

pub fn oracle_neutrality(neighbors: &[Vec<usize>], fitness: &[f64], eps: f64) -> Vec<usize> {
    let mut out = Vec::new();
    for i in 0..fitness.len() {
        let mut c = 0;
        for &j in &neighbors[i] {
            if (fitness[j] - fitness[i]).abs() < eps {
                c += 1;
            }
        }
        out.push(c);
    }
    out
}
