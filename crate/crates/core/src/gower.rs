//! Gower dissimilarity for mixed numeric / categorical configurations.
//!
//! Per feature `j`: numeric cells contribute `|a - b| / (max - min)` (0 when
//! the range is degenerate), categorical cells contribute 0 on equal labels
//! and 1 otherwise, and a missing cell on either side gives the feature weight
//! zero. The distance is the weighted mean of the per-feature terms,
//! accumulated in schema order.

use std::io::Write;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ingest::{Cell, Configuration, FeatureKind, FeatureSpec, LandscapeSample, Schema};

/// Per-feature dissimilarity `d_j` in `[0, 1]`, or `None` when the feature
/// carries weight zero for this pair (a missing cell).
pub fn feature_dissimilarity(a: &Cell, b: &Cell, spec: &FeatureSpec, range: Option<(f64, f64)>) -> Option<f64> {
    match (a, b) {
        (Cell::Missing, _) | (_, Cell::Missing) => None,
        (Cell::Num(x), Cell::Num(y)) if spec.kind == FeatureKind::Numeric => {
            let (min, max) = range.unwrap_or((0.0, 0.0));
            let span = max - min;
            if span > 0.0 {
                Some((x - y).abs() / span)
            } else {
                Some(0.0)
            }
        }
        (Cell::Cat(x), Cell::Cat(y)) => Some(if x == y { 0.0 } else { 1.0 }),
        // Cells that do not match the declared kind never compare equal.
        _ => Some(1.0),
    }
}

/// Gower distance between two configurations; `None` when no feature is
/// present in both.
pub fn gower_distance(
    x: &Configuration,
    y: &Configuration,
    schema: &Schema,
    ranges: &[Option<(f64, f64)>],
) -> Option<f64> {
    let mut sum = 0.0;
    let mut weight = 0.0;
    for ((spec, range), (a, b)) in schema
        .features()
        .iter()
        .zip(ranges)
        .zip(x.values().iter().zip(y.values()))
    {
        if let Some(d) = feature_dissimilarity(a, b, spec, *range) {
            sum += d;
            weight += 1.0;
        }
    }
    (weight > 0.0).then(|| sum / weight)
}

/// Symmetric pairwise distances with zero diagonal, stored as the strict
/// lower triangle in row-major order.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix {
    n: usize,
    lower: Vec<f64>,
}

impl DistanceMatrix {
    /// Builds from the strict lower triangle (`n * (n - 1) / 2` entries,
    /// row `i` holding columns `0..i`).
    pub fn from_lower(n: usize, lower: Vec<f64>) -> Result<Self> {
        if lower.len() != n * n.saturating_sub(1) / 2 {
            return Err(Error::Invariant(format!(
                "lower triangle of {n} rows needs {} entries, got {}",
                n * n.saturating_sub(1) / 2,
                lower.len()
            )));
        }
        Ok(DistanceMatrix { n, lower })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        use std::cmp::Ordering::*;
        match i.cmp(&j) {
            Equal => 0.0,
            Greater => self.lower[i * (i - 1) / 2 + j],
            Less => self.lower[j * (j - 1) / 2 + i],
        }
    }

    /// Entries strictly below the diagonal, row by row.
    pub fn lower_triangle(&self) -> &[f64] {
        &self.lower
    }

    /// Mean over all unordered pairs; `None` for fewer than two rows.
    pub fn mean_pairwise(&self) -> Option<f64> {
        (!self.lower.is_empty()).then(|| self.lower.iter().sum::<f64>() / self.lower.len() as f64)
    }

    /// Mean over the unordered pairs drawn from `rows`; `None` for fewer than
    /// two rows.
    pub fn mean_pairwise_within(&self, rows: &[usize]) -> Option<f64> {
        if rows.len() < 2 {
            return None;
        }
        let mut sum = 0.0;
        for (a, &i) in rows.iter().enumerate() {
            for &j in &rows[..a] {
                sum += self.get(i, j);
            }
        }
        let pairs = rows.len() * (rows.len() - 1) / 2;
        Some(sum / pairs as f64)
    }

    /// Writes `i,j,distance` for every `i > j`.
    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "i,j,distance")?;
        for i in 1..self.n {
            for j in 0..i {
                writeln!(out, "{i},{j},{}", crate::report::fmt_real(self.get(i, j)))?;
            }
        }
        Ok(())
    }
}

/// Pairwise Gower distances over the sample. Rows are computed in parallel;
/// each entry is produced by the same sequential per-feature accumulation, so
/// the result does not depend on the worker count.
pub fn distance_matrix(sample: &LandscapeSample) -> Result<DistanceMatrix> {
    let n = sample.len();
    let configs = sample.configs();
    let schema = sample.schema();
    let ranges = sample.ranges();
    let rows: Vec<std::result::Result<Vec<f64>, usize>> = (1..n)
        .into_par_iter()
        .map(|i| {
            (0..i)
                .map(|j| gower_distance(&configs[i], &configs[j], schema, ranges).ok_or(j))
                .collect()
        })
        .collect();
    let mut lower = Vec::with_capacity(n * (n - 1) / 2);
    for (i, row) in (1..n).zip(rows) {
        match row {
            Ok(r) => lower.extend(r),
            Err(j) => return Err(Error::AllWeightsZero { i, j }),
        }
    }
    DistanceMatrix::from_lower(n, lower)
}

/// Rows attaining the optimal fitness (all ties).
#[derive(Debug, Clone, PartialEq)]
pub struct OptimaSet {
    pub indices: Vec<usize>,
    pub optimal_fitness: f64,
}

pub fn find_optima(fitness: &[f64], maximize: bool) -> OptimaSet {
    let better = |a: f64, b: f64| if maximize { a > b } else { a < b };
    let mut best = fitness[0];
    for &f in &fitness[1..] {
        if better(f, best) {
            best = f;
        }
    }
    OptimaSet {
        indices: (0..fitness.len()).filter(|&i| fitness[i] == best).collect(),
        optimal_fitness: best,
    }
}

/// Distance from each row to its nearest optimum.
pub fn distances_to_optima(matrix: &DistanceMatrix, optima: &OptimaSet) -> Vec<f64> {
    (0..matrix.len())
        .map(|y| {
            optima
                .indices
                .iter()
                .map(|&o| matrix.get(o, y))
                .fold(f64::INFINITY, f64::min)
        })
        .collect()
}
