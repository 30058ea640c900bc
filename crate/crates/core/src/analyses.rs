//! Fitness-distance correlation, locality and neutrality profiles.

use crate::error::{Error, Result};
use crate::ingest::{AnalysisParams, LandscapeSample};
use crate::neighborhood::NeighborhoodIndex;
use crate::stats::{bounded_mean, BoxStats, Moments};

/// Fitness against distance to the nearest optimum, with a least-squares
/// line and the Pearson coefficient. Regression terms are `None` when the
/// distances have no spread; the coefficient is `None` when either variable
/// has no spread.
#[derive(Debug, Clone, PartialEq)]
pub struct FdcResult {
    /// `(distance to optimum, fitness)` per row, in row order.
    pub points: Vec<(f64, f64)>,
    pub slope: Option<f64>,
    pub intercept: Option<f64>,
    pub coefficient: Option<f64>,
}

pub fn fdc(sample: &LandscapeSample, dist_to_optima: &[f64]) -> FdcResult {
    let points: Vec<(f64, f64)> = dist_to_optima
        .iter()
        .copied()
        .zip(sample.fitness().iter().copied())
        .collect();
    let m = Moments::from_pairs(points.iter().copied());
    let slope = m.slope();
    FdcResult {
        intercept: slope.map(|s| m.mean_y() - s * m.mean_x()),
        slope,
        coefficient: m.pearson(),
        points,
    }
}

/// `C` equal-width fitness bins over `[0, max_fitness]`; the top bin is
/// closed so that `max_fitness` falls into bin `C - 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitnessBinning {
    pub max_fitness: f64,
    pub step: f64,
    pub c_const: u32,
}

impl FitnessBinning {
    pub fn bins(&self) -> usize {
        self.c_const as usize
    }

    pub fn bin_of(&self, fitness: f64) -> usize {
        let k = (fitness / self.step).floor();
        (k.max(0.0) as usize).min(self.bins() - 1)
    }

    pub fn edges(&self, bin: usize) -> (f64, f64) {
        (bin as f64 * self.step, (bin + 1) as f64 * self.step)
    }

    pub fn center(&self, bin: usize) -> f64 {
        (bin as f64 + 0.5) * self.step
    }

    /// Row indices grouped by fitness bin.
    pub fn members(&self, fitness: &[f64]) -> Vec<Vec<usize>> {
        let mut groups = vec![Vec::new(); self.bins()];
        for (i, &f) in fitness.iter().enumerate() {
            groups[self.bin_of(f)].push(i);
        }
        groups
    }
}

pub fn make_binning(fitness: &[f64], c_const: u32) -> Result<FitnessBinning> {
    if c_const == 0 {
        return Err(Error::InvalidParam("C must be at least 1".into()));
    }
    if let Some(f) = fitness.iter().find(|&&f| f < 0.0) {
        return Err(Error::Binning(format!(
            "negative fitness {f}; bins span [0, max fitness]"
        )));
    }
    let max_fitness = fitness.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max_fitness.is_nan() || max_fitness <= 0.0 {
        return Err(Error::Binning("maximum fitness is 0; bin step would be 0".into()));
    }
    Ok(FitnessBinning {
        max_fitness,
        step: max_fitness / f64::from(c_const),
        c_const,
    })
}

/// Mean neighbor fitness against own fitness.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalityProfile {
    /// `(f(x), mean fitness over N(x))`; the mean is `None` for rows without
    /// neighbors.
    pub rows: Vec<(f64, Option<f64>)>,
    /// Distribution of neighbor means per fitness bin of `f(x)`.
    pub bins: Vec<Option<BoxStats>>,
    pub excluded_empty: usize,
    /// Pearson correlation between `f(x)` and the neighbor mean over rows
    /// with neighbors.
    pub correlation: Option<f64>,
}

impl LocalityProfile {
    pub fn bin_count(&self, bin: usize) -> usize {
        self.bins[bin].map_or(0, |b| b.count)
    }
}

pub fn locality(sample: &LandscapeSample, nbhd: &NeighborhoodIndex, binning: &FitnessBinning) -> LocalityProfile {
    let fitness = sample.fitness();
    let rows: Vec<(f64, Option<f64>)> = (0..sample.len())
        .map(|i| (fitness[i], bounded_mean(nbhd.neighbors(i).iter().map(|&j| fitness[j]))))
        .collect();

    let mut per_bin = vec![Vec::new(); binning.bins()];
    let mut excluded_empty = 0;
    let mut moments = Moments::default();
    for &(f, mean) in &rows {
        match mean {
            Some(m) => {
                per_bin[binning.bin_of(f)].push(m);
                moments.push(f, m);
            }
            None => excluded_empty += 1,
        }
    }
    LocalityProfile {
        rows,
        bins: per_bin.into_iter().map(BoxStats::from_values).collect(),
        excluded_empty,
        correlation: moments.pearson(),
    }
}

/// Neutrality degree `N_d(x) = |{ y in N(x) : |f(y) - f(x)| < ε }|`.
#[derive(Debug, Clone, PartialEq)]
pub struct NeutralityProfile {
    pub epsilon: f64,
    pub degrees: Vec<usize>,
    pub neighbor_counts: Vec<usize>,
    /// Distribution of `N_d` per fitness bin, over every row in the bin.
    pub bins: Vec<Option<BoxStats>>,
    pub mean_degree: f64,
}

pub fn neutrality_epsilon(binning: &FitnessBinning, params: &AnalysisParams) -> f64 {
    params
        .neutrality_epsilon_override
        .unwrap_or(binning.max_fitness / f64::from(params.c_const))
}

pub fn neutrality(
    sample: &LandscapeSample,
    nbhd: &NeighborhoodIndex,
    binning: &FitnessBinning,
    params: &AnalysisParams,
) -> NeutralityProfile {
    let epsilon = neutrality_epsilon(binning, params);
    let fitness = sample.fitness();
    let degrees: Vec<usize> = (0..sample.len())
        .map(|i| {
            nbhd.neighbors(i)
                .iter()
                .filter(|&&j| (fitness[j] - fitness[i]).abs() < epsilon)
                .count()
        })
        .collect();
    let neighbor_counts = (0..sample.len()).map(|i| nbhd.neighbors(i).len()).collect();

    let mut per_bin = vec![Vec::new(); binning.bins()];
    for (i, &d) in degrees.iter().enumerate() {
        per_bin[binning.bin_of(fitness[i])].push(d as f64);
    }
    let mean_degree = degrees.iter().sum::<usize>() as f64 / degrees.len() as f64;
    NeutralityProfile {
        epsilon,
        degrees,
        neighbor_counts,
        bins: per_bin.into_iter().map(BoxStats::from_values).collect(),
        mean_degree,
    }
}
