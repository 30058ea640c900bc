//! Plateau diagnostics: fitness levels shared by many mutually diverse
//! configurations, as produced by degenerate models such as majority-class
//! predictors.
//!
//! A fitness bin is flagged when
//!
//! * it holds at least `min_count_fraction` of the sample,
//! * its rows are about as spread out as the whole sample
//!   (`diversity_ratio >= min_diversity_ratio`), and
//! * unless `level_tolerance` is `None`, at least `min_count_fraction` of the
//!   sample sits on a single fitness level inside the bin (values within
//!   `level_tolerance` of each other).
//!
//! Without the level condition a dense bin of an ordinary smooth landscape
//! passes the first two tests as well, since rows at similar fitness are
//! rarely closer to each other than random pairs are.

use std::collections::BTreeMap;

use crate::analyses::FitnessBinning;
use crate::error::{Error, Result};
use crate::gower::DistanceMatrix;
use crate::ingest::LandscapeSample;

pub const DEFAULT_MIN_COUNT_FRACTION: f64 = 0.05;
pub const DEFAULT_MIN_DIVERSITY_RATIO: f64 = 0.8;
pub const DEFAULT_LEVEL_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq)]
pub struct DiagnosticsParams {
    pub min_count_fraction: f64,
    pub min_diversity_ratio: f64,
    /// Width (fitness units) of a single plateau level; `None` disables the
    /// level condition.
    pub level_tolerance: Option<f64>,
    pub class_priors: Option<BTreeMap<String, f64>>,
}

impl Default for DiagnosticsParams {
    fn default() -> Self {
        DiagnosticsParams {
            min_count_fraction: DEFAULT_MIN_COUNT_FRACTION,
            min_diversity_ratio: DEFAULT_MIN_DIVERSITY_RATIO,
            level_tolerance: Some(DEFAULT_LEVEL_TOLERANCE),
            class_priors: None,
        }
    }
}

impl DiagnosticsParams {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("minimum count fraction", self.min_count_fraction),
            ("minimum diversity ratio", self.min_diversity_ratio),
        ] {
            if !(v > 0.0 && v <= 1.0) {
                return Err(Error::InvalidParam(format!("{name} must lie in (0, 1], got {v}")));
            }
        }
        if let Some(tol) = self.level_tolerance {
            if !(tol.is_finite() && tol >= 0.0) {
                return Err(Error::InvalidParam(format!("level tolerance must be >= 0, got {tol}")));
            }
        }
        if let Some(priors) = &self.class_priors {
            validate_priors(priors)?;
        }
        Ok(())
    }
}

pub fn validate_priors(priors: &BTreeMap<String, f64>) -> Result<()> {
    for (label, &p) in priors {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidParam(format!(
                "class prior `{label}` = {p} is not a probability"
            )));
        }
    }
    Ok(())
}

/// Parses a priors document `{"<label>": <probability>, ...}`.
pub fn parse_priors(text: &str) -> Result<BTreeMap<String, f64>> {
    let doc: serde_json::Value = serde_json::from_str(text)?;
    let obj = doc
        .as_object()
        .ok_or_else(|| Error::InvalidParam("priors document must be a JSON object".into()))?;
    let mut priors = BTreeMap::new();
    for (label, v) in obj {
        let p = v
            .as_f64()
            .ok_or_else(|| Error::InvalidParam(format!("class prior `{label}` is not a number")))?;
        priors.insert(label.clone(), p);
    }
    validate_priors(&priors)?;
    Ok(priors)
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlateauFinding {
    pub bin_index: usize,
    pub bin_center: f64,
    pub count: usize,
    pub count_fraction: f64,
    /// Most populated single fitness level inside the bin.
    pub level_fitness: f64,
    pub level_count: usize,
    pub level_fraction: f64,
    /// Mean pairwise distance inside the bin over the whole-sample mean.
    pub diversity_ratio: f64,
    pub majority_class_label: Option<String>,
}

pub fn fitness_histogram(fitness: &[f64], binning: &FitnessBinning) -> Vec<usize> {
    let mut counts = vec![0; binning.bins()];
    for &f in fitness {
        counts[binning.bin_of(f)] += 1;
    }
    counts
}

/// Largest group of values lying within `tol` of each other, as
/// `(count, centre of the group)`. Values need not be sorted.
fn densest_level(values: &mut [f64], tol: f64) -> (usize, f64) {
    values.sort_by(f64::total_cmp);
    let mut best = (0usize, values[0]);
    let mut start = 0;
    for end in 0..values.len() {
        while values[end] - values[start] > tol {
            start += 1;
        }
        let count = end - start + 1;
        if count > best.0 {
            best = (count, 0.5 * (values[start] + values[end]));
        }
    }
    best
}

pub fn detect_plateaus(
    sample: &LandscapeSample,
    matrix: &DistanceMatrix,
    binning: &FitnessBinning,
    params: &DiagnosticsParams,
) -> Vec<PlateauFinding> {
    let n = sample.len() as f64;
    let fitness = sample.fitness();
    let overall = matrix.mean_pairwise().unwrap_or(0.0);

    let mut findings: Vec<PlateauFinding> = binning
        .members(fitness)
        .into_iter()
        .enumerate()
        .filter(|(_, rows)| rows.len() >= 2)
        .filter_map(|(bin, rows)| {
            let within = matrix.mean_pairwise_within(&rows)?;
            let diversity_ratio = if overall > 0.0 { within / overall } else { 0.0 };
            let mut values: Vec<f64> = rows.iter().map(|&i| fitness[i]).collect();
            let (level_count, level_fitness) = match params.level_tolerance {
                Some(tol) => densest_level(&mut values, tol),
                None => (rows.len(), values.iter().sum::<f64>() / rows.len() as f64),
            };
            let finding = PlateauFinding {
                bin_index: bin,
                bin_center: binning.center(bin),
                count: rows.len(),
                count_fraction: rows.len() as f64 / n,
                level_fitness,
                level_count,
                level_fraction: level_count as f64 / n,
                diversity_ratio,
                majority_class_label: None,
            };
            let flagged = finding.count_fraction >= params.min_count_fraction
                && finding.level_fraction >= params.min_count_fraction
                && finding.diversity_ratio >= params.min_diversity_ratio;
            flagged.then_some(finding)
        })
        .collect();
    findings.sort_by(|a, b| b.count.cmp(&a.count).then(a.bin_index.cmp(&b.bin_index)));
    findings
}

/// Labels each finding with the class whose majority-class accuracy
/// (`100 * prior`) lies within one bin step of the bin centre; the nearest
/// label wins, ties going to the label that sorts first.
pub fn match_class_priors(
    mut findings: Vec<PlateauFinding>,
    priors: &BTreeMap<String, f64>,
    binning: &FitnessBinning,
) -> Vec<PlateauFinding> {
    for f in &mut findings {
        let mut best: Option<(&str, f64)> = None;
        for (label, &p) in priors {
            let gap = (f.bin_center - 100.0 * p).abs();
            if gap <= binning.step && best.is_none_or(|(_, g)| gap < g) {
                best = Some((label, gap));
            }
        }
        f.majority_class_label = best.map(|(l, _)| l.to_string());
    }
    findings
}
