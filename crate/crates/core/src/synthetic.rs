//! Planted landscapes with known ground truth, used as fixtures for the
//! analyses and by the `generate` command.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::gower::gower_distance;
use crate::ingest::{
    compute_ranges, AnalysisParams, Cell, Configuration, FeatureKind, FeatureSpec, LandscapeSample, Schema,
};
use crate::rng::{partial_shuffle, SeededRng};

pub const PLANTED_FITNESS_COLUMN: &str = "fitness";

#[derive(Debug, Clone, Copy)]
pub enum LandscapeKind {
    /// `f(y) = 100 * (1 - d(y, x0))` for a planted optimum `x0` stored as the
    /// last row.
    AffineDistance,
    Constant(f64),
    Custom(fn(&Configuration) -> f64),
}

#[derive(Debug, Clone)]
pub struct PlantedSpec {
    pub n_rows: usize,
    /// Numeric features, each uniform over `[0, 1]` (declared range).
    pub numeric: usize,
    /// One categorical feature per entry, with that many labels.
    pub categorical_arities: Vec<usize>,
    pub kind: LandscapeKind,
    /// `(fraction, fitness)` plateaus injected after generation, in order.
    pub plateaus: Vec<(f64, f64)>,
    pub seed: u64,
    pub params: AnalysisParams,
}

impl PlantedSpec {
    pub fn new(n_rows: usize, numeric: usize, categorical_arities: Vec<usize>, kind: LandscapeKind, seed: u64) -> Self {
        PlantedSpec {
            n_rows,
            numeric,
            categorical_arities,
            kind,
            plateaus: Vec::new(),
            seed,
            params: AnalysisParams::default(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_rows < 2 {
            return Err(Error::TooFewRows(self.n_rows));
        }
        if self.numeric + self.categorical_arities.len() == 0 {
            return Err(Error::InvalidParam("planted schema has no features".into()));
        }
        if self.categorical_arities.contains(&0) {
            return Err(Error::InvalidParam("categorical arity must be at least 1".into()));
        }
        if let LandscapeKind::Constant(v) = self.kind {
            if !v.is_finite() {
                return Err(Error::InvalidParam("constant fitness must be finite".into()));
            }
        }
        let total: f64 = self.plateaus.iter().map(|p| p.0).sum();
        if total > 1.0 {
            return Err(Error::InvalidParam(format!("plateau fractions sum to {total} > 1")));
        }
        self.params.validate()
    }

    pub fn schema(&self) -> Schema {
        let mut features: Vec<FeatureSpec> = (0..self.numeric)
            .map(|j| FeatureSpec::numeric_in(format!("x{j}"), 0.0, 1.0))
            .collect();
        features.extend((0..self.categorical_arities.len()).map(|j| FeatureSpec::categorical(format!("c{j}"))));
        Schema::new(features, PLANTED_FITNESS_COLUMN).expect("planted schema is valid")
    }
}

fn label(k: usize) -> String {
    format!("v{k}")
}

/// Per-feature sampler for fresh uniform configurations.
#[derive(Debug, Clone)]
enum FeatureSampler {
    Uniform(f64, f64),
    Labels(Vec<String>),
}

impl FeatureSampler {
    fn draw(&self, rng: &mut SeededRng) -> Cell {
        match self {
            FeatureSampler::Uniform(lo, hi) => Cell::Num(rng.uniform(*lo, *hi)),
            FeatureSampler::Labels(labels) if labels.is_empty() => Cell::Missing,
            FeatureSampler::Labels(labels) => Cell::Cat(labels[rng.index(labels.len())].clone()),
        }
    }
}

fn draw_config(samplers: &[FeatureSampler], rng: &mut SeededRng) -> Configuration {
    Configuration(samplers.iter().map(|s| s.draw(rng)).collect())
}

pub fn planted_landscape(spec: &PlantedSpec) -> Result<LandscapeSample> {
    spec.validate()?;
    let schema = spec.schema();
    let mut samplers: Vec<FeatureSampler> = vec![FeatureSampler::Uniform(0.0, 1.0); spec.numeric];
    samplers.extend(
        spec.categorical_arities
            .iter()
            .map(|&k| FeatureSampler::Labels((0..k).map(label).collect())),
    );

    let mut rng = SeededRng::new(spec.seed);
    let configs: Vec<Configuration> = (0..spec.n_rows).map(|_| draw_config(&samplers, &mut rng)).collect();
    let ranges = compute_ranges(&schema, &configs);
    let fitness: Vec<f64> = match spec.kind {
        LandscapeKind::AffineDistance => {
            let optimum = &configs[spec.n_rows - 1];
            configs
                .iter()
                .map(|c| {
                    let d = gower_distance(c, optimum, &schema, &ranges).expect("complete rows");
                    100.0 * (1.0 - d)
                })
                .collect()
        }
        LandscapeKind::Constant(v) => vec![v; spec.n_rows],
        LandscapeKind::Custom(f) => configs.iter().map(f).collect(),
    };

    let mut sample = LandscapeSample::new(
        schema,
        configs,
        fitness,
        spec.params,
        spec.seed,
        (0..spec.n_rows).collect(),
    )?;
    for &(fraction, value) in &spec.plateaus {
        sample = inject_with(sample, fraction, value, &mut rng)?;
    }
    Ok(sample)
}

/// Replaces `ceil(fraction * n)` uniformly chosen rows by fresh uniformly
/// drawn configurations (numeric features over their effective range,
/// categorical features over the labels present in the sample), all with
/// fitness `fitness_value`.
pub fn inject_plateau(sample: LandscapeSample, fraction: f64, fitness_value: f64, seed: u64) -> Result<LandscapeSample> {
    let mut rng = SeededRng::new(seed);
    inject_with(sample, fraction, fitness_value, &mut rng)
}

fn inject_with(sample: LandscapeSample, fraction: f64, fitness_value: f64, rng: &mut SeededRng) -> Result<LandscapeSample> {
    if !(fraction > 0.0 && fraction < 1.0) {
        return Err(Error::InvalidParam(format!("plateau fraction must lie in (0, 1), got {fraction}")));
    }
    if !fitness_value.is_finite() {
        return Err(Error::InvalidParam("plateau fitness must be finite".into()));
    }
    let samplers: Vec<FeatureSampler> = sample
        .schema()
        .features()
        .iter()
        .zip(sample.ranges())
        .enumerate()
        .map(|(j, (spec, range))| match spec.kind {
            FeatureKind::Numeric => {
                let (lo, hi) = range.unwrap_or((0.0, 0.0));
                FeatureSampler::Uniform(lo, hi)
            }
            FeatureKind::Categorical => {
                let labels: BTreeSet<&str> = sample
                    .configs()
                    .iter()
                    .filter_map(|c| match &c.values()[j] {
                        Cell::Cat(s) => Some(s.as_str()),
                        _ => None,
                    })
                    .collect();
                FeatureSampler::Labels(labels.into_iter().map(String::from).collect())
            }
        })
        .collect();

    let n = sample.len();
    // Guard against representation error pushing e.g. 0.1 * 1000 past 100.
    let count = ((fraction * n as f64) - 1e-9).ceil().max(1.0) as usize;
    let mut rows = partial_shuffle(rng, n, count);
    rows.sort_unstable();

    let (schema, mut configs, mut fitness, params, seed, source_rows) = sample.into_parts();
    for &i in &rows {
        configs[i] = draw_config(&samplers, rng);
        fitness[i] = fitness_value;
    }
    LandscapeSample::new(schema, configs, fitness, params, seed, source_rows)
}
