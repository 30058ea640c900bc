//! Benchmark table ingestion: schema documents, CSV tables, seeded row
//! sampling and construction of the analyzed [`LandscapeSample`].

use std::collections::HashSet;
use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::rng::{partial_shuffle, SeededRng};

/// Column name assumed for fitness when no schema is given.
pub const DEFAULT_FITNESS_COLUMN: &str = "fitness";
pub const DEFAULT_C: u32 = 40;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FeatureKind {
    /// Ordered values (continuous or ordered discrete, e.g. batch size).
    Numeric,
    /// Unordered labels (e.g. optimizer name).
    Categorical,
}

impl FeatureKind {
    pub fn as_str(self) -> &'static str {
        match self {
            FeatureKind::Numeric => "numeric",
            FeatureKind::Categorical => "categorical",
        }
    }
}

impl fmt::Display for FeatureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FeatureSpec {
    pub name: String,
    pub kind: FeatureKind,
    /// Declared `(min, max)`, numeric features only.
    pub range: Option<(f64, f64)>,
}

impl FeatureSpec {
    pub fn numeric(name: impl Into<String>) -> Self {
        FeatureSpec {
            name: name.into(),
            kind: FeatureKind::Numeric,
            range: None,
        }
    }

    pub fn numeric_in(name: impl Into<String>, min: f64, max: f64) -> Self {
        FeatureSpec {
            range: Some((min, max)),
            ..FeatureSpec::numeric(name)
        }
    }

    pub fn categorical(name: impl Into<String>) -> Self {
        FeatureSpec {
            name: name.into(),
            kind: FeatureKind::Categorical,
            range: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Schema {
    features: Vec<FeatureSpec>,
    fitness_column: String,
}

impl Schema {
    pub fn new(features: Vec<FeatureSpec>, fitness_column: impl Into<String>) -> Result<Self> {
        let fitness_column = fitness_column.into();
        if features.is_empty() {
            return Err(Error::Schema("at least one feature is required".into()));
        }
        if fitness_column.is_empty() {
            return Err(Error::Schema("fitness column name is empty".into()));
        }
        let mut seen = HashSet::new();
        for f in &features {
            if f.name.is_empty() {
                return Err(Error::Schema("feature with empty name".into()));
            }
            if !seen.insert(f.name.as_str()) {
                return Err(Error::DuplicateFeature(f.name.clone()));
            }
            if let Some((min, max)) = f.range {
                if f.kind == FeatureKind::Categorical {
                    return Err(Error::Schema(format!(
                        "categorical feature `{}` cannot declare a range",
                        f.name
                    )));
                }
                if !(min.is_finite() && max.is_finite()) || min > max {
                    return Err(Error::InvalidRange {
                        feature: f.name.clone(),
                        min,
                        max,
                    });
                }
            }
        }
        if seen.contains(fitness_column.as_str()) {
            return Err(Error::Schema(format!(
                "fitness column `{fitness_column}` is also declared as a feature"
            )));
        }
        Ok(Schema {
            features,
            fitness_column,
        })
    }

    pub fn features(&self) -> &[FeatureSpec] {
        &self.features
    }

    pub fn len(&self) -> usize {
        self.features.len()
    }

    pub fn is_empty(&self) -> bool {
        self.features.is_empty()
    }

    pub fn fitness_column(&self) -> &str {
        &self.fitness_column
    }

    pub fn with_fitness_column(self, name: impl Into<String>) -> Result<Self> {
        Schema::new(self.features, name)
    }

    /// Serializes to the JSON schema document format read by [`parse_schema`].
    pub fn to_json(&self) -> String {
        let features: Vec<Value> = self
            .features
            .iter()
            .map(|f| {
                let mut obj = json!({ "name": f.name, "kind": f.kind.as_str() });
                if let Some((min, max)) = f.range {
                    obj["range"] = json!([min, max]);
                }
                obj
            })
            .collect();
        let doc = json!({ "fitness_column": self.fitness_column, "features": features });
        let mut out = serde_json::to_string_pretty(&doc).expect("schema serializes");
        out.push('\n');
        out
    }
}

/// Parses a schema document:
/// `{"fitness_column": "acc", "features": [{"name": "lr", "kind": "numeric", "range": [0, 1]}, ...]}`.
pub fn parse_schema(text: &str) -> Result<Schema> {
    let doc: Value = serde_json::from_str(text)?;
    let obj = doc
        .as_object()
        .ok_or_else(|| Error::Schema("document must be a JSON object".into()))?;
    let fitness_column = match obj.get("fitness_column") {
        Some(Value::String(s)) => s.clone(),
        Some(_) => return Err(Error::Schema("`fitness_column` must be a string".into())),
        None => return Err(Error::Schema("missing `fitness_column`".into())),
    };
    let entries = obj
        .get("features")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Schema("`features` must be an array".into()))?;

    let mut features = Vec::with_capacity(entries.len());
    for (pos, entry) in entries.iter().enumerate() {
        let name = entry
            .get("name")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::Schema(format!("feature #{pos} lacks a string `name`")))?;
        let kind = match entry.get("kind").and_then(Value::as_str) {
            Some("numeric") => FeatureKind::Numeric,
            Some("categorical") => FeatureKind::Categorical,
            Some(other) => {
                return Err(Error::UnknownKind {
                    feature: name.to_string(),
                    kind: other.to_string(),
                })
            }
            None => return Err(Error::Schema(format!("feature `{name}` lacks a string `kind`"))),
        };
        let range = match entry.get("range") {
            None | Some(Value::Null) => None,
            Some(Value::Array(pair)) if pair.len() == 2 => {
                let lo = pair[0].as_f64();
                let hi = pair[1].as_f64();
                match (lo, hi) {
                    (Some(lo), Some(hi)) => Some((lo, hi)),
                    _ => {
                        return Err(Error::Schema(format!(
                            "feature `{name}`: range entries must be numbers"
                        )))
                    }
                }
            }
            Some(_) => {
                return Err(Error::Schema(format!(
                    "feature `{name}`: range must be a [min, max] pair"
                )))
            }
        };
        features.push(FeatureSpec {
            name: name.to_string(),
            kind,
            range,
        });
    }
    Schema::new(features, fitness_column)
}

/// One table cell.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Cat(String),
    Missing,
}

impl Cell {
    pub fn is_missing(&self) -> bool {
        matches!(self, Cell::Missing)
    }
}

/// A hyperparameter configuration: one cell per schema feature.
#[derive(Debug, Clone, PartialEq)]
pub struct Configuration(pub Vec<Cell>);

impl Configuration {
    pub fn values(&self) -> &[Cell] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Rows retained from a benchmark table.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub configs: Vec<Configuration>,
    pub fitness: Vec<f64>,
    /// Zero-based data-row index in the file for each retained row.
    pub source_rows: Vec<usize>,
    /// Rows dropped for missing or non-finite fitness.
    pub dropped: usize,
}

fn header_index(headers: &csv::StringRecord, name: &str) -> Result<usize> {
    headers
        .iter()
        .position(|h| h == name)
        .ok_or_else(|| Error::MissingColumn(name.to_string()))
}

fn record_line(record: &csv::StringRecord) -> u64 {
    record.position().map_or(0, |p| p.line())
}

fn parse_real(raw: &str, line: u64, column: &str) -> Result<f64> {
    raw.trim().parse::<f64>().map_err(|_| Error::ParseCell {
        line,
        column: column.to_string(),
        value: raw.to_string(),
    })
}

/// Reads a comma-separated table with a header row. Empty cells are missing;
/// rows whose fitness is missing or non-finite are dropped and counted.
pub fn load_table(text: &str, schema: &Schema) -> Result<Table> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_reader(text.as_bytes());
    let headers = reader.headers()?.clone();
    let columns: Vec<usize> = schema
        .features()
        .iter()
        .map(|f| header_index(&headers, &f.name))
        .collect::<Result<_>>()?;
    let fitness_col = header_index(&headers, schema.fitness_column())?;

    let mut table = Table {
        configs: Vec::new(),
        fitness: Vec::new(),
        source_rows: Vec::new(),
        dropped: 0,
    };
    for (row, record) in reader.records().enumerate() {
        let record = record?;
        let line = record_line(&record);
        let raw_fitness = record.get(fitness_col).unwrap_or("");
        let fitness = if raw_fitness.is_empty() {
            None
        } else {
            Some(parse_real(raw_fitness, line, schema.fitness_column())?).filter(|f| f.is_finite())
        };
        let Some(fitness) = fitness else {
            table.dropped += 1;
            continue;
        };

        let mut cells = Vec::with_capacity(columns.len());
        for (spec, &col) in schema.features().iter().zip(&columns) {
            let raw = record.get(col).unwrap_or("");
            let cell = if raw.is_empty() {
                Cell::Missing
            } else {
                match spec.kind {
                    FeatureKind::Numeric => {
                        let v = parse_real(raw, line, &spec.name)?;
                        if !v.is_finite() {
                            return Err(Error::NonFiniteCell {
                                line,
                                column: spec.name.clone(),
                            });
                        }
                        Cell::Num(v)
                    }
                    FeatureKind::Categorical => Cell::Cat(raw.to_string()),
                }
            };
            cells.push(cell);
        }
        table.configs.push(Configuration(cells));
        table.fitness.push(fitness);
        table.source_rows.push(row);
    }
    if table.configs.is_empty() {
        return Err(Error::NoUsableRows {
            dropped: table.dropped,
        });
    }
    Ok(table)
}

/// Builds a schema from a table header when no schema document is given:
/// every column other than `fitness_column` becomes a feature, numeric when
/// all of its non-empty cells parse as reals, categorical otherwise.
pub fn infer_schema(text: &str, fitness_column: &str) -> Result<Schema> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_reader(text.as_bytes());
    let headers = reader.headers()?.clone();
    header_index(&headers, fitness_column)?;
    let mut numeric = vec![true; headers.len()];
    for record in reader.records() {
        let record = record?;
        for (col, raw) in record.iter().enumerate() {
            if col < numeric.len() && numeric[col] && !raw.is_empty() {
                numeric[col] = raw.trim().parse::<f64>().is_ok();
            }
        }
    }
    let features = headers
        .iter()
        .enumerate()
        .filter(|(_, name)| *name != fitness_column)
        .map(|(col, name)| {
            if numeric[col] {
                FeatureSpec::numeric(name)
            } else {
                FeatureSpec::categorical(name)
            }
        })
        .collect();
    Schema::new(features, fitness_column)
}

/// Draws `min(sample_size, configs_count)` distinct row indices uniformly
/// without replacement (partial Fisher–Yates over `0..configs_count` driven by
/// [`SeededRng`]). Indices are returned in draw order.
pub fn sample_rows(configs_count: usize, sample_size: usize, seed: u64) -> Result<Vec<usize>> {
    if sample_size < 2 {
        return Err(Error::SampleSize(sample_size));
    }
    let mut rng = SeededRng::new(seed);
    Ok(partial_shuffle(&mut rng, configs_count, sample_size))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnalysisParams {
    /// Resolution constant: Δ = max distance / C, bin step = max fitness / C.
    pub c_const: u32,
    pub maximize: bool,
    pub neutrality_epsilon_override: Option<f64>,
}

impl Default for AnalysisParams {
    fn default() -> Self {
        AnalysisParams {
            c_const: DEFAULT_C,
            maximize: true,
            neutrality_epsilon_override: None,
        }
    }
}

impl AnalysisParams {
    pub fn validate(&self) -> Result<()> {
        if self.c_const == 0 {
            return Err(Error::InvalidParam("C must be at least 1".into()));
        }
        if let Some(eps) = self.neutrality_epsilon_override {
            if !(eps.is_finite() && eps > 0.0) {
                return Err(Error::InvalidParam(format!(
                    "neutrality epsilon must be positive, got {eps}"
                )));
            }
        }
        Ok(())
    }
}

/// The analyzed landscape: configurations, their fitness and the per-feature
/// normalization ranges used by the distance.
#[derive(Debug, Clone, PartialEq)]
pub struct LandscapeSample {
    schema: Schema,
    configs: Vec<Configuration>,
    fitness: Vec<f64>,
    ranges: Vec<Option<(f64, f64)>>,
    params: AnalysisParams,
    seed: u64,
    source_rows: Vec<usize>,
}

/// Effective range per feature: the declared range when present, else the
/// observed (min, max) over non-missing cells. `None` for categorical
/// features; `(0, 0)` for a numeric column with no values.
pub fn compute_ranges(schema: &Schema, configs: &[Configuration]) -> Vec<Option<(f64, f64)>> {
    schema
        .features()
        .iter()
        .enumerate()
        .map(|(j, spec)| match spec.kind {
            FeatureKind::Categorical => None,
            FeatureKind::Numeric => Some(spec.range.unwrap_or_else(|| {
                let mut lo = f64::INFINITY;
                let mut hi = f64::NEG_INFINITY;
                for c in configs {
                    if let Cell::Num(v) = c.0[j] {
                        lo = lo.min(v);
                        hi = hi.max(v);
                    }
                }
                if lo > hi {
                    (0.0, 0.0)
                } else {
                    (lo, hi)
                }
            })),
        })
        .collect()
}

impl LandscapeSample {
    /// Validates and assembles a sample; ranges are derived with
    /// [`compute_ranges`].
    pub fn new(
        schema: Schema,
        configs: Vec<Configuration>,
        fitness: Vec<f64>,
        params: AnalysisParams,
        seed: u64,
        source_rows: Vec<usize>,
    ) -> Result<Self> {
        params.validate()?;
        if configs.len() != fitness.len() || configs.len() != source_rows.len() {
            return Err(Error::Invariant(format!(
                "{} configurations, {} fitness values, {} source rows",
                configs.len(),
                fitness.len(),
                source_rows.len()
            )));
        }
        if configs.len() < 2 {
            return Err(Error::TooFewRows(configs.len()));
        }
        if let Some(i) = fitness.iter().position(|f| !f.is_finite()) {
            return Err(Error::InvalidParam(format!("fitness of row {i} is not finite")));
        }
        for (row, c) in configs.iter().enumerate() {
            if c.len() != schema.len() {
                return Err(Error::Invariant(format!(
                    "row {row} has {} cells for {} features",
                    c.len(),
                    schema.len()
                )));
            }
            for (spec, cell) in schema.features().iter().zip(c.values()) {
                match (spec.kind, cell) {
                    (_, Cell::Missing) => {}
                    (FeatureKind::Numeric, Cell::Num(v)) => {
                        if !v.is_finite() {
                            return Err(Error::InvalidParam(format!(
                                "row {row}: feature `{}` is not finite",
                                spec.name
                            )));
                        }
                        if let Some((min, max)) = spec.range {
                            if *v < min || *v > max {
                                return Err(Error::OutOfRange {
                                    row,
                                    feature: spec.name.clone(),
                                    value: *v,
                                    min,
                                    max,
                                });
                            }
                        }
                    }
                    (FeatureKind::Categorical, Cell::Cat(_)) => {}
                    _ => {
                        return Err(Error::Invariant(format!(
                            "row {row}: cell kind does not match feature `{}`",
                            spec.name
                        )))
                    }
                }
            }
        }
        let ranges = compute_ranges(&schema, &configs);
        Ok(LandscapeSample {
            schema,
            configs,
            fitness,
            ranges,
            params,
            seed,
            source_rows,
        })
    }

    pub fn schema(&self) -> &Schema {
        &self.schema
    }

    pub fn configs(&self) -> &[Configuration] {
        &self.configs
    }

    pub fn fitness(&self) -> &[f64] {
        &self.fitness
    }

    pub fn ranges(&self) -> &[Option<(f64, f64)>] {
        &self.ranges
    }

    pub fn params(&self) -> &AnalysisParams {
        &self.params
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn source_rows(&self) -> &[usize] {
        &self.source_rows
    }

    pub fn len(&self) -> usize {
        self.configs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.configs.is_empty()
    }

    pub(crate) fn into_parts(self) -> (Schema, Vec<Configuration>, Vec<f64>, AnalysisParams, u64, Vec<usize>) {
        (
            self.schema,
            self.configs,
            self.fitness,
            self.params,
            self.seed,
            self.source_rows,
        )
    }

    /// Renders the sample as a table CSV (features in schema order, then the
    /// fitness column). Reals use shortest round-trip formatting, so reloading
    /// reproduces the sample bit for bit.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header: Vec<&str> = self.schema.features().iter().map(|f| f.name.as_str()).collect();
        header.push(self.schema.fitness_column());
        w.write_record(&header)?;
        for (c, f) in self.configs.iter().zip(&self.fitness) {
            let mut record: Vec<String> = c
                .values()
                .iter()
                .map(|cell| match cell {
                    Cell::Num(v) => format!("{v:?}"),
                    Cell::Cat(s) => s.clone(),
                    Cell::Missing => String::new(),
                })
                .collect();
            record.push(format!("{f:?}"));
            w.write_record(&record)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Invariant(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Invariant(e.to_string()))
    }
}

/// Applies optional seeded sampling to a loaded table and assembles the
/// [`LandscapeSample`]. Sampled rows keep their file order.
pub fn build_sample(
    table: &Table,
    schema: &Schema,
    params: AnalysisParams,
    seed: u64,
    sample_size: Option<usize>,
) -> Result<LandscapeSample> {
    let mut picked: Vec<usize> = match sample_size {
        Some(size) => sample_rows(table.configs.len(), size, seed)?,
        None => (0..table.configs.len()).collect(),
    };
    picked.sort_unstable();
    if picked.len() < 2 {
        return Err(Error::TooFewRows(picked.len()));
    }
    LandscapeSample::new(
        schema.clone(),
        picked.iter().map(|&i| table.configs[i].clone()).collect(),
        picked.iter().map(|&i| table.fitness[i]).collect(),
        params,
        seed,
        picked.iter().map(|&i| table.source_rows[i]).collect(),
    )
}
