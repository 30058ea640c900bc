//! Canonical report document and plot-data tables.
//!
//! All reals are written with 17 significant digits in scientific notation
//! and object keys keep insertion order, so equal analyses serialize to
//! byte-identical files.

use std::fmt::Write as _;

use crate::analyses::{FdcResult, FitnessBinning, LocalityProfile, NeutralityProfile};
use crate::diagnostics::PlateauFinding;
use crate::stats::BoxStats;

/// Canonical text for a real: `{:.16e}`, `null` when not finite.
pub fn fmt_real(x: f64) -> String {
    if !x.is_finite() {
        return "null".to_string();
    }
    // Fold -0 into 0 so sign-of-zero noise never reaches the output.
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.16e}")
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map_or_else(String::new, fmt_real)
}

/// Minimal ordered JSON tree.
#[derive(Debug, Clone, PartialEq)]
pub enum Json {
    Null,
    Bool(bool),
    UInt(u64),
    Real(f64),
    Str(String),
    Array(Vec<Json>),
    Object(Vec<(String, Json)>),
}

impl Json {
    pub fn object<K: Into<String>>(entries: impl IntoIterator<Item = (K, Json)>) -> Json {
        Json::Object(entries.into_iter().map(|(k, v)| (k.into(), v)).collect())
    }

    pub fn opt_real(x: Option<f64>) -> Json {
        x.map_or(Json::Null, Json::Real)
    }

    pub fn str(s: impl Into<String>) -> Json {
        Json::Str(s.into())
    }

    pub fn count(n: usize) -> Json {
        Json::UInt(n as u64)
    }

    /// Pretty-printed canonical text with a trailing newline.
    pub fn to_canonical(&self) -> String {
        let mut out = String::new();
        self.write(&mut out, 0);
        out.push('\n');
        out
    }

    fn write(&self, out: &mut String, depth: usize) {
        match self {
            Json::Null => out.push_str("null"),
            Json::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
            Json::UInt(n) => write!(out, "{n}").unwrap(),
            Json::Real(x) => out.push_str(&fmt_real(*x)),
            Json::Str(s) => out.push_str(&serde_json::to_string(s).expect("string serializes")),
            Json::Array(items) if items.is_empty() => out.push_str("[]"),
            Json::Array(items) => {
                out.push('[');
                for (k, item) in items.iter().enumerate() {
                    out.push_str(if k == 0 { "\n" } else { ",\n" });
                    indent(out, depth + 1);
                    item.write(out, depth + 1);
                }
                out.push('\n');
                indent(out, depth);
                out.push(']');
            }
            Json::Object(entries) if entries.is_empty() => out.push_str("{}"),
            Json::Object(entries) => {
                out.push('{');
                for (k, (key, value)) in entries.iter().enumerate() {
                    out.push_str(if k == 0 { "\n" } else { ",\n" });
                    indent(out, depth + 1);
                    out.push_str(&serde_json::to_string(key).expect("string serializes"));
                    out.push_str(": ");
                    value.write(out, depth + 1);
                }
                out.push('\n');
                indent(out, depth);
                out.push('}');
            }
        }
    }
}

fn indent(out: &mut String, depth: usize) {
    for _ in 0..depth {
        out.push_str("  ");
    }
}

/// Provenance recorded in the report.
#[derive(Debug, Clone, PartialEq)]
pub struct ReportMetadata {
    pub command: String,
    pub input: String,
    pub schema: Option<String>,
    pub priors: Option<String>,
    pub seed: u64,
    pub requested_sample: Option<usize>,
    pub sample_size: usize,
    pub table_rows: usize,
    pub dropped_rows: usize,
    pub c_const: u32,
    pub maximize: bool,
    pub optima: Vec<usize>,
    pub optimal_fitness: f64,
    pub max_dist: f64,
    pub delta: f64,
    pub empty_neighborhood_count: usize,
    pub binning: Option<FitnessBinning>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AnalysisReport {
    pub metadata: ReportMetadata,
    pub fdc: Option<FdcResult>,
    pub locality: Option<LocalityProfile>,
    pub neutrality: Option<NeutralityProfile>,
    pub histogram: Option<Vec<usize>>,
    pub plateaus: Option<Vec<PlateauFinding>>,
}

fn box_json(binning: &FitnessBinning, bins: &[Option<BoxStats>]) -> Json {
    Json::Array(
        bins.iter()
            .enumerate()
            .map(|(k, b)| {
                let (lo, hi) = binning.edges(k);
                let mut entries = vec![
                    ("bin_index", Json::count(k)),
                    ("bin_lo", Json::Real(lo)),
                    ("bin_hi", Json::Real(hi)),
                    ("count", Json::count(b.map_or(0, |b| b.count))),
                ];
                let stat = |f: fn(&BoxStats) -> f64| Json::opt_real(b.as_ref().map(f));
                entries.extend([
                    ("min", stat(|b| b.min)),
                    ("q1", stat(|b| b.q1)),
                    ("median", stat(|b| b.median)),
                    ("q3", stat(|b| b.q3)),
                    ("max", stat(|b| b.max)),
                ]);
                Json::object(entries)
            })
            .collect(),
    )
}

impl AnalysisReport {
    pub fn to_json(&self) -> Json {
        let m = &self.metadata;
        let metadata = Json::object([
            ("tool", Json::str("hpofla")),
            ("version", Json::str(env!("CARGO_PKG_VERSION"))),
            ("command", Json::str(&m.command)),
            ("input", Json::str(&m.input)),
            ("schema", m.schema.as_ref().map_or(Json::Null, Json::str)),
            ("priors", m.priors.as_ref().map_or(Json::Null, Json::str)),
            ("seed", Json::UInt(m.seed)),
            ("requested_sample", m.requested_sample.map_or(Json::Null, Json::count)),
            ("sample_size", Json::count(m.sample_size)),
            ("table_rows", Json::count(m.table_rows)),
            ("dropped_rows", Json::count(m.dropped_rows)),
            ("c_const", Json::UInt(u64::from(m.c_const))),
            ("maximize", Json::Bool(m.maximize)),
            ("optima", Json::Array(m.optima.iter().map(|&i| Json::count(i)).collect())),
            ("optimal_fitness", Json::Real(m.optimal_fitness)),
            ("max_dist", Json::Real(m.max_dist)),
            ("delta", Json::Real(m.delta)),
            ("empty_neighborhood_count", Json::count(m.empty_neighborhood_count)),
            (
                "binning",
                m.binning.map_or(Json::Null, |b| {
                    Json::object([("max_fitness", Json::Real(b.max_fitness)), ("step", Json::Real(b.step))])
                }),
            ),
        ]);

        let fdc = self.fdc.as_ref().map_or(Json::Null, |f| {
            let max_d = f.points.iter().map(|p| p.0).fold(0.0, f64::max);
            Json::object([
                ("points", Json::count(f.points.len())),
                ("slope", Json::opt_real(f.slope)),
                ("intercept", Json::opt_real(f.intercept)),
                ("coefficient", Json::opt_real(f.coefficient)),
                ("max_distance", Json::Real(max_d)),
            ])
        });

        let binning = m.binning.unwrap_or(FitnessBinning { max_fitness: 0.0, step: 0.0, c_const: 1 });
        let locality = self.locality.as_ref().map_or(Json::Null, |l| {
            Json::object([
                ("correlation", Json::opt_real(l.correlation)),
                ("excluded_empty", Json::count(l.excluded_empty)),
                ("bins", box_json(&binning, &l.bins)),
            ])
        });

        let neutrality = self.neutrality.as_ref().map_or(Json::Null, |n| {
            let with_neutral = n.degrees.iter().filter(|&&d| d >= 1).count();
            Json::object([
                ("epsilon", Json::Real(n.epsilon)),
                ("mean_degree", Json::Real(n.mean_degree)),
                ("rows_with_neutral_neighbor", Json::count(with_neutral)),
                ("bins", box_json(&binning, &n.bins)),
            ])
        });

        let histogram = self.histogram.as_ref().map_or(Json::Null, |h| {
            Json::Array(h.iter().map(|&c| Json::count(c)).collect())
        });

        let plateaus = self.plateaus.as_ref().map_or(Json::Null, |ps| {
            Json::Array(
                ps.iter()
                    .map(|p| {
                        Json::object([
                            ("bin_index", Json::count(p.bin_index)),
                            ("bin_center", Json::Real(p.bin_center)),
                            ("count", Json::count(p.count)),
                            ("count_fraction", Json::Real(p.count_fraction)),
                            ("level_fitness", Json::Real(p.level_fitness)),
                            ("level_count", Json::count(p.level_count)),
                            ("level_fraction", Json::Real(p.level_fraction)),
                            ("diversity_ratio", Json::Real(p.diversity_ratio)),
                            (
                                "majority_class_label",
                                p.majority_class_label.as_ref().map_or(Json::Null, Json::str),
                            ),
                        ])
                    })
                    .collect(),
            )
        });

        Json::object([
            ("metadata", metadata),
            ("fdc", fdc),
            ("locality", locality),
            ("neutrality", neutrality),
            ("fitness_histogram", histogram),
            ("plateaus", plateaus),
        ])
    }

    /// Checks that every count in the report reconciles with the sample size.
    pub fn reconcile(&self) -> Result<(), String> {
        let n = self.metadata.sample_size;
        if let Some(f) = &self.fdc {
            if f.points.len() != n {
                return Err(format!("FDC has {} points for {n} rows", f.points.len()));
            }
        }
        if let Some(l) = &self.locality {
            let binned: usize = l.bins.iter().map(|b| b.map_or(0, |b| b.count)).sum();
            if binned + l.excluded_empty != n {
                return Err(format!(
                    "locality bins hold {binned} rows plus {} excluded, sample has {n}",
                    l.excluded_empty
                ));
            }
            if l.excluded_empty != self.metadata.empty_neighborhood_count {
                return Err("locality exclusions differ from empty neighborhoods".into());
            }
        }
        if let Some(nt) = &self.neutrality {
            if nt.degrees.iter().zip(&nt.neighbor_counts).any(|(d, c)| d > c) {
                return Err("neutrality degree exceeds neighborhood size".into());
            }
            let binned: usize = nt.bins.iter().map(|b| b.map_or(0, |b| b.count)).sum();
            if binned != n {
                return Err(format!("neutrality bins hold {binned} rows, sample has {n}"));
            }
        }
        if let Some(h) = &self.histogram {
            if h.iter().sum::<usize>() != n {
                return Err("fitness histogram does not sum to the sample size".into());
            }
        }
        if let Some(ps) = &self.plateaus {
            for p in ps {
                if p.count_fraction != p.count as f64 / n as f64 {
                    return Err(format!("plateau in bin {} has inconsistent fraction", p.bin_index));
                }
            }
        }
        Ok(())
    }
}

/// `distance,fitness` per row.
pub fn fdc_points_csv(fdc: &FdcResult) -> String {
    let mut out = String::from("distance,fitness\n");
    for &(d, f) in &fdc.points {
        writeln!(out, "{},{}", fmt_real(d), fmt_real(f)).unwrap();
    }
    out
}

/// `bin_index,bin_lo,bin_hi,count,min,q1,median,q3,max`; empty bins leave
/// the statistics blank.
pub fn locality_bins_csv(locality: &LocalityProfile, binning: &FitnessBinning) -> String {
    let mut out = String::from("bin_index,bin_lo,bin_hi,count,min,q1,median,q3,max\n");
    for (k, b) in locality.bins.iter().enumerate() {
        let (lo, hi) = binning.edges(k);
        writeln!(
            out,
            "{k},{},{},{},{},{},{},{},{}",
            fmt_real(lo),
            fmt_real(hi),
            b.map_or(0, |b| b.count),
            fmt_opt(b.map(|b| b.min)),
            fmt_opt(b.map(|b| b.q1)),
            fmt_opt(b.map(|b| b.median)),
            fmt_opt(b.map(|b| b.q3)),
            fmt_opt(b.map(|b| b.max)),
        )
        .unwrap();
    }
    out
}

/// `row,fitness,bin_index,nd,neighbor_count` per row.
pub fn neutrality_csv(neutrality: &NeutralityProfile, fitness: &[f64], binning: &FitnessBinning) -> String {
    let mut out = String::from("row,fitness,bin_index,nd,neighbor_count\n");
    for (i, &f) in fitness.iter().enumerate() {
        writeln!(
            out,
            "{i},{},{},{},{}",
            fmt_real(f),
            binning.bin_of(f),
            neutrality.degrees[i],
            neutrality.neighbor_counts[i]
        )
        .unwrap();
    }
    out
}
