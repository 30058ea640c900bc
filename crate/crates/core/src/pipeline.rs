//! End-to-end orchestration: sample → distances → neighborhoods → analyses →
//! report and plot files.

use std::fs;
use std::path::{Path, PathBuf};

use crate::analyses::{fdc, locality, make_binning, neutrality, FdcResult, FitnessBinning, LocalityProfile, NeutralityProfile};
use crate::diagnostics::{detect_plateaus, fitness_histogram, match_class_priors, DiagnosticsParams, PlateauFinding};
use crate::error::{Error, Result};
use crate::gower::{distance_matrix, distances_to_optima, find_optima, DistanceMatrix, OptimaSet};
use crate::ingest::LandscapeSample;
use crate::neighborhood::{build_neighborhoods, compute_spec, NeighborhoodIndex};
use crate::report::{fdc_points_csv, locality_bins_csv, neutrality_csv, AnalysisReport, ReportMetadata};
use crate::svg::{fdc_svg, locality_svg, neutrality_svg, PlotKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Fdc,
    Locality,
    Neutrality,
    Diagnose,
    All,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Fdc => "fdc",
            Command::Locality => "locality",
            Command::Neutrality => "neutrality",
            Command::Diagnose => "diagnose",
            Command::All => "all",
        }
    }

    fn fdc(self) -> bool {
        matches!(self, Command::Fdc | Command::All)
    }

    fn locality(self) -> bool {
        matches!(self, Command::Locality | Command::All)
    }

    fn neutrality(self) -> bool {
        matches!(self, Command::Neutrality | Command::All)
    }

    fn diagnose(self) -> bool {
        matches!(self, Command::Diagnose | Command::All)
    }

    fn needs_binning(self) -> bool {
        self != Command::Fdc
    }
}

/// Every intermediate and final result of one analysis run.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub sample: LandscapeSample,
    pub matrix: DistanceMatrix,
    pub optima: OptimaSet,
    pub dist_to_optima: Vec<f64>,
    pub neighborhoods: NeighborhoodIndex,
    pub binning: Option<FitnessBinning>,
    pub fdc: Option<FdcResult>,
    pub locality: Option<LocalityProfile>,
    pub neutrality: Option<NeutralityProfile>,
    pub histogram: Option<Vec<usize>>,
    pub plateaus: Option<Vec<PlateauFinding>>,
}

pub fn analyze(sample: LandscapeSample, command: Command, diagnostics: &DiagnosticsParams) -> Result<Analysis> {
    diagnostics.validate()?;
    let params = *sample.params();
    let matrix = distance_matrix(&sample)?;
    let optima = find_optima(sample.fitness(), params.maximize);
    let dist_to_optima = distances_to_optima(&matrix, &optima);
    let spec = compute_spec(&dist_to_optima, params.c_const)?;
    let neighborhoods = build_neighborhoods(&matrix, spec);
    let binning = if command.needs_binning() {
        Some(make_binning(sample.fitness(), params.c_const)?)
    } else {
        None
    };

    let fdc = command.fdc().then(|| fdc(&sample, &dist_to_optima));
    let locality = binning
        .filter(|_| command.locality())
        .map(|b| locality(&sample, &neighborhoods, &b));
    let neutrality = binning
        .filter(|_| command.neutrality())
        .map(|b| neutrality(&sample, &neighborhoods, &b, &params));
    let (histogram, plateaus) = match binning.filter(|_| command.diagnose()) {
        Some(b) => {
            let mut found = detect_plateaus(&sample, &matrix, &b, diagnostics);
            if let Some(priors) = &diagnostics.class_priors {
                found = match_class_priors(found, priors, &b);
            }
            (Some(fitness_histogram(sample.fitness(), &b)), Some(found))
        }
        None => (None, None),
    };

    Ok(Analysis {
        sample,
        matrix,
        optima,
        dist_to_optima,
        neighborhoods,
        binning,
        fdc,
        locality,
        neutrality,
        histogram,
        plateaus,
    })
}

/// Inputs echoed into the report metadata.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Provenance {
    pub input: String,
    pub schema: Option<String>,
    pub priors: Option<String>,
    pub requested_sample: Option<usize>,
    pub table_rows: usize,
    pub dropped_rows: usize,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct OutputOptions {
    pub plots: bool,
    pub dump_distances: bool,
    pub dump_neighbors: bool,
}

impl Analysis {
    pub fn report(&self, command: Command, provenance: &Provenance) -> AnalysisReport {
        let params = self.sample.params();
        let spec = self.neighborhoods.spec();
        AnalysisReport {
            metadata: ReportMetadata {
                command: command.name().to_string(),
                input: provenance.input.clone(),
                schema: provenance.schema.clone(),
                priors: provenance.priors.clone(),
                seed: self.sample.seed(),
                requested_sample: provenance.requested_sample,
                sample_size: self.sample.len(),
                table_rows: provenance.table_rows,
                dropped_rows: provenance.dropped_rows,
                c_const: params.c_const,
                maximize: params.maximize,
                optima: self.optima.indices.clone(),
                optimal_fitness: self.optima.optimal_fitness,
                max_dist: spec.max_dist,
                delta: spec.delta,
                empty_neighborhood_count: self.neighborhoods.empty_count(),
                binning: self.binning,
            },
            fdc: self.fdc.clone(),
            locality: self.locality.clone(),
            neutrality: self.neutrality.clone(),
            histogram: self.histogram.clone(),
            plateaus: self.plateaus.clone(),
        }
    }

    pub fn svg(&self, kind: PlotKind) -> Option<String> {
        match kind {
            PlotKind::Fdc => self.fdc.as_ref().map(fdc_svg),
            PlotKind::Locality => Some(locality_svg(self.locality.as_ref()?, self.binning.as_ref()?)),
            PlotKind::Neutrality => Some(neutrality_svg(self.neutrality.as_ref()?, self.binning.as_ref()?)),
        }
    }

    /// Renders every output file in memory, after checking that the report's
    /// counts reconcile.
    pub fn render(&self, command: Command, provenance: &Provenance, options: OutputOptions) -> Result<Vec<OutputFile>> {
        let report = self.report(command, provenance);
        report.reconcile().map_err(Error::Invariant)?;

        let mut files = vec![OutputFile::new("report.json", report.to_json().to_canonical())];
        if let Some(f) = &self.fdc {
            files.push(OutputFile::new("fdc_points.csv", fdc_points_csv(f)));
        }
        if let (Some(l), Some(b)) = (&self.locality, &self.binning) {
            files.push(OutputFile::new("locality_bins.csv", locality_bins_csv(l, b)));
        }
        if let (Some(n), Some(b)) = (&self.neutrality, &self.binning) {
            files.push(OutputFile::new("neutrality.csv", neutrality_csv(n, self.sample.fitness(), b)));
        }
        if options.plots {
            for kind in [PlotKind::Fdc, PlotKind::Locality, PlotKind::Neutrality] {
                if let Some(svg) = self.svg(kind) {
                    files.push(OutputFile::new(kind.file_name(), svg));
                }
            }
        }
        if options.dump_distances {
            let mut buf = Vec::new();
            self.matrix.write_csv(&mut buf).map_err(|e| Error::io("distances.csv", e))?;
            files.push(OutputFile::new("distances.csv", String::from_utf8(buf).expect("ascii")));
        }
        if options.dump_neighbors {
            let mut buf = Vec::new();
            self.neighborhoods
                .write_csv(&mut buf)
                .map_err(|e| Error::io("neighbors.csv", e))?;
            files.push(OutputFile::new("neighbors.csv", String::from_utf8(buf).expect("ascii")));
        }
        Ok(files)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OutputFile {
    pub name: String,
    pub contents: String,
}

impl OutputFile {
    pub fn new(name: impl Into<String>, contents: String) -> Self {
        OutputFile {
            name: name.into(),
            contents,
        }
    }
}

/// Writes `files` into `dir` (created if needed). Every file is first written
/// to a hidden temporary name; the renames happen only once all temporaries
/// exist, and temporaries are removed on failure.
pub fn write_outputs(dir: &Path, files: &[OutputFile]) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let staged: Vec<(PathBuf, PathBuf)> = files
        .iter()
        .map(|f| (dir.join(format!(".{}.tmp", f.name)), dir.join(&f.name)))
        .collect();
    let cleanup = |staged: &[(PathBuf, PathBuf)]| {
        for (tmp, _) in staged {
            let _ = fs::remove_file(tmp);
        }
    };
    for (file, (tmp, _)) in files.iter().zip(&staged) {
        if let Err(e) = fs::write(tmp, &file.contents) {
            cleanup(&staged);
            return Err(Error::io(tmp, e));
        }
    }
    for (tmp, dest) in &staged {
        if let Err(e) = fs::rename(tmp, dest) {
            cleanup(&staged);
            return Err(Error::io(dest, e));
        }
    }
    Ok(())
}
