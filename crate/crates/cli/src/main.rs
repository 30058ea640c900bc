//! `hpofla`: landscape analysis of tabular hyperparameter benchmarks.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use hpofla_core::diagnostics::{
    parse_priors, DEFAULT_LEVEL_TOLERANCE, DEFAULT_MIN_COUNT_FRACTION, DEFAULT_MIN_DIVERSITY_RATIO,
};
use hpofla_core::ingest::{build_sample, infer_schema, load_table, parse_schema, DEFAULT_C, DEFAULT_FITNESS_COLUMN};
use hpofla_core::pipeline::{analyze, write_outputs, OutputFile};
use hpofla_core::synthetic::planted_landscape;
use hpofla_core::{AnalysisParams, Command, DiagnosticsParams, Error, LandscapeKind, OutputOptions, PlantedSpec, Provenance};

#[derive(Parser)]
#[command(name = "hpofla", version, about = "Fitness landscape analysis for hyperparameter benchmark tables")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Fitness-distance correlation.
    Fdc(AnalyzeArgs),
    /// Neighbor-mean fitness against own fitness, per fitness bin.
    Locality(AnalyzeArgs),
    /// Neutrality degree per fitness bin.
    Neutrality(AnalyzeArgs),
    /// Fitness histogram and plateau findings.
    Diagnose(AnalyzeArgs),
    /// Every analysis.
    All(AnalyzeArgs),
    /// Write a synthetic planted landscape (table.csv and schema.json).
    Generate(GenerateArgs),
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Benchmark table (CSV with a header row).
    #[arg(long)]
    input: PathBuf,
    /// Schema document; inferred from the table when omitted.
    #[arg(long)]
    schema: Option<PathBuf>,
    /// Fitness column, overriding the schema's.
    #[arg(long = "fitness-col")]
    fitness_col: Option<String>,
    /// Analyze a seeded uniform sample of this many rows instead of the whole table.
    #[arg(long)]
    sample: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Resolution constant for the neighborhood radius and fitness bins.
    #[arg(long = "c", default_value_t = DEFAULT_C)]
    c_const: u32,
    /// Treat lower fitness as better.
    #[arg(long)]
    minimize: bool,
    /// Neutrality tolerance; defaults to max fitness / c.
    #[arg(long)]
    epsilon: Option<f64>,
    /// JSON object mapping class labels to prior probabilities.
    #[arg(long)]
    priors: Option<PathBuf>,
    #[arg(long = "min-count-frac", default_value_t = DEFAULT_MIN_COUNT_FRACTION)]
    min_count_frac: f64,
    #[arg(long = "min-diversity", default_value_t = DEFAULT_MIN_DIVERSITY_RATIO)]
    min_diversity: f64,
    /// Width of the shared fitness level a plateau bin must contain.
    #[arg(long = "level-tol", default_value_t = DEFAULT_LEVEL_TOLERANCE, conflicts_with = "no_level_check")]
    level_tol: f64,
    /// Flag bins on count and diversity alone.
    #[arg(long = "no-level-check")]
    no_level_check: bool,
    #[arg(long)]
    out: PathBuf,
    /// Also write fdc.svg, locality.svg and neutrality.svg.
    #[arg(long)]
    plots: bool,
    #[arg(long = "dump-distances")]
    dump_distances: bool,
    #[arg(long = "dump-neighbors")]
    dump_neighbors: bool,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long, default_value_t = 1000)]
    rows: usize,
    /// Numeric features, each uniform over [0, 1].
    #[arg(long, default_value_t = 12)]
    numeric: usize,
    /// Comma-separated label counts, one per categorical feature.
    #[arg(long, value_delimiter = ',', default_value = "3,3,3")]
    categorical: Vec<usize>,
    /// `affine` or `constant:<value>`.
    #[arg(long, default_value = "affine", value_parser = parse_kind)]
    kind: LandscapeKind,
    /// Plateau as `<fraction>:<fitness>`; repeatable.
    #[arg(long, value_parser = parse_plateau)]
    inject: Vec<(f64, f64)>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

fn parse_kind(s: &str) -> Result<LandscapeKind, String> {
    if s == "affine" {
        return Ok(LandscapeKind::AffineDistance);
    }
    match s.strip_prefix("constant:") {
        Some(v) => v
            .parse()
            .map(LandscapeKind::Constant)
            .map_err(|_| format!("bad constant value {v:?}")),
        None => Err(format!("unknown landscape kind {s:?} (expected affine or constant:<value>)")),
    }
}

fn parse_plateau(s: &str) -> Result<(f64, f64), String> {
    let (frac, value) = s.split_once(':').ok_or("expected <fraction>:<fitness>")?;
    let frac = frac.parse().map_err(|_| format!("bad fraction {frac:?}"))?;
    let value = value.parse().map_err(|_| format!("bad fitness {value:?}"))?;
    Ok((frac, value))
}

/// An error together with the file it concerns, if any.
struct Failure {
    file: Option<PathBuf>,
    error: Error,
}

impl From<Error> for Failure {
    fn from(error: Error) -> Self {
        Failure { file: None, error }
    }
}

trait InFile<T> {
    fn in_file(self, path: &Path) -> Result<T, Failure>;
}

impl<T> InFile<T> for Result<T, Error> {
    fn in_file(self, path: &Path) -> Result<T, Failure> {
        self.map_err(|error| Failure {
            file: Some(path.to_path_buf()),
            error,
        })
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Error::io(path, e).into())
}

fn analysis(command: Command, args: &AnalyzeArgs) -> Result<(), Failure> {
    let params = AnalysisParams {
        c_const: args.c_const,
        maximize: !args.minimize,
        neutrality_epsilon_override: args.epsilon,
    };
    params.validate()?;

    let text = read(&args.input)?;
    let schema = match &args.schema {
        Some(path) => {
            let schema = parse_schema(&read(path)?).in_file(path)?;
            match &args.fitness_col {
                Some(col) => schema.with_fitness_column(col.clone()).in_file(path)?,
                None => schema,
            }
        }
        None => {
            let col = args.fitness_col.as_deref().unwrap_or(DEFAULT_FITNESS_COLUMN);
            infer_schema(&text, col).in_file(&args.input)?
        }
    };
    let class_priors = match &args.priors {
        Some(path) => Some(parse_priors(&read(path)?).in_file(path)?),
        None => None,
    };
    let diagnostics = DiagnosticsParams {
        min_count_fraction: args.min_count_frac,
        min_diversity_ratio: args.min_diversity,
        level_tolerance: (!args.no_level_check).then_some(args.level_tol),
        class_priors,
    };
    diagnostics.validate()?;

    let table = load_table(&text, &schema).in_file(&args.input)?;
    let sample = build_sample(&table, &schema, params, args.seed, args.sample).in_file(&args.input)?;
    let analysis = analyze(sample, command, &diagnostics).in_file(&args.input)?;

    let display = |p: &Path| p.display().to_string();
    let provenance = Provenance {
        input: display(&args.input),
        schema: args.schema.as_deref().map(display),
        priors: args.priors.as_deref().map(display),
        requested_sample: args.sample,
        table_rows: table.source_rows.len() + table.dropped,
        dropped_rows: table.dropped,
    };
    let options = OutputOptions {
        plots: args.plots,
        dump_distances: args.dump_distances,
        dump_neighbors: args.dump_neighbors,
    };
    let files = analysis.render(command, &provenance, options)?;
    write_outputs(&args.out, &files)?;
    Ok(())
}

fn generate(args: &GenerateArgs) -> Result<(), Failure> {
    let mut spec = PlantedSpec::new(args.rows, args.numeric, args.categorical.clone(), args.kind, args.seed);
    spec.plateaus = args.inject.clone();
    let sample = planted_landscape(&spec)?;
    let files = [
        OutputFile::new("table.csv", sample.to_csv()?),
        OutputFile::new("schema.json", sample.schema().to_json()),
    ];
    write_outputs(&args.out, &files)?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let result = match &cli.command {
        Cmd::Fdc(a) => analysis(Command::Fdc, a),
        Cmd::Locality(a) => analysis(Command::Locality, a),
        Cmd::Neutrality(a) => analysis(Command::Neutrality, a),
        Cmd::Diagnose(a) => analysis(Command::Diagnose, a),
        Cmd::All(a) => analysis(Command::All, a),
        Cmd::Generate(a) => generate(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure { file, error }) => {
            let msg = error.to_string().replace('\n', " ");
            match file {
                Some(path) => eprintln!("hpofla: {}: {msg}", path.display()),
                None => eprintln!("hpofla: {msg}"),
            }
            ExitCode::from(if error.is_internal() { 2 } else { 1 })
        }
    }
}
