//! Fitness landscape analysis for tabular hyperparameter-optimization
//! benchmarks.
//!
//! A benchmark table is read into a [`LandscapeSample`] (configurations plus
//! fitness), configurations are compared with the mixed-type Gower distance,
//! and radius neighborhoods are derived from the distance to the best
//! configuration. On top of that the crate computes
//!
//! * fitness-distance correlation ([`analyses::fdc`]),
//! * locality, i.e. mean neighbor fitness against own fitness
//!   ([`analyses::locality`]),
//! * neutrality degree ([`analyses::neutrality`]),
//! * plateau diagnostics for fitness levels shared by many unrelated
//!   configurations ([`diagnostics::detect_plateaus`]).
//!
//! [`synthetic`] generates planted landscapes with known answers and
//! [`pipeline`] ties everything together for the `hpofla` command.

pub mod analyses;
pub mod diagnostics;
pub mod error;
pub mod gower;
pub mod ingest;
pub mod neighborhood;
pub mod pipeline;
pub mod report;
pub mod rng;
pub mod stats;
pub mod svg;
pub mod synthetic;

pub use analyses::{FdcResult, FitnessBinning, LocalityProfile, NeutralityProfile};
pub use diagnostics::{DiagnosticsParams, PlateauFinding};
pub use error::{Error, Result};
pub use gower::{DistanceMatrix, OptimaSet};
pub use ingest::{AnalysisParams, Cell, Configuration, FeatureKind, FeatureSpec, LandscapeSample, Schema, Table};
pub use neighborhood::{NeighborhoodIndex, NeighborhoodSpec};
pub use pipeline::{Analysis, Command, OutputOptions, Provenance};
pub use report::AnalysisReport;
pub use stats::BoxStats;
pub use synthetic::{LandscapeKind, PlantedSpec};
