//! Fixtures shared by the benchmarks.

use hpofla_core::synthetic::planted_landscape;
use hpofla_core::{LandscapeKind, LandscapeSample, PlantedSpec};

/// A planted landscape at benchmark scale: `rows` configurations over twelve
/// numeric and three ternary categorical features, with a 10% plateau.
pub fn fixture(rows: usize) -> LandscapeSample {
    let mut spec = PlantedSpec::new(rows, 12, vec![3, 3, 3], LandscapeKind::AffineDistance, 2024);
    spec.plateaus = vec![(0.1, 20.0)];
    planted_landscape(&spec).expect("valid planted spec")
}
