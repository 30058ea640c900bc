//! Radius neighborhoods: `N(x) = { y != x | d(x, y) < Δ }` with
//! `Δ = max_dist / C`, where `max_dist` is the largest distance of any row to
//! the optima set.

use std::io::Write;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gower::DistanceMatrix;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NeighborhoodSpec {
    pub max_dist: f64,
    pub delta: f64,
    pub c_const: u32,
}

pub fn compute_spec(dist_to_optima: &[f64], c_const: u32) -> Result<NeighborhoodSpec> {
    if dist_to_optima.is_empty() {
        return Err(Error::InvalidParam("no distances to derive Δ from".into()));
    }
    if c_const == 0 {
        return Err(Error::InvalidParam("C must be at least 1".into()));
    }
    let max_dist = dist_to_optima.iter().copied().fold(0.0, f64::max);
    Ok(NeighborhoodSpec {
        max_dist,
        delta: max_dist / f64::from(c_const),
        c_const,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct NeighborhoodIndex {
    neighbors: Vec<Vec<usize>>,
    spec: NeighborhoodSpec,
}

impl NeighborhoodIndex {
    pub fn spec(&self) -> &NeighborhoodSpec {
        &self.spec
    }

    /// Sorted neighbor rows of `i` (never contains `i`).
    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.neighbors[i]
    }

    pub fn len(&self) -> usize {
        self.neighbors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.neighbors.is_empty()
    }

    pub fn empty_count(&self) -> usize {
        self.neighbors.iter().filter(|n| n.is_empty()).count()
    }

    /// Writes `row,neighbor` for every ordered neighbor pair.
    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "row,neighbor")?;
        for (i, list) in self.neighbors.iter().enumerate() {
            for j in list {
                writeln!(out, "{i},{j}")?;
            }
        }
        Ok(())
    }
}

pub fn build_neighborhoods(matrix: &DistanceMatrix, spec: NeighborhoodSpec) -> NeighborhoodIndex {
    let n = matrix.len();
    let neighbors = (0..n)
        .into_par_iter()
        .map(|i| (0..n).filter(|&j| j != i && matrix.get(i, j) < spec.delta).collect())
        .collect();
    NeighborhoodIndex { neighbors, spec }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_arithmetic() {
        let s = compute_spec(&[0.0, 0.2, 0.8], 40).unwrap();
        assert_eq!(s.max_dist, 0.8);
        assert_eq!(s.delta, 0.8 / 40.0);
        assert!((s.delta - 0.02).abs() < 1e-15);
        assert!(compute_spec(&[], 40).is_err());
    }

    #[test]
    fn all_optimal_gives_empty_neighborhoods() {
        let s = compute_spec(&[0.0, 0.0, 0.0], 40).unwrap();
        assert_eq!(s.delta, 0.0);
        let m = DistanceMatrix::from_lower(3, vec![0.0, 0.0, 0.0]).unwrap();
        let idx = build_neighborhoods(&m, s);
        assert_eq!(idx.empty_count(), 3);
    }

    #[test]
    fn two_close_rows_are_neighbors() {
        let m = DistanceMatrix::from_lower(2, vec![0.01]).unwrap();
        let spec = NeighborhoodSpec { max_dist: 0.8, delta: 0.02, c_const: 40 };
        let idx = build_neighborhoods(&m, spec);
        assert_eq!(idx.neighbors(0), &[1]);
        assert_eq!(idx.neighbors(1), &[0]);
    }

    #[test]
    fn boundary_distance_is_excluded() {
        let m = DistanceMatrix::from_lower(2, vec![0.02]).unwrap();
        let spec = NeighborhoodSpec { max_dist: 0.8, delta: 0.02, c_const: 40 };
        let idx = build_neighborhoods(&m, spec);
        assert!(idx.neighbors(0).is_empty());
        assert_eq!(idx.empty_count(), 2);
    }

    #[test]
    fn large_delta_connects_everything() {
        let m = DistanceMatrix::from_lower(3, vec![1.0, 0.5, 1.0]).unwrap();
        let spec = NeighborhoodSpec { max_dist: 41.0, delta: 41.0 / 40.0, c_const: 40 };
        let idx = build_neighborhoods(&m, spec);
        assert_eq!(idx.neighbors(1), &[0, 2]);
        let mut out = Vec::new();
        idx.write_csv(&mut out).unwrap();
        assert_eq!(String::from_utf8(out).unwrap().lines().count(), 7);
    }
}
