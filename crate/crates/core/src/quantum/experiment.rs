//! Random-subspace data hiding: a normalized projector onto a Haar-random
//! `k`-dimensional subspace of `C^n ⊗ C^n`, with `k ≈ n^{1+2δ}`.

use std::time::Instant;

use serde::Serialize;

use super::block::product_overlap;
use crate::error::{Error, Result};
use crate::sampling::{haar_isometry, rng};

pub const OVERLAP_RESTARTS: usize = 64;
pub const OVERLAP_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentReport {
    pub n: usize,
    pub k: usize,
    pub delta: f64,
    pub seed: u64,
    /// `(n² − k)/√k`, valid when the overlap stays below `2k/n²`.
    pub witness_bound: f64,
    /// Heuristic estimate of `max ⟨αβ|Π|αβ⟩` over product vectors.
    pub overlap_estimate: f64,
    /// `2k/n²`, the overlap level under which the witness bound holds.
    pub overlap_threshold: f64,
    /// `√k (2/p̂ − 1)` computed from the overlap estimate.
    pub calibrated_bound: f64,
    pub runtime_ms: f64,
}

pub fn subspace_dimension(n: usize, delta: f64) -> usize {
    (n as f64).powf(1.0 + 2.0 * delta).round() as usize
}

pub fn random_subspace_experiment(n: usize, delta: f64, seed: u64) -> Result<ExperimentReport> {
    if n < 2 {
        return Err(Error::InvalidDimension {
            dim: n,
            reason: "need at least two levels",
        });
    }
    if !(0.0..0.5).contains(&delta) {
        return Err(Error::InvalidArgument(format!(
            "delta must lie in [0, 1/2), got {delta}"
        )));
    }
    let k = subspace_dimension(n, delta);
    let d = n * n;
    if k == 0 || k >= d {
        return Err(Error::InvalidArgument(format!(
            "subspace dimension {k} out of range for n = {n}"
        )));
    }
    let start = Instant::now();
    let q = haar_isometry(&mut rng(seed), d, k);
    let overlap = product_overlap(&q, n, n, OVERLAP_RESTARTS, OVERLAP_TOL, seed)?;
    let sk = (k as f64).sqrt();
    Ok(ExperimentReport {
        n,
        k,
        delta,
        seed,
        witness_bound: (d - k) as f64 / sk,
        overlap_estimate: overlap,
        overlap_threshold: 2.0 * k as f64 / d as f64,
        calibrated_bound: sk * (2.0 / overlap - 1.0),
        runtime_ms: start.elapsed().as_secs_f64() * 1e3,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_instance() {
        let r = random_subspace_experiment(6, 0.25, 3).unwrap();
        assert_eq!(r.k, 15);
        assert!((r.witness_bound - 21.0 / 15f64.sqrt()).abs() < 1e-12);
        assert!(r.overlap_estimate > r.k as f64 / 36.0 && r.overlap_estimate <= 1.0 + 1e-12);
        let again = random_subspace_experiment(6, 0.25, 3).unwrap();
        assert_eq!(r.overlap_estimate, again.overlap_estimate);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(random_subspace_experiment(1, 0.2, 0).is_err());
        assert!(random_subspace_experiment(4, 0.7, 0).is_err());
    }
}
