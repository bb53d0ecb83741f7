//! Quantum-specific machinery: Werner-class norms, twirling, teleportation,
//! isotropic states, balanced ratios and the random-subspace experiment.

mod block;
mod experiment;
mod teleport;
mod werner;

pub use block::{block_positivity, product_overlap, BlockPositivity};
pub use experiment::{
    random_subspace_experiment, subspace_dimension, ExperimentReport, OVERLAP_RESTARTS, OVERLAP_TOL,
};
pub use teleport::{
    heisenberg_weyl, isotropic_robustness_check, isotropic_state, permute_subsystems, teleport,
    IsotropicReport,
};
pub use werner::{
    balanced_ratio_werner, bias_ratio_bound, twirl, werner_class_norms, werner_class_ratios,
    werner_ratio_grid, werner_vertex_oracle, BalancedReport, WernerClassOperator, WernerNorms,
    WernerRatios, GRID_POINTS,
};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{is_hermitian, CMat};

const HERMITIAN_TOL: f64 = 1e-12;

/// Hermitian operator on `C^{nA} ⊗ C^{nB}`.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianOperator {
    matrix: CMat,
    dims: (usize, usize),
}

impl HermitianOperator {
    pub fn new(matrix: CMat, dims: (usize, usize)) -> Result<Self> {
        let total = dims.0 * dims.1;
        if matrix.nrows() != total || matrix.ncols() != total {
            return Err(Error::DimensionMismatch {
                expected: total,
                found: matrix.nrows(),
            });
        }
        if !is_hermitian(&matrix, HERMITIAN_TOL) {
            return Err(Error::InvalidArgument("operator is not Hermitian".into()));
        }
        Ok(HermitianOperator { matrix, dims })
    }

    pub fn matrix(&self) -> &CMat {
        &self.matrix
    }

    pub fn dims(&self) -> (usize, usize) {
        self.dims
    }

    pub fn trace(&self) -> f64 {
        self.matrix.trace().re
    }
}

pub(crate) fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Flip `F|αβ⟩ = |βα⟩` on `C^n ⊗ C^n`.
pub fn flip_operator(n: usize) -> CMat {
    let mut f = CMat::zeros(n * n, n * n);
    for i in 0..n {
        for j in 0..n {
            f[(i * n + j, j * n + i)] = c(1.0);
        }
    }
    f
}

/// Normalized projector onto the symmetric subspace, `(𝟙 + F)/(n(n+1))`.
pub fn sym_proj(n: usize) -> CMat {
    (CMat::identity(n * n, n * n) + flip_operator(n)) * c(1.0 / (n * (n + 1)) as f64)
}

/// Normalized projector onto the antisymmetric subspace, `(𝟙 − F)/(n(n−1))`.
pub fn antisym_proj(n: usize) -> CMat {
    (CMat::identity(n * n, n * n) - flip_operator(n)) * c(1.0 / (n * (n - 1)) as f64)
}

/// Maximally entangled projector `|Φ⟩⟨Φ|` with `|Φ⟩ = Σᵢ|ii⟩/√n`.
pub fn max_entangled(n: usize) -> CMat {
    let mut phi = CMat::zeros(n * n, n * n);
    let w = 1.0 / n as f64;
    for i in 0..n {
        for j in 0..n {
            phi[(i * n + i, j * n + j)] = c(w);
        }
    }
    phi
}
