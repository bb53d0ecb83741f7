//! Seeded random sampling. Every stochastic routine in the crate draws from here.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::linalg::{CMat, Mat, Vector};

pub type SeededRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Independent child seed for the `index`-th sub-task of a seeded run (splitmix64).
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed
        .wrapping_add(0x9E37_79B9_7F4A_7C15)
        .wrapping_add(index.wrapping_mul(0xBF58_476D_1CE4_E5B9));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn gaussian(rng: &mut impl Rng) -> f64 {
    rng.sample(StandardNormal)
}

pub fn gaussian_vector(rng: &mut impl Rng, n: usize) -> Vector {
    Vector::from_fn(n, |_, _| gaussian(rng))
}

pub fn gaussian_matrix(rng: &mut impl Rng, rows: usize, cols: usize) -> Mat {
    Mat::from_fn(rows, cols, |_, _| gaussian(rng))
}

pub fn sign_matrix(rng: &mut impl Rng, rows: usize, cols: usize) -> Mat {
    Mat::from_fn(
        rows,
        cols,
        |_, _| if rng.gen::<bool>() { 1.0 } else { -1.0 },
    )
}

pub fn complex_gaussian_matrix(rng: &mut impl Rng, rows: usize, cols: usize) -> CMat {
    DMatrix::from_fn(rows, cols, |_, _| {
        Complex64::new(gaussian(rng), gaussian(rng))
    })
}

/// Random Hermitian matrix `(G + G†)/2` with complex Gaussian `G`.
pub fn random_hermitian(rng: &mut impl Rng, n: usize) -> CMat {
    let g = complex_gaussian_matrix(rng, n, n);
    (&g + g.adjoint()) * Complex64::new(0.5, 0.0)
}

/// Haar-random isometry `C^k → C^n` (columns orthonormal), via QR with phase fix.
pub fn haar_isometry(rng: &mut impl Rng, n: usize, k: usize) -> CMat {
    let g = complex_gaussian_matrix(rng, n, k);
    let qr = g.qr();
    let (mut q, r) = (qr.q(), qr.r());
    for j in 0..k {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 {
            d / d.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        let mut col = q.column_mut(j);
        col *= phase;
    }
    q
}

/// Uniformly random unit vector in `C^n`.
pub fn random_unit_complex(rng: &mut impl Rng, n: usize) -> nalgebra::DVector<Complex64> {
    let v = nalgebra::DVector::from_fn(n, |_, _| Complex64::new(gaussian(rng), gaussian(rng)));
    let norm = v.norm();
    v / Complex64::new(norm, 0.0)
}
