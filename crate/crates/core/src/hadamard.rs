//! Sign matrices for the cubic model: Sylvester–Hadamard witnesses and the
//! Khintchine-type upper bound on `|M|₁ / ‖M‖_{∞→1}`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::norms::{entrywise_one, inf_to_one};
use crate::sampling::{derive_seed, gaussian_matrix, rng, sign_matrix};

/// Largest Hadamard order whose `∞→1` norm is computed by enumeration.
pub const BRUTE_FORCE_ORDER: usize = 16;
/// Largest row count accepted by [`khintchine_upper_check`].
pub const KHINTCHINE_MAX_ROWS: usize = 10;

/// A `±1` matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct SignMatrix {
    entries: Mat,
}

impl SignMatrix {
    pub fn new(entries: Mat) -> Result<Self> {
        if let Some(v) = entries.iter().find(|v| v.abs() != 1.0) {
            return Err(Error::InvalidArgument(format!(
                "sign matrix entry {v} is not ±1"
            )));
        }
        Ok(Self { entries })
    }

    pub fn rows(&self) -> usize {
        self.entries.nrows()
    }

    pub fn cols(&self) -> usize {
        self.entries.ncols()
    }

    pub fn matrix(&self) -> &Mat {
        &self.entries
    }

    /// `H Hᵀ = m 𝟙ₙ`, checked exactly (all products are small integers).
    pub fn is_partial_hadamard(&self) -> bool {
        let g = &self.entries * self.entries.transpose();
        let m = self.cols() as f64;
        g.iter()
            .enumerate()
            .all(|(k, v)| *v == if k % (self.rows() + 1) == 0 { m } else { 0.0 })
    }

    /// The first `n` rows.
    pub fn top_rows(&self, n: usize) -> Result<SignMatrix> {
        if n > self.rows() {
            return Err(Error::IndexOutOfRange {
                index: n,
                bound: self.rows() + 1,
            });
        }
        Ok(Self {
            entries: self.entries.rows(0, n).into_owned(),
        })
    }
}

/// Sylvester matrix `[[1, 1], [−1, 1]]^{⊗k}` of order `2^k`.
pub fn hadamard(k: u32) -> SignMatrix {
    let base = Mat::from_row_slice(2, 2, &[1.0, 1.0, -1.0, 1.0]);
    let mut h = Mat::from_element(1, 1, 1.0);
    for _ in 0..k {
        h = h.kronecker(&base);
    }
    SignMatrix { entries: h }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WitnessRatio {
    pub n: usize,
    pub m: usize,
    /// Largest power of two not above `n`.
    pub n_prime: usize,
    /// `|H|₁ / ‖H‖_{∞→1}` for the `n′ × n′` Sylvester matrix.
    pub ratio_lower: f64,
    /// `√(n/2)`, the dimension-only guarantee.
    pub guaranteed: f64,
    /// `√n` from an `n × m′` partial Hadamard block, when a power of two `m′ ∈ [n, m]` exists.
    pub improved: Option<f64>,
    /// True when the `∞→1` norms were enumerated rather than taken from the closed form.
    pub brute_force: bool,
}

/// Hadamard lower bound on the restricted ratio of `n × m` matrices.
pub fn hadamard_witness_ratio(n: usize, m: usize) -> Result<WitnessRatio> {
    if n == 0 {
        return Err(Error::InvalidDimension {
            dim: n,
            reason: "need at least one row",
        });
    }
    if n > m {
        return Err(Error::InvalidArgument(format!(
            "witness needs n ≤ m, got {n} × {m}"
        )));
    }
    let k = n.ilog2();
    let n_prime = 1usize << k;
    let brute_force = n_prime <= BRUTE_FORCE_ORDER;
    let ratio_lower = if brute_force {
        let h = hadamard(k);
        entrywise_one(h.matrix()) / inf_to_one(h.matrix())?
    } else {
        // ‖H‖_{∞→1} ≤ n′^{3/2} for any n′ × n′ Hadamard matrix.
        (n_prime as f64).sqrt()
    };
    let guaranteed = (n as f64 / 2.0).sqrt();
    if ratio_lower < guaranteed - 1e-12 {
        return Err(Error::InvalidArgument(format!(
            "Hadamard witness {ratio_lower} fell below √(n/2) = {guaranteed}"
        )));
    }
    let improved = match n.checked_next_power_of_two() {
        Some(mp) if mp <= m => {
            let block = hadamard(mp.ilog2()).top_rows(n)?;
            debug_assert!(block.is_partial_hadamard());
            Some(if n <= BRUTE_FORCE_ORDER {
                entrywise_one(block.matrix()) / inf_to_one(block.matrix())?
            } else {
                (n as f64).sqrt()
            })
        }
        _ => None,
    };
    Ok(WitnessRatio {
        n,
        m,
        n_prime,
        ratio_lower,
        guaranteed,
        improved,
        brute_force,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KhintchineReport {
    pub n: usize,
    pub m: usize,
    pub samples: usize,
    pub max_gaussian: f64,
    pub max_sign: f64,
    /// `√(2n)`.
    pub bound: f64,
    pub violations: usize,
}

impl KhintchineReport {
    pub fn max_ratio(&self) -> f64 {
        self.max_gaussian.max(self.max_sign)
    }
}

/// Samples Gaussian and `±1` matrices and records the largest `|M|₁ / ‖M‖_{∞→1}`.
///
/// Each ensemble gets `samples` draws.
pub fn khintchine_upper_check(
    n: usize,
    m: usize,
    samples: usize,
    seed: u64,
) -> Result<KhintchineReport> {
    if n == 0 || n > m {
        return Err(Error::InvalidArgument(format!(
            "need 1 ≤ n ≤ m, got {n} × {m}"
        )));
    }
    if n > KHINTCHINE_MAX_ROWS {
        return Err(Error::EnumerationLimit {
            what: "Khintchine check sign vectors",
            bits: n,
            limit: KHINTCHINE_MAX_ROWS,
        });
    }
    let bound = (2.0 * n as f64).sqrt();
    let mut gauss = rng(derive_seed(seed, 0));
    let mut signs = rng(derive_seed(seed, 1));
    let mut report = KhintchineReport {
        n,
        m,
        samples,
        max_gaussian: 0.0,
        max_sign: 0.0,
        bound,
        violations: 0,
    };
    for _ in 0..samples {
        let g = ratio(&gaussian_matrix(&mut gauss, n, m))?;
        let s = ratio(&sign_matrix(&mut signs, n, m))?;
        report.max_gaussian = report.max_gaussian.max(g);
        report.max_sign = report.max_sign.max(s);
        report.violations += [g, s].iter().filter(|r| **r > bound + 1e-9).count();
    }
    Ok(report)
}

fn ratio(m: &Mat) -> Result<f64> {
    Ok(entrywise_one(m) / inf_to_one(m)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sylvester_small_orders() {
        assert_eq!(hadamard(0).matrix(), &Mat::from_element(1, 1, 1.0));
        assert_eq!(
            hadamard(1).matrix(),
            &Mat::from_row_slice(2, 2, &[1.0, 1.0, -1.0, 1.0])
        );
        for k in 0..6 {
            assert!(hadamard(k).is_partial_hadamard());
        }
        assert!(!SignMatrix::new(Mat::from_element(2, 2, 1.0))
            .unwrap()
            .is_partial_hadamard());
        assert!(SignMatrix::new(Mat::from_element(1, 1, 0.5)).is_err());
    }

    #[test]
    fn witness_values() {
        let w = hadamard_witness_ratio(4, 4).unwrap();
        assert_eq!(w.n_prime, 4);
        assert!((w.ratio_lower - 2.0).abs() < 1e-12);
        let w = hadamard_witness_ratio(2, 2).unwrap();
        assert!((w.ratio_lower - 2.0).abs() < 1e-12);
        let w = hadamard_witness_ratio(8, 8).unwrap();
        assert!((w.ratio_lower - 3.2).abs() < 1e-12);
        let w = hadamard_witness_ratio(3, 8).unwrap();
        assert_eq!(w.n_prime, 2);
        assert!(w.ratio_lower >= 1.5f64.sqrt());
        // A 3 × 4 block of H₄ is partial Hadamard, so its ratio is at least √3.
        assert!(w.improved.unwrap() >= 3f64.sqrt() - 1e-12);
        assert!(hadamard_witness_ratio(5, 4).is_err());
    }

    #[test]
    fn sylvester_inf_to_one_against_n_to_three_halves() {
        // Equality at even k; odd orders fall strictly below (‖H₂‖ = 2, ‖H₈‖ = 20).
        for (k, expected) in [(0, 1.0), (1, 2.0), (2, 8.0), (3, 20.0), (4, 64.0)] {
            let h = hadamard(k);
            let n = h.rows() as f64;
            let v = inf_to_one(h.matrix()).unwrap();
            assert_eq!(v, expected);
            assert!(v <= n * n.sqrt() + 1e-9);
        }
    }

    #[test]
    fn khintchine_fixtures() {
        assert!((ratio(&Mat::from_element(3, 5, 1.0)).unwrap() - 1.0).abs() < 1e-12);
        let r = khintchine_upper_check(4, 6, 50, 7).unwrap();
        assert_eq!(r.violations, 0);
        assert!(r.max_ratio() <= r.bound);
        assert!(khintchine_upper_check(11, 11, 1, 0).is_err());
    }
}
