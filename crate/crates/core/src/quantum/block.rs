//! Alternating optimization over product vectors `|α⟩ ⊗ |β⟩`.

use nalgebra::DVector;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{hermitian_top_eigenvector, CMat};
use crate::sampling::{derive_seed, random_unit_complex, rng};

const MAX_SWEEPS: usize = 500;

type CVec = DVector<Complex64>;

#[derive(Debug, Clone, PartialEq)]
pub struct BlockPositivity {
    /// Least `⟨αβ|X|αβ⟩` found; a negative value certifies that `X` is not block positive.
    pub min_value: f64,
    pub alpha: CVec,
    pub beta: CVec,
}

/// Heuristic minimization of `⟨αβ|X|αβ⟩` over unit product vectors.
pub fn block_positivity(
    x: &CMat,
    na: usize,
    nb: usize,
    restarts: usize,
    seed: u64,
) -> Result<BlockPositivity> {
    if x.nrows() != na * nb || x.ncols() != na * nb {
        return Err(Error::DimensionMismatch {
            expected: na * nb,
            found: x.nrows(),
        });
    }
    let neg = -x;
    let runs = parallel_restarts(restarts.max(1), |i| {
        let mut r = rng(derive_seed(seed, i as u64));
        let mut beta = random_unit_complex(&mut r, nb);
        let mut alpha = random_unit_complex(&mut r, na);
        let mut last = f64::NEG_INFINITY;
        for _ in 0..MAX_SWEEPS {
            alpha = hermitian_top_eigenvector(&contract_second(&neg, na, nb, &beta)).1;
            let (val, b) = hermitian_top_eigenvector(&contract_first(&neg, na, nb, &alpha));
            beta = b;
            if (val - last).abs() <= 1e-13 * (1.0 + val.abs()) {
                break;
            }
            last = val;
        }
        (last, alpha, beta)
    });
    let (val, alpha, beta) = runs
        .into_iter()
        .max_by(|a, b| a.0.total_cmp(&b.0))
        .expect("at least one restart");
    Ok(BlockPositivity {
        min_value: -val,
        alpha,
        beta,
    })
}

/// Estimate of `max ⟨αβ|QQ†|αβ⟩` for an isometry `Q : C^k → C^{na} ⊗ C^{nb}`.
pub fn product_overlap(
    q: &CMat,
    na: usize,
    nb: usize,
    restarts: usize,
    tol: f64,
    seed: u64,
) -> Result<f64> {
    if q.nrows() != na * nb {
        return Err(Error::DimensionMismatch {
            expected: na * nb,
            found: q.nrows(),
        });
    }
    let k = q.ncols();
    let runs = parallel_restarts(restarts.max(1), |i| {
        let mut r = rng(derive_seed(seed, i as u64));
        let mut beta = random_unit_complex(&mut r, nb);
        let mut last = 0.0;
        for _ in 0..MAX_SWEEPS {
            // C[i, l] = Σ_j Q[(i, j), l] β̄_j, then α = top eigenvector of C C†.
            let cm = CMat::from_fn(na, k, |a, l| {
                (0..nb).map(|j| q[(a * nb + j, l)] * beta[j].conj()).sum()
            });
            let alpha = hermitian_top_eigenvector(&(&cm * cm.adjoint())).1;
            let dm = CMat::from_fn(nb, k, |b, l| {
                (0..na).map(|a| q[(a * nb + b, l)] * alpha[a].conj()).sum()
            });
            let (val, b) = hermitian_top_eigenvector(&(&dm * dm.adjoint()));
            beta = b;
            if (val - last).abs() <= tol {
                last = val;
                break;
            }
            last = val;
        }
        last
    });
    Ok(runs.into_iter().fold(0.0, f64::max))
}

/// Contracts the second factor with `β`: `(𝟙 ⊗ β)† X (𝟙 ⊗ β)`.
fn contract_second(x: &CMat, na: usize, nb: usize, beta: &CVec) -> CMat {
    CMat::from_fn(na, na, |i, j| {
        let mut s = Complex64::new(0.0, 0.0);
        for k in 0..nb {
            for l in 0..nb {
                s += beta[k].conj() * x[(i * nb + k, j * nb + l)] * beta[l];
            }
        }
        s
    })
}

fn contract_first(x: &CMat, na: usize, nb: usize, alpha: &CVec) -> CMat {
    CMat::from_fn(nb, nb, |k, l| {
        let mut s = Complex64::new(0.0, 0.0);
        for i in 0..na {
            for j in 0..na {
                s += alpha[i].conj() * x[(i * nb + k, j * nb + l)] * alpha[j];
            }
        }
        s
    })
}

/// Runs `f(0..count)` across scoped threads; results come back in index order.
fn parallel_restarts<T: Send>(count: usize, f: impl Fn(usize) -> T + Sync) -> Vec<T> {
    let threads = std::thread::available_parallelism()
        .map_or(1, |n| n.get())
        .min(count);
    if threads <= 1 {
        return (0..count).map(&f).collect();
    }
    let f = &f;
    let mut chunks: Vec<Vec<(usize, T)>> = std::thread::scope(|s| {
        let handles: Vec<_> = (0..threads)
            .map(|t| {
                s.spawn(move || {
                    (t..count)
                        .step_by(threads)
                        .map(|i| (i, f(i)))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("restart thread panicked"))
            .collect()
    });
    let mut all: Vec<(usize, T)> = chunks.drain(..).flatten().collect();
    all.sort_by_key(|(i, _)| *i);
    all.into_iter().map(|(_, v)| v).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::{flip_operator, max_entangled};

    #[test]
    fn flip_is_not_block_positive_but_identity_plus_flip_is() {
        let f = flip_operator(2);
        let bp = block_positivity(&f, 2, 2, 8, 1).unwrap();
        assert!(
            (bp.min_value + 0.0).abs() < 1e-8,
            "min ⟨αβ|F|αβ⟩ = min |⟨α|β⟩|² = 0"
        );
        let x = max_entangled(3) * Complex64::new(-1.0, 0.0)
            + CMat::identity(9, 9) * Complex64::new(0.2, 0.0);
        let bp = block_positivity(&x, 3, 3, 8, 2).unwrap();
        assert!((bp.min_value - (0.2 - 1.0 / 3.0)).abs() < 1e-8);
    }

    #[test]
    fn overlap_of_product_and_entangled_subspaces() {
        // Span of |00⟩: overlap 1. Span of |Φ⟩: overlap 1/n.
        let mut q = CMat::zeros(9, 1);
        q[(0, 0)] = Complex64::new(1.0, 0.0);
        assert!((product_overlap(&q, 3, 3, 4, 1e-12, 0).unwrap() - 1.0).abs() < 1e-10);
        let v = 1.0 / 3f64.sqrt();
        for i in 0..3 {
            q[(i * 3 + i, 0)] = Complex64::new(v, 0.0);
        }
        assert!((product_overlap(&q, 3, 3, 4, 1e-12, 0).unwrap() - 1.0 / 3.0).abs() < 1e-10);
    }

    #[test]
    fn restarts_are_deterministic() {
        let f = flip_operator(3);
        let a = block_positivity(&f, 3, 3, 5, 9).unwrap();
        let b = block_positivity(&f, 3, 3, 5, 9).unwrap();
        assert_eq!(a.min_value, b.min_value);
    }
}
