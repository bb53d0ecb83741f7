use num_complex::Complex64;
use serde::Serialize;

use super::{c, max_entangled};
use crate::error::{Error, Result};
use crate::linalg::{min_eigenvalue, partial_transpose, CMat};
use crate::sampling::{random_hermitian, rng};

/// Heisenberg–Weyl unitary `X(p) Z(q)` on `C^n`.
pub fn heisenberg_weyl(n: usize, p: usize, q: usize) -> Result<CMat> {
    if p >= n {
        return Err(Error::IndexOutOfRange { index: p, bound: n });
    }
    if q >= n {
        return Err(Error::IndexOutOfRange { index: q, bound: n });
    }
    let mut u = CMat::zeros(n, n);
    for i in 0..n {
        let phase = std::f64::consts::TAU * (i * q) as f64 / n as f64;
        u[((i + p) % n, i)] = Complex64::from_polar(1.0, phase);
    }
    Ok(u)
}

/// Reorders tensor factors: factor `k` of the output is factor `perm[k]` of the input.
pub fn permute_subsystems(x: &CMat, dims: &[usize], perm: &[usize]) -> Result<CMat> {
    let total: usize = dims.iter().product();
    if x.nrows() != total || x.ncols() != total {
        return Err(Error::DimensionMismatch {
            expected: total,
            found: x.nrows(),
        });
    }
    let mut seen = vec![false; dims.len()];
    if perm.len() != dims.len()
        || perm
            .iter()
            .any(|&p| p >= dims.len() || std::mem::replace(&mut seen[p], true))
    {
        return Err(Error::InvalidArgument(
            "not a permutation of the subsystems".into(),
        ));
    }
    let new_dims: Vec<usize> = perm.iter().map(|&p| dims[p]).collect();
    let map: Vec<usize> = (0..total)
        .map(|idx| {
            let mut digits = vec![0; dims.len()];
            let mut rest = idx;
            for k in (0..dims.len()).rev() {
                digits[k] = rest % dims[k];
                rest /= dims[k];
            }
            perm.iter()
                .zip(&new_dims)
                .fold(0, |acc, (&p, &d)| acc * d + digits[p])
        })
        .collect();
    let mut out = CMat::zeros(total, total);
    for i in 0..total {
        for j in 0..total {
            out[(map[i], map[j])] = x[(i, j)];
        }
    }
    Ok(out)
}

/// Teleportation channel on an operator over `A ⊗ A′ ⊗ B ⊗ B′` (each `C^n`).
///
/// Bell measurement on `AA′` with outcome `(p, q)`, then correction `U(p, q)` on `B′`.
/// The output lives on `B′ ⊗ B`.
pub fn teleport(n: usize, x: &CMat) -> Result<CMat> {
    let n2 = n * n;
    if x.nrows() != n2 * n2 || x.ncols() != n2 * n2 {
        return Err(Error::DimensionMismatch {
            expected: n2 * n2,
            found: x.nrows(),
        });
    }
    let phi = max_entangled(n);
    let id = CMat::identity(n, n);
    let mut out = CMat::zeros(n2, n2);
    for p in 0..n {
        for q in 0..n {
            let u = heisenberg_weyl(n, p, q)?;
            let ua = u.kronecker(&id);
            let m = &ua * &phi * ua.adjoint();
            // Tr_{AA′}[X (M ⊗ 𝟙)] = Σ_{r,s} M[s, r] X_{rs}.
            let mut y = CMat::zeros(n2, n2);
            for r in 0..n2 {
                for s in 0..n2 {
                    let w = m[(s, r)];
                    if w.norm() == 0.0 {
                        continue;
                    }
                    y += x.view((r * n2, s * n2), (n2, n2)) * w;
                }
            }
            let y = permute_subsystems(&y, &[n, n], &[1, 0])?;
            let corr = u.kronecker(&id);
            out += &corr * y * corr.adjoint();
        }
    }
    Ok(out)
}

/// Isotropic state `p Φ + (1 − p)(𝟙 − Φ)/(n² − 1)`.
pub fn isotropic_state(n: usize, p: f64) -> CMat {
    let phi = max_entangled(n);
    let d = n * n;
    &phi * c(p) + (CMat::identity(d, d) - &phi) * c((1.0 - p) / (d as f64 - 1.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IsotropicReport {
    pub n: usize,
    /// `‖τ(X ⊗ Φ) − X‖` for a random Hermitian `X`.
    pub teleport_error: f64,
    /// Least eigenvalue of the partial transpose of the isotropic state at `p = 1/n`.
    pub isotropic_pt_min: f64,
    /// Least eigenvalue of the partial transpose of `Φ` itself.
    pub phi_pt_min: f64,
}

pub fn isotropic_robustness_check(n: usize, seed: u64) -> Result<IsotropicReport> {
    if n < 2 {
        return Err(Error::InvalidDimension {
            dim: n,
            reason: "need at least two levels",
        });
    }
    let mut r = rng(seed);
    let x = random_hermitian(&mut r, n * n);
    // X_AB ⊗ Φ_{A′B′} in factor order A, B, A′, B′, reordered to A, A′, B, B′.
    let joint = permute_subsystems(&x.kronecker(&max_entangled(n)), &[n; 4], &[0, 2, 1, 3])?;
    let teleported = teleport(n, &joint)?;
    Ok(IsotropicReport {
        n,
        teleport_error: (teleported - x).norm(),
        isotropic_pt_min: min_eigenvalue(&partial_transpose(
            &isotropic_state(n, 1.0 / n as f64),
            n,
            n,
        )),
        phi_pt_min: min_eigenvalue(&partial_transpose(&max_entangled(n), n, n)),
    })
}
