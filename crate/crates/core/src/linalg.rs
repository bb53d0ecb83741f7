//! Small dense linear-algebra helpers shared across modules.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

pub type Mat = DMatrix<f64>;
pub type CMat = DMatrix<Complex64>;
pub type Vector = DVector<f64>;

pub fn singular_values(m: &Mat) -> Vec<f64> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return Vec::new();
    }
    let mut s: Vec<f64> = m
        .clone()
        .svd(false, false)
        .singular_values
        .iter()
        .copied()
        .collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

pub fn trace_norm(m: &Mat) -> f64 {
    singular_values(m).iter().sum()
}

pub fn operator_norm(m: &Mat) -> f64 {
    singular_values(m).first().copied().unwrap_or(0.0)
}

/// Top singular triple `(σ, u, v)` with `M v = σ u`.
pub fn top_singular_pair(m: &Mat) -> (f64, Vector, Vector) {
    let svd = m.clone().svd(true, true);
    let (idx, &s) = svd
        .singular_values
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .expect("nonempty matrix");
    let u = svd.u.as_ref().unwrap().column(idx).into_owned();
    let v = svd.v_t.as_ref().unwrap().row(idx).transpose().into_owned();
    (s, u, v)
}

/// Eigenvalues of a Hermitian matrix in ascending order.
pub fn hermitian_eigenvalues(m: &CMat) -> Vec<f64> {
    let mut ev: Vec<f64> = m
        .clone()
        .symmetric_eigen()
        .eigenvalues
        .iter()
        .copied()
        .collect();
    ev.sort_by(|a, b| a.total_cmp(b));
    ev
}

/// Eigenvector for the largest eigenvalue of a Hermitian matrix.
pub fn hermitian_top_eigenvector(m: &CMat) -> (f64, DVector<Complex64>) {
    let eig = m.clone().symmetric_eigen();
    let (idx, &val) = eig
        .eigenvalues
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .expect("nonempty matrix");
    (val, eig.eigenvectors.column(idx).into_owned())
}

pub fn min_eigenvalue(m: &CMat) -> f64 {
    hermitian_eigenvalues(m).first().copied().unwrap_or(0.0)
}

pub fn real_to_complex(m: &Mat) -> CMat {
    m.map(|x| Complex64::new(x, 0.0))
}

/// Orthonormal Hermitian basis of n×n matrices under `⟨A, B⟩ = Tr[A B]`.
///
/// Element 0 is `𝟙/√n`; the rest are traceless (generalized Gell-Mann matrices).
pub fn hermitian_basis(n: usize) -> Vec<CMat> {
    let mut basis = Vec::with_capacity(n * n);
    let s = 1.0 / (n as f64).sqrt();
    basis.push(CMat::identity(n, n) * Complex64::new(s, 0.0));
    let r = std::f64::consts::FRAC_1_SQRT_2;
    for j in 0..n {
        for k in (j + 1)..n {
            let mut sym = CMat::zeros(n, n);
            sym[(j, k)] = Complex64::new(r, 0.0);
            sym[(k, j)] = Complex64::new(r, 0.0);
            basis.push(sym);
            let mut asym = CMat::zeros(n, n);
            asym[(j, k)] = Complex64::new(0.0, -r);
            asym[(k, j)] = Complex64::new(0.0, r);
            basis.push(asym);
        }
    }
    for k in 1..n {
        let norm = 1.0 / ((k * (k + 1)) as f64).sqrt();
        let mut diag = CMat::zeros(n, n);
        for l in 0..k {
            diag[(l, l)] = Complex64::new(norm, 0.0);
        }
        diag[(k, k)] = Complex64::new(-(k as f64) * norm, 0.0);
        basis.push(diag);
    }
    basis
}

/// Real coordinates `x_a = Tr[σ_a X]` of a Hermitian matrix.
pub fn hermitian_coords(x: &CMat, basis: &[CMat]) -> Vector {
    Vector::from_iterator(basis.len(), basis.iter().map(|s| (s * x).trace().re))
}

pub fn hermitian_from_coords(coords: &[f64], basis: &[CMat]) -> CMat {
    let n = basis[0].nrows();
    let mut out = CMat::zeros(n, n);
    for (c, s) in coords.iter().zip(basis) {
        if *c != 0.0 {
            out += s * Complex64::new(*c, 0.0);
        }
    }
    out
}

/// Operator `Σ_ij X_ij σ_i ⊗ σ_j` for a real coefficient matrix over two local bases.
pub fn bipartite_operator(x: &Mat, basis_a: &[CMat], basis_b: &[CMat]) -> CMat {
    let na = basis_a[0].nrows();
    let nb = basis_b[0].nrows();
    let mut out = CMat::zeros(na * nb, na * nb);
    for i in 0..x.nrows() {
        for j in 0..x.ncols() {
            let c = x[(i, j)];
            if c != 0.0 {
                out += basis_a[i].kronecker(&basis_b[j]) * Complex64::new(c, 0.0);
            }
        }
    }
    out
}

/// Real coefficient matrix `X_ij = Tr[(σ_i ⊗ σ_j) X]`.
pub fn bipartite_coords(x: &CMat, basis_a: &[CMat], basis_b: &[CMat]) -> Mat {
    let mut out = Mat::zeros(basis_a.len(), basis_b.len());
    for (i, sa) in basis_a.iter().enumerate() {
        for (j, sb) in basis_b.iter().enumerate() {
            out[(i, j)] = (sa.kronecker(sb) * x).trace().re;
        }
    }
    out
}

/// Partial transpose on the second factor of `C^{na} ⊗ C^{nb}`.
pub fn partial_transpose(x: &CMat, na: usize, nb: usize) -> CMat {
    let mut out = CMat::zeros(na * nb, na * nb);
    for i in 0..na {
        for k in 0..nb {
            for j in 0..na {
                for l in 0..nb {
                    out[(i * nb + l, j * nb + k)] = x[(i * nb + k, j * nb + l)];
                }
            }
        }
    }
    out
}

pub fn is_hermitian(x: &CMat, tol: f64) -> bool {
    x.is_square()
        && (0..x.nrows())
            .all(|i| (0..x.ncols()).all(|j| (x[(i, j)] - x[(j, i)].conj()).norm() <= tol))
}
