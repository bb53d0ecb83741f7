//! Bipartite composites: separability and witness membership on tractable
//! classes, min-tensor base norms, SEP norms, and the restricted ratio of
//! centrally symmetric pairs.
//!
//! A bipartite tensor is a real `dA × dB` coefficient matrix over the local
//! coordinates; for quantum locals the coordinates are those of
//! [`hermitian_basis`] on each side.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{check_dim, Error, Result};
use crate::gpt::{cone_contains, ConeDescriptor, GptModel};
use crate::hadamard::hadamard_witness_ratio;
use crate::linalg::{
    bipartite_operator, hermitian_basis, hermitian_coords, min_eigenvalue, partial_transpose, CMat,
    Mat, Vector,
};
use crate::lp::{LinearProgram, Relation, Sense};
use crate::norms::{
    base_local_norm, base_norm, bilinear_max, injective_norm, projective_norm,
    projective_with_certificate, LocalNorm,
};
use crate::quantum::{block_positivity, twirl, HermitianOperator, WernerClassOperator};

/// Restarts of the product-vector search behind quantum witness checks.
pub const BLOCK_RESTARTS: usize = 32;
pub const DEFAULT_BLOCK_SEED: u64 = 0xb10c;
/// Largest number of extreme-state pairs used by the polyhedral separability LP.
pub const POLYHEDRAL_PAIR_LIMIT: usize = 4096;
/// Relative tolerance for recognizing structure (Werner class, vanishing cross terms).
const STRUCTURE_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CompositionRule {
    MinTensor,
    MaxTensor,
    /// Positive semidefinite operators on `C^{nA} ⊗ C^{nB}`.
    NativeQuantum,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CompositeModel {
    a: GptModel,
    b: GptModel,
    rule: CompositionRule,
}

impl CompositeModel {
    pub fn new(a: GptModel, b: GptModel, rule: CompositionRule) -> Result<Self> {
        if rule == CompositionRule::NativeQuantum
            && (a.quantum_levels().is_none() || b.quantum_levels().is_none())
        {
            return Err(Error::InvalidModel(
                "the native quantum composite needs two quantum locals".into(),
            ));
        }
        Ok(Self { a, b, rule })
    }

    pub fn a(&self) -> &GptModel {
        &self.a
    }

    pub fn b(&self) -> &GptModel {
        &self.b
    }

    pub fn rule(&self) -> CompositionRule {
        self.rule
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.a.dim(), self.b.dim())
    }

    /// `u_A ⊗ u_B`.
    pub fn unit(&self) -> Mat {
        self.a.unit() * self.b.unit().transpose()
    }

    /// The operator on `C^{nA} ⊗ C^{nB}` for quantum locals.
    pub fn operator(&self, x: &Mat) -> Option<CMat> {
        let (na, nb) = (self.a.quantum_levels()?, self.b.quantum_levels()?);
        Some(bipartite_operator(
            x,
            &hermitian_basis(na),
            &hermitian_basis(nb),
        ))
    }

    /// Membership in this composite's own state cone.
    pub fn contains(&self, x: &Mat, tol: f64) -> Result<bool> {
        match self.rule {
            CompositionRule::MinTensor => sep_cone_contains(self, x, tol),
            CompositionRule::MaxTensor => max_cone_contains(self, x, tol).map(|c| c.contains),
            CompositionRule::NativeQuantum => {
                self.check(x)?;
                Ok(min_eigenvalue(&self.operator(x).expect("quantum locals")) >= -tol)
            }
        }
    }

    /// Base norm of this composite.
    pub fn base_norm(&self, x: &Mat) -> Result<f64> {
        match self.rule {
            CompositionRule::MinTensor => min_base_norm(self, x),
            CompositionRule::MaxTensor => max_base_norm(self, x),
            CompositionRule::NativeQuantum => {
                self.check(x)?;
                let op = self.operator(x).expect("quantum locals");
                let unit = self.operator(&self.unit()).expect("quantum locals");
                let scale = unit[(0, 0)].re;
                if (&unit - CMat::identity(unit.nrows(), unit.ncols()) * Complex64::new(scale, 0.0))
                    .camax()
                    > 1e-12
                {
                    return Err(Error::InvalidModel(
                        "base norm needs a unit proportional to the identity".into(),
                    ));
                }
                Ok(scale
                    * crate::linalg::hermitian_eigenvalues(&op)
                        .iter()
                        .map(|v| v.abs())
                        .sum::<f64>())
            }
        }
    }

    fn check(&self, x: &Mat) -> Result<()> {
        check_dim(self.a.dim(), x.nrows())?;
        check_dim(self.b.dim(), x.ncols())
    }
}

/// Coefficient matrix of a bipartite operator over the local Hermitian bases.
pub fn quantum_tensor(op: &CMat, na: usize, nb: usize) -> Mat {
    crate::linalg::bipartite_coords(op, &hermitian_basis(na), &hermitian_basis(nb))
}

/// A model with cone `{x : x₀ ≥ |x̄|}` and unit `(1, 0, …, 0)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CentrallySymmetricModel {
    model: GptModel,
}

impl CentrallySymmetricModel {
    pub fn new(norm: LocalNorm) -> Result<Self> {
        let d = norm.dim() + 1;
        let mut unit = Vector::zeros(d);
        unit[0] = 1.0;
        Ok(Self {
            model: GptModel::new(ConeDescriptor::IceCream(norm), unit)?,
        })
    }

    pub fn from_model(model: &GptModel) -> Option<Self> {
        model.central_norm()?;
        let u = model.unit();
        (u[0] == 1.0 && u.iter().skip(1).all(|v| *v == 0.0)).then(|| Self {
            model: model.clone(),
        })
    }

    pub fn dim(&self) -> usize {
        self.model.dim()
    }

    pub fn norm(&self) -> &LocalNorm {
        self.model.central_norm().expect("ice-cream cone")
    }

    pub fn model(&self) -> &GptModel {
        &self.model
    }

    /// `max{|x₀|, |x̄|}`.
    pub fn base_norm(&self, x: &[f64]) -> Result<f64> {
        check_dim(self.dim(), x.len())?;
        Ok(x[0].abs().max(self.norm().eval(&x[1..])))
    }

    /// `Λ = 1 ⊕ (−𝟙)`, a symmetry of the cone fixing the unit.
    pub fn lambda(&self, x: &Vector) -> Result<Vector> {
        check_dim(self.dim(), x.len())?;
        Ok(lambda_map(x))
    }
}

pub fn lambda_map(x: &Vector) -> Vector {
    let mut y = -x;
    if !y.is_empty() {
        y[0] = x[0];
    }
    y
}

/// `M ↦ M̂`: zero row and column prepended.
pub fn lift_matrix(m: &Mat) -> Mat {
    let mut x = Mat::zeros(m.nrows() + 1, m.ncols() + 1);
    x.view_mut((1, 1), (m.nrows(), m.ncols())).copy_from(m);
    x
}

/// `X ↦ X̄`: zeroth row and column removed.
pub fn bar_project(x: &Mat) -> Result<Mat> {
    if x.nrows() == 0 || x.ncols() == 0 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            found: 0,
        });
    }
    Ok(x.view((1, 1), (x.nrows() - 1, x.ncols() - 1)).into_owned())
}

fn scale_of(x: &Mat) -> f64 {
    x.amax().max(1.0)
}

fn cross_terms_vanish(x: &Mat) -> bool {
    let s = STRUCTURE_TOL * scale_of(x);
    x.row(0).iter().skip(1).all(|v| v.abs() <= s)
        && x.column(0).iter().skip(1).all(|v| v.abs() <= s)
}

fn central_pair(c: &CompositeModel) -> Option<(LocalNorm, LocalNorm)> {
    let a = CentrallySymmetricModel::from_model(&c.a)?;
    let b = CentrallySymmetricModel::from_model(&c.b)?;
    Some((a.norm().clone(), b.norm().clone()))
}

/// The Werner-class operator equal to `x`, when `x` lies in the class.
fn werner_part(c: &CompositeModel, x: &Mat) -> Result<Option<WernerClassOperator>> {
    let (Some(na), Some(nb)) = (c.a.quantum_levels(), c.b.quantum_levels()) else {
        return Ok(None);
    };
    if na != nb {
        return Ok(None);
    }
    let op = c.operator(x).expect("quantum locals");
    let w = twirl(&HermitianOperator::new(op.clone(), (na, nb))?)?;
    let residual = (w.operator() - &op).camax();
    Ok((residual <= STRUCTURE_TOL * op.camax().max(1.0)).then_some(w))
}

/// The functional of `C*` minimizing `f(x)` over a normalized slice, with its value.
///
/// Slices: `eᵢ` (orthant), `(1, −s)` with `|s|_* = 1` (ice cream), rank-one
/// projectors (PSD), extreme dual rays (polyhedral).
fn dual_witness(model: &GptModel, x: &[f64]) -> Result<(Vector, f64)> {
    let d = model.dim();
    match model.cone() {
        ConeDescriptor::Simplex(_) => {
            let (i, v) = x
                .iter()
                .enumerate()
                .min_by(|p, q| p.1.total_cmp(q.1))
                .expect("nonempty");
            let mut f = Vector::zeros(d);
            f[i] = 1.0;
            Ok((f, *v))
        }
        ConeDescriptor::IceCream(n) => {
            let s = n.dual().support(&x[1..]);
            let mut f = Vector::zeros(d);
            f[0] = 1.0;
            f.rows_mut(1, d - 1).copy_from(&(-&s.point));
            Ok((f, x[0] - s.value))
        }
        ConeDescriptor::Psd(n) => {
            let basis = hermitian_basis(*n);
            let op = crate::linalg::hermitian_from_coords(x, &basis);
            let neg = -&op;
            let (top, v) = crate::linalg::hermitian_top_eigenvector(&neg);
            let proj = &v * v.adjoint();
            Ok((hermitian_coords(&proj, &basis), -top))
        }
        ConeDescriptor::PolyhedralByGenerators(_) | ConeDescriptor::PolyhedralByFacets(_) => {
            let rays = model
                .dual_extreme_rays()
                .ok_or_else(|| Error::InvalidModel("dual ray enumeration failed".into()))?;
            let (f, v) = rays
                .into_iter()
                .map(|f| {
                    let v = model.pairing(f.as_slice(), x);
                    (f, v)
                })
                .min_by(|p, q| p.1.total_cmp(&q.1))
                .expect("nonempty ray list");
            Ok((f, v))
        }
    }
}

/// Membership in `conv(C_A ⊗ C_B)` on the tractable classes.
///
/// * one simplicial local: rows (or columns) must lie in the other cone;
/// * centrally symmetric locals with vanishing cross terms `X₀ⱼ, Xᵢ₀`:
///   `|X̄|_π ≤ X₀₀` (and `|X̄|_π > X₀₀` rules out separability in general);
/// * quantum Werner class `a𝟙 + bF`: `a − b ≥ 0` and `a + nb ≥ 0`; outside the class
///   a failed partial-transpose test rules out separability, and PPT decides
///   `2 × 2` and `2 × 3`;
/// * polyhedral locals with at most [`POLYHEDRAL_PAIR_LIMIT`] extreme-state pairs:
///   a feasibility LP over products of extreme states.
///
/// Anything else is an [`Error::IntractableClass`].
pub fn sep_cone_contains(c: &CompositeModel, x: &Mat, tol: f64) -> Result<bool> {
    c.check(x)?;
    if let Some(ans) = simplicial_rows_in_cone(c, x, tol)? {
        return Ok(ans);
    }
    if let Some((na, nb)) = central_pair(c) {
        let cert = projective_with_certificate(&na, &nb, &bar_project(x)?)?;
        let pi = cert.value;
        if cross_terms_vanish(x) {
            if !cert.exact && (pi - x[(0, 0)]).abs() <= 1e-6 * scale_of(x) {
                return Err(Error::IntractableClass(
                    "projective norm evaluated heuristically at the separability boundary".into(),
                ));
            }
            return Ok(pi <= x[(0, 0)] + tol);
        }
        // Necessary condition only; the certificate is a lower bound on π when exact.
        if cert.exact && pi > x[(0, 0)] + tol {
            return Ok(false);
        }
    }
    if let Some(w) = werner_part(c, x)? {
        let (a, b) = w.identity_flip();
        let n = w.n as f64;
        return Ok(a - b >= -tol && a + n * b >= -tol);
    }
    if let (Some(na), Some(nb)) = (c.a.quantum_levels(), c.b.quantum_levels()) {
        let op = c.operator(x).expect("quantum locals");
        if min_eigenvalue(&op) < -tol || min_eigenvalue(&partial_transpose(&op, na, nb)) < -tol {
            return Ok(false);
        }
        if na * nb <= 6 {
            return Ok(true);
        }
        return Err(Error::IntractableClass(format!(
            "PPT operator on {na} × {nb} outside the Werner class"
        )));
    }
    if let (Some(sa), Some(sb)) = (c.a.extreme_states(), c.b.extreme_states()) {
        if sa.len() * sb.len() <= POLYHEDRAL_PAIR_LIMIT {
            return polyhedral_separable(&sa, &sb, x, tol);
        }
    }
    Err(Error::IntractableClass(
        "no exact separability test for this composite and tensor".into(),
    ))
}

/// With a simplicial side the decomposition over its generators is unique.
fn simplicial_rows_in_cone(c: &CompositeModel, x: &Mat, tol: f64) -> Result<Option<bool>> {
    if matches!(c.a.cone(), ConeDescriptor::Simplex(_)) {
        for i in 0..x.nrows() {
            let row: Vec<f64> = x.row(i).iter().copied().collect();
            if !cone_contains(&c.b, &row, tol)? {
                return Ok(Some(false));
            }
        }
        return Ok(Some(true));
    }
    if matches!(c.b.cone(), ConeDescriptor::Simplex(_)) {
        for j in 0..x.ncols() {
            if !cone_contains(&c.a, x.column(j).as_slice(), tol)? {
                return Ok(Some(false));
            }
        }
        return Ok(Some(true));
    }
    Ok(None)
}

/// `min Σ|r|` subject to `X − Σ λ_kl x_k y_lᵀ = r`, `λ ≥ 0`; separable iff the residual vanishes.
fn polyhedral_separable(sa: &[Vector], sb: &[Vector], x: &Mat, tol: f64) -> Result<bool> {
    let (da, db) = (x.nrows(), x.ncols());
    let pairs = sa.len() * sb.len();
    let cells = da * db;
    let mut obj = vec![0.0; pairs];
    obj.extend(std::iter::repeat_n(1.0, 2 * cells));
    let mut lp = LinearProgram::new(Sense::Minimize, obj);
    for i in 0..da {
        for j in 0..db {
            let cell = i * db + j;
            let mut row = Vec::with_capacity(pairs + 2 * cells);
            for p in sa {
                for q in sb {
                    row.push(p[i] * q[j]);
                }
            }
            row.extend((0..cells).map(|k| if k == cell { 1.0 } else { 0.0 }));
            row.extend((0..cells).map(|k| if k == cell { -1.0 } else { 0.0 }));
            lp.add_constraint(row, Relation::Eq, x[(i, j)]);
        }
    }
    Ok(lp.solve()?.objective <= tol)
}

/// Violation certificate of a witness test.
#[derive(Debug, Clone, PartialEq)]
pub enum MaxConeCertificate {
    /// `f ∈ C_A*`, `g ∈ C_B*` with `(f ⊗ g)(X) = value < 0`.
    DualPair { f: Vector, g: Vector, value: f64 },
    /// Unit vectors with `⟨αβ|X|αβ⟩ = value < 0`.
    ProductVector {
        alpha: Vec<Complex64>,
        beta: Vec<Complex64>,
        value: f64,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct MaxConeCheck {
    pub contains: bool,
    /// True when `contains == true` rests on a restarted local search only.
    pub heuristic: bool,
    pub certificate: Option<MaxConeCertificate>,
}

/// Membership in the maximal tensor product `{X : (f⊗g)(X) ≥ 0 ∀ f ∈ C_A*, g ∈ C_B*}`.
///
/// Exact when either local has finitely many dual extreme rays, for centrally
/// symmetric locals with vanishing cross terms, and on the quantum Werner
/// class. Other quantum inputs go through a product-vector search: a reported
/// violation is exact, its absence is heuristic.
pub fn max_cone_contains(c: &CompositeModel, x: &Mat, tol: f64) -> Result<MaxConeCheck> {
    max_cone_contains_seeded(c, x, tol, DEFAULT_BLOCK_SEED)
}

pub fn max_cone_contains_seeded(
    c: &CompositeModel,
    x: &Mat,
    tol: f64,
    seed: u64,
) -> Result<MaxConeCheck> {
    c.check(x)?;
    let verdict = |worst: Option<MaxConeCertificate>, value: f64, heuristic: bool| MaxConeCheck {
        contains: value >= -tol,
        heuristic: heuristic && value >= -tol,
        certificate: if value >= -tol { None } else { worst },
    };
    if let Some(rays) = c.b.dual_extreme_rays() {
        let mut best: Option<(Vector, Vector, f64)> = None;
        for g in rays {
            let (f, v) = dual_witness(&c.a, (x * &g).as_slice())?;
            if best.as_ref().is_none_or(|b| v < b.2) {
                best = Some((f, g, v));
            }
        }
        let (f, g, value) = best.expect("nonempty ray list");
        return Ok(verdict(
            Some(MaxConeCertificate::DualPair { f, g, value }),
            value,
            false,
        ));
    }
    if let Some(rays) = c.a.dual_extreme_rays() {
        let xt = x.transpose();
        let mut best: Option<(Vector, Vector, f64)> = None;
        for f in rays {
            let (g, v) = dual_witness(&c.b, (&xt * &f).as_slice())?;
            if best.as_ref().is_none_or(|b| v < b.2) {
                best = Some((f, g, v));
            }
        }
        let (f, g, value) = best.expect("nonempty ray list");
        return Ok(verdict(
            Some(MaxConeCertificate::DualPair { f, g, value }),
            value,
            false,
        ));
    }
    if let Some((na, nb)) = central_pair(c) {
        if !cross_terms_vanish(x) {
            return Err(Error::UnsupportedLocals(
                "centrally symmetric witness test needs vanishing cross terms".into(),
            ));
        }
        // min over f = (1, a), g = (1, −b) of X₀₀ − aᵀX̄b.
        let bm = bilinear_max(&na.dual(), &nb.dual(), &bar_project(x)?)?;
        let value = x[(0, 0)] - bm.value;
        let mut f = Vector::zeros(c.a.dim());
        f[0] = 1.0;
        f.rows_mut(1, na.dim()).copy_from(&bm.a);
        let mut g = Vector::zeros(c.b.dim());
        g[0] = 1.0;
        g.rows_mut(1, nb.dim()).copy_from(&(-&bm.b));
        return Ok(verdict(
            Some(MaxConeCertificate::DualPair { f, g, value }),
            value,
            !bm.exact,
        ));
    }
    if let Some(w) = werner_part(c, x)? {
        // ⟨αβ|a𝟙 + bF|αβ⟩ = a + b|⟨α|β⟩|², extreme at orthogonal or equal vectors.
        let (a, b) = w.identity_flip();
        let n = w.n;
        let basis = |i: usize| {
            let mut v = vec![Complex64::new(0.0, 0.0); n];
            v[i] = Complex64::new(1.0, 0.0);
            v
        };
        let (value, beta) = if a <= a + b {
            (a, basis(1))
        } else {
            (a + b, basis(0))
        };
        return Ok(verdict(
            Some(MaxConeCertificate::ProductVector {
                alpha: basis(0),
                beta,
                value,
            }),
            value,
            false,
        ));
    }
    if let (Some(na), Some(nb)) = (c.a.quantum_levels(), c.b.quantum_levels()) {
        let op = c.operator(x).expect("quantum locals");
        let bp = block_positivity(&op, na, nb, BLOCK_RESTARTS, seed)?;
        return Ok(verdict(
            Some(MaxConeCertificate::ProductVector {
                alpha: bp.alpha.iter().copied().collect(),
                beta: bp.beta.iter().copied().collect(),
                value: bp.min_value,
            }),
            bp.min_value,
            true,
        ));
    }
    Err(Error::UnsupportedLocals(
        "no witness test for this pair of local cones".into(),
    ))
}

/// Base norm of the minimal tensor product, `‖·‖_{A ⊗min B}`.
///
/// Equals the projective norm over the local base norms. A simplicial local
/// reduces it to `Σᵢ uᵢ ‖Xᵢ‖_B`; centrally symmetric locals with vanishing
/// cross terms to `max{|X₀₀|, |X̄|_π}`; quantum locals are supported on the
/// Werner class, where it is the closed-form witness norm.
pub fn min_base_norm(c: &CompositeModel, x: &Mat) -> Result<f64> {
    c.check(x)?;
    if let Some(v) = simplicial_norm(c, x)? {
        return Ok(v);
    }
    if c.a.quantum_levels().is_some() && c.b.quantum_levels().is_some() {
        return match werner_part(c, x)? {
            Some(w) => Ok(w.norms().w),
            None => Err(Error::IntractableClass(
                "quantum min-tensor base norm outside the Werner class".into(),
            )),
        };
    }
    if let Some((na, nb)) = central_pair(c) {
        if cross_terms_vanish(x) {
            // Averaging (s, a)⊗(sσ, b) over s = ±1 absorbs any |X₀₀| ≤ |X̄|_π for free.
            let pi = projective_norm(&na, &nb, &bar_project(x)?)?;
            return Ok(x[(0, 0)].abs().max(pi));
        }
    }
    match (base_local_norm(&c.a), base_local_norm(&c.b)) {
        (Some(la), Some(lb)) => projective_norm(&la, &lb, x),
        _ => Err(Error::UnsupportedLocals(
            "base norm of a local is not a supported local norm".into(),
        )),
    }
}

fn simplicial_norm(c: &CompositeModel, x: &Mat) -> Result<Option<f64>> {
    if matches!(c.a.cone(), ConeDescriptor::Simplex(_)) {
        let mut total = 0.0;
        for i in 0..x.nrows() {
            let row: Vec<f64> = x.row(i).iter().copied().collect();
            total += c.a.unit()[i] * base_norm(&c.b, &row)?;
        }
        return Ok(Some(total));
    }
    if matches!(c.b.cone(), ConeDescriptor::Simplex(_)) {
        let mut total = 0.0;
        for j in 0..x.ncols() {
            total += c.b.unit()[j] * base_norm(&c.a, x.column(j).as_slice())?;
        }
        return Ok(Some(total));
    }
    Ok(None)
}

/// Base norm of the maximal tensor product for polyhedral locals:
/// `max ⟨F, X⟩` subject to `U ± F ∈ conv(C_A* ⊗ C_B*)`.
pub fn max_base_norm(c: &CompositeModel, x: &Mat) -> Result<f64> {
    c.check(x)?;
    let (Some(ra), Some(rb)) = (c.a.dual_extreme_rays(), c.b.dual_extreme_rays()) else {
        return Err(Error::UnsupportedLocals(
            "maximal-tensor base norm needs polyhedral locals".into(),
        ));
    };
    let (da, db) = (x.nrows(), x.ncols());
    let cells = da * db;
    let pairs: Vec<Mat> = ra
        .iter()
        .flat_map(|f| rb.iter().map(move |g| f * g.transpose()))
        .collect();
    if pairs.len() > POLYHEDRAL_PAIR_LIMIT {
        return Err(Error::EnumerationLimit {
            what: "dual ray pairs",
            bits: pairs.len().ilog2() as usize + 1,
            limit: POLYHEDRAL_PAIR_LIMIT.ilog2() as usize,
        });
    }
    let k = pairs.len();
    // Variables: F (free), μ, ν ≥ 0.
    let mut obj: Vec<f64> = (0..cells).map(|c| x[(c / db, c % db)]).collect();
    obj.extend(std::iter::repeat_n(0.0, 2 * k));
    let mut lp = LinearProgram::new(Sense::Maximize, obj);
    for v in 0..cells {
        lp.set_bound(v, crate::lp::Bound::Free);
    }
    let unit = c.unit();
    for sign in [-1.0, 1.0] {
        let offset = if sign < 0.0 { cells } else { cells + k };
        for cell in 0..cells {
            let (i, j) = (cell / db, cell % db);
            let mut row = vec![0.0; cells + 2 * k];
            row[cell] = sign;
            for (p, m) in pairs.iter().enumerate() {
                row[offset + p] = -m[(i, j)];
            }
            lp.add_constraint(row, Relation::Eq, -unit[(i, j)]);
        }
    }
    Ok(lp.solve()?.objective)
}

/// Distinguishability norm under separable measurements.
///
/// Exact on: a simplicial local (every measurement is separable);
/// centrally symmetric locals with vanishing cross terms,
/// `max{|X₀₀|, |X̄|_ε}`; the quantum Werner class.
pub fn sep_norm(c: &CompositeModel, x: &Mat) -> Result<f64> {
    c.check(x)?;
    if let Some(v) = simplicial_norm(c, x)? {
        return Ok(v);
    }
    if let Some((na, nb)) = central_pair(c) {
        if cross_terms_vanish(x) {
            let eps = injective_norm(&na, &nb, &bar_project(x)?)?;
            return Ok(x[(0, 0)].abs().max(eps));
        }
    }
    if let Some(w) = werner_part(c, x)? {
        return Ok(w.norms().sep);
    }
    Err(Error::IntractableClass(
        "no exact SEP norm for this composite and tensor".into(),
    ))
}

/// Bounds on `R̄ = max |M|_π / |M|_ε` for a pair of centrally symmetric models.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RatioBounds {
    /// Dimensions of the two inner norms.
    pub local_dims: (usize, usize),
    pub exact: Option<f64>,
    /// Value attained by an explicit witness matrix.
    pub witness: f64,
    pub witness_name: &'static str,
    /// Lower bound depending on the dimensions only.
    pub guaranteed_lower: f64,
    pub upper: f64,
    /// `R̄ ≤ R(SEP) ≤ R(LO) ≤ R̄ + 2`, evaluated with the bounds above.
    pub sep_lower: f64,
    pub lo_upper: f64,
}

pub fn restricted_ratio(
    a: &CentrallySymmetricModel,
    b: &CentrallySymmetricModel,
) -> Result<RatioBounds> {
    let (na, nb) = (a.norm(), b.norm());
    let (p, q) = (na.dim(), nb.dim());
    let m = p.min(q);
    let bounds =
        |exact: Option<f64>, witness: f64, name, guaranteed: f64, upper: f64| RatioBounds {
            local_dims: (p, q),
            exact,
            witness,
            witness_name: name,
            guaranteed_lower: guaranteed,
            upper,
            sep_lower: exact.unwrap_or(witness),
            lo_upper: exact.unwrap_or(upper) + 2.0,
        };
    if m <= 1 {
        return Ok(bounds(Some(1.0), 1.0, "rank one", 1.0, 1.0));
    }
    match (na, nb) {
        (LocalNorm::Euclidean(_), LocalNorm::Euclidean(_)) => {
            let id = Mat::identity(p, q);
            let w = projective_norm(na, nb, &id)? / injective_norm(na, nb, &id)?;
            Ok(bounds(Some(w), w, "identity", w, w))
        }
        (LocalNorm::EllInf(_), LocalNorm::EllInf(_))
        | (LocalNorm::EllOne(_), LocalNorm::EllOne(_)) => {
            // The ratio is shared by a pair of norms and their duals.
            let h = hadamard_witness_ratio(m, p.max(q))?;
            let upper = (2.0 * m as f64).sqrt().min(m as f64);
            Ok(bounds(
                None,
                h.ratio_lower,
                "Sylvester-Hadamard",
                h.guaranteed,
                upper,
            ))
        }
        _ => {
            let id = Mat::identity(p, q);
            let w = projective_norm(na, nb, &id)? / injective_norm(na, nb, &id)?;
            Ok(bounds(None, w, "identity", 1.0, m as f64))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gpt::{make_classical, make_cubic, make_quantum, make_spherical};
    use crate::quantum::{antisym_proj, flip_operator, max_entangled, sym_proj};
    use crate::sampling::{gaussian_matrix, rng};

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    fn quantum_pair(n: usize) -> CompositeModel {
        CompositeModel::new(
            make_quantum(n).unwrap(),
            make_quantum(n).unwrap(),
            CompositionRule::MinTensor,
        )
        .unwrap()
    }

    fn spherical_pair(da: usize, db: usize) -> CompositeModel {
        CompositeModel::new(
            make_spherical(da).unwrap(),
            make_spherical(db).unwrap(),
            CompositionRule::MinTensor,
        )
        .unwrap()
    }

    #[test]
    fn lift_and_project() {
        let m = Mat::from_element(1, 1, 1.0);
        let x = lift_matrix(&m);
        assert_eq!(x, Mat::from_row_slice(2, 2, &[0.0, 0.0, 0.0, 1.0]));
        let g = gaussian_matrix(&mut rng(1), 3, 4);
        assert_eq!(bar_project(&lift_matrix(&g)).unwrap(), g);
        let mut u = Mat::zeros(4, 5);
        u[(0, 0)] = 1.0;
        assert_eq!(bar_project(&u).unwrap(), Mat::zeros(3, 4));
        assert!(bar_project(&Mat::zeros(0, 3)).is_err());
    }

    #[test]
    fn native_rule_needs_quantum_locals() {
        let r = CompositeModel::new(
            make_classical(2).unwrap(),
            make_quantum(2).unwrap(),
            CompositionRule::NativeQuantum,
        );
        assert!(r.is_err());
    }

    #[test]
    fn spherical_separability() {
        let cm = spherical_pair(4, 4);
        let n = Mat::from_diagonal(&Vector::from_vec(vec![0.5, -0.3, 0.2]));
        let mut x = lift_matrix(&n);
        x[(0, 0)] = 1.0;
        assert!(sep_cone_contains(&cm, &x, 1e-9).unwrap());
        x[(0, 0)] = 0.9;
        assert!(!sep_cone_contains(&cm, &x, 1e-9).unwrap());
        // Cross terms with π(X̄) > X₀₀ are still decided.
        x[(0, 1)] = 0.1;
        assert!(!sep_cone_contains(&cm, &x, 1e-9).unwrap());
    }

    #[test]
    fn werner_separability_and_witnesses() {
        let qc = quantum_pair(2);
        let id = CMat::identity(4, 4);
        let f = flip_operator(2);
        let e = (&id + &f) * c(1.0 / 3.0);
        assert!(sep_cone_contains(&qc, &quantum_tensor(&e, 2, 2), 1e-9).unwrap());
        assert!(!sep_cone_contains(&qc, &quantum_tensor(&f, 2, 2), 1e-9).unwrap());

        let chk = max_cone_contains(&qc, &quantum_tensor(&f, 2, 2), 1e-9).unwrap();
        assert!(chk.contains && !chk.heuristic);
        let phi = max_entangled(2) * c(-1.0);
        let chk = max_cone_contains(&qc, &quantum_tensor(&phi, 2, 2), 1e-9).unwrap();
        assert!(!chk.contains);
        match chk.certificate {
            Some(MaxConeCertificate::ProductVector { value, .. }) => assert!(value < -0.4),
            other => panic!("expected a product-vector certificate, got {other:?}"),
        }
    }

    #[test]
    fn quantum_ppt_outside_werner_class() {
        let qc = quantum_pair(2);
        // |00⟩⟨00| is separable; Φ is not.
        let mut p = CMat::zeros(4, 4);
        p[(0, 0)] = c(1.0);
        assert!(sep_cone_contains(&qc, &quantum_tensor(&p, 2, 2), 1e-9).unwrap());
        let phi = max_entangled(2);
        assert!(!sep_cone_contains(&qc, &quantum_tensor(&phi, 2, 2), 1e-9).unwrap());
        let q3 = quantum_pair(3);
        let mut p = CMat::zeros(9, 9);
        p[(0, 0)] = c(1.0);
        assert!(matches!(
            sep_cone_contains(&q3, &quantum_tensor(&p, 3, 3), 1e-9),
            Err(Error::IntractableClass(_))
        ));
    }

    #[test]
    fn classical_max_equals_min() {
        let cc = CompositeModel::new(
            make_classical(2).unwrap(),
            make_classical(3).unwrap(),
            CompositionRule::MaxTensor,
        )
        .unwrap();
        let x = Mat::from_row_slice(2, 3, &[0.1, 0.2, 0.0, 0.3, 0.0, 0.4]);
        assert!(max_cone_contains(&cc, &x, 1e-12).unwrap().contains);
        assert!(sep_cone_contains(&cc, &x, 1e-12).unwrap());
        let mut y = x.clone();
        y[(1, 2)] = -0.01;
        assert!(!max_cone_contains(&cc, &y, 1e-12).unwrap().contains);
        assert!(!sep_cone_contains(&cc, &y, 1e-12).unwrap());
    }

    #[test]
    fn werner_norms_through_composites() {
        let qc = quantum_pair(2);
        let x = sym_proj(2) - antisym_proj(2);
        let t = quantum_tensor(&x, 2, 2);
        assert!((min_base_norm(&qc, &t).unwrap() - 4.0).abs() < 1e-9);
        for n in 2..=4 {
            let qc = quantum_pair(n);
            let nf = n as f64;
            let x = sym_proj(n) * c((nf + 1.0) / nf) - antisym_proj(n) * c((nf - 1.0) / nf);
            let s = sep_norm(&qc, &quantum_tensor(&x, n, n)).unwrap();
            assert!((s - 2.0 / nf).abs() < 1e-9);
        }
        let q3 = quantum_pair(3);
        let x = sym_proj(3) - antisym_proj(3);
        assert!((sep_norm(&q3, &quantum_tensor(&x, 3, 3)).unwrap() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn spherical_norms_of_lifted_matrices() {
        let cm = spherical_pair(3, 4);
        let mut r = rng(5);
        for _ in 0..5 {
            let m = gaussian_matrix(&mut r, 2, 3);
            let x = lift_matrix(&m);
            let tn = crate::linalg::trace_norm(&m);
            let on = crate::linalg::operator_norm(&m);
            assert!((min_base_norm(&cm, &x).unwrap() - tn).abs() < 1e-6);
            assert!((sep_norm(&cm, &x).unwrap() - on).abs() < 1e-9);
        }
    }

    #[test]
    fn central_shortcut_matches_full_projective_program() {
        let cm = spherical_pair(3, 4);
        let la = base_local_norm(cm.a()).unwrap();
        let lb = base_local_norm(cm.b()).unwrap();
        let mut r = rng(11);
        for _ in 0..2 {
            let mut x = lift_matrix(&gaussian_matrix(&mut r, 2, 3));
            x[(0, 0)] = 0.7;
            let full = projective_norm(&la, &lb, &x).unwrap();
            assert!((min_base_norm(&cm, &x).unwrap() - full).abs() < 1e-8);
        }
    }

    #[test]
    fn product_tensor_norms_multiply() {
        let cm = spherical_pair(3, 3);
        let x = Vector::from_vec(vec![0.3, 1.2, -0.4]);
        let y = Vector::from_vec(vec![-2.0, 0.5, 0.5]);
        let t = &x * y.transpose();
        let bx = base_norm(cm.a(), x.as_slice()).unwrap();
        let by = base_norm(cm.b(), y.as_slice()).unwrap();
        assert!((min_base_norm(&cm, &t).unwrap() - bx * by).abs() < 1e-7);
    }

    #[test]
    fn ratio_examples() {
        let sph = CentrallySymmetricModel::from_model(&make_spherical(4).unwrap()).unwrap();
        let r = restricted_ratio(&sph, &sph).unwrap();
        assert!((r.exact.unwrap() - 3.0).abs() < 1e-9);
        let cub = CentrallySymmetricModel::from_model(&make_cubic(4).unwrap()).unwrap();
        let r = restricted_ratio(&cub, &cub).unwrap();
        assert!((r.witness - 2.0).abs() < 1e-12);
        assert!((r.upper - 8f64.sqrt()).abs() < 1e-12);
        let two = CentrallySymmetricModel::from_model(&make_spherical(2).unwrap()).unwrap();
        assert_eq!(restricted_ratio(&two, &sph).unwrap().exact, Some(1.0));
    }

    #[test]
    fn max_base_norm_below_min_base_norm() {
        let cc = CompositeModel::new(
            make_cubic(2).unwrap(),
            make_cubic(2).unwrap(),
            CompositionRule::MaxTensor,
        )
        .unwrap();
        let mut r = rng(8);
        for _ in 0..10 {
            let x = gaussian_matrix(&mut r, 3, 3);
            let lo = max_base_norm(&cc, &x).unwrap();
            let hi = min_base_norm(&cc, &x).unwrap();
            assert!(lo <= hi + 1e-9, "{lo} > {hi}");
        }
    }
}
