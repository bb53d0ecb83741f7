//! Completely symmetric models: the invariant tensors `U_*`, `𝓔`, `𝓔_*`, the
//! constants `m±`, `m±*`, `k±`, `k±*`, and norms on the Werner line `a U_* + b 𝓔`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gpt::{ModelId, DEFAULT_TOL};
use crate::linalg::{
    bipartite_operator, hermitian_basis, hermitian_coords, min_eigenvalue, partial_transpose, CMat,
    Mat, Vector,
};
use crate::norms::{bilinear_max, projective_norm, LocalNorm};
use crate::quantum::block_positivity;

const BISECTION_TOL: f64 = 1e-12;
const BISECTION_MAX_ITER: usize = 200;
const MEMBERSHIP_TOL: f64 = 1e-13;
const BLOCK_RESTARTS: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SymmetricConstants {
    pub d: usize,
    pub m_plus: f64,
    pub m_minus: f64,
    pub m_plus_star: f64,
    pub m_minus_star: f64,
    pub k_plus: f64,
    pub k_minus: f64,
    pub k_plus_star: f64,
    pub k_minus_star: f64,
}

impl SymmetricConstants {
    /// Names of the structural identities this tuple violates at tolerance `tol`.
    pub fn invariant_violations(&self, tol: f64) -> Vec<&'static str> {
        let dm1 = (self.d - 1) as f64;
        let mut out = Vec::new();
        if self.m_minus > self.m_plus + tol || self.m_minus_star > self.m_plus_star + tol {
            out.push("m- <= m+");
        }
        if (self.k_plus_star * self.k_minus - 1.0 / dm1).abs() > tol
            || (self.k_minus_star * self.k_plus - 1.0 / dm1).abs() > tol
        {
            out.push("k±* k∓ = 1/(d-1)");
        }
        for p in [
            self.m_plus * self.m_minus_star,
            self.m_minus * self.m_plus_star,
        ] {
            if p < 1.0 - tol || p > dm1 + tol {
                out.push("1 <= m± m∓* <= d-1");
                break;
            }
        }
        if self.k_plus < self.m_plus / dm1 - tol || self.k_minus < self.m_minus / dm1 - tol {
            out.push("k± >= m±/(d-1)");
        }
        out
    }

    /// Largest deviation from the identities `k±* k∓ = 1/(d−1)`.
    pub fn duality_residual(&self) -> f64 {
        let t = 1.0 / (self.d - 1) as f64;
        (self.k_plus_star * self.k_minus - t)
            .abs()
            .max((self.k_minus_star * self.k_plus - t).abs())
    }

    pub fn max_abs_difference(&self, other: &SymmetricConstants) -> f64 {
        let a = self.as_array();
        let b = other.as_array();
        a.iter()
            .zip(b.iter())
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max)
    }

    fn as_array(&self) -> [f64; 8] {
        [
            self.m_plus,
            self.m_minus,
            self.m_plus_star,
            self.m_minus_star,
            self.k_plus,
            self.k_minus,
            self.k_plus_star,
            self.k_minus_star,
        ]
    }
}

/// Catalog entry: model, closed-form constants and its Werner hiding ratio.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SymmetricCatalogEntry {
    pub id: ModelId,
    pub constants: SymmetricConstants,
    pub expected_ratio: f64,
}

impl SymmetricCatalogEntry {
    pub fn new(id: ModelId) -> Self {
        let expected_ratio = match id {
            ModelId::Classical(_) | ModelId::Cubic(_) => 1.0,
            ModelId::Quantum(n) => n as f64,
            ModelId::WTheory(n) => (2 * n - 1) as f64,
            ModelId::Spherical(d) => (d - 1) as f64,
        };
        SymmetricCatalogEntry {
            id,
            constants: catalog_constants(id),
            expected_ratio,
        }
    }
}

/// Closed-form constants. `Quantum` is the native (PSD) composite, `WTheory` the minimal one;
/// spherical and cubic models use the minimal tensor product.
pub fn catalog_constants(id: ModelId) -> SymmetricConstants {
    match id {
        ModelId::Classical(d) => {
            let df = d as f64;
            SymmetricConstants {
                d,
                m_plus: (df - 1.0) / df,
                m_minus: 1.0 / df,
                m_plus_star: df * (df - 1.0),
                m_minus_star: df,
                k_plus: 1.0 / df,
                k_minus: 1.0 / (df * (df - 1.0)),
                k_plus_star: df,
                k_minus_star: df / (df - 1.0),
            }
        }
        ModelId::Quantum(n) | ModelId::WTheory(n) => {
            let nf = n as f64;
            let w = matches!(id, ModelId::WTheory(_));
            SymmetricConstants {
                d: n * n,
                m_plus: (nf - 1.0) / nf,
                m_minus: 1.0 / nf,
                m_plus_star: nf * (nf - 1.0),
                m_minus_star: nf,
                k_plus: 1.0 / (nf * (nf + 1.0)),
                k_minus: if w {
                    1.0 / (nf * (nf * nf - 1.0))
                } else {
                    1.0 / (nf * (nf - 1.0))
                },
                k_plus_star: if w { nf } else { nf / (nf + 1.0) },
                k_minus_star: nf / (nf - 1.0),
            }
        }
        ModelId::Spherical(d) => {
            let k = 1.0 / (d - 1) as f64;
            SymmetricConstants {
                d,
                m_plus: 1.0,
                m_minus: 1.0,
                m_plus_star: 1.0,
                m_minus_star: 1.0,
                k_plus: k,
                k_minus: k,
                k_plus_star: 1.0,
                k_minus_star: 1.0,
            }
        }
        ModelId::Cubic(n) => {
            let nf = n as f64;
            SymmetricConstants {
                d: n + 1,
                m_plus: nf,
                m_minus: nf,
                m_plus_star: 1.0,
                m_minus_star: 1.0,
                k_plus: 1.0,
                k_minus: 1.0,
                k_plus_star: 1.0 / nf,
                k_minus_star: 1.0 / nf,
            }
        }
    }
}

/// Invariant vectors and tensors of a catalog model, in its coordinates.
///
/// Vectors and functionals share coordinates and pair by the dot product.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricStructure {
    pub id: ModelId,
    pub d: usize,
    pub u: Vector,
    pub u_star: Vector,
    pub e: Mat,
    pub e_star: Mat,
}

pub fn symmetric_structure(id: ModelId) -> Result<SymmetricStructure> {
    let model = id.model()?;
    let d = model.dim();
    let traceless = |d: usize| {
        let mut m = Mat::identity(d, d);
        m[(0, 0)] = 0.0;
        m
    };
    let (u, u_star, e, e_star) = match id {
        ModelId::Classical(_) => {
            let c = Mat::identity(d, d) - Mat::from_element(d, d, 1.0 / d as f64);
            (
                Vector::from_element(d, 1.0),
                Vector::from_element(d, 1.0 / d as f64),
                c.clone(),
                c,
            )
        }
        ModelId::Quantum(n) | ModelId::WTheory(n) => {
            let s = (n as f64).sqrt();
            let mut u = Vector::zeros(d);
            u[0] = s;
            let u_star = &u / (n as f64);
            (u, u_star, traceless(d), traceless(d))
        }
        ModelId::Spherical(_) | ModelId::Cubic(_) => {
            let mut u = Vector::zeros(d);
            u[0] = 1.0;
            (u.clone(), u, traceless(d), traceless(d))
        }
    };
    Ok(SymmetricStructure {
        id,
        d,
        u,
        u_star,
        e,
        e_star,
    })
}

impl SymmetricStructure {
    /// `a U_* + b 𝓔`.
    pub fn werner_tensor(&self, a: f64, b: f64) -> Mat {
        &self.u_star * self.u_star.transpose() * a + &self.e * b
    }

    /// `α U + β 𝓔_*`, a functional on the composite.
    pub fn dual_werner_tensor(&self, alpha: f64, beta: f64) -> Mat {
        &self.u * self.u.transpose() * alpha + &self.e_star * beta
    }

    fn local_norm(&self) -> Option<LocalNorm> {
        match self.id {
            ModelId::Spherical(d) => Some(LocalNorm::Euclidean(d - 1)),
            ModelId::Cubic(n) => Some(LocalNorm::EllInf(n)),
            _ => None,
        }
    }
}

/// Coordinates of a Werner-line tensor `a U_* + b 𝓔`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WernerCoordinates {
    pub a: f64,
    pub b: f64,
    pub d: usize,
}

/// Group average of `X` onto the Werner line: `a = U(X)`, `b = 𝓔_*(X)/(d−1)`.
pub fn haar_projector_apply(s: &SymmetricStructure, x: &Mat) -> Result<WernerCoordinates> {
    if x.nrows() != s.d || x.ncols() != s.d {
        return Err(Error::DimensionMismatch {
            expected: s.d,
            found: x.nrows(),
        });
    }
    let a = s.u.dot(&(x * &s.u));
    let b = s.e_star.component_mul(x).sum() / (s.d - 1) as f64;
    Ok(WernerCoordinates { a, b, d: s.d })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LineNorms {
    pub base: f64,
    pub sep: f64,
}

pub fn werner_line_norms(c: &SymmetricConstants, a: f64, b: f64) -> LineNorms {
    let (kp, km) = (c.k_plus, c.k_minus);
    let (mp, mm) = (c.m_plus_star, c.m_minus_star);
    LineNorms {
        base: a.abs().max((2.0 * b + a * (km - kp)).abs() / (kp + km)),
        sep: a
            .abs()
            .max((2.0 * b * mp * mm + a * (mm - mp)).abs() / (mp + mm)),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HidingRatio {
    pub ratio: f64,
    /// A maximizing direction `(a, b)`.
    pub ray: (f64, f64),
}

pub fn werner_hiding_ratio(c: &SymmetricConstants) -> HidingRatio {
    let plus = 1.0 / c.m_plus_star - c.k_minus;
    let minus = 1.0 / c.m_minus_star - c.k_plus;
    let best = plus.max(minus);
    let ratio = 1.0 + 2.0 / (c.k_plus + c.k_minus) * best;
    if ratio <= 1.0 {
        return HidingRatio {
            ratio: 1.0,
            ray: (1.0, 0.0),
        };
    }
    let ray = if plus >= minus {
        (1.0, -1.0 / c.m_plus_star)
    } else {
        (1.0, 1.0 / c.m_minus_star)
    };
    HidingRatio { ratio, ray }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum DualVariant {
    /// All effects allowed by the composite.
    Allowed,
    /// Separable effects.
    Separable,
}

/// Vertices of the `(α, β)` parallelogram of Werner-line effects `α U + β 𝓔_*`.
pub fn dual_werner_polytope(c: &SymmetricConstants, variant: DualVariant) -> [(f64, f64); 4] {
    let (p, m) = match variant {
        DualVariant::Allowed => (c.k_plus_star, c.k_minus_star),
        DualVariant::Separable => {
            let dm1 = (c.d - 1) as f64;
            (c.m_plus_star / dm1, c.m_minus_star / dm1)
        }
    };
    let s = p + m;
    [
        (0.0, 0.0),
        (1.0, 0.0),
        (m / s, p * m / s),
        (p / s, -p * m / s),
    ]
}

/// Recomputes every constant from the cone structure alone.
///
/// `m±`, `m±*` maximize a quadratic (or bilinear) form over the normalized state
/// (or effect) section; `k±`, `k±*` come from bisection on composite cone membership.
pub fn derive_constants_numerically(id: ModelId) -> Result<SymmetricConstants> {
    let s = symmetric_structure(id)?;
    let (m_plus, m_minus) = section_maxima(&s, false)?;
    let (m_plus_star, m_minus_star) = section_maxima(&s, true)?;
    let member = composite_membership(&s)?;
    let k_plus = bisect_max(|k| member(&s.werner_tensor(1.0, k)), "k+")?;
    let k_minus = bisect_max(|k| member(&s.werner_tensor(1.0, -k)), "k-")?;
    let dual_member = dual_composite_membership(&s)?;
    let k_plus_star = bisect_max(|k| dual_member(&s.dual_werner_tensor(1.0, k)), "k+*")?;
    let k_minus_star = bisect_max(|k| dual_member(&s.dual_werner_tensor(1.0, -k)), "k-*")?;
    Ok(SymmetricConstants {
        d: s.d,
        m_plus,
        m_minus,
        m_plus_star,
        m_minus_star,
        k_plus,
        k_minus,
        k_plus_star,
        k_minus_star,
    })
}

/// `(max ⟨v,v⟩, max ⟨v,w⟩)` over `u_* + v, u_* − w` in the state section
/// (or `u + f, u − g` in the effect section when `dual`).
fn section_maxima(s: &SymmetricStructure, dual: bool) -> Result<(f64, f64)> {
    let (center, form) = if dual {
        (&s.u, &s.e)
    } else {
        (&s.u_star, &s.e_star)
    };
    let q = |v: &Vector, w: &Vector| v.dot(&(form * w));
    let points: Vec<Vector> = match s.id {
        ModelId::Quantum(n) | ModelId::WTheory(n) => {
            // Convex/bilinear forms peak on pure states; pairs are taken in
            // oppositely sorted eigenbases, which minimizes their overlap.
            let basis = hermitian_basis(n);
            let scale = if dual { n as f64 } else { 1.0 };
            let pure = |i: usize| {
                let mut op = CMat::zeros(n, n);
                op[(i, i)] = num_complex::Complex64::new(scale, 0.0);
                hermitian_coords(&op, &basis)
            };
            (0..n).map(pure).collect()
        }
        _ => {
            let model = s.id.model()?;
            if dual {
                match model.dual_extreme_rays() {
                    Some(rays) => rays
                        .into_iter()
                        .map(|r| {
                            let t = r.dot(&s.u_star);
                            r / t
                        })
                        .collect(),
                    None => ball_section_points(s)?,
                }
            } else {
                match model.extreme_states() {
                    Some(st) => st,
                    None => ball_section_points(s)?,
                }
            }
        }
    };
    let vs: Vec<Vector> = points.iter().map(|p| p - center).collect();
    let plus = vs.iter().map(|v| q(v, v)).fold(f64::NEG_INFINITY, f64::max);
    let minus = vs
        .iter()
        .flat_map(|v| points.iter().map(move |p| (v, center - p)))
        .map(|(v, w)| q(v, &w))
        .fold(f64::NEG_INFINITY, f64::max);
    Ok((plus, minus))
}

/// Non-polytopal sections (the Euclidean ball): points `(1, ±e_i)` realize both maxima,
/// since `|v|₂ ≤ 1` bounds `⟨v, w⟩ = v̄·w̄` by one.
fn ball_section_points(s: &SymmetricStructure) -> Result<Vec<Vector>> {
    match s.id {
        ModelId::Spherical(d) => Ok((1..d)
            .flat_map(|i| {
                [1.0, -1.0].map(|sg| {
                    let mut v = Vector::zeros(d);
                    v[0] = 1.0;
                    v[i] = sg;
                    v
                })
            })
            .collect()),
        _ => Err(Error::InvalidModel(format!(
            "no section description for {}",
            s.id
        ))),
    }
}

type Membership = Box<dyn Fn(&Mat) -> bool>;

/// Membership in the bipartite cone the catalog pairs with each model.
fn composite_membership(s: &SymmetricStructure) -> Result<Membership> {
    Ok(match s.id {
        ModelId::Classical(_) => Box::new(|x: &Mat| x.iter().all(|v| *v >= -MEMBERSHIP_TOL)),
        ModelId::Quantum(n) => {
            let basis = hermitian_basis(n);
            Box::new(move |x: &Mat| {
                min_eigenvalue(&bipartite_operator(x, &basis, &basis)) >= -MEMBERSHIP_TOL
            })
        }
        ModelId::WTheory(n) => {
            // Werner states are separable exactly when their partial transpose is positive.
            let basis = hermitian_basis(n);
            Box::new(move |x: &Mat| {
                let op = bipartite_operator(x, &basis, &basis);
                min_eigenvalue(&op) >= -MEMBERSHIP_TOL
                    && min_eigenvalue(&partial_transpose(&op, n, n)) >= -MEMBERSHIP_TOL
            })
        }
        ModelId::Spherical(_) | ModelId::Cubic(_) => {
            // Zero cross terms: separable iff π(X̄) ≤ X₀₀. On the Werner line X̄ is a
            // multiple of 𝟙, so one projective evaluation fixes the whole test.
            let local = s.local_norm().expect("central model");
            let d = s.d;
            let unit_bar = projective_norm(&local, &local, &Mat::identity(d - 1, d - 1))?;
            Box::new(move |x: &Mat| {
                let scale = x[(1, 1)];
                let bar = x.view((1, 1), (d - 1, d - 1));
                let scalar = (bar - Mat::identity(d - 1, d - 1) * scale).amax() == 0.0;
                cross_terms_vanish(x)
                    && scalar
                    && x[(0, 0)] >= 0.0
                    && scale.abs() * unit_bar <= x[(0, 0)] + MEMBERSHIP_TOL
            })
        }
    })
}

/// Membership in the dual of the composite cone.
fn dual_composite_membership(s: &SymmetricStructure) -> Result<Membership> {
    Ok(match s.id {
        ModelId::Classical(_) | ModelId::Quantum(_) => composite_membership(s)?,
        ModelId::WTheory(n) => {
            let basis = hermitian_basis(n);
            Box::new(move |x: &Mat| {
                let op = bipartite_operator(x, &basis, &basis);
                block_positivity(&op, n, n, BLOCK_RESTARTS, 7)
                    .is_ok_and(|b| b.min_value >= -MEMBERSHIP_TOL)
            })
        }
        ModelId::Spherical(_) | ModelId::Cubic(_) => {
            // F ∈ (C ⊗min C)* iff F₀₀ + v̄ᵀ F̄ w̄ ≥ 0 on the local balls (zero cross terms).
            let local = s.local_norm().expect("central model");
            Box::new(move |x: &Mat| {
                let fbar = x.view((1, 1), (x.nrows() - 1, x.ncols() - 1)).into_owned();
                cross_terms_vanish(x)
                    && bilinear_max(&local, &local, &(-fbar))
                        .is_ok_and(|b| b.value <= x[(0, 0)] + MEMBERSHIP_TOL)
            })
        }
    })
}

fn cross_terms_vanish(x: &Mat) -> bool {
    let d = x.nrows();
    (1..d).all(|i| x[(0, i)] == 0.0 && x[(i, 0)] == 0.0)
}

/// `max{k ≥ 0 : member(k)}` for a membership predicate closed under shrinking `k`.
fn bisect_max(member: impl Fn(f64) -> bool, what: &'static str) -> Result<f64> {
    if !member(0.0) {
        return Err(Error::NotBracketed(what));
    }
    let mut lo = 0.0;
    let mut hi = 1.0;
    let mut doublings = 0;
    while member(hi) {
        lo = hi;
        hi *= 2.0;
        doublings += 1;
        if doublings > 60 {
            return Err(Error::NotBracketed(what));
        }
    }
    for _ in 0..BISECTION_MAX_ITER {
        if hi - lo <= BISECTION_TOL * hi.max(1e-3) {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if member(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Every catalog model used in the acceptance sweep, in a fixed order.
pub fn catalog_entries() -> Vec<SymmetricCatalogEntry> {
    let mut ids = Vec::new();
    ids.extend((2..=6).map(ModelId::Classical));
    ids.extend((2..=4).map(ModelId::Quantum));
    ids.extend((2..=4).map(ModelId::WTheory));
    ids.extend((3..=8).map(ModelId::Spherical));
    ids.extend((2..=8).map(ModelId::Cubic));
    ids.into_iter().map(SymmetricCatalogEntry::new).collect()
}

/// Tolerance at which numeric constants must reproduce the catalog.
pub const CATALOG_TOL: f64 = DEFAULT_TOL;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_examples() {
        let c = catalog_constants(ModelId::Classical(3));
        assert_eq!((c.m_plus_star, c.m_minus_star), (6.0, 3.0));
        assert!((c.k_plus - 1.0 / 3.0).abs() < 1e-15 && (c.k_minus - 1.0 / 6.0).abs() < 1e-15);
        let q = catalog_constants(ModelId::Quantum(2));
        assert!((q.k_plus - 1.0 / 6.0).abs() < 1e-15 && (q.k_minus - 0.5).abs() < 1e-15);
        assert_eq!((q.m_plus_star, q.m_minus_star), (2.0, 2.0));
        let s = catalog_constants(ModelId::Spherical(5));
        assert_eq!(
            (s.m_plus, s.m_minus_star, s.k_plus, s.k_minus),
            (1.0, 1.0, 0.25, 0.25)
        );
    }

    #[test]
    fn catalog_satisfies_identities() {
        for e in catalog_entries() {
            assert!(
                e.constants.invariant_violations(1e-12).is_empty(),
                "{}: {:?}",
                e.id,
                e.constants.invariant_violations(1e-12)
            );
        }
    }

    #[test]
    fn hiding_ratios() {
        for e in catalog_entries() {
            let r = werner_hiding_ratio(&e.constants);
            assert!(
                (r.ratio - e.expected_ratio).abs() < 1e-12,
                "{}: {}",
                e.id,
                r.ratio
            );
            let ln = werner_line_norms(&e.constants, r.ray.0, r.ray.1);
            assert!((ln.base / ln.sep - r.ratio).abs() < 1e-12, "{}", e.id);
        }
    }

    #[test]
    fn line_norm_examples() {
        let q = catalog_constants(ModelId::Quantum(2));
        let ln = werner_line_norms(&q, 0.0, 1.0);
        assert!((ln.base - 3.0).abs() < 1e-12 && (ln.sep - 2.0).abs() < 1e-12);
        let s = catalog_constants(ModelId::Spherical(5));
        assert!((werner_line_norms(&s, 1.0, 0.25).base - 1.0).abs() < 1e-12);
        assert_eq!(
            werner_line_norms(&s, 1.0, 0.0),
            LineNorms {
                base: 1.0,
                sep: 1.0
            }
        );
    }

    #[test]
    fn haar_projector() {
        for id in [
            ModelId::Classical(4),
            ModelId::Quantum(2),
            ModelId::Cubic(3),
        ] {
            let s = symmetric_structure(id).unwrap();
            let w = haar_projector_apply(&s, &s.werner_tensor(1.0, 0.0)).unwrap();
            assert!((w.a - 1.0).abs() < 1e-12 && w.b.abs() < 1e-12);
            let w = haar_projector_apply(&s, &s.e).unwrap();
            assert!(w.a.abs() < 1e-12 && (w.b - 1.0).abs() < 1e-12);
        }
        // ρS for two qubits.
        let s = symmetric_structure(ModelId::Quantum(2)).unwrap();
        let basis = hermitian_basis(2);
        let rho_s = crate::linalg::bipartite_coords(&crate::quantum::sym_proj(2), &basis, &basis);
        let w = haar_projector_apply(&s, &rho_s).unwrap();
        assert!((w.a - 1.0).abs() < 1e-12 && (w.b - 1.0 / 6.0).abs() < 1e-12);
    }

    #[test]
    fn dual_polytope() {
        let c = catalog_constants(ModelId::Classical(3));
        let v = dual_werner_polytope(&c, DualVariant::Separable);
        assert!((v[2].0 - 1.5 / 4.5).abs() < 1e-15 && (v[2].1 - 4.5 / 4.5).abs() < 1e-15);
        let q = catalog_constants(ModelId::Spherical(4));
        let v = dual_werner_polytope(&q, DualVariant::Allowed);
        assert_eq!(v[2].1, -v[3].1);
    }

    #[test]
    fn numeric_derivation_small() {
        for id in [
            ModelId::Classical(4),
            ModelId::Quantum(3),
            ModelId::WTheory(2),
            ModelId::Spherical(4),
            ModelId::Cubic(3),
        ] {
            let num = derive_constants_numerically(id).unwrap();
            let cat = catalog_constants(id);
            assert!(
                num.max_abs_difference(&cat) < 1e-9,
                "{id}: {num:?} vs {cat:?}"
            );
        }
    }
}
