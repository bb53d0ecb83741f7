//! Single-system models `(V, C, u)`: cones, states, effects and measurements.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{check_dim, Error, Result};
use crate::linalg::{hermitian_basis, hermitian_from_coords, min_eigenvalue, CMat, Mat, Vector};
use crate::lp::{LinearProgram, Relation, Sense};
use crate::norms::LocalNorm;

/// Default absolute membership tolerance.
pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub enum ConeDescriptor {
    /// Positive orthant `ℝ^d_+`.
    Simplex(usize),
    /// `{x : x₀ ≥ |x̄|}` for a norm on the last `d − 1` coordinates.
    IceCream(LocalNorm),
    /// Positive semidefinite `n×n` Hermitian matrices, in orthonormal Hermitian-basis coordinates.
    Psd(usize),
    PolyhedralByGenerators(Vec<Vector>),
    PolyhedralByFacets(Vec<Vector>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct GptModel {
    dim: usize,
    cone: ConeDescriptor,
    unit: Vector,
    id: Option<ModelId>,
}

/// Catalog model identifiers as used on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ModelId {
    Classical(usize),
    Quantum(usize),
    WTheory(usize),
    Spherical(usize),
    Cubic(usize),
}

impl fmt::Display for ModelId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelId::Classical(d) => write!(f, "classical:{d}"),
            ModelId::Quantum(n) => write!(f, "quantum:{n}"),
            ModelId::WTheory(n) => write!(f, "wtheory:{n}"),
            ModelId::Spherical(d) => write!(f, "spherical:{d}"),
            ModelId::Cubic(n) => write!(f, "cubic:{n}"),
        }
    }
}

impl FromStr for ModelId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let unknown = || Error::UnknownModel(s.to_string());
        let (kind, dim) = s.trim().split_once(':').ok_or_else(unknown)?;
        let dim: usize = dim.trim().parse().map_err(|_| unknown())?;
        let id = match kind.trim() {
            "classical" => ModelId::Classical(dim),
            "quantum" => ModelId::Quantum(dim),
            "wtheory" => ModelId::WTheory(dim),
            "spherical" => ModelId::Spherical(dim),
            "cubic" => ModelId::Cubic(dim),
            _ => return Err(unknown()),
        };
        if dim < 2 {
            return Err(Error::InvalidDimension {
                dim,
                reason: "catalog models need dimension at least 2",
            });
        }
        Ok(id)
    }
}

impl ModelId {
    /// The local model. A W-theory composite is built from two quantum systems.
    pub fn model(&self) -> Result<GptModel> {
        match *self {
            ModelId::Classical(d) => make_classical(d),
            ModelId::Quantum(n) | ModelId::WTheory(n) => make_quantum(n),
            ModelId::Spherical(d) => make_spherical(d),
            ModelId::Cubic(n) => make_cubic(n),
        }
    }
}

pub fn make_classical(d: usize) -> Result<GptModel> {
    check_min_dim(d)?;
    let mut m = GptModel::new(ConeDescriptor::Simplex(d), Vector::from_element(d, 1.0))?;
    m.id = Some(ModelId::Classical(d));
    Ok(m)
}

/// `n`-level quantum system; vectors are coordinates over the basis of [`hermitian_basis`].
pub fn make_quantum(n: usize) -> Result<GptModel> {
    check_min_dim(n)?;
    let mut unit = Vector::zeros(n * n);
    unit[0] = (n as f64).sqrt();
    let mut m = GptModel::new(ConeDescriptor::Psd(n), unit)?;
    m.id = Some(ModelId::Quantum(n));
    Ok(m)
}

/// Spherical model of total dimension `d`: Euclidean ice-cream cone.
pub fn make_spherical(d: usize) -> Result<GptModel> {
    check_min_dim(d)?;
    let mut m = GptModel::new(ConeDescriptor::IceCream(LocalNorm::Euclidean(d - 1)), e0(d))?;
    m.id = Some(ModelId::Spherical(d));
    Ok(m)
}

/// Cubic model over an `n`-dimensional hypercube (total dimension `n + 1`).
pub fn make_cubic(n: usize) -> Result<GptModel> {
    check_min_dim(n)?;
    let mut m = GptModel::new(ConeDescriptor::IceCream(LocalNorm::EllInf(n)), e0(n + 1))?;
    m.id = Some(ModelId::Cubic(n));
    Ok(m)
}

fn check_min_dim(d: usize) -> Result<()> {
    if d < 2 {
        Err(Error::InvalidDimension {
            dim: d,
            reason: "models need dimension at least 2",
        })
    } else {
        Ok(())
    }
}

fn e0(d: usize) -> Vector {
    let mut v = Vector::zeros(d);
    v[0] = 1.0;
    v
}

impl GptModel {
    /// Builds a model after checking the cone and the unit effect.
    pub fn new(cone: ConeDescriptor, unit: Vector) -> Result<Self> {
        let dim = match &cone {
            ConeDescriptor::Simplex(d) => *d,
            ConeDescriptor::IceCream(n) => n.dim() + 1,
            ConeDescriptor::Psd(n) => n * n,
            ConeDescriptor::PolyhedralByGenerators(g) | ConeDescriptor::PolyhedralByFacets(g) => {
                g.first().map_or(0, |v| v.len())
            }
        };
        if dim == 0 {
            return Err(Error::InvalidModel("empty cone description".into()));
        }
        check_dim(dim, unit.len())?;
        let model = GptModel {
            dim,
            cone,
            unit,
            id: None,
        };
        model.validate()?;
        Ok(model)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn cone(&self) -> &ConeDescriptor {
        &self.cone
    }

    pub fn unit(&self) -> &Vector {
        &self.unit
    }

    pub fn id(&self) -> Option<ModelId> {
        self.id
    }

    /// Quantum level count, if this is a quantum model.
    pub fn quantum_levels(&self) -> Option<usize> {
        match self.cone {
            ConeDescriptor::Psd(n) => Some(n),
            _ => None,
        }
    }

    /// Local norm of a centrally symmetric model.
    pub fn central_norm(&self) -> Option<&LocalNorm> {
        match &self.cone {
            ConeDescriptor::IceCream(n) => Some(n),
            _ => None,
        }
    }

    fn validate(&self) -> Result<()> {
        match &self.cone {
            ConeDescriptor::Simplex(_) => {
                if self.unit.iter().any(|v| *v <= 0.0) {
                    return Err(Error::InvalidModel(
                        "unit must be strictly positive on the orthant".into(),
                    ));
                }
            }
            ConeDescriptor::IceCream(n) => {
                if self.unit[0] <= n.dual().eval(&self.unit.as_slice()[1..]) {
                    return Err(Error::InvalidModel(
                        "unit must lie in the interior of the dual cone".into(),
                    ));
                }
            }
            ConeDescriptor::Psd(n) => {
                let u = hermitian_from_coords(self.unit.as_slice(), &hermitian_basis(*n));
                if min_eigenvalue(&u) <= 0.0 {
                    return Err(Error::InvalidModel("unit must be positive definite".into()));
                }
            }
            ConeDescriptor::PolyhedralByGenerators(g) => {
                validate_generators(g, self.dim)?;
                if g.iter().any(|x| self.unit.dot(x) <= 0.0) {
                    return Err(Error::InvalidModel(
                        "unit must be strictly positive on every generator".into(),
                    ));
                }
            }
            ConeDescriptor::PolyhedralByFacets(f) => {
                // Salient ⇔ facets span the dual; generating ⇔ no facet pair cancels.
                validate_generators(f, self.dim)?;
                let rays = facet_cone_rays(f, self.dim)?;
                if rays.is_empty() {
                    return Err(Error::InvalidModel(
                        "facet description has no extreme rays".into(),
                    ));
                }
                if rays.iter().any(|x| self.unit.dot(x) <= 0.0) {
                    return Err(Error::InvalidModel(
                        "unit must be strictly positive on every extreme ray".into(),
                    ));
                }
            }
        }
        Ok(())
    }

    /// Extreme rays of `C`, normalized to `u = 1`, when the cone is a small polytope.
    pub fn extreme_states(&self) -> Option<Vec<Vector>> {
        let rays = match &self.cone {
            ConeDescriptor::Simplex(d) => (0..*d).map(|i| unit_vec(*d, i)).collect(),
            ConeDescriptor::IceCream(n) => central_rays(n)?,
            ConeDescriptor::Psd(_) => return None,
            ConeDescriptor::PolyhedralByGenerators(g) => g.clone(),
            ConeDescriptor::PolyhedralByFacets(f) => facet_cone_rays(f, self.dim).ok()?,
        };
        Some(
            rays.into_iter()
                .map(|r| {
                    let s = self.unit.dot(&r);
                    r / s
                })
                .collect(),
        )
    }

    /// Extreme rays of the dual cone `C*`, when it is a small polytope.
    pub fn dual_extreme_rays(&self) -> Option<Vec<Vector>> {
        match &self.cone {
            ConeDescriptor::Simplex(d) => Some((0..*d).map(|i| unit_vec(*d, i)).collect()),
            ConeDescriptor::IceCream(n) => central_rays(&n.dual()),
            ConeDescriptor::Psd(_) => None,
            ConeDescriptor::PolyhedralByGenerators(g) => facet_cone_rays(g, self.dim).ok(),
            ConeDescriptor::PolyhedralByFacets(f) => Some(f.clone()),
        }
    }

    /// The dual model `(V*, C*, u_*)` for a distinguished state `u_*`.
    pub fn dual_model(&self, ustar: Vector) -> Result<GptModel> {
        let cone = match &self.cone {
            ConeDescriptor::Simplex(d) => ConeDescriptor::Simplex(*d),
            ConeDescriptor::IceCream(n) => ConeDescriptor::IceCream(n.dual()),
            ConeDescriptor::Psd(n) => ConeDescriptor::Psd(*n),
            ConeDescriptor::PolyhedralByGenerators(g) => {
                ConeDescriptor::PolyhedralByFacets(g.clone())
            }
            ConeDescriptor::PolyhedralByFacets(f) => {
                ConeDescriptor::PolyhedralByGenerators(f.clone())
            }
        };
        GptModel::new(cone, ustar)
    }

    /// Quantum coordinates as an operator.
    pub fn operator(&self, x: &[f64]) -> Option<CMat> {
        self.quantum_levels()
            .map(|n| hermitian_from_coords(x, &hermitian_basis(n)))
    }

    pub fn pairing(&self, f: &[f64], x: &[f64]) -> f64 {
        f.iter().zip(x).map(|(a, b)| a * b).sum()
    }

    pub fn vector(&self, coords: Vector) -> Result<GptVector<'_>> {
        check_dim(self.dim, coords.len())?;
        Ok(GptVector {
            coords,
            model: self,
        })
    }
}

fn unit_vec(d: usize, i: usize) -> Vector {
    let mut v = Vector::zeros(d);
    v[i] = 1.0;
    v
}

/// Rays `(1, v)` over the vertices `v` of the local unit ball.
fn central_rays(n: &LocalNorm) -> Option<Vec<Vector>> {
    let half = n.half_vertices_limited(1 << 16)?;
    let d = n.dim() + 1;
    let mut out = Vec::with_capacity(2 * half.len());
    for v in half {
        for s in [1.0, -1.0] {
            let mut r = Vector::zeros(d);
            r[0] = 1.0;
            r.rows_mut(1, d - 1).copy_from(&(&v * s));
            out.push(r);
        }
    }
    Some(out)
}

fn validate_generators(g: &[Vector], dim: usize) -> Result<()> {
    if g.iter().any(|v| v.len() != dim) {
        return Err(Error::InvalidModel("ray lengths differ".into()));
    }
    if Mat::from_columns(g).rank(1e-10) < dim {
        return Err(Error::InvalidModel("rays do not span the space".into()));
    }
    for v in g {
        if generated_by(g, &(-v), 1e-10) {
            return Err(Error::InvalidModel("cone is not salient".into()));
        }
    }
    Ok(())
}

/// Extreme rays of `{x : fᵢ(x) ≥ 0}` by enumerating `(d−1)`-subsets of facets.
pub(crate) fn facet_cone_rays(facets: &[Vector], dim: usize) -> Result<Vec<Vector>> {
    let k = dim - 1;
    let count = binomial(facets.len(), k);
    if count > 200_000 {
        return Err(Error::EnumerationLimit {
            what: "facet subsets",
            bits: (count as f64).log2().ceil() as usize,
            limit: 17,
        });
    }
    let mut rays: Vec<Vector> = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        let rows: Vec<_> = idx.iter().map(|&i| facets[i].transpose()).collect();
        let a = if k == 0 {
            Mat::zeros(0, dim)
        } else {
            Mat::from_rows(&rows)
        };
        // Null space of the selected facets: one-dimensional iff they are independent.
        let svd = nalgebra::SVD::new(a.clone().resize(dim, dim, 0.0), false, true);
        let vt = svd.v_t.unwrap();
        let sv = &svd.singular_values;
        let zero: Vec<usize> = (0..dim).filter(|&i| sv[i] <= 1e-10).collect();
        if zero.len() == 1 {
            let r = vt.row(zero[0]).transpose();
            for cand in [r.clone(), -r] {
                if facets.iter().all(|f| f.dot(&cand) >= -1e-10) {
                    let cand = &cand / cand.amax();
                    if !rays.iter().any(|q| (q - &cand).amax() < 1e-9) {
                        rays.push(cand);
                    }
                }
            }
        }
        if !next_combination(&mut idx, facets.len()) {
            break;
        }
    }
    Ok(rays)
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let mut r: u128 = 1;
    for i in 0..k.min(n - k) {
        r = r * (n - i) as u128 / (i + 1) as u128;
    }
    r.min(usize::MAX as u128) as usize
}

fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    for i in (0..k).rev() {
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Feasibility LP: is `x` within `tol` of the conic hull of `g`?
pub(crate) fn generated_by(g: &[Vector], x: &Vector, tol: f64) -> bool {
    let n = g.len();
    // Variables: λ (n) and a slack t; minimize t with |x − Σλg| ≤ t componentwise.
    let mut obj = vec![0.0; n + 1];
    obj[n] = 1.0;
    let mut lp = LinearProgram::new(Sense::Minimize, obj);
    for r in 0..x.len() {
        let mut up: Vec<f64> = g.iter().map(|v| v[r]).collect();
        up.push(-1.0);
        lp.add_constraint(up, Relation::Le, x[r]);
        let mut lo: Vec<f64> = g.iter().map(|v| v[r]).collect();
        lo.push(1.0);
        lp.add_constraint(lo, Relation::Ge, x[r]);
    }
    lp.solve().map(|s| s.objective <= tol).unwrap_or(false)
}

/// Whether generator and facet descriptions describe the same cone.
pub fn polyhedral_descriptions_agree(
    generators: &[Vector],
    facets: &[Vector],
    tol: f64,
) -> Result<bool> {
    let dim = generators.first().map_or(0, |v| v.len());
    if dim == 0 || facets.iter().any(|f| f.len() != dim) {
        return Err(Error::InvalidArgument(
            "descriptions have inconsistent dimensions".into(),
        ));
    }
    let inside = generators
        .iter()
        .all(|g| facets.iter().all(|f| f.dot(g) >= -tol));
    if !inside {
        return Ok(false);
    }
    let rays = facet_cone_rays(facets, dim)?;
    Ok(rays.iter().all(|r| generated_by(generators, r, tol)))
}

/// Membership of `x` in `C`, up to an absolute tolerance.
pub fn cone_contains(model: &GptModel, x: &[f64], tol: f64) -> Result<bool> {
    check_dim(model.dim, x.len())?;
    Ok(match &model.cone {
        ConeDescriptor::Simplex(_) => x.iter().all(|v| *v >= -tol),
        ConeDescriptor::IceCream(n) => x[0] + tol >= n.eval(&x[1..]),
        ConeDescriptor::Psd(n) => {
            min_eigenvalue(&hermitian_from_coords(x, &hermitian_basis(*n))) >= -tol
        }
        ConeDescriptor::PolyhedralByFacets(f) => {
            f.iter().all(|g| model.pairing(g.as_slice(), x) >= -tol)
        }
        ConeDescriptor::PolyhedralByGenerators(g) => {
            generated_by(g, &Vector::from_column_slice(x), tol)
        }
    })
}

/// Membership of a functional in the dual cone `C*`.
pub fn dual_cone_contains(model: &GptModel, f: &[f64], tol: f64) -> Result<bool> {
    check_dim(model.dim, f.len())?;
    Ok(match &model.cone {
        ConeDescriptor::Simplex(_) => f.iter().all(|v| *v >= -tol),
        ConeDescriptor::IceCream(n) => f[0] + tol >= n.dual().eval(&f[1..]),
        ConeDescriptor::Psd(n) => {
            min_eigenvalue(&hermitian_from_coords(f, &hermitian_basis(*n))) >= -tol
        }
        ConeDescriptor::PolyhedralByGenerators(g) => {
            g.iter().all(|x| model.pairing(f, x.as_slice()) >= -tol)
        }
        ConeDescriptor::PolyhedralByFacets(fs) => {
            generated_by(fs, &Vector::from_column_slice(f), tol)
        }
    })
}

/// A vector of a model's space; a state when it lies in `C` with `u(x) = 1`.
#[derive(Debug, Clone)]
pub struct GptVector<'a> {
    pub coords: Vector,
    pub model: &'a GptModel,
}

impl GptVector<'_> {
    pub fn normalization(&self) -> f64 {
        self.model.unit.dot(&self.coords)
    }

    pub fn is_state(&self, tol: f64) -> bool {
        (self.normalization() - 1.0).abs() <= tol
            && cone_contains(self.model, self.coords.as_slice(), tol).unwrap_or(false)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Measurement {
    pub effects: Vec<Vector>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum MeasurementDefect {
    Empty,
    DimensionMismatch,
    /// Effect `i` is not in the dual cone.
    NotPositive(usize),
    /// `u − eᵢ` is not in the dual cone.
    ExceedsUnit(usize),
    /// Effects do not sum to the unit.
    NotNormalized,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MeasurementCheck {
    pub valid: bool,
    pub defect: Option<MeasurementDefect>,
}

impl MeasurementCheck {
    fn fail(d: MeasurementDefect) -> Self {
        MeasurementCheck {
            valid: false,
            defect: Some(d),
        }
    }
}

/// Checks `0 ≤ eᵢ ≤ u` for every effect and `Σ eᵢ = u`.
pub fn is_measurement(model: &GptModel, effects: &[Vector], tol: f64) -> MeasurementCheck {
    if effects.is_empty() {
        return MeasurementCheck::fail(MeasurementDefect::Empty);
    }
    if effects.iter().any(|e| e.len() != model.dim) {
        return MeasurementCheck::fail(MeasurementDefect::DimensionMismatch);
    }
    for (i, e) in effects.iter().enumerate() {
        if !dual_cone_contains(model, e.as_slice(), tol).unwrap_or(false) {
            return MeasurementCheck::fail(MeasurementDefect::NotPositive(i));
        }
        let rest = &model.unit - e;
        if !dual_cone_contains(model, rest.as_slice(), tol).unwrap_or(false) {
            return MeasurementCheck::fail(MeasurementDefect::ExceedsUnit(i));
        }
    }
    let total = effects
        .iter()
        .fold(Vector::zeros(model.dim), |acc, e| acc + e);
    let scale = model.unit.amax().max(1.0);
    if (total - &model.unit).amax() > tol * scale {
        return MeasurementCheck::fail(MeasurementDefect::NotNormalized);
    }
    MeasurementCheck {
        valid: true,
        defect: None,
    }
}

impl Measurement {
    pub fn check(&self, model: &GptModel, tol: f64) -> MeasurementCheck {
        is_measurement(model, &self.effects, tol)
    }

    /// Merges effects according to `groups` (a partition of the effect indices).
    pub fn coarse_grain(&self, groups: &[Vec<usize>]) -> Result<Measurement> {
        let d = self.effects.first().map_or(0, |e| e.len());
        let mut effects = Vec::with_capacity(groups.len());
        for g in groups {
            let mut e = Vector::zeros(d);
            for &i in g {
                e += self.effects.get(i).ok_or(Error::IndexOutOfRange {
                    index: i,
                    bound: self.effects.len(),
                })?;
            }
            effects.push(e);
        }
        Ok(Measurement { effects })
    }
}

/// Data hiding ratio `(2 − ε)/ε` of the two-outcome classical bit against the single
/// measurement `((ε, 0), (1 − ε, 1))`.
pub fn single_measurement_ratio(epsilon: f64) -> Result<f64> {
    if !(epsilon > 0.0 && epsilon <= 1.0) {
        return Err(Error::InvalidArgument(format!(
            "epsilon must lie in (0, 1], got {epsilon}"
        )));
    }
    Ok((2.0 - epsilon) / epsilon)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: &[f64]) -> Vector {
        Vector::from_column_slice(x)
    }

    #[test]
    fn catalog_units() {
        assert_eq!(
            make_classical(3).unwrap().unit().as_slice(),
            &[1.0, 1.0, 1.0]
        );
        assert_eq!(
            make_spherical(4).unwrap().unit().as_slice(),
            &[1.0, 0.0, 0.0, 0.0]
        );
        assert_eq!(make_cubic(2).unwrap().dim(), 3);
        assert!(make_classical(1).is_err());
        assert!(make_quantum(0).is_err());
    }

    #[test]
    fn states_of_centrally_symmetric_models() {
        let s = make_spherical(4).unwrap();
        assert!(s
            .vector(v(&[1.0, 0.5, 0.5, 0.5]))
            .unwrap()
            .is_state(DEFAULT_TOL));
        let c = make_cubic(2).unwrap();
        assert!(cone_contains(&c, &[1.0, 0.6, 0.6], DEFAULT_TOL).unwrap());
        // The cubic cone bounds the sup norm; the ℓ1 condition lives in the dual.
        assert!(!dual_cone_contains(&c, &[1.0, 0.6, 0.6], DEFAULT_TOL).unwrap());
        assert!(!cone_contains(&c, &[1.0, 1.2, 0.0], DEFAULT_TOL).unwrap());
    }

    #[test]
    fn membership_examples() {
        let c3 = make_classical(3).unwrap();
        assert!(cone_contains(&c3, &[1.0, 0.0, 2.0], DEFAULT_TOL).unwrap());
        assert!(dual_cone_contains(&c3, &[0.0, 1.0, 3.0], DEFAULT_TOL).unwrap());
        let s3 = make_spherical(3).unwrap();
        assert!(!cone_contains(&s3, &[1.0, 1.0001, 0.0], 1e-9).unwrap());
        assert!(dual_cone_contains(&s3, &[1.0, 0.9, 0.0], DEFAULT_TOL).unwrap());
        let q2 = make_quantum(2).unwrap();
        // Pauli Z is the last basis element scaled by √2.
        let z = [0.0, 0.0, 0.0, 2f64.sqrt()];
        assert!(!cone_contains(&q2, &z, DEFAULT_TOL).unwrap());
        assert!(cone_contains(&c3, &[1.0, 2.0], DEFAULT_TOL).is_err());
    }

    #[test]
    fn measurements() {
        let c2 = make_classical(2).unwrap();
        assert!(is_measurement(&c2, &[v(&[1.0, 0.0]), v(&[0.0, 1.0])], DEFAULT_TOL).valid);
        assert!(is_measurement(&c2, &[v(&[0.1, 0.0]), v(&[0.9, 1.0])], DEFAULT_TOL).valid);
        let twice = is_measurement(&c2, &[v(&[1.0, 1.0]), v(&[1.0, 1.0])], DEFAULT_TOL);
        assert!(!twice.valid);
        assert_eq!(
            is_measurement(&c2, &[], DEFAULT_TOL).defect,
            Some(MeasurementDefect::Empty)
        );
    }

    #[test]
    fn single_measurement_fixture() {
        assert_eq!(single_measurement_ratio(1.0).unwrap(), 1.0);
        assert!((single_measurement_ratio(0.1).unwrap() - 19.0).abs() < 1e-12);
        assert!((single_measurement_ratio(0.01).unwrap() - 199.0).abs() < 1e-9);
        assert!(single_measurement_ratio(0.0).is_err());
        assert!(single_measurement_ratio(1.5).is_err());
    }

    #[test]
    fn polyhedral_models() {
        // Square cone over the ℓ1 ball, given both ways.
        let gens: Vec<Vector> = [
            [1.0, 1.0, 0.0],
            [1.0, -1.0, 0.0],
            [1.0, 0.0, 1.0],
            [1.0, 0.0, -1.0],
        ]
        .iter()
        .map(|r| v(r))
        .collect();
        let facets: Vec<Vector> = [
            [1.0, 1.0, 1.0],
            [1.0, 1.0, -1.0],
            [1.0, -1.0, 1.0],
            [1.0, -1.0, -1.0],
        ]
        .iter()
        .map(|r| v(r))
        .collect();
        assert!(polyhedral_descriptions_agree(&gens, &facets, 1e-9).unwrap());
        assert!(!polyhedral_descriptions_agree(&gens, &facets[..3], 1e-9).unwrap());
        let by_g = GptModel::new(
            ConeDescriptor::PolyhedralByGenerators(gens),
            v(&[1.0, 0.0, 0.0]),
        )
        .unwrap();
        let by_f = GptModel::new(
            ConeDescriptor::PolyhedralByFacets(facets),
            v(&[1.0, 0.0, 0.0]),
        )
        .unwrap();
        for x in [[1.0, 0.3, 0.6], [1.0, 0.8, 0.3], [2.0, -1.0, -1.0]] {
            assert_eq!(
                cone_contains(&by_g, &x, 1e-9).unwrap(),
                cone_contains(&by_f, &x, 1e-9).unwrap()
            );
        }
        assert_eq!(by_f.extreme_states().unwrap().len(), 4);
    }

    #[test]
    fn rejects_invalid_cones() {
        let half_space = vec![v(&[1.0, 0.0]), v(&[-1.0, 0.0]), v(&[0.0, 1.0])];
        assert!(GptModel::new(
            ConeDescriptor::PolyhedralByGenerators(half_space),
            v(&[0.0, 1.0])
        )
        .is_err());
        assert!(GptModel::new(ConeDescriptor::Simplex(2), v(&[1.0, 0.0])).is_err());
    }

    #[test]
    fn model_ids_round_trip() {
        for s in [
            "classical:3",
            "quantum:2",
            "wtheory:3",
            "spherical:5",
            "cubic:8",
        ] {
            assert_eq!(s.parse::<ModelId>().unwrap().to_string(), s);
        }
        assert!("banana:3".parse::<ModelId>().is_err());
        assert!("classical:x".parse::<ModelId>().is_err());
        assert!("classical:1".parse::<ModelId>().is_err());
    }
}
