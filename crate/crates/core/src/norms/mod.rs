//! Base and order-unit norms, matrix norms, and injective/projective tensor norms.

mod local;
mod matrix;
mod tensor;

pub use local::{LocalNorm, Support, ENUMERATION_BITS};
pub use matrix::{entrywise_one, inf_to_one, matrix_norms, MatrixNorms};
pub use tensor::{
    auerbach_ratio_check, bilinear_max, injective_norm, projective_norm,
    projective_with_certificate, AuerbachReport, BilinearMax, ProjectiveCertificate,
};

use crate::error::{check_dim, Error, Result};
use crate::gpt::{ConeDescriptor, GptModel};
use crate::linalg::{hermitian_basis, hermitian_eigenvalues, hermitian_from_coords, Vector};
use crate::lp::{LinearProgram, Relation, Sense};

/// Base norm: the norm whose dual ball is `[−u, u]`.
pub fn base_norm(model: &GptModel, x: &[f64]) -> Result<f64> {
    check_dim(model.dim(), x.len())?;
    match model.cone() {
        ConeDescriptor::Simplex(_) => Ok(x
            .iter()
            .zip(model.unit().iter())
            .map(|(v, u)| (v * u).abs())
            .sum()),
        ConeDescriptor::IceCream(n) if is_e0(model.unit()) => Ok(x[0].abs().max(n.eval(&x[1..]))),
        ConeDescriptor::IceCream(_) => Err(Error::InvalidModel(
            "centrally symmetric norms need the unit (1, 0, …, 0)".into(),
        )),
        ConeDescriptor::Psd(n) => {
            let u = model.operator(model.unit().as_slice()).expect("quantum");
            if !is_scalar(&u) {
                return Err(Error::InvalidModel(
                    "base norm needs a unit proportional to the identity".into(),
                ));
            }
            let scale = u[(0, 0)].re;
            let ev = hermitian_eigenvalues(&hermitian_from_coords(x, &hermitian_basis(*n)));
            Ok(scale * ev.iter().map(|v| v.abs()).sum::<f64>())
        }
        ConeDescriptor::PolyhedralByGenerators(g) => decomposition_lp(model, g, x),
        ConeDescriptor::PolyhedralByFacets(_) => {
            let rays = model
                .extreme_states()
                .ok_or(Error::InvalidModel("facet enumeration failed".into()))?;
            decomposition_lp(model, &rays, x)
        }
    }
}

/// Order-unit norm `min{t : −tu ≤ f ≤ tu}` of a functional.
pub fn order_unit_norm(model: &GptModel, f: &[f64]) -> Result<f64> {
    check_dim(model.dim(), f.len())?;
    match model.cone() {
        ConeDescriptor::Simplex(_) => Ok(f
            .iter()
            .zip(model.unit().iter())
            .fold(0.0, |m, (v, u)| m.max(v.abs() / u))),
        ConeDescriptor::IceCream(n) if is_e0(model.unit()) => {
            Ok(f[0].abs() + n.dual().eval(&f[1..]))
        }
        ConeDescriptor::IceCream(_) => Err(Error::InvalidModel(
            "centrally symmetric norms need the unit (1, 0, …, 0)".into(),
        )),
        ConeDescriptor::Psd(n) => {
            let u = model.operator(model.unit().as_slice()).expect("quantum");
            if !is_scalar(&u) {
                return Err(Error::InvalidModel(
                    "order-unit norm needs a unit proportional to the identity".into(),
                ));
            }
            let ev = hermitian_eigenvalues(&hermitian_from_coords(f, &hermitian_basis(*n)));
            Ok(ev.iter().fold(0.0f64, |m, v| m.max(v.abs())) / u[(0, 0)].re)
        }
        ConeDescriptor::PolyhedralByGenerators(_) | ConeDescriptor::PolyhedralByFacets(_) => {
            let rays = model
                .extreme_states()
                .ok_or(Error::InvalidModel("ray enumeration failed".into()))?;
            // With u(g) = 1 on every normalized ray, t = max |f(g)|.
            Ok(rays
                .iter()
                .fold(0.0, |m, g| m.max(model.pairing(f, g.as_slice()).abs())))
        }
    }
}

/// `min u(x₊) + u(x₋)` over decompositions `x = x₊ − x₋` with `x± ∈ C`.
fn decomposition_lp(model: &GptModel, rays: &[Vector], x: &[f64]) -> Result<f64> {
    let k = rays.len();
    let weights: Vec<f64> = rays
        .iter()
        .map(|g| model.pairing(model.unit().as_slice(), g.as_slice()))
        .collect();
    let mut obj = weights.clone();
    obj.extend(&weights);
    let mut lp = LinearProgram::new(Sense::Minimize, obj);
    for r in 0..x.len() {
        let mut row: Vec<f64> = rays.iter().map(|g| g[r]).collect();
        row.extend(rays.iter().map(|g| -g[r]));
        lp.add_constraint(row, Relation::Eq, x[r]);
    }
    debug_assert_eq!(lp.num_vars(), 2 * k);
    match lp.solve() {
        Ok(s) => Ok(s.objective),
        Err(Error::Infeasible) => Err(Error::InvalidModel("cone is not generating".into())),
        Err(e) => Err(e),
    }
}

fn is_scalar(u: &crate::linalg::CMat) -> bool {
    let d = u[(0, 0)];
    (u - crate::linalg::CMat::identity(u.nrows(), u.ncols()) * d).camax() < 1e-12
}

/// The base norm of a model written as a [`LocalNorm`] on its coordinates, when one exists.
pub fn base_local_norm(model: &GptModel) -> Option<LocalNorm> {
    match model.cone() {
        ConeDescriptor::Simplex(d) if model.unit().iter().all(|u| (*u - 1.0).abs() < 1e-15) => {
            Some(LocalNorm::EllOne(*d))
        }
        ConeDescriptor::IceCream(n) if is_e0(model.unit()) => {
            Some(LocalNorm::CentralBase(Box::new(n.clone())))
        }
        ConeDescriptor::PolyhedralByGenerators(_) | ConeDescriptor::PolyhedralByFacets(_) => {
            let states = model.extreme_states()?;
            let mut vs = states.clone();
            vs.extend(states.into_iter().map(|s| -s));
            LocalNorm::polytope(vs).ok()
        }
        _ => None,
    }
}

fn is_e0(u: &Vector) -> bool {
    (u[0] - 1.0).abs() < 1e-15 && u.iter().skip(1).all(|v| *v == 0.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gpt::{make_classical, make_cubic, make_quantum, make_spherical};

    #[test]
    fn catalog_base_norms() {
        let c3 = make_classical(3).unwrap();
        assert!((base_norm(&c3, &[1.0, -2.0, 0.5]).unwrap() - 3.5).abs() < 1e-12);
        assert!((order_unit_norm(&c3, &[1.0, -2.0, 0.5]).unwrap() - 2.0).abs() < 1e-12);
        let s4 = make_spherical(4).unwrap();
        assert!((base_norm(&s4, &[0.3, 0.1, 0.2, 0.2]).unwrap() - 0.3).abs() < 1e-12);
        let q2 = make_quantum(2).unwrap();
        let z = [0.0, 0.0, 0.0, 2f64.sqrt()];
        assert!((base_norm(&q2, &z).unwrap() - 2.0).abs() < 1e-12);
        // diag(3, −1) = 1·𝟙 + 2·Z.
        let f = [2f64.sqrt(), 0.0, 0.0, 2.0 * 2f64.sqrt()];
        assert!((order_unit_norm(&q2, &f).unwrap() - 3.0).abs() < 1e-12);
        let c = make_cubic(2).unwrap();
        assert!((order_unit_norm(&c, &[1.0, 0.5, -0.5]).unwrap() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn polyhedral_base_norm_matches_closed_form() {
        use crate::gpt::{ConeDescriptor, GptModel};
        // Classical trit given by its generators.
        let gens = (0..3)
            .map(|i| {
                let mut v = Vector::zeros(3);
                v[i] = 1.0;
                v
            })
            .collect();
        let m = GptModel::new(
            ConeDescriptor::PolyhedralByGenerators(gens),
            Vector::from_element(3, 1.0),
        )
        .unwrap();
        assert!((base_norm(&m, &[1.0, -2.0, 0.5]).unwrap() - 3.5).abs() < 1e-9);
        assert!((order_unit_norm(&m, &[1.0, -2.0, 0.5]).unwrap() - 2.0).abs() < 1e-12);
    }
}
