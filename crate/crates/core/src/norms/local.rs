use crate::error::{Error, Result};
use crate::linalg::Vector;
use crate::lp::{LinearProgram, Relation, Sense};

/// Largest number of sign bits we are willing to enumerate.
pub const ENUMERATION_BITS: usize = 22;

/// A norm on a finite-dimensional real space.
///
/// The two `Central*` variants are the base and order-unit norms of a
/// centrally symmetric model, `max{|x₀|, |x̄|}` and `|f₀| + |f̄|_*`, built
/// over an inner norm on the remaining coordinates.
#[derive(Debug, Clone, PartialEq)]
pub enum LocalNorm {
    Euclidean(usize),
    EllOne(usize),
    EllInf(usize),
    /// Unit ball is the convex hull of the listed points (closed under negation).
    PolytopeByVertices(Vec<Vector>),
    /// `|x| = maxᵢ |⟨fᵢ, x⟩|`.
    PolytopeByFacets(Vec<Vector>),
    CentralBase(Box<LocalNorm>),
    CentralOrderUnit(Box<LocalNorm>),
}

/// Result of maximizing a linear functional over a unit ball.
#[derive(Debug, Clone)]
pub struct Support {
    pub value: f64,
    pub point: Vector,
}

impl LocalNorm {
    /// Validated polytope norm: the vertex list must be symmetric and span the space.
    pub fn polytope(vertices: Vec<Vector>) -> Result<Self> {
        check_symmetric_spanning(&vertices)?;
        Ok(LocalNorm::PolytopeByVertices(vertices))
    }

    /// Validated polytope norm given through the extreme points of its dual ball.
    pub fn polytope_by_facets(facets: Vec<Vector>) -> Result<Self> {
        check_symmetric_spanning(&facets)?;
        Ok(LocalNorm::PolytopeByFacets(facets))
    }

    pub fn dim(&self) -> usize {
        match self {
            LocalNorm::Euclidean(d) | LocalNorm::EllOne(d) | LocalNorm::EllInf(d) => *d,
            LocalNorm::PolytopeByVertices(v) | LocalNorm::PolytopeByFacets(v) => {
                v.first().map_or(0, |x| x.len())
            }
            LocalNorm::CentralBase(inner) | LocalNorm::CentralOrderUnit(inner) => inner.dim() + 1,
        }
    }

    pub fn name(&self) -> String {
        match self {
            LocalNorm::Euclidean(d) => format!("l2({d})"),
            LocalNorm::EllOne(d) => format!("l1({d})"),
            LocalNorm::EllInf(d) => format!("linf({d})"),
            LocalNorm::PolytopeByVertices(v) => format!("polytope({} vertices)", v.len()),
            LocalNorm::PolytopeByFacets(f) => format!("polytope({} facets)", f.len()),
            LocalNorm::CentralBase(inner) => format!("base[{}]", inner.name()),
            LocalNorm::CentralOrderUnit(inner) => format!("order-unit[{}]", inner.name()),
        }
    }

    pub fn dual(&self) -> LocalNorm {
        match self {
            LocalNorm::Euclidean(d) => LocalNorm::Euclidean(*d),
            LocalNorm::EllOne(d) => LocalNorm::EllInf(*d),
            LocalNorm::EllInf(d) => LocalNorm::EllOne(*d),
            LocalNorm::PolytopeByVertices(v) => LocalNorm::PolytopeByFacets(v.clone()),
            LocalNorm::PolytopeByFacets(f) => LocalNorm::PolytopeByVertices(f.clone()),
            LocalNorm::CentralBase(inner) => LocalNorm::CentralOrderUnit(Box::new(inner.dual())),
            LocalNorm::CentralOrderUnit(inner) => LocalNorm::CentralBase(Box::new(inner.dual())),
        }
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        debug_assert_eq!(x.len(), self.dim());
        match self {
            LocalNorm::Euclidean(_) => x.iter().map(|v| v * v).sum::<f64>().sqrt(),
            LocalNorm::EllOne(_) => x.iter().map(|v| v.abs()).sum(),
            LocalNorm::EllInf(_) => x.iter().fold(0.0, |m, v| m.max(v.abs())),
            LocalNorm::PolytopeByFacets(f) => f
                .iter()
                .map(|g| dot(g.as_slice(), x).abs())
                .fold(0.0, f64::max),
            LocalNorm::PolytopeByVertices(v) => gauge(v, x),
            LocalNorm::CentralBase(inner) => x[0].abs().max(inner.eval(&x[1..])),
            LocalNorm::CentralOrderUnit(inner) => x[0].abs() + inner.eval(&x[1..]),
        }
    }

    /// `sup{⟨g, x⟩ : |x| ≤ 1}` together with a maximizing extreme point.
    pub fn support(&self, g: &[f64]) -> Support {
        let d = self.dim();
        match self {
            LocalNorm::Euclidean(_) => {
                let n = g.iter().map(|v| v * v).sum::<f64>().sqrt();
                let point = if n > 0.0 {
                    Vector::from_iterator(d, g.iter().map(|v| v / n))
                } else {
                    unit(d, 0)
                };
                Support { value: n, point }
            }
            LocalNorm::EllOne(_) => {
                let (i, m) = g.iter().enumerate().fold((0, -1.0), |(bi, bm), (i, v)| {
                    if v.abs() > bm {
                        (i, v.abs())
                    } else {
                        (bi, bm)
                    }
                });
                let mut point = Vector::zeros(d);
                point[i] = if g[i] < 0.0 { -1.0 } else { 1.0 };
                Support {
                    value: m.max(0.0),
                    point,
                }
            }
            LocalNorm::EllInf(_) => Support {
                value: g.iter().map(|v| v.abs()).sum(),
                point: Vector::from_iterator(
                    d,
                    g.iter().map(|v| if *v < 0.0 { -1.0 } else { 1.0 }),
                ),
            },
            LocalNorm::PolytopeByVertices(vs) => {
                let mut best = Support {
                    value: f64::NEG_INFINITY,
                    point: vs[0].clone(),
                };
                for v in vs {
                    let val = dot(v.as_slice(), g);
                    if val > best.value {
                        best = Support {
                            value: val,
                            point: v.clone(),
                        };
                    }
                }
                best
            }
            LocalNorm::PolytopeByFacets(fs) => facet_support(fs, g),
            LocalNorm::CentralBase(inner) => {
                let s = inner.support(&g[1..]);
                let mut point = Vector::zeros(d);
                point[0] = if g[0] < 0.0 { -1.0 } else { 1.0 };
                point.rows_mut(1, d - 1).copy_from(&s.point);
                Support {
                    value: g[0].abs() + s.value,
                    point,
                }
            }
            LocalNorm::CentralOrderUnit(inner) => {
                let s = inner.support(&g[1..]);
                let mut point = Vector::zeros(d);
                if g[0].abs() >= s.value {
                    point[0] = if g[0] < 0.0 { -1.0 } else { 1.0 };
                    Support {
                        value: g[0].abs(),
                        point,
                    }
                } else {
                    point.rows_mut(1, d - 1).copy_from(&s.point);
                    Support {
                        value: s.value,
                        point,
                    }
                }
            }
        }
    }

    /// Extreme points of the unit ball, one from each `±` pair, if the ball is a
    /// polytope with at most `2^ENUMERATION_BITS` of them.
    pub fn half_vertices(&self) -> Option<Vec<Vector>> {
        self.half_vertices_limited(1usize << ENUMERATION_BITS)
    }

    pub fn half_vertices_limited(&self, limit: usize) -> Option<Vec<Vector>> {
        let d = self.dim();
        match self {
            LocalNorm::Euclidean(_) | LocalNorm::PolytopeByFacets(_) => None,
            LocalNorm::EllOne(_) => (d <= limit).then(|| (0..d).map(|i| unit(d, i)).collect()),
            LocalNorm::EllInf(_) => {
                if d == 0 || d > usize::BITS as usize || (1usize << (d - 1)) > limit {
                    return None;
                }
                Some(
                    (0..1usize << (d - 1))
                        .map(|mask| {
                            Vector::from_iterator(
                                d,
                                (0..d).map(|i| {
                                    if i > 0 && mask >> (i - 1) & 1 == 1 {
                                        -1.0
                                    } else {
                                        1.0
                                    }
                                }),
                            )
                        })
                        .collect(),
                )
            }
            LocalNorm::PolytopeByVertices(vs) => {
                let half: Vec<Vector> =
                    vs.iter().filter(|v| leading_positive(v)).cloned().collect();
                (half.len() <= limit).then_some(half)
            }
            LocalNorm::CentralBase(inner) => {
                let inner_half = inner.half_vertices_limited(limit / 2)?;
                let mut out = Vec::with_capacity(2 * inner_half.len());
                for v in inner_half {
                    for s in [1.0, -1.0] {
                        let mut p = Vector::zeros(d);
                        p[0] = 1.0;
                        p.rows_mut(1, d - 1).copy_from(&(&v * s));
                        out.push(p);
                    }
                }
                Some(out)
            }
            LocalNorm::CentralOrderUnit(inner) => {
                let inner_half = inner.half_vertices_limited(limit.saturating_sub(1))?;
                let mut out = vec![unit(d, 0)];
                for v in inner_half {
                    let mut p = Vector::zeros(d);
                    p.rows_mut(1, d - 1).copy_from(&v);
                    out.push(p);
                }
                Some(out)
            }
        }
    }

    pub fn is_polytopal(&self) -> bool {
        match self {
            LocalNorm::Euclidean(_) => false,
            LocalNorm::EllOne(_) | LocalNorm::EllInf(_) => true,
            LocalNorm::PolytopeByVertices(_) | LocalNorm::PolytopeByFacets(_) => true,
            LocalNorm::CentralBase(inner) | LocalNorm::CentralOrderUnit(inner) => {
                inner.is_polytopal()
            }
        }
    }
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn unit(d: usize, i: usize) -> Vector {
    let mut v = Vector::zeros(d);
    if d > 0 {
        v[i] = 1.0;
    }
    v
}

fn leading_positive(v: &Vector) -> bool {
    v.iter().find(|x| x.abs() > 1e-12).is_some_and(|x| *x > 0.0)
}

fn check_symmetric_spanning(points: &[Vector]) -> Result<()> {
    let d = points.first().map_or(0, |p| p.len());
    if d == 0 {
        return Err(Error::InvalidArgument("empty polytope description".into()));
    }
    if points.iter().any(|p| p.len() != d) {
        return Err(Error::InvalidArgument(
            "polytope points differ in length".into(),
        ));
    }
    for p in points {
        let closed = points.iter().any(|q| (p + q).amax() <= 1e-12);
        if !closed {
            return Err(Error::InvalidArgument(
                "polytope description is not closed under negation".into(),
            ));
        }
    }
    let m = nalgebra::DMatrix::from_columns(points);
    if m.rank(1e-10) < d {
        return Err(Error::InvalidArgument(
            "polytope is not full-dimensional".into(),
        ));
    }
    Ok(())
}

/// Minkowski gauge of a symmetric vertex set: `min Σλ` with `x = Σ λᵢ vᵢ`, `λ ≥ 0`.
fn gauge(vertices: &[Vector], x: &[f64]) -> f64 {
    let mut lp = LinearProgram::new(Sense::Minimize, vec![1.0; vertices.len()]);
    for (r, xr) in x.iter().enumerate() {
        lp.add_constraint(vertices.iter().map(|v| v[r]).collect(), Relation::Eq, *xr);
    }
    lp.solve().map(|s| s.objective).unwrap_or(f64::INFINITY)
}

fn facet_support(facets: &[Vector], g: &[f64]) -> Support {
    let d = g.len();
    let mut lp = LinearProgram::new(Sense::Maximize, g.to_vec());
    lp.set_all_free();
    for f in facets {
        lp.add_constraint(f.iter().copied().collect(), Relation::Le, 1.0);
    }
    match lp.solve() {
        Ok(sol) => Support {
            value: sol.objective,
            point: Vector::from_vec(sol.x),
        },
        Err(_) => Support {
            value: f64::INFINITY,
            point: Vector::zeros(d),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> Vec<Vector> {
        [(1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)]
            .iter()
            .map(|&(a, b)| Vector::from_vec(vec![a, b]))
            .collect()
    }

    #[test]
    fn closed_forms() {
        let x = [3.0, -4.0];
        assert_eq!(LocalNorm::Euclidean(2).eval(&x), 5.0);
        assert_eq!(LocalNorm::EllOne(2).eval(&x), 7.0);
        assert_eq!(LocalNorm::EllInf(2).eval(&x), 4.0);
        assert_eq!(
            LocalNorm::CentralBase(Box::new(LocalNorm::Euclidean(2))).eval(&[1.0, 3.0, -4.0]),
            5.0
        );
        assert_eq!(
            LocalNorm::CentralOrderUnit(Box::new(LocalNorm::EllOne(2))).eval(&[-1.0, 3.0, -4.0]),
            8.0
        );
    }

    #[test]
    fn polytope_matches_ell_inf() {
        let p = LocalNorm::polytope(square()).unwrap();
        let x = [0.3, -0.7];
        assert!((p.eval(&x) - 0.7).abs() < 1e-12);
        assert!((p.dual().eval(&x) - 1.0).abs() < 1e-12);
        assert_eq!(p.half_vertices().unwrap().len(), 2);
    }

    #[test]
    fn rejects_asymmetric_polytope() {
        let mut v = square();
        v.pop();
        assert!(LocalNorm::polytope(v).is_err());
    }

    #[test]
    fn support_equals_dual_norm() {
        let g = [0.4, -1.3, 0.2];
        for n in [
            LocalNorm::Euclidean(3),
            LocalNorm::EllOne(3),
            LocalNorm::EllInf(3),
            LocalNorm::CentralBase(Box::new(LocalNorm::Euclidean(2))),
            LocalNorm::CentralOrderUnit(Box::new(LocalNorm::EllInf(2))),
        ] {
            let s = n.support(&g);
            assert!((s.value - n.dual().eval(&g)).abs() < 1e-12, "{}", n.name());
            assert!((dot(s.point.as_slice(), &g) - s.value).abs() < 1e-12);
            assert!(n.eval(s.point.as_slice()) <= 1.0 + 1e-12);
        }
    }

    #[test]
    fn half_vertex_counts() {
        assert_eq!(LocalNorm::EllInf(4).half_vertices().unwrap().len(), 8);
        assert_eq!(LocalNorm::EllOne(4).half_vertices().unwrap().len(), 4);
        let cb = LocalNorm::CentralBase(Box::new(LocalNorm::EllOne(3)));
        assert_eq!(cb.half_vertices().unwrap().len(), 6);
        assert!(LocalNorm::Euclidean(2).half_vertices().is_none());
    }
}
