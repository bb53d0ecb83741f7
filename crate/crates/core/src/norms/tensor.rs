//! Injective and projective tensor norms over a pair of local norms.

use serde::Serialize;

use super::local::{unit, LocalNorm, ENUMERATION_BITS};
use crate::error::{check_dim, Error, Result};
use crate::linalg::{singular_values, top_singular_pair, trace_norm, Mat, Vector};
use crate::lp::{IncrementalProgram, LinearProgram, Relation, Sense};
use crate::sampling;

/// Largest projective LP (in decomposition columns) built from full vertex lists.
const FULL_LP_COLUMNS: usize = 1 << 13;
const CUT_ROUNDS: usize = 400;
const CUT_TOL: f64 = 1e-10;
/// Relative gap between the outer bound and the best feasible dual at which cutting stops.
const GAP_TOL: f64 = 1e-11;
/// Cuts taken from one exact enumeration.
const PRICED_CUTS: usize = 16;
const ALTERNATING_RESTARTS: usize = 12;

/// Maximizer of a bilinear form over a product of unit balls.
#[derive(Debug, Clone)]
pub struct BilinearMax {
    pub value: f64,
    pub a: Vector,
    pub b: Vector,
    /// False when the value came from alternating ascent rather than an exact method.
    pub exact: bool,
}

/// `sup{aᵀ F b : |a|_P ≤ 1, |b|_Q ≤ 1}`.
///
/// Exact when either ball is a polytope with enumerable vertices, for two
/// Euclidean balls, and through the `CentralOrderUnit` decomposition; other
/// pairs fall back to alternating ascent with restarts.
pub fn bilinear_max(p: &LocalNorm, q: &LocalNorm, f: &Mat) -> Result<BilinearMax> {
    check_dim(p.dim(), f.nrows())?;
    check_dim(q.dim(), f.ncols())?;
    Ok(bilinear_max_inner(p, q, f))
}

fn bilinear_max_inner(p: &LocalNorm, q: &LocalNorm, f: &Mat) -> BilinearMax {
    if f.nrows() == 0 || f.ncols() == 0 {
        return BilinearMax {
            value: 0.0,
            a: Vector::zeros(f.nrows()),
            b: Vector::zeros(f.ncols()),
            exact: true,
        };
    }
    match (p, q) {
        (LocalNorm::Euclidean(_), LocalNorm::Euclidean(_)) => {
            let (s, u, v) = top_singular_pair(f);
            return BilinearMax {
                value: s,
                a: u,
                b: v,
                exact: true,
            };
        }
        (LocalNorm::CentralOrderUnit(inner), _) => {
            let d = f.nrows();
            let top = q.support(f.row(0).transpose().as_slice());
            let rest = bilinear_max_inner(inner, q, &f.rows(1, d - 1).into_owned());
            return if top.value >= rest.value {
                BilinearMax {
                    value: top.value,
                    a: unit(d, 0),
                    b: top.point,
                    exact: rest.exact,
                }
            } else {
                let mut a = Vector::zeros(d);
                a.rows_mut(1, d - 1).copy_from(&rest.a);
                BilinearMax {
                    value: rest.value,
                    a,
                    b: rest.b,
                    exact: rest.exact,
                }
            };
        }
        (_, LocalNorm::CentralOrderUnit(_)) => return transposed(q, p, f),
        _ => {}
    }

    let hp = p.half_vertices();
    let hq = q.half_vertices();
    match (hp, hq) {
        (Some(vp), Some(vq)) if vq.len() < vp.len() => enumerate(&vq, p, &f.transpose()).swap(),
        (Some(vp), _) => enumerate(&vp, q, f),
        (None, Some(vq)) => enumerate(&vq, p, &f.transpose()).swap(),
        (None, None) => alternating(p, q, f),
    }
}

fn transposed(p: &LocalNorm, q: &LocalNorm, f: &Mat) -> BilinearMax {
    bilinear_max_inner(p, q, &f.transpose()).swap()
}

impl BilinearMax {
    fn swap(self) -> Self {
        BilinearMax {
            value: self.value,
            a: self.b,
            b: self.a,
            exact: self.exact,
        }
    }
}

fn enumerate(vertices: &[Vector], other: &LocalNorm, f: &Mat) -> BilinearMax {
    enumerate_top(vertices, other, f, 1).remove(0)
}

/// The `k` best vertices with their best responses, largest value first.
fn enumerate_top(vertices: &[Vector], other: &LocalNorm, f: &Mat, k: usize) -> Vec<BilinearMax> {
    let ft = f.transpose();
    let mut all: Vec<BilinearMax> = vertices
        .iter()
        .map(|a| {
            let s = other.support((&ft * a).as_slice());
            BilinearMax {
                value: s.value,
                a: a.clone(),
                b: s.point,
                exact: true,
            }
        })
        .collect();
    all.sort_by(|x, y| y.value.total_cmp(&x.value));
    all.truncate(k.max(1));
    all
}

fn alternating(p: &LocalNorm, q: &LocalNorm, f: &Mat) -> BilinearMax {
    let all = alternating_all(p, q, f, 0x5eed);
    all.into_iter()
        .max_by(|x, y| x.value.total_cmp(&y.value))
        .expect("at least one restart")
}

/// Local maxima from every restart of the alternating ascent.
fn alternating_all(p: &LocalNorm, q: &LocalNorm, f: &Mat, seed: u64) -> Vec<BilinearMax> {
    let mut rng = sampling::rng(seed);
    let mut starts: Vec<Vector> = Vec::with_capacity(ALTERNATING_RESTARTS + 1);
    let (_, _, v) = top_singular_pair(f);
    starts.push(v.clone());
    starts.push(-v);
    for i in 0..q.dim() {
        starts.push(unit(q.dim(), i));
    }
    while starts.len() < ALTERNATING_RESTARTS + q.dim() {
        starts.push(sampling::gaussian_vector(&mut rng, q.dim()));
    }
    let ft = f.transpose();
    starts
        .into_iter()
        .map(|b0| {
            let scale = q.eval(b0.as_slice());
            let mut b = if scale > 0.0 {
                b0 / scale
            } else {
                unit(q.dim(), 0)
            };
            let mut a = p.support((f * &b).as_slice()).point;
            let mut value = f64::NEG_INFINITY;
            for _ in 0..500 {
                let sb = q.support((&ft * &a).as_slice());
                b = sb.point;
                let sa = p.support((f * &b).as_slice());
                a = sa.point;
                if sa.value <= value + 1e-13 * (1.0 + value.abs()) {
                    value = value.max(sa.value);
                    break;
                }
                value = sa.value;
            }
            BilinearMax {
                value,
                a,
                b,
                exact: false,
            }
        })
        .collect()
}

/// Injective norm `sup{(f⊗g)(X) : |f|_{A*} ≤ 1, |g|_{B*} ≤ 1}`.
pub fn injective_norm(a: &LocalNorm, b: &LocalNorm, x: &Mat) -> Result<f64> {
    check_dim(a.dim(), x.nrows())?;
    check_dim(b.dim(), x.ncols())?;
    guard_enumeration(a, b)?;
    if let (LocalNorm::Euclidean(_), LocalNorm::Euclidean(_)) = (a, b) {
        return Ok(singular_values(x).first().copied().unwrap_or(0.0));
    }
    Ok(bilinear_max_inner(&a.dual(), &b.dual(), x).value)
}

/// Projective norm `inf{Σ|xᵢ||yᵢ| : X = Σ xᵢ⊗yᵢ}`.
pub fn projective_norm(a: &LocalNorm, b: &LocalNorm, x: &Mat) -> Result<f64> {
    check_dim(a.dim(), x.nrows())?;
    check_dim(b.dim(), x.ncols())?;
    match (a, b) {
        (LocalNorm::Euclidean(_), LocalNorm::Euclidean(_)) => Ok(trace_norm(x)),
        (LocalNorm::EllOne(_), LocalNorm::EllOne(_)) => Ok(x.iter().map(|v| v.abs()).sum()),
        _ => projective_with_certificate(a, b, x).map(|c| c.value),
    }
}

/// Projective norm together with the optimal dual functional.
#[derive(Debug, Clone)]
pub struct ProjectiveCertificate {
    pub value: f64,
    /// `F` with `⟨F, X⟩ = value` and `aᵀ F b ≤ 1` on the product of unit balls.
    pub dual: Mat,
    /// True when every column-generation pricing step was exact.
    pub exact: bool,
}

/// Evaluates `min Σλ` subject to `X = Σ λ_k a_k⊗b_k` over extreme points of the unit balls
/// through its dual, `max ⟨F, X⟩` subject to `a_kᵀ F b_k ≤ 1`.
///
/// Full vertex lists are used when both balls are small polytopes. Otherwise
/// the constraint set grows by cutting planes: the most violated pairs from
/// [`bilinear_max`] are added until none exceeds one.
pub fn projective_with_certificate(
    a: &LocalNorm,
    b: &LocalNorm,
    x: &Mat,
) -> Result<ProjectiveCertificate> {
    check_dim(a.dim(), x.nrows())?;
    check_dim(b.dim(), x.ncols())?;
    let (da, db) = (x.nrows(), x.ncols());
    if da == 0 || db == 0 {
        return Ok(ProjectiveCertificate {
            value: 0.0,
            dual: Mat::zeros(da, db),
            exact: true,
        });
    }
    if let (Some(va), Some(vb)) = (
        a.half_vertices_limited(FULL_LP_COLUMNS),
        b.half_vertices_limited(FULL_LP_COLUMNS),
    ) {
        if va.len() * vb.len() <= FULL_LP_COLUMNS / 2 {
            let mut pairs = Vec::with_capacity(2 * va.len() * vb.len());
            for u in &va {
                for v in &vb {
                    pairs.push((u.clone(), v.clone()));
                    pairs.push((u.clone(), -v));
                }
            }
            let (value, dual) = solve_dual(&pairs, x)?;
            return Ok(ProjectiveCertificate {
                value,
                dual,
                exact: true,
            });
        }
    }
    cutting_planes(a, b, x)
}

fn cutting_planes(a: &LocalNorm, b: &LocalNorm, x: &Mat) -> Result<ProjectiveCertificate> {
    let (da, db) = (x.nrows(), x.ncols());
    let normalized = |u: &Vector, v: &Vector| {
        let (nu, nv) = (a.eval(u.as_slice()), b.eval(v.as_slice()));
        (nu > 0.0 && nv > 0.0).then(|| (u / nu, v / nv))
    };
    // Coordinate pairs bound every entry of F, so the first program is bounded.
    let mut pairs: Vec<(Vector, Vector)> = Vec::new();
    for i in 0..da {
        for j in 0..db {
            let (ei, ej) = normalized(&unit(da, i), &unit(db, j)).expect("unit vectors");
            pairs.push((ei.clone(), ej.clone()));
            pairs.push((ei, -ej));
        }
    }
    // Singular pairs of X are close to the active constraints at the optimum.
    let svd = x.clone().svd(true, true);
    if let (Some(u), Some(vt)) = (&svd.u, &svd.v_t) {
        for k in 0..svd.singular_values.len() {
            let (uk, vk) = (u.column(k).into_owned(), vt.row(k).transpose());
            if let Some((p, q)) = normalized(&uk, &vk) {
                pairs.push((p, q));
            }
        }
    }
    let mut lp = dual_program(x);
    for (u, v) in &pairs {
        add_cut(&mut lp, u, v);
    }
    let mut exact = true;
    // Best feasible dual seen so far (the LP optimum rescaled onto the constraint set).
    let mut inner: Option<(f64, Mat)> = None;
    let mut fresh = 0;
    let mut round = 0;
    while round < CUT_ROUNDS {
        let solved = lp
            .solve()
            .map(|s| (s.objective, Mat::from_fn(da, db, |i, j| s.x[i * db + j])));
        let (upper, dual) = match solved {
            Ok(s) => s,
            // Nearly dependent cuts can leave the basis numerically singular:
            // keep only the most violated cut of the last round and retry.
            Err(Error::InvalidArgument(_)) if fresh > 1 => {
                pairs.truncate(pairs.len() - fresh + 1);
                lp.truncate(pairs.len());
                fresh = 1;
                continue;
            }
            Err(e) => return Err(e),
        };
        let pricing = price(a, b, &dual, round as u64);
        round += 1;
        exact &= pricing.iter().all(|c| c.exact);
        let worst = pricing[0].value;
        if worst <= 1.0 + CUT_TOL {
            return Ok(ProjectiveCertificate {
                value: upper,
                dual,
                exact,
            });
        }
        let scaled = &dual / worst;
        if inner.as_ref().is_none_or(|(v, _)| upper / worst > *v) {
            inner = Some((upper / worst, scaled));
        }
        let (lower, best) = inner.as_ref().expect("set above");
        if upper - lower <= GAP_TOL * upper.abs().max(1.0) {
            return Ok(ProjectiveCertificate {
                value: *lower,
                dual: best.clone(),
                exact,
            });
        }
        // In-out stabilization: also separate at the midpoint between the outer
        // optimum and the best feasible dual, which yields deeper cuts.
        let mid = (&dual + best) * 0.5;
        let mid_pricing = price(a, b, &mid, round as u64 + (1 << 32));
        exact &= mid_pricing.iter().all(|c| c.exact);
        if let Some(m) = mid_pricing.first().filter(|m| m.value > 0.0) {
            let v = mid.component_mul(x).sum() / m.value;
            if v > *lower {
                inner = Some((v, &mid / m.value));
            }
        }
        let before = pairs.len();
        // Most violated first, so a singular-basis retry keeps the strongest cut.
        let mut cuts: Vec<BilinearMax> = pricing
            .into_iter()
            .chain(mid_pricing)
            .filter(|c| (c.a.transpose() * &dual * &c.b)[0] > 1.0 + CUT_TOL)
            .collect();
        cuts.sort_by(|p, q| q.value.total_cmp(&p.value));
        for c in cuts {
            let cut = &c.a * c.b.transpose();
            if !pairs
                .iter()
                .any(|(u, v)| (u * v.transpose() - &cut).amax() < 1e-9)
            {
                add_cut(&mut lp, &c.a, &c.b);
                pairs.push((c.a, c.b));
            }
        }
        fresh = pairs.len() - before;
        if fresh == 0 {
            let (lower, best) = inner.expect("set above");
            // Out of new cuts: accept the feasible dual if it is already tight.
            if upper - lower <= 1e-9 * upper.abs().max(1.0) {
                return Ok(ProjectiveCertificate {
                    value: lower,
                    dual: best,
                    exact,
                });
            }
            return Err(Error::InvalidArgument("cutting planes stalled".into()));
        }
    }
    Err(Error::InvalidArgument(
        "cutting planes did not converge".into(),
    ))
}

fn price(a: &LocalNorm, b: &LocalNorm, f: &Mat, round: u64) -> Vec<BilinearMax> {
    // Plain polytopes: one enumeration yields many cuts, which matters on
    // symmetric inputs where each cut moves the bound very little.
    let plain =
        |n: &LocalNorm| !matches!(n, LocalNorm::CentralOrderUnit(_) | LocalNorm::Euclidean(_));
    if plain(a) && plain(b) {
        match (a.half_vertices(), b.half_vertices()) {
            (Some(va), Some(vb)) if vb.len() < va.len() => {
                return enumerate_top(&vb, a, &f.transpose(), PRICED_CUTS)
                    .into_iter()
                    .map(BilinearMax::swap)
                    .collect();
            }
            (Some(va), _) => return enumerate_top(&va, b, f, PRICED_CUTS),
            (None, Some(vb)) => {
                return enumerate_top(&vb, a, &f.transpose(), PRICED_CUTS)
                    .into_iter()
                    .map(BilinearMax::swap)
                    .collect();
            }
            (None, None) => {}
        }
    }
    let exact = bilinear_max_inner(a, b, f);
    if exact.exact {
        return vec![exact];
    }
    let mut all = alternating_all(a, b, f, sampling::derive_seed(0x9e1c, round));
    all.push(exact);
    all.sort_by(|x, y| y.value.total_cmp(&x.value));
    all.truncate(6);
    all
}

/// `max ⟨F, X⟩` over free `F`, row-major; constraints come from [`add_cut`].
fn dual_program(x: &Mat) -> IncrementalProgram {
    let db = x.ncols();
    let mut lp = LinearProgram::new(
        Sense::Maximize,
        (0..x.len()).map(|k| x[(k / db, k % db)]).collect(),
    );
    lp.set_all_free();
    IncrementalProgram::new(lp)
}

/// `uᵀ F v ≤ 1`.
fn add_cut(lp: &mut IncrementalProgram, u: &Vector, v: &Vector) {
    let db = v.len();
    let coeffs = (0..u.len() * db).map(|k| u[k / db] * v[k % db]).collect();
    lp.add_constraint(coeffs, Relation::Le, 1.0);
}

/// `max ⟨F, X⟩` subject to `uᵀ F v ≤ 1` for every listed pair.
fn solve_dual(pairs: &[(Vector, Vector)], x: &Mat) -> Result<(f64, Mat)> {
    let (da, db) = (x.nrows(), x.ncols());
    let mut lp = dual_program(x);
    for (u, v) in pairs {
        add_cut(&mut lp, u, v);
    }
    let sol = lp.solve()?;
    Ok((
        sol.objective,
        Mat::from_fn(da, db, |i, j| sol.x[i * db + j]),
    ))
}

fn guard_enumeration(a: &LocalNorm, b: &LocalNorm) -> Result<()> {
    let too_big = |n: &LocalNorm| match n.dual() {
        LocalNorm::EllInf(d) => d > ENUMERATION_BITS + 1,
        _ => false,
    };
    if too_big(a) && too_big(b) {
        let bits = a.dim().min(b.dim());
        return Err(Error::EnumerationLimit {
            what: "dual unit-ball vertices",
            bits,
            limit: ENUMERATION_BITS,
        });
    }
    Ok(())
}

/// Outcome of sampling `‖X‖_π / ‖X‖_ε` on random tensors.
#[derive(Debug, Clone, Serialize)]
pub struct AuerbachReport {
    pub samples: usize,
    pub max_ratio: f64,
    pub bound: f64,
    pub violations: usize,
}

/// Samples Gaussian tensors and checks `‖X‖_π ≤ min{dA, dB}·‖X‖_ε`.
pub fn auerbach_ratio_check(
    a: &LocalNorm,
    b: &LocalNorm,
    samples: usize,
    seed: u64,
) -> Result<AuerbachReport> {
    let bound = a.dim().min(b.dim()) as f64;
    let mut rng = sampling::rng(seed);
    let mut report = AuerbachReport {
        samples,
        max_ratio: 0.0,
        bound,
        violations: 0,
    };
    for _ in 0..samples {
        let x = sampling::gaussian_matrix(&mut rng, a.dim(), b.dim());
        let p = projective_norm(a, b, &x)?;
        let e = injective_norm(a, b, &x)?;
        let ratio = p / e;
        report.max_ratio = report.max_ratio.max(ratio);
        if p > bound * e + 1e-9 {
            report.violations += 1;
        }
    }
    Ok(report)
}
