//! The two-dimensional Werner class `α ρS + β ρA = a𝟙 + bF`.

use serde::Serialize;

use super::{c, flip_operator, HermitianOperator};
use crate::error::{Error, Result};
use crate::linalg::CMat;

/// Number of rays in the angular grid cross-check.
pub const GRID_POINTS: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WernerClassOperator {
    pub n: usize,
    pub alpha: f64,
    pub beta: f64,
}

impl WernerClassOperator {
    pub fn new(n: usize, alpha: f64, beta: f64) -> Self {
        WernerClassOperator { n, alpha, beta }
    }

    /// From coefficients of `𝟙` and `F`.
    pub fn from_identity_flip(n: usize, a: f64, b: f64) -> Self {
        let nf = n as f64;
        WernerClassOperator {
            n,
            alpha: nf * (nf + 1.0) * (a + b) / 2.0,
            beta: nf * (nf - 1.0) * (a - b) / 2.0,
        }
    }

    /// Coefficients `(a, b)` of `𝟙` and `F`.
    pub fn identity_flip(&self) -> (f64, f64) {
        let nf = self.n as f64;
        let s = self.alpha / (nf * (nf + 1.0));
        let t = self.beta / (nf * (nf - 1.0));
        (s + t, s - t)
    }

    pub fn operator(&self) -> CMat {
        let (a, b) = self.identity_flip();
        let d = self.n * self.n;
        CMat::identity(d, d) * c(a) + flip_operator(self.n) * c(b)
    }

    pub fn norms(&self) -> WernerNorms {
        werner_class_norms(self.n, self.alpha, self.beta)
    }
}

/// Closed-form twirl onto `span{𝟙, F}`: matches `Tr X` and `Tr FX`.
pub fn twirl(x: &HermitianOperator) -> Result<WernerClassOperator> {
    let (na, nb) = x.dims();
    if na != nb {
        return Err(Error::InvalidArgument(format!(
            "twirl needs equal local dimensions, got {na} and {nb}"
        )));
    }
    let n = na as f64;
    let tr = x.trace();
    let trf = (flip_operator(na) * x.matrix()).trace().re;
    let a = (tr - trf / n) / (n * n - 1.0);
    let b = (trf - tr / n) / (n * n - 1.0);
    Ok(WernerClassOperator::from_identity_flip(na, a, b))
}

/// Trace, separable and W-theory norms on the Werner class.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WernerNorms {
    pub trace: f64,
    pub sep: f64,
    pub w: f64,
}

pub fn werner_class_norms(n: usize, alpha: f64, beta: f64) -> WernerNorms {
    let nf = n as f64;
    WernerNorms {
        trace: alpha.abs() + beta.abs(),
        sep: 2.0 / (nf + 1.0) * alpha.abs() + ((nf - 1.0) / (nf + 1.0) * alpha + beta).abs(),
        w: (alpha - beta).abs() + 2.0 * beta.abs(),
    }
}

/// Independent evaluation: maximize `|Tr EX| + |Tr (𝟙−E)X|` over the vertices of the
/// Werner-class effect polytopes, each given only by its defining inequalities.
pub fn werner_vertex_oracle(n: usize, alpha: f64, beta: f64) -> WernerNorms {
    let nf = n as f64;
    // Each polytope: pairs of linear forms ℓ(a, b) = p·a + q·b constrained to [0, 1].
    let standard = [(1.0, 1.0), (1.0, -1.0)];
    let separable = [(1.0, -1.0), (1.0, nf)];
    let witness = [(1.0, 0.0), (1.0, 1.0)];
    let s = alpha + beta;
    let t = alpha - beta;
    let value = |forms: &[(f64, f64); 2]| {
        polygon_vertices(forms)
            .into_iter()
            .map(|(a, b)| {
                let e = a * s + b * t;
                e.abs() + (s - e).abs()
            })
            .fold(0.0, f64::max)
    };
    WernerNorms {
        trace: value(&standard),
        sep: value(&separable),
        w: value(&witness),
    }
}

/// Vertices of `{(a, b) : 0 ≤ ℓ₁ ≤ 1, 0 ≤ ℓ₂ ≤ 1}` by intersecting boundary lines.
fn polygon_vertices(forms: &[(f64, f64); 2]) -> Vec<(f64, f64)> {
    let (p1, q1) = forms[0];
    let (p2, q2) = forms[1];
    let det = p1 * q2 - p2 * q1;
    let mut out = Vec::with_capacity(4);
    for r1 in [0.0, 1.0] {
        for r2 in [0.0, 1.0] {
            out.push(((r1 * q2 - r2 * q1) / det, (p1 * r2 - p2 * r1) / det));
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WernerRatios {
    /// `max ‖X‖₁ / ‖X‖_SEP` on the Werner class.
    pub qm_sep: f64,
    /// `max ‖X‖_W / ‖X‖_SEP` on the Werner class.
    pub w_sep: f64,
}

/// Maximizes the norm ratios over the breakpoint rays of the piecewise-linear norms.
///
/// Both norms are linear on each cone between consecutive breakpoints, so the
/// ratio is monotone there and peaks on a breakpoint.
pub fn werner_class_ratios(n: usize) -> WernerRatios {
    let nf = n as f64;
    let rays = [(1.0, 0.0), (0.0, 1.0), (nf + 1.0, -(nf - 1.0)), (1.0, 1.0)];
    let mut out = WernerRatios {
        qm_sep: 0.0,
        w_sep: 0.0,
    };
    for (a, b) in rays.iter().flat_map(|&(a, b)| [(a, b), (-a, -b)]) {
        let w = werner_class_norms(n, a, b);
        out.qm_sep = out.qm_sep.max(w.trace / w.sep);
        out.w_sep = out.w_sep.max(w.w / w.sep);
    }
    out
}

/// Grid cross-check of [`werner_class_ratios`] over `points` equally spaced angles.
pub fn werner_ratio_grid(n: usize, points: usize) -> WernerRatios {
    let mut out = WernerRatios {
        qm_sep: 0.0,
        w_sep: 0.0,
    };
    for i in 0..points {
        let th = std::f64::consts::TAU * i as f64 / points as f64;
        let w = werner_class_norms(n, th.cos(), th.sin());
        out.qm_sep = out.qm_sep.max(w.trace / w.sep);
        out.w_sep = out.w_sep.max(w.w / w.sep);
    }
    out
}

/// Balanced (trace-zero) versus standard ratio against separable measurements.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BalancedReport {
    pub n: usize,
    pub r_tilde: f64,
    pub r: f64,
    pub sandwich_ok: bool,
}

pub fn balanced_ratio_werner(n: usize) -> BalancedReport {
    // Trace zero on the Werner class means α + β = 0.
    let w = werner_class_norms(n, 1.0, -1.0);
    let r_tilde = w.trace / w.sep;
    let r = werner_class_ratios(n).qm_sep;
    let eps = 1e-12;
    BalancedReport {
        n,
        r_tilde,
        r,
        sandwich_ok: r_tilde <= r + eps && r <= 2.0 * r_tilde + 1.0 + eps,
    }
}

/// Upper bound `1/|2p − 1|` on the ratio a biased prior can leave room for.
pub fn bias_ratio_bound(p: f64) -> f64 {
    1.0 / (2.0 * p - 1.0).abs()
}
