use serde::Serialize;

use super::local::ENUMERATION_BITS;
use crate::error::{Error, Result};
use crate::linalg::{singular_values, Mat};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MatrixNorms {
    pub trace: f64,
    pub operator: f64,
    pub entrywise_one: f64,
    pub entrywise_max: f64,
    pub inf_to_one: f64,
}

pub fn matrix_norms(m: &Mat) -> Result<MatrixNorms> {
    let sv = singular_values(m);
    Ok(MatrixNorms {
        trace: sv.iter().sum(),
        operator: sv.first().copied().unwrap_or(0.0),
        entrywise_one: entrywise_one(m),
        entrywise_max: m.iter().fold(0.0, |a, v| a.max(v.abs())),
        inf_to_one: inf_to_one(m)?,
    })
}

pub fn entrywise_one(m: &Mat) -> f64 {
    m.iter().map(|v| v.abs()).sum()
}

/// `‖M‖_{∞→1} = max_{s,t ∈ {±1}} sᵀ M t`, by enumerating signs on the smaller side.
///
/// Walks the sign vectors in Gray-code order with the first sign pinned, so each
/// step is a rank-one update of the partial sums.
pub fn inf_to_one(m: &Mat) -> Result<f64> {
    let m = if m.nrows() > m.ncols() {
        m.transpose()
    } else {
        m.clone()
    };
    let (r, c) = (m.nrows(), m.ncols());
    if r == 0 {
        return Ok(0.0);
    }
    if r > ENUMERATION_BITS {
        return Err(Error::EnumerationLimit {
            what: "inf_to_one sign vectors",
            bits: r,
            limit: ENUMERATION_BITS,
        });
    }
    let rows: Vec<Vec<f64>> = (0..r).map(|i| m.row(i).iter().copied().collect()).collect();
    let mut sums: Vec<f64> = (0..c).map(|j| (0..r).map(|i| m[(i, j)]).sum()).collect();
    let mut signs = vec![1.0; r];
    let mut best = sums.iter().map(|v| v.abs()).sum::<f64>();
    for step in 1u64..(1u64 << (r - 1)) {
        // Bit that changes between Gray codes step-1 and step; row 0 stays +1.
        let i = step.trailing_zeros() as usize + 1;
        signs[i] = -signs[i];
        let s2 = 2.0 * signs[i];
        for (acc, v) in sums.iter_mut().zip(&rows[i]) {
            *acc += s2 * v;
        }
        let val: f64 = sums.iter().map(|v| v.abs()).sum();
        if val > best {
            best = val;
        }
    }
    Ok(best)
}
