//! Injective and projective tensor norms against closed forms on small examples.

use gpthide::linalg::{operator_norm, trace_norm, Mat};
use gpthide::norms::{
    entrywise_one, inf_to_one, injective_norm, projective_norm, projective_with_certificate,
    LocalNorm,
};
use proptest::prelude::*;

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = Mat> {
    prop::collection::vec(-3.0f64..3.0, rows * cols)
        .prop_map(move |v| Mat::from_row_slice(rows, cols, &v))
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * b.abs().max(1.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    // Euclidean balls go through cutting planes; the answer is the nuclear norm.
    #[test]
    fn euclidean_pair_is_trace_norm(x in matrix(3, 3)) {
        let e = LocalNorm::Euclidean(3);
        let pi = projective_with_certificate(&e, &e, &x).unwrap();
        prop_assert!(close(pi.value, trace_norm(&x), 1e-8), "{} vs {}", pi.value, trace_norm(&x));
        prop_assert!(close(injective_norm(&e, &e, &x).unwrap(), operator_norm(&x), 1e-9));
    }

    // Cross-polytopes are enumerated in full.
    #[test]
    fn ell_one_pair_is_entrywise(x in matrix(4, 3)) {
        let v = projective_norm(&LocalNorm::EllOne(4), &LocalNorm::EllOne(3), &x).unwrap();
        prop_assert!(close(v, entrywise_one(&x), 1e-9));
    }

    #[test]
    // The injective norm maximizes over the dual balls, here ℓ∞ × ℓ∞.
    fn ell_one_injective_is_inf_to_one(x in matrix(4, 4)) {
        let v = injective_norm(&LocalNorm::EllOne(4), &LocalNorm::EllOne(4), &x).unwrap();
        prop_assert!(close(v, inf_to_one(&x).unwrap(), 1e-9));
    }

    // Mixed pair: one side enumerated, the other priced by cutting planes.
    #[test]
    fn ell_one_euclidean_is_sum_of_row_norms(x in matrix(3, 4)) {
        let v = projective_norm(&LocalNorm::EllOne(3), &LocalNorm::Euclidean(4), &x).unwrap();
        let rows: f64 = x.row_iter().map(|r| r.norm()).sum();
        prop_assert!(close(v, rows, 1e-8), "{v} vs {rows}");
    }

    #[test]
    fn injective_below_projective(x in matrix(3, 3)) {
        for (a, b) in [
            (LocalNorm::EllInf(3), LocalNorm::Euclidean(3)),
            (LocalNorm::EllOne(3), LocalNorm::EllInf(3)),
        ] {
            let eps = injective_norm(&a, &b, &x).unwrap();
            let pi = projective_norm(&a, &b, &x).unwrap();
            prop_assert!(eps <= pi * (1.0 + 1e-9));
        }
    }

    #[test]
    fn simple_tensors_are_multiplicative(
        u in prop::collection::vec(-2.0f64..2.0, 3),
        v in prop::collection::vec(-2.0f64..2.0, 3),
    ) {
        let (a, b) = (LocalNorm::EllInf(3), LocalNorm::Euclidean(3));
        let x = Mat::from_fn(3, 3, |i, j| u[i] * v[j]);
        let expect = a.eval(&u) * b.eval(&v);
        prop_assert!(close(projective_norm(&a, &b, &x).unwrap(), expect, 1e-8));
        prop_assert!(close(injective_norm(&a, &b, &x).unwrap(), expect, 1e-8));
    }
}

#[test]
fn certificate_is_feasible_and_attains_the_value() {
    let x = Mat::from_row_slice(3, 3, &[1.0, -0.5, 0.2, 0.0, 0.7, 1.3, -0.4, 0.1, 0.9]);
    let e = LocalNorm::Euclidean(3);
    let cert = projective_with_certificate(&e, &e, &x).unwrap();
    assert!((cert.dual.dot(&x) - cert.value).abs() < 1e-8);
    // Dual of the nuclear norm: operator norm at most one.
    assert!(operator_norm(&cert.dual) <= 1.0 + 1e-8);
}
