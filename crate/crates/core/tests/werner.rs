//! Werner-class norms against spectral and vertex-enumeration oracles.

use gpthide::linalg::hermitian_eigenvalues;
use gpthide::quantum::{
    twirl, werner_class_norms, werner_class_ratios, werner_ratio_grid, werner_vertex_oracle,
    HermitianOperator, WernerClassOperator, GRID_POINTS,
};
use proptest::prelude::*;

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * b.abs().max(1.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn closed_form_matches_vertex_oracle(n in 2usize..7, alpha in -5.0f64..5.0, beta in -5.0f64..5.0) {
        let f = werner_class_norms(n, alpha, beta);
        let o = werner_vertex_oracle(n, alpha, beta);
        prop_assert!(close(f.trace, o.trace, 1e-12));
        prop_assert!(close(f.sep, o.sep, 1e-12), "sep {} vs {}", f.sep, o.sep);
        prop_assert!(close(f.w, o.w, 1e-12), "w {} vs {}", f.w, o.w);
    }

    #[test]
    fn separable_below_trace_below_w(n in 2usize..7, alpha in -5.0f64..5.0, beta in -5.0f64..5.0) {
        let f = werner_class_norms(n, alpha, beta);
        prop_assert!(f.sep <= f.trace * (1.0 + 1e-12));
        prop_assert!(f.trace <= f.w * (1.0 + 1e-12));
    }

    #[test]
    fn norms_are_absolutely_homogeneous(n in 2usize..7, alpha in -3.0f64..3.0, beta in -3.0f64..3.0, t in -4.0f64..4.0) {
        let f = werner_class_norms(n, alpha, beta);
        let g = werner_class_norms(n, t * alpha, t * beta);
        prop_assert!(close(g.sep, t.abs() * f.sep, 1e-12));
        prop_assert!(close(g.w, t.abs() * f.w, 1e-12));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn trace_norm_matches_spectrum(n in 2usize..5, alpha in -3.0f64..3.0, beta in -3.0f64..3.0) {
        let x = WernerClassOperator::new(n, alpha, beta);
        let spectral: f64 = hermitian_eigenvalues(&x.operator()).iter().map(|v| v.abs()).sum();
        prop_assert!(close(x.norms().trace, spectral, 1e-10));
    }

    #[test]
    fn twirl_fixes_the_werner_class(n in 2usize..5, alpha in -3.0f64..3.0, beta in -3.0f64..3.0) {
        let x = WernerClassOperator::new(n, alpha, beta);
        let t = twirl(&HermitianOperator::new(x.operator(), (n, n)).unwrap()).unwrap();
        prop_assert!((t.alpha - alpha).abs() < 1e-10 && (t.beta - beta).abs() < 1e-10);
    }
}

#[test]
fn symmetric_minus_antisymmetric() {
    for n in 2..=8 {
        let w = werner_class_norms(n, 1.0, -1.0);
        assert_eq!(w.trace, 2.0);
        assert!((w.sep - 4.0 / (n as f64 + 1.0)).abs() < 1e-15);
        assert_eq!(w.w, 4.0);
    }
}

#[test]
fn breakpoint_ratios_dominate_the_grid() {
    for n in 2..=6 {
        let exact = werner_class_ratios(n);
        let grid = werner_ratio_grid(n, GRID_POINTS);
        assert!((exact.qm_sep - n as f64).abs() < 1e-12);
        assert!((exact.w_sep - (2 * n - 1) as f64).abs() < 1e-12);
        assert!(grid.qm_sep <= exact.qm_sep + 1e-12);
        assert!(grid.w_sep <= exact.w_sep + 1e-12);
        assert!(grid.qm_sep >= exact.qm_sep * (1.0 - 1e-3));
    }
}
