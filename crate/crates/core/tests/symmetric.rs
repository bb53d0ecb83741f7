//! Completely symmetric models: Werner-line norms and hiding ratios.

use gpthide::symmetric::{catalog_entries, werner_hiding_ratio, werner_line_norms};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn line_ratio_never_exceeds_the_hiding_ratio(a in -3.0f64..3.0, b in -3.0f64..3.0) {
        for e in catalog_entries() {
            let n = werner_line_norms(&e.constants, a, b);
            let r = werner_hiding_ratio(&e.constants).ratio;
            prop_assert!(n.sep <= n.base * (1.0 + 1e-12) + 1e-15, "{}: sep {} > base {}", e.id, n.sep, n.base);
            prop_assert!(n.base <= r * n.sep * (1.0 + 1e-12) + 1e-15, "{}", e.id);
        }
    }
}

#[test]
fn hiding_ratio_is_attained_on_its_ray() {
    for e in catalog_entries() {
        let h = werner_hiding_ratio(&e.constants);
        assert!(
            (h.ratio - e.expected_ratio).abs() < 1e-12,
            "{}: {}",
            e.id,
            h.ratio
        );
        let n = werner_line_norms(&e.constants, h.ray.0, h.ray.1);
        assert!((n.base / n.sep - h.ratio).abs() < 1e-12, "{}", e.id);
    }
}

#[test]
fn catalog_constants_satisfy_their_identities() {
    for e in catalog_entries() {
        assert!(
            e.constants.invariant_violations(1e-12).is_empty(),
            "{}",
            e.id
        );
        assert!(e.constants.duality_residual() < 1e-12, "{}", e.id);
    }
}
