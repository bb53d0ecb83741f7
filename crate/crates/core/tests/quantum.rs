//! Teleportation and isotropic states.

use gpthide::linalg::{min_eigenvalue, partial_transpose};
use gpthide::quantum::{heisenberg_weyl, isotropic_robustness_check, isotropic_state};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn teleportation_is_the_identity_channel(n in 2usize..4, seed in any::<u64>()) {
        let r = isotropic_robustness_check(n, seed).unwrap();
        prop_assert!(r.teleport_error < 1e-10, "{}", r.teleport_error);
        prop_assert!(r.isotropic_pt_min.abs() < 1e-12);
        prop_assert!(r.phi_pt_min < 0.0);
    }

    // PPT exactly up to p = 1/n.
    #[test]
    fn isotropic_ppt_threshold(n in 2usize..5, t in 0.0f64..1.0) {
        let nf = n as f64;
        let below = isotropic_state(n, t / nf);
        prop_assert!(min_eigenvalue(&partial_transpose(&below, n, n)) > -1e-12);
        let above = isotropic_state(n, 1.0 / nf + (1.0 - 1.0 / nf) * t.max(1e-3));
        prop_assert!(min_eigenvalue(&partial_transpose(&above, n, n)) < -1e-6);
    }
}

#[test]
fn weyl_operators_are_unitary() {
    for n in 2..=4 {
        for p in 0..n {
            for q in 0..n {
                let u = heisenberg_weyl(n, p, q).unwrap();
                let err = (&u * u.adjoint() - gpthide::linalg::CMat::identity(n, n)).norm();
                assert!(err < 1e-12, "U({p},{q}) on C^{n}");
            }
        }
    }
}
