//! Dual-path agreement over the full small range `n in 3..=7`, every
//! `k <= n/2`, and every representative weight configuration. The acceptance
//! suite runs its pinned `(n, k)` set at degree 3; this sweep completes the
//! range at degree 2 and spot-checks orders beyond it.

use orlab_core::verify::{
    generic_symmetric_weight, representative_weight_configs, verify_cross_agreement,
    verify_formal_self_adjointness,
};
use orlab_core::{rat, ratio, WeightConfig};

#[test]
fn cross_path_agreement_full_small_range() {
    let mut cases = 0usize;
    for n in 3u32..=7 {
        for k in 1..=(n / 2) {
            for config in representative_weight_configs(n, k) {
                let report = verify_cross_agreement(&config, 2).expect("suite runs");
                assert!(
                    report.all_passed,
                    "cross-path disagreement for {config:?}: {}",
                    report.to_json()
                );
                cases += report.cases.len();
            }
        }
    }
    assert!(cases > 2000, "sweep unexpectedly small: {cases}");
}

#[test]
fn cross_path_agreement_high_order() {
    // Orders 8 and 10: both engines stay exact well past the acceptance set.
    for (n, k) in [(9u32, 4u32), (10, 5)] {
        let w = generic_symmetric_weight(n, k);
        let config = WeightConfig::new(n, k, w.clone(), w);
        let report = verify_cross_agreement(&config, 2).expect("suite runs");
        assert!(report.all_passed, "{}", report.to_json());
    }
}

#[test]
fn self_adjointness_conjecture_range_k4() {
    // Order eight lies beyond the proven range; the sphere-exact symmetry
    // is raw pass/fail evidence, reported as conjecture exploration.
    let generic = WeightConfig::new(9, 4, ratio(-1, 3), ratio(-1, 3));
    let report = verify_formal_self_adjointness(&generic, 10, 2, 1).expect("suite runs");
    assert!(report.all_passed, "{}", report.to_json());
    assert!(report
        .notes
        .iter()
        .any(|n| n.starts_with("conjecture-exploration")));

    // The three-dimensional point at n = 2k, k = 4.
    let triple = WeightConfig::new(8, 4, rat(0), rat(0));
    let report = verify_formal_self_adjointness(&triple, 10, 2, 1).expect("suite runs");
    assert!(report.all_passed, "{}", report.to_json());
}
