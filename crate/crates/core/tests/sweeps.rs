//! Soundness sweeps beyond the acceptance list: the signed and general-c
//! bounds against brute force, the multigraph hypothesis path of the
//! parallel-edge bound, and report determinism.

use std::sync::Arc;

use num_bigint::BigUint;

use slabel_core::bounds::{bound_main_i, HypStatus};
use slabel_core::counting::{dp_chromatic_leq, dp_color_function, SearchOptions};
use slabel_core::graph::{add_parallel_edges, spanning_tree, Multigraph};
use slabel_core::verify::{
    verify_linear_dp_conjecture, verify_theorem_soundness, SweepSpec, TheoremId,
};

#[test]
fn signed_bound_sound_on_small_graphs() {
    for k in [3u64, 4] {
        let spec = SweepSpec::new(4, vec![k]);
        let report = verify_theorem_soundness(&spec, TheoremId::Signed).unwrap();
        assert_eq!(report.violations, 0, "k = {k}");
        assert!(report.checked > 0);
    }
}

#[test]
fn general_c_bound_sound_on_small_graphs() {
    for (c, k) in [(3u64, 4u64), (3, 5), (4, 4), (4, 5)] {
        let spec = SweepSpec::new(4, vec![k]);
        let report = verify_theorem_soundness(&spec, TheoremId::GeneralC { c }).unwrap();
        assert_eq!(report.violations, 0, "c = {c}, k = {k}");
    }
}

#[test]
fn parallel_edge_bound_on_c4() {
    // C_4 at k = 4: the doubled non-tree edge stays DP-4-colorable, the
    // bound floor is 26, and the DP count 80 clears it.
    let g = Arc::new(Multigraph::simple(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap());
    let tree = spanning_tree(&g).unwrap();
    let expanded = Arc::new(add_parallel_edges(&g, &tree, 1).unwrap());
    let opts = SearchOptions::default();
    let chi = if dp_chromatic_leq(&expanded, 4, &opts).unwrap() {
        HypStatus::Verified
    } else {
        HypStatus::Refuted
    };
    assert_eq!(chi, HypStatus::Verified);
    let bound = bound_main_i(4, 4, 4, chi);
    assert!(bound.applicable());
    assert_eq!(bound.floor, BigUint::from(26u32)); // 4^(7/3) ~ 25.4
    let dp = dp_color_function(&g, 4, &opts).unwrap();
    assert_eq!(dp.value, 80);
    assert!(BigUint::from(dp.value) >= bound.floor);
}

#[test]
fn reports_are_deterministic() {
    let spec = SweepSpec::new(4, vec![3]);
    let a = verify_linear_dp_conjecture(&spec).unwrap();
    let b = verify_linear_dp_conjecture(&spec).unwrap();
    assert_eq!(serde_json::to_string(&a.records).unwrap(), serde_json::to_string(&b.records).unwrap());

    let sa = verify_theorem_soundness(&spec, TheoremId::MainII).unwrap();
    let sb = verify_theorem_soundness(&spec, TheoremId::MainII).unwrap();
    assert_eq!(
        serde_json::to_string(&sa.records).unwrap(),
        serde_json::to_string(&sb.records).unwrap()
    );
}
