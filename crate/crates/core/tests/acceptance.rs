//! Acceptance suite: one test per release criterion, each printing a
//! PASS line with its runtime (visible with --nocapture). Every tolerance is
//! exact integer comparison; runtime limits are asserted directly.

mod common;

use std::collections::HashSet;
use std::ops::ControlFlow;
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use slabel_core::bounds::{bound_main_i, bound_main_ii, HypStatus};
use slabel_core::counting::{
    chromatic_poly_delcon, chromatic_value, count_colorings, dp_color_function, full_palette,
    linear_color_function, signed_color_function, signed_count,
    switching_class_representatives, SearchOptions,
};
use slabel_core::covering::{
    alon_furedi_exact, alon_furedi_weak, count_nonzeros, graph_cover_polynomial, CoverMode,
};
use slabel_core::field::Field;
use slabel_core::graph::{canonical_orientation, spanning_tree};
use slabel_core::labeling::{
    affine_permutations, all_permutations, signed_to_labeling, LabelingSpace, Permutation,
};
use slabel_core::verify::{
    connected_graphs, replicate_degree_searches, verify_linear_dp_conjecture,
    verify_theorem_soundness, SweepSpec, TheoremId,
};
use slabel_core::{Multigraph, SLabeling};

fn pass(criterion: &str, started: Instant, limit: Duration) {
    let elapsed = started.elapsed();
    println!("criterion {criterion}: PASS in {elapsed:.2?} (limit {limit:?})");
    assert!(
        elapsed < limit,
        "criterion {criterion} exceeded its runtime limit: {elapsed:?} >= {limit:?}"
    );
}

#[test]
fn criterion_01_gauge_regression() {
    let started = Instant::now();
    let g = Arc::new(Multigraph::simple(3, &[(0, 1), (1, 2)]).unwrap());
    let tuples = vec![
        vec![Permutation::parse_one_line("2013").unwrap()],
        vec![Permutation::parse_one_line("2310").unwrap()],
    ];
    let l = SLabeling::new(g.clone(), canonical_orientation(&g), tuples, 4).unwrap();

    let taus: Vec<Permutation> = ["0123", "1203", "0123"]
        .iter()
        .map(|s| Permutation::parse_one_line(s).unwrap())
        .collect();
    let gauged = l.apply_gauge(&taus).unwrap();
    let images: Vec<String> = gauged.tuples().iter().map(|t| t[0].to_string()).collect();
    assert_eq!(images, vec!["0123", "1230"]);

    let tau = Permutation::parse_one_line("1023").unwrap();
    let gauged = l.apply_gauge(&[tau.clone(), tau.clone(), tau]).unwrap();
    let images: Vec<String> = gauged.tuples().iter().map(|t| t[0].to_string()).collect();
    assert_eq!(images, vec!["1203", "3201"]);

    pass("1 (gauge regression)", started, Duration::from_millis(1));
}

#[test]
fn criterion_02_chromatic_oracle_equivalence() {
    let started = Instant::now();
    let mut graphs = Vec::new();
    for n in 2..=5 {
        graphs.extend(connected_graphs(n));
    }
    let six = connected_graphs(6);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut indices: Vec<usize> = (0..six.len()).collect();
    indices.shuffle(&mut rng);
    for &i in indices.iter().take(100) {
        graphs.push(six[i].clone());
    }
    let mut checked = 0usize;
    for g in &graphs {
        for k in 2..=5usize {
            let fast = chromatic_value(g, k).unwrap() as u128;
            let oracle = chromatic_poly_delcon(g, k as u64);
            assert_eq!(fast, oracle, "graph n={} m={} k={k}", g.vertex_count(), g.edge_count());
            checked += 1;
        }
    }
    assert_eq!(checked, (30 + 100) * 4);
    pass("2 (chromatic oracle equivalence)", started, Duration::from_secs(30));
}

#[test]
fn criterion_03_tree_closed_forms() {
    let started = Instant::now();
    let opts = SearchOptions::default();
    let mut trees = 0usize;
    for n in 2..=7usize {
        for g in connected_graphs(n) {
            if g.edge_count() != n - 1 {
                continue;
            }
            trees += 1;
            for k in [3usize, 4, 5] {
                let expected = (k as u128) * ((k - 1) as u128).pow(n as u32 - 1);
                assert_eq!(dp_color_function(&g, k, &opts).unwrap().value, expected);
                assert_eq!(linear_color_function(&g, k, &opts).unwrap().value, expected);
                let signed = signed_color_function(&g, k, &opts).unwrap().value;
                assert_eq!(signed, expected);
                // cross-check the switching-class minimum against a direct
                // scan of every sign pattern
                let m = g.underlying_edge_count();
                let mut direct = u64::MAX;
                for bits in 0..(1u64 << m) {
                    let signs: Vec<i8> =
                        (0..m).map(|i| if (bits >> i) & 1 == 1 { -1 } else { 1 }).collect();
                    let sg = slabel_core::SignedGraph::new(g.clone(), signs).unwrap();
                    direct = direct.min(signed_count(&sg, k).unwrap());
                }
                assert_eq!(signed, direct as u128);
            }
        }
    }
    assert_eq!(trees, 1 + 1 + 2 + 3 + 6 + 11); // trees on 2..=7 vertices
    pass("3 (tree closed forms)", started, Duration::from_secs(10));
}

#[test]
fn criterion_04_main_ii_soundness_sweep() {
    let started = Instant::now();
    // k = 3: every connected graph with n <= 5.
    let spec3 = SweepSpec::new(5, vec![3]);
    let report3 = verify_theorem_soundness(&spec3, TheoremId::MainII).unwrap();
    assert_eq!(report3.violations, 0);
    assert!(report3.checked > 0);
    assert!(report3.records.iter().all(|r| !(r.hypotheses_hold && r.skipped)));

    // k = 4 with the cycle-rank cap.
    let mut spec4 = SweepSpec::new(5, vec![4]);
    spec4.max_cycle_rank = Some(3);
    let report4 = verify_theorem_soundness(&spec4, TheoremId::MainII).unwrap();
    assert_eq!(report4.violations, 0);
    assert!(report4.checked > 0);
    assert!(report4.records.iter().all(|r| !(r.hypotheses_hold && r.skipped)));

    pass("4 (theorem main-ii soundness)", started, Duration::from_secs(600));
}

#[test]
fn criterion_05_linear_soundness_sweep() {
    let started = Instant::now();
    let mut spec = SweepSpec::new(5, vec![3, 4, 5]);
    spec.budget = 50_000_000_000;
    let report = verify_theorem_soundness(&spec, TheoremId::Linear).unwrap();
    assert_eq!(report.violations, 0);
    assert!(report.checked > 0);
    assert!(report.records.iter().all(|r| !(r.hypotheses_hold && r.skipped)));
    // m <= (k-1)n holds for every n <= 5 graph at k >= 3, so nothing may be
    // skipped for the edge bound; only colorability refutations skip.
    pass("5 (theorem linear soundness)", started, Duration::from_secs(300));
}

#[test]
fn criterion_06_conjecture_evidence() {
    let started = Instant::now();
    // Structural grounding at k = 3: the linear permutations are all of S_3.
    let f3 = Field::of_order(3).unwrap();
    let lin3 = affine_permutations(&f3);
    assert_eq!(lin3.len(), 6);
    assert_eq!(lin3, all_permutations(3));

    let spec3 = SweepSpec::new(5, vec![3]);
    let r3 = verify_linear_dp_conjecture(&spec3).unwrap();
    assert_eq!(r3.counterexamples, 0, "a counterexample would refute the conjecture");
    assert_eq!(r3.skipped, 0);
    assert_eq!(r3.checked, 30); // all connected graphs with 2..=5 vertices

    // k = 4: everything with n <= 4, plus n = 5 restricted to cycle rank 2.
    let spec4a = SweepSpec::new(4, vec![4]);
    let r4a = verify_linear_dp_conjecture(&spec4a).unwrap();
    assert_eq!(r4a.counterexamples, 0);
    assert_eq!(r4a.skipped, 0);

    let mut spec4b = SweepSpec::new(5, vec![4]);
    spec4b.max_cycle_rank = Some(2);
    let r4b = verify_linear_dp_conjecture(&spec4b).unwrap();
    assert_eq!(r4b.counterexamples, 0);
    assert_eq!(r4b.skipped, 0);

    pass("6 (linear = DP conjecture evidence)", started, Duration::from_secs(900));
}

#[test]
fn criterion_07_degree_search_replication() {
    let started = Instant::now();
    let report = replicate_degree_searches(false).unwrap();
    for r in &report.records {
        assert!(r.ok, "{} at k = {}: got {}, expected {}", r.what, r.k, r.got, r.expected);
    }
    assert!(report.all_ok);
    pass("7 (degree-search replication)", started, Duration::from_secs(130));
}

#[test]
#[ignore = "extended replication through p = 53; run with --ignored"]
fn criterion_07_extended_transposition_family_to_53() {
    let started = Instant::now();
    let report = replicate_degree_searches(true).unwrap();
    assert!(report.all_ok);
    pass("7-extended (primes to 53)", started, Duration::from_secs(600));
}

#[test]
fn criterion_08_covering_soundness() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xc0ffee);
    let mut pool = Vec::new();
    for n in 2..=5 {
        for g in connected_graphs(n) {
            pool.push(g);
        }
    }
    for sample in 0..200 {
        let g = pool[rng.gen_range(0..pool.len())].clone();
        let k = *[3usize, 4, 5].choose(&mut rng).unwrap();
        let field = Field::of_order(k as u64).unwrap();
        let tree = spanning_tree(&g).unwrap();
        let perms = all_permutations(k);
        let tuples: Vec<Vec<Permutation>> = g
            .edge_records()
            .iter()
            .enumerate()
            .map(|(ei, _)| {
                if tree.contains_edge(ei) {
                    vec![Permutation::identity(k)]
                } else {
                    vec![perms[rng.gen_range(0..perms.len())].clone()]
                }
            })
            .collect();
        let l = SLabeling::new(g.clone(), canonical_orientation(&g), tuples, k).unwrap();
        let n = g.vertex_count();
        let m = g.edge_count();
        let rank = m + 1 - n;

        // HalfK: every nonzero is a proper coloring, degree matches.
        let halfk = graph_cover_polynomial(&field, &l, &tree, &CoverMode::HalfK).unwrap();
        assert_eq!(halfk.degree, (k / 2) * rank + (n - 1), "sample {sample}");
        let mut nonzeros = 0u64;
        slabel_core::covering::for_each_point(&field, n, |point| {
            if halfk.eval(&field, point) != field.zero() {
                nonzeros += 1;
                let proper = l.tuples().iter().enumerate().all(|(ei, tup)| {
                    let (t, h) = l.orientation().arcs[ei];
                    tup.iter().all(|p| p.apply(point[t].0) != point[h].0)
                });
                assert!(proper, "nonzero at an improper coloring, sample {sample}");
            }
        });
        assert_eq!(nonzeros, count_nonzeros(&field, &halfk, 1 << 25).unwrap());
        // Bound chain whenever the polynomial has a nonzero at all.
        if nonzeros > 0 {
            let sizes = vec![k as u64; n];
            let exact = alon_furedi_exact(&sizes, halfk.degree as u64);
            assert!(nonzeros as u128 >= exact, "sample {sample}");
            let weak = alon_furedi_weak(n as u64, (k * n) as u64, k as u64, halfk.degree as u64);
            if weak.applicable() {
                assert!(BigUint::from(exact) >= weak.floor, "sample {sample}");
            }
        }

        // Anchored mode at the first proper coloring, when one exists.
        if let Some(kappa) = common::first_proper_coloring(&l) {
            let anchored =
                graph_cover_polynomial(&field, &l, &tree, &CoverMode::Anchored(kappa.clone()))
                    .unwrap();
            assert_eq!(anchored.degree, (k - 2) * rank + (n - 1), "sample {sample}");
            assert_ne!(anchored.eval(&field, &kappa), field.zero(), "sample {sample}");
            let nz = count_nonzeros(&field, &anchored, 1 << 25).unwrap();
            assert!(nz >= 1);
            let sizes = vec![k as u64; n];
            let exact = alon_furedi_exact(&sizes, anchored.degree as u64);
            assert!(nz as u128 >= exact, "sample {sample}");
            let weak =
                alon_furedi_weak(n as u64, (k * n) as u64, k as u64, anchored.degree as u64);
            if weak.applicable() {
                assert!(BigUint::from(exact) >= weak.floor, "sample {sample}");
            }
        }
    }
    pass("8 (covering soundness, 200 samples)", started, Duration::from_secs(120));
}

#[test]
fn criterion_09_signed_translation_equivalence() {
    let started = Instant::now();
    for n in 2..=5 {
        for g in connected_graphs(n) {
            for rep in switching_class_representatives(&g).unwrap() {
                for k in [3usize, 4, 5] {
                    let direct = signed_count(&rep, k).unwrap();
                    let translated = signed_to_labeling(&rep, k as u64).unwrap();
                    let via_labeling =
                        count_colorings(&translated, &full_palette(k)).unwrap();
                    assert_eq!(
                        direct,
                        via_labeling,
                        "n={} m={} k={k} signs={:?}",
                        g.vertex_count(),
                        g.edge_count(),
                        rep.signs()
                    );
                }
            }
        }
    }
    pass("9 (signed translation equivalence)", started, Duration::from_secs(120));
}

#[test]
fn criterion_10_alon_furedi_minimizer_and_bound_consistency() {
    let started = Instant::now();
    // greedy = exhaustive over every multiset of sizes with n <= 6 entries
    // in 1..=5 and every feasible d (the functions are symmetric in sizes).
    fn exhaustive(sizes: &[u64], d: u64) -> u128 {
        let n = sizes.len();
        let total: u64 = sizes.iter().sum();
        let required = total.saturating_sub(d);
        let mut best = u128::MAX;
        let mut q: Vec<u64> = vec![1; n];
        loop {
            let sum: u64 = q.iter().sum();
            if sum >= required {
                best = best.min(q.iter().map(|&x| x as u128).product());
            }
            let mut i = 0;
            loop {
                if i == n {
                    return best;
                }
                q[i] += 1;
                if q[i] <= sizes[i] {
                    break;
                }
                q[i] = 1;
                i += 1;
            }
        }
    }
    fn multisets(n: usize, max: u64) -> Vec<Vec<u64>> {
        fn rec(n: usize, lo: u64, max: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
            if n == 0 {
                out.push(cur.clone());
                return;
            }
            for v in lo..=max {
                cur.push(v);
                rec(n - 1, v, max, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, 1, max, &mut Vec::new(), &mut out);
        out
    }
    let mut cases = 0u64;
    for n in 1..=6usize {
        for sizes in multisets(n, 5) {
            let total: u64 = sizes.iter().sum();
            for d in 0..=total {
                assert_eq!(
                    alon_furedi_exact(&sizes, d),
                    exhaustive(&sizes, d),
                    "sizes {sizes:?} d {d}"
                );
                cases += 1;
            }
        }
    }
    assert!(cases > 5000);

    // The closed-form bounds coincide exactly with the weak Alon-Furedi
    // value at the cover-polynomial degrees.
    for k in [3u64, 4, 5, 7, 8, 9] {
        for n in 2..=20u64 {
            for m in (n - 1)..=(2 * n) {
                let rank = m + 1 - n;
                let d2 = (k - 2) * rank + n - 1;
                let b2 = bound_main_ii(n, m, k, HypStatus::Assumed);
                let w2 = alon_furedi_weak(n, k * n, k, d2);
                assert_eq!(b2.exponent, w2.exponent, "main-ii n={n} m={m} k={k}");
                assert_eq!(b2.floor, w2.floor);
                assert_eq!(b2.applicable(), w2.applicable());

                let q = k / 2;
                let d1 = q * rank + n - 1;
                let b1 = bound_main_i(n, m, k, HypStatus::Assumed);
                let w1 = alon_furedi_weak(n, k * n, k, d1);
                assert_eq!(b1.exponent, w1.exponent, "main-i n={n} m={m} k={k}");
                assert_eq!(b1.floor, w1.floor);
                assert_eq!(b1.applicable(), w1.applicable());
            }
        }
    }
    pass("10 (Alon-Furedi minimizer + bound consistency)", started, Duration::from_secs(30));
}

/// Long-running mode: the full k = 4 conjecture sweep over every connected
/// graph with n <= 5, including the cycle-rank-6 complete graph.
#[test]
#[ignore = "full k = 4 replication including K_5; run with --ignored"]
fn conjecture_full_replication_n5_k4() {
    let started = Instant::now();
    let mut spec = SweepSpec::new(5, vec![4]);
    spec.budget = 200_000_000_000;
    let report = verify_linear_dp_conjecture(&spec).unwrap();
    assert_eq!(report.counterexamples, 0);
    assert_eq!(report.skipped, 0);
    assert_eq!(report.checked, 30);
    pass("extra (full n<=5, k=4 conjecture)", started, Duration::from_secs(3600));
}

/// Not a numbered criterion: the deduplicated stream provably covers every
/// labeling up to equivalence on the smallest interesting inputs.
#[test]
fn dedup_stream_preserves_minima() {
    let started = Instant::now();
    let opts = SearchOptions::default();
    for n in 2..=4 {
        for g in connected_graphs(n) {
            let with = dp_color_function(&g, 3, &opts).unwrap();
            let without =
                dp_color_function(&g, 3, &SearchOptions { dedup: false, ..opts }).unwrap();
            assert_eq!(with.value, without.value);
            // every raw labeling's count is attained by some canonical rep
            let tree = spanning_tree(&g).unwrap();
            let space =
                LabelingSpace::new(g.clone(), tree, all_permutations(3), false).unwrap();
            let mut raw_counts = HashSet::new();
            let _ = space.visit(&mut |a| {
                let l = space.labeling(a);
                raw_counts.insert(count_colorings(&l, &full_palette(3)).unwrap());
                ControlFlow::Continue(())
            });
            assert!(raw_counts.contains(&(with.value as u64)));
        }
    }
    pass("extra (dedup minima)", started, Duration::from_secs(60));
}
