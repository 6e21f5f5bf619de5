//! Property tests for the wire formats.

use proptest::prelude::*;
use std::sync::Arc;

use slabel_core::graph::{encode_graph6, parse_graph6, Multigraph};
use slabel_core::labeling::{format_labeling, parse_labeling, Permutation};

fn arb_simple_graph() -> impl Strategy<Value = Multigraph> {
    (1usize..=8).prop_flat_map(|n| {
        let bits = n * (n - 1) / 2;
        proptest::bits::u32::masked((1u32 << bits) - 1).prop_map(move |mask| {
            let mut pairs = Vec::new();
            let mut idx = 0;
            for j in 1..n {
                for i in 0..j {
                    if (mask >> idx) & 1 == 1 {
                        pairs.push((i, j));
                    }
                    idx += 1;
                }
            }
            Multigraph::simple(n, &pairs).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn graph6_round_trip(g in arb_simple_graph()) {
        let encoded = encode_graph6(&g).unwrap();
        let decoded = parse_graph6(&encoded).unwrap();
        prop_assert_eq!(decoded, g);
    }

    #[test]
    fn labeling_literal_round_trip(
        g in arb_simple_graph().prop_filter("needs an edge", |g| g.edge_count() > 0),
        seed in any::<u64>(),
    ) {
        use rand::prelude::*;
        let k = 4usize;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let perms = slabel_core::labeling::all_permutations(k);
        let g = Arc::new(g);
        let tuples: Vec<Vec<Permutation>> = g
            .edge_records()
            .iter()
            .map(|_| vec![perms[rng.gen_range(0..perms.len())].clone()])
            .collect();
        let l = slabel_core::SLabeling::new(
            g.clone(),
            slabel_core::graph::canonical_orientation(&g),
            tuples,
            k,
        ).unwrap();
        let text = format_labeling(&l);
        let parsed = parse_labeling(&text, g).unwrap();
        prop_assert_eq!(parsed, l);
    }
}
