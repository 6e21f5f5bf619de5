//! Shared oracles for integration tests: plain exhaustive loops, independent
//! of the library's pruned engines.
#![allow(dead_code)] // each test target uses its own subset

use slabel_core::field::FieldElement;
use slabel_core::SLabeling;

/// Exhaustive count over all palette^n assignments, checking every
/// constraint by direct permutation application.
pub fn brute_force_count(l: &SLabeling, palette: &[u16]) -> u64 {
    let n = l.graph().vertex_count();
    if n == 0 {
        return 1;
    }
    let mut idx = vec![0usize; n];
    let mut count = 0u64;
    'outer: loop {
        let coloring: Vec<u16> = idx.iter().map(|&i| palette[i]).collect();
        let mut ok = true;
        for (ei, tup) in l.tuples().iter().enumerate() {
            let (t, h) = l.orientation().arcs[ei];
            for p in tup {
                if p.apply(coloring[t]) == coloring[h] {
                    ok = false;
                }
            }
        }
        if ok {
            count += 1;
        }
        for d in (0..n).rev() {
            idx[d] += 1;
            if idx[d] < palette.len() {
                continue 'outer;
            }
            idx[d] = 0;
        }
        break;
    }
    count
}

/// First proper coloring of the labeling in odometer order over the full
/// color set, if any.
pub fn first_proper_coloring(l: &SLabeling) -> Option<Vec<FieldElement>> {
    let n = l.graph().vertex_count();
    let k = l.k();
    let mut point = vec![0u16; n];
    loop {
        let ok = l.tuples().iter().enumerate().all(|(ei, tup)| {
            let (t, h) = l.orientation().arcs[ei];
            tup.iter().all(|p| p.apply(point[t]) != point[h])
        });
        if ok {
            return Some(point.into_iter().map(FieldElement).collect());
        }
        let mut carry = true;
        for slot in point.iter_mut() {
            *slot += 1;
            if (*slot as usize) < k {
                carry = false;
                break;
            }
            *slot = 0;
        }
        if carry {
            return None;
        }
    }
}
