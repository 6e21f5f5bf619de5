//! Exact counting of proper colorings: a pruned backtracking engine for one
//! labeling, and minimized functions (chromatic value, DP / linear / signed
//! color functions) by enumeration over deduplicated labeling streams.

use std::ops::ControlFlow;
use std::sync::Arc;

use num_bigint::BigUint;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::graph::{spanning_forest, spanning_tree, Multigraph};
use crate::labeling::{
    affine_permutations, all_permutations, LabelingSpace, Permutation, SLabeling, SignedGraph,
};

/// Enumeration controls for the minimized color functions.
#[derive(Clone, Copy, Debug)]
pub struct SearchOptions {
    /// Elementary-step budget (labelings times coloring assignments). When
    /// the estimated sweep exceeds it, only the first labeling of the stream
    /// is evaluated and the report is flagged partial.
    pub budget: u64,
    /// Deduplicate labelings by simultaneous conjugation.
    pub dedup: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { budget: 1_000_000_000, dedup: true }
    }
}

/// Which object achieved the minimum.
#[derive(Clone, Debug)]
pub enum Witness {
    Labeling(SLabeling),
    Signs(SignedGraph),
}

/// Result of a minimized counting sweep.
#[derive(Clone, Debug)]
pub struct CountReport {
    pub value: u128,
    pub witness: Option<Witness>,
    pub labelings_examined: u64,
    pub dedup_factor: u64,
    /// True when the budget cut the sweep short; `value` is then only an
    /// upper bound on the true minimum.
    pub partial: bool,
}

pub fn full_palette(k: usize) -> Vec<u16> {
    (0..k as u16).collect()
}

#[derive(Clone, Copy)]
enum Direction {
    /// The earlier endpoint is the arc tail: forbid pi(c).
    Forward,
    /// The earlier endpoint is the arc head: forbid pi^-1(c).
    Reverse,
}

/// A backtracking counter with per-edge forbidden-color tables, vertices in
/// BFS spanning-forest order so every non-root vertex sees a colored
/// neighbor.
#[derive(Clone)]
pub struct PreparedCount {
    k: usize,
    n: usize,
    palette: u64,
    /// constraints[pos] = (earlier_pos, table_index)
    constraints: Vec<Vec<(usize, usize)>>,
    /// tables[t][c] = forbidden mask at the later endpoint given color c at
    /// the earlier endpoint.
    tables: Vec<Vec<u64>>,
    /// Per underlying edge: (table_index, direction); used when tables are
    /// rebuilt in minimization sweeps.
    edge_tables: Vec<(usize, Direction)>,
}

impl PreparedCount {
    pub fn from_labeling(l: &SLabeling, palette: &[u16]) -> Result<PreparedCount> {
        let mut prep = PreparedCount::skeleton(l.graph(), l.k(), palette)?;
        for (ei, tup) in l.tuples().iter().enumerate() {
            // Arcs may deviate from the canonical orientation; recompute the
            // direction against this labeling's own arcs.
            let (tail, head) = l.orientation().arcs[ei];
            prep.set_edge_arc(l.graph(), ei, tail, head);
            prep.clear_edge(ei);
            for p in tup {
                prep.or_edge_permutation(ei, p);
            }
        }
        Ok(prep)
    }

    /// Builds the graph-level structure with empty tables, assuming the
    /// canonical orientation. Permutations are OR-ed in afterwards.
    pub fn skeleton(g: &Arc<Multigraph>, k: usize, palette: &[u16]) -> Result<PreparedCount> {
        if k > 64 {
            return Err(Error::TooManyColors);
        }
        let n = g.vertex_count();
        let forest = spanning_forest(g);
        let mut pos_of = vec![usize::MAX; n];
        for (pos, &v) in forest.order.iter().enumerate() {
            pos_of[v] = pos;
        }
        let mut palette_mask = 0u64;
        for &c in palette {
            if c as usize >= k {
                return Err(Error::ElementOutOfRange { index: c as usize, order: k });
            }
            palette_mask |= 1 << c;
        }
        let mut constraints = vec![Vec::new(); n];
        let mut tables = Vec::with_capacity(g.underlying_edge_count());
        let mut edge_tables = Vec::with_capacity(g.underlying_edge_count());
        for e in g.edge_records() {
            let (pt, ph) = (pos_of[e.u], pos_of[e.v]);
            let (attach, earlier, dir) = if pt < ph {
                (ph, pt, Direction::Forward)
            } else {
                (pt, ph, Direction::Reverse)
            };
            let tid = tables.len();
            tables.push(vec![0u64; k]);
            constraints[attach].push((earlier, tid));
            edge_tables.push((tid, dir));
        }
        Ok(PreparedCount { k, n, palette: palette_mask, constraints, tables, edge_tables })
    }

    fn set_edge_arc(&mut self, g: &Multigraph, ei: usize, tail: usize, _head: usize) {
        // The skeleton assumed tail = record.u; flip the direction when this
        // labeling orients the edge the other way.
        let record = g.edge_records()[ei];
        if tail != record.u {
            let (tid, dir) = self.edge_tables[ei];
            let flipped = match dir {
                Direction::Forward => Direction::Reverse,
                Direction::Reverse => Direction::Forward,
            };
            self.edge_tables[ei] = (tid, flipped);
        }
    }

    pub fn clear_edge(&mut self, ei: usize) {
        let (tid, _) = self.edge_tables[ei];
        self.tables[tid].iter_mut().for_each(|m| *m = 0);
    }

    pub fn or_edge_permutation(&mut self, ei: usize, p: &Permutation) {
        let (tid, dir) = self.edge_tables[ei];
        let table = &mut self.tables[tid];
        match dir {
            Direction::Forward => {
                for c in 0..self.k as u16 {
                    table[c as usize] |= 1 << p.apply(c);
                }
            }
            Direction::Reverse => {
                for c in 0..self.k as u16 {
                    table[p.apply(c) as usize] |= 1 << c;
                }
            }
        }
    }

    fn forbidden(&self, pos: usize, colors: &[u16]) -> u64 {
        let mut mask = 0u64;
        for &(earlier, tid) in &self.constraints[pos] {
            mask |= self.tables[tid][colors[earlier] as usize];
        }
        mask
    }

    /// Exact number of proper colorings, counting one step per search node.
    pub fn count(&self, budget: &mut u64) -> Result<u64> {
        self.run(budget, false)
    }

    /// True when at least one proper coloring exists.
    pub fn exists(&self, budget: &mut u64) -> Result<bool> {
        Ok(self.run(budget, true)? > 0)
    }

    fn run(&self, budget: &mut u64, stop_at_first: bool) -> Result<u64> {
        let n = self.n;
        if n == 0 {
            return Ok(1);
        }
        if self.palette == 0 {
            return Ok(0);
        }
        let mut masks = vec![0u64; n];
        let mut colors = vec![0u16; n];
        let mut total = 0u64;
        let mut depth = 0usize;
        masks[0] = self.palette;
        if n == 1 {
            return Ok(masks[0].count_ones() as u64);
        }
        loop {
            if *budget == 0 {
                return Err(Error::BudgetExceeded { budget: 0 });
            }
            *budget -= 1;
            if masks[depth] == 0 {
                if depth == 0 {
                    break;
                }
                depth -= 1;
                continue;
            }
            let c = masks[depth].trailing_zeros() as u16;
            masks[depth] &= masks[depth] - 1;
            colors[depth] = c;
            let next = self.palette & !self.forbidden(depth + 1, &colors);
            if depth + 2 == n {
                let leaves = next.count_ones() as u64;
                total += leaves;
                if stop_at_first && total > 0 {
                    return Ok(total);
                }
            } else {
                depth += 1;
                masks[depth] = next;
            }
        }
        Ok(total)
    }
}

/// Exact count of proper colorings of one labeling over a palette (a subset
/// of the color indices; pass `full_palette(k)` for all of them).
pub fn count_colorings(l: &SLabeling, palette: &[u16]) -> Result<u64> {
    let prep = PreparedCount::from_labeling(l, palette)?;
    let mut budget = u64::MAX;
    prep.count(&mut budget)
}

/// Number of proper k-colorings of a simple graph: the identity labeling
/// counted by the backtracking engine.
pub fn chromatic_value(g: &Arc<Multigraph>, k: usize) -> Result<u64> {
    if !g.is_simple() {
        return Err(Error::NotSimple);
    }
    let l = SLabeling::identity(g.clone(), k);
    count_colorings(&l, &full_palette(k))
}

/// Independent oracle: the chromatic polynomial of a simple graph evaluated
/// at k, by deletion-contraction with parallel edges simplified away.
pub fn chromatic_poly_delcon(g: &Multigraph, k: u64) -> u128 {
    assert!(g.vertex_count() <= 64, "deletion-contraction oracle capped at 64 vertices");
    let n = g.vertex_count();
    let mut adj = vec![0u64; n];
    for e in g.edge_records() {
        adj[e.u] |= 1 << e.v;
        adj[e.v] |= 1 << e.u;
    }
    let alive = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    fn rec(adj: &[u64], alive: u64, k: u64) -> u128 {
        // find any edge
        let mut edge = None;
        let mut vs = alive;
        'scan: while vs != 0 {
            let u = vs.trailing_zeros() as usize;
            vs &= vs - 1;
            let mut ws = adj[u] & alive;
            while ws != 0 {
                let v = ws.trailing_zeros() as usize;
                ws &= ws - 1;
                if v > u {
                    edge = Some((u, v));
                    break 'scan;
                }
            }
        }
        match edge {
            None => (k as u128).pow(alive.count_ones()),
            Some((u, v)) => {
                let mut deleted = adj.to_vec();
                deleted[u] &= !(1 << v);
                deleted[v] &= !(1 << u);
                let del = rec(&deleted, alive, k);

                let mut contracted = adj.to_vec();
                let merged = (contracted[u] | contracted[v]) & !(1 << u) & !(1 << v);
                contracted[u] = merged;
                contracted[v] = 0;
                let mut ws = merged;
                while ws != 0 {
                    let w = ws.trailing_zeros() as usize;
                    ws &= ws - 1;
                    contracted[w] = (contracted[w] | (1 << u)) & !(1 << v);
                }
                let con = rec(&contracted, alive & !(1 << v), k);
                del - con
            }
        }
    }
    rec(&adj, alive, k)
}

/// Outcome of minimizing over one component's labeling stream.
struct ComponentMin {
    value: u64,
    witness: Vec<u16>,
    labelings: u64,
    partial: bool,
}

fn estimate_steps(space: &LabelingSpace, n: usize) -> BigUint {
    let group = BigUint::from(space.dedup_group_size());
    let streams = space.raw_size() / group;
    let streams = if streams == BigUint::from(0u32) { BigUint::from(1u32) } else { streams };
    let per = BigUint::from(space.k() as u64).pow(n as u32);
    streams * per
}

/// Reusable per-assignment evaluation state for one labeling space.
struct SweepEval<'a> {
    space: &'a LabelingSpace,
    prep: PreparedCount,
    groups: Vec<(usize, bool, std::ops::Range<usize>)>,
    id: Permutation,
}

impl<'a> SweepEval<'a> {
    fn new(space: &'a LabelingSpace) -> Result<SweepEval<'a>> {
        let k = space.k();
        let mut prep = PreparedCount::skeleton(space.graph(), k, &full_palette(k))?;
        let id = Permutation::identity(k);
        for ei in space.fixed_edges() {
            prep.or_edge_permutation(ei, &id);
        }
        Ok(SweepEval { space, prep, groups: space.slot_groups(), id })
    }

    fn count(&mut self, assignment: &[u16]) -> u64 {
        self.fill(assignment);
        let mut budget = u64::MAX;
        self.prep.count(&mut budget).expect("unbounded budget")
    }

    fn colorable(&mut self, assignment: &[u16]) -> bool {
        self.fill(assignment);
        let mut budget = u64::MAX;
        self.prep.exists(&mut budget).expect("unbounded budget")
    }

    fn fill(&mut self, assignment: &[u16]) {
        for (ei, pinned_id, range) in &self.groups {
            self.prep.clear_edge(*ei);
            if *pinned_id {
                self.prep.or_edge_permutation(*ei, &self.id);
            }
            for &v in &assignment[range.clone()] {
                self.prep.or_edge_permutation(*ei, &self.space.sset()[v as usize]);
            }
        }
    }
}

/// Minimum of `count` over the canonical labeling stream of one component,
/// with the lexicographically first witness.
fn minimize_component(space: &LabelingSpace, opts: &SearchOptions) -> Result<ComponentMin> {
    let n = space.graph().vertex_count();
    let slots = space.slot_count();
    let estimate = estimate_steps(space, n);

    if estimate > BigUint::from(opts.budget) {
        // Over budget: evaluate only the first stream element, flag partial.
        let assignment = vec![0u16; slots];
        let mut eval = SweepEval::new(space)?;
        let value = eval.count(&assignment);
        return Ok(ComponentMin { value, witness: assignment, labelings: 1, partial: true });
    }

    let par_worthwhile = estimate > BigUint::from(5_000_000u64)
        && rayon::current_num_threads() > 1
        && slots >= 2;
    if !par_worthwhile {
        let mut eval = SweepEval::new(space)?;
        let mut best: Option<(u64, Vec<u16>)> = None;
        let mut labelings = 0u64;
        let _ = space.visit(&mut |assignment| {
            labelings += 1;
            let v = eval.count(assignment);
            if best.as_ref().is_none_or(|(b, _)| v < *b) {
                best = Some((v, assignment.to_vec()));
            }
            ControlFlow::Continue(())
        });
        let (value, witness) = best.expect("stream is nonempty");
        return Ok(ComponentMin { value, witness, labelings, partial: false });
    }

    let depth = 2.min(slots);
    let prefixes = space.prefixes(depth);
    let locals: Vec<(Option<(u64, Vec<u16>)>, u64)> = prefixes
        .par_iter()
        .map(|(prefix, active)| {
            let mut eval = SweepEval::new(space).expect("skeleton already validated");
            let mut best: Option<(u64, Vec<u16>)> = None;
            let mut labelings = 0u64;
            let _ = space.visit_below(prefix, active, &mut |assignment| {
                labelings += 1;
                let v = eval.count(assignment);
                if best.as_ref().is_none_or(|(b, _)| v < *b) {
                    best = Some((v, assignment.to_vec()));
                }
                ControlFlow::Continue(())
            });
            (best, labelings)
        })
        .collect();
    let mut best: Option<(u64, Vec<u16>)> = None;
    let mut labelings = 0u64;
    for (local, count) in locals {
        labelings += count;
        if let Some((v, w)) = local {
            if best.as_ref().is_none_or(|(b, _)| v < *b) {
                best = Some((v, w));
            }
        }
    }
    let (value, witness) = best.expect("stream is nonempty");
    Ok(ComponentMin { value, witness, labelings, partial: false })
}

/// The DP color function P_DP(G, k): minimum number of proper colorings over
/// all fully-general labelings, multiplied across components.
pub fn dp_color_function(g: &Arc<Multigraph>, k: usize, opts: &SearchOptions) -> Result<CountReport> {
    minimized_function(g, k, opts, &all_permutations(k))
}

/// The linear color function: the minimum over labelings whose permutations
/// are x -> ax + b over GF(k). Requires a prime-power k.
pub fn linear_color_function(
    g: &Arc<Multigraph>,
    k: usize,
    opts: &SearchOptions,
) -> Result<CountReport> {
    let field = Field::of_order(k as u64)?;
    minimized_function(g, k, opts, &affine_permutations(&field))
}

fn minimized_function(
    g: &Arc<Multigraph>,
    k: usize,
    opts: &SearchOptions,
    sset: &[Permutation],
) -> Result<CountReport> {
    let comps = g.components();
    let mut value: u128 = 1;
    let mut labelings = 0u64;
    let mut partial = false;
    let mut dedup_factor = 1u64;
    let mut witness_parts: Vec<(Vec<usize>, SLabeling)> = Vec::new();
    for comp in &comps {
        let sub = Arc::new(g.induced(comp));
        let tree = spanning_tree(&sub)?;
        let space = LabelingSpace::new(sub, tree, sset.to_vec(), opts.dedup)?;
        dedup_factor = dedup_factor.max(space.dedup_group_size());
        let r = minimize_component(&space, opts)?;
        value *= r.value as u128;
        labelings += r.labelings;
        partial |= r.partial;
        witness_parts.push((comp.clone(), space.labeling(&r.witness)));
    }
    let witness = merge_component_labelings(g, &witness_parts, k);
    Ok(CountReport {
        value,
        witness: Some(Witness::Labeling(witness)),
        labelings_examined: labelings,
        dedup_factor,
        partial,
    })
}

fn merge_component_labelings(
    g: &Arc<Multigraph>,
    parts: &[(Vec<usize>, SLabeling)],
    k: usize,
) -> SLabeling {
    let mut l = SLabeling::identity(g.clone(), k);
    for (vertices, part) in parts {
        // Underlying edges of the induced subgraph appear in the same order
        // as the corresponding edges of g restricted to the component.
        let mut part_ei = 0usize;
        let tuples_part = part.tuples();
        let mut tuples = l.tuples().to_vec();
        for (ei, e) in g.edge_records().iter().enumerate() {
            if vertices.contains(&e.u) && vertices.contains(&e.v) {
                tuples[ei] = tuples_part[part_ei].clone();
                part_ei += 1;
            }
        }
        l = SLabeling::new(
            g.clone(),
            crate::graph::canonical_orientation(g),
            tuples,
            k,
        )
        .expect("merged labeling is well-formed");
    }
    l
}

/// True when every labeling built from `sset` admits at least one proper
/// coloring. Works on multigraphs.
pub fn s_colorable(
    g: &Arc<Multigraph>,
    sset: &[Permutation],
    k: usize,
    opts: &SearchOptions,
) -> Result<bool> {
    if sset.iter().any(|p| p.degree() != k) {
        return Err(Error::SizeMismatch { expected: k, got: 0 });
    }
    for comp in g.components() {
        let sub = Arc::new(g.induced(&comp));
        let tree = spanning_tree(&sub)?;
        let space = LabelingSpace::new(sub.clone(), tree, sset.to_vec(), opts.dedup)?;
        let estimate = estimate_steps(&space, sub.vertex_count());
        if estimate > BigUint::from(opts.budget) {
            return Err(Error::BudgetExceeded { budget: opts.budget });
        }
        let mut eval = SweepEval::new(&space)?;
        let mut all_colorable = true;
        let _ = space.visit(&mut |assignment| {
            if !eval.colorable(assignment) {
                all_colorable = false;
                return ControlFlow::Break(());
            }
            ControlFlow::Continue(())
        });
        if !all_colorable {
            return Ok(false);
        }
    }
    Ok(true)
}

/// chi_DP(G) <= k?
pub fn dp_chromatic_leq(g: &Arc<Multigraph>, k: usize, opts: &SearchOptions) -> Result<bool> {
    s_colorable(g, &all_permutations(k), k, opts)
}

/// chi_L(G) <= k (linear labelings only)?
pub fn linear_chromatic_leq(g: &Arc<Multigraph>, k: usize, opts: &SearchOptions) -> Result<bool> {
    let field = Field::of_order(k as u64)?;
    s_colorable(g, &affine_permutations(&field), k, opts)
}

/// The traditional signed palette: k = 2t+1 gives {0, +-1, ..., +-t}; even
/// k = 2t gives the zero-free {+-1, ..., +-t}. Values indexed 0..k.
pub fn signed_palette(k: usize) -> Vec<i64> {
    let t = (k / 2) as i64;
    (0..k as i64)
        .map(|i| if k % 2 == 1 || i < t { i - t } else { i - t + 1 })
        .collect()
}

/// Exact number of k-colorings of a signed graph over the traditional
/// symmetric color set (zero-free when k is even).
pub fn signed_count(sg: &SignedGraph, k: usize) -> Result<u64> {
    if k > 64 {
        return Err(Error::TooManyColors);
    }
    if k == 0 {
        return Ok(if sg.graph().vertex_count() == 0 { 1 } else { 0 });
    }
    let values = signed_palette(k);
    let index_of = |v: i64| values.iter().position(|&x| x == v);
    let g = sg.graph();
    let mut prep = PreparedCount::skeleton(g, k, &full_palette(k))?;
    for (ei, &sign) in sg.signs().iter().enumerate() {
        prep.clear_edge(ei);
        // kappa(head) != sign * kappa(tail): one forbidden partner per color.
        let image: Vec<u16> = values
            .iter()
            .map(|&v| index_of(sign as i64 * v).expect("palette closed under negation") as u16)
            .collect();
        let p = Permutation::from_images(image).expect("negation is a bijection");
        prep.or_edge_permutation(ei, &p);
    }
    let mut budget = u64::MAX;
    prep.count(&mut budget)
}

/// Sign patterns with +1 on a spanning forest: exactly one representative per
/// switching class.
pub fn switching_class_representatives(g: &Arc<Multigraph>) -> Result<Vec<SignedGraph>> {
    if !g.is_simple() {
        return Err(Error::NotSimple);
    }
    let forest = spanning_forest(g);
    let nontree: Vec<usize> = (0..g.underlying_edge_count())
        .filter(|ei| !forest.contains_edge(*ei))
        .collect();
    let mut out = Vec::new();
    for pattern in 0..(1u64 << nontree.len()) {
        let mut signs = vec![1i8; g.underlying_edge_count()];
        for (bit, &ei) in nontree.iter().enumerate() {
            if (pattern >> bit) & 1 == 1 {
                signs[ei] = -1;
            }
        }
        out.push(SignedGraph::new(g.clone(), signs)?);
    }
    Ok(out)
}

/// The signed chromatic function P_+-(G, k): minimum signed count over all
/// sign patterns, enumerated per switching class.
pub fn signed_color_function(
    g: &Arc<Multigraph>,
    k: usize,
    opts: &SearchOptions,
) -> Result<CountReport> {
    if !g.is_simple() {
        return Err(Error::NotSimple);
    }
    let cycle_rank = g.cycle_rank();
    let per = (k as u128).checked_pow(g.vertex_count() as u32).unwrap_or(u128::MAX);
    let estimate = (1u128 << cycle_rank.min(127)) * per;
    if estimate > opts.budget as u128 {
        let rep = SignedGraph::all_positive(g.clone())?;
        let value = signed_count(&rep, k)? as u128;
        return Ok(CountReport {
            value,
            witness: Some(Witness::Signs(rep)),
            labelings_examined: 1,
            dedup_factor: switching_dedup_factor(g),
            partial: true,
        });
    }
    let reps = switching_class_representatives(g)?;
    let mut best: Option<(u64, usize)> = None;
    for (i, rep) in reps.iter().enumerate() {
        let v = signed_count(rep, k)?;
        if best.as_ref().is_none_or(|(b, _)| v < *b) {
            best = Some((v, i));
        }
    }
    let (value, idx) = best.expect("at least one representative");
    Ok(CountReport {
        value: value as u128,
        witness: Some(Witness::Signs(reps[idx].clone())),
        labelings_examined: reps.len() as u64,
        dedup_factor: switching_dedup_factor(g),
        partial: false,
    })
}

/// Sign patterns per switching class: 2^(n - #components).
fn switching_dedup_factor(g: &Multigraph) -> u64 {
    let exp = g.vertex_count().saturating_sub(g.components().len()).min(63);
    1u64 << exp
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::canonical_orientation;

    fn arc_graph(pairs: &[(usize, usize)], n: usize) -> Arc<Multigraph> {
        Arc::new(Multigraph::simple(n, pairs).unwrap())
    }

    /// Plain exhaustive oracle: iterate all palette^n maps, check every
    /// constraint by direct permutation application.
    fn brute_force(l: &SLabeling, palette: &[u16]) -> u64 {
        let n = l.graph().vertex_count();
        let mut count = 0u64;
        let mut stack = vec![0usize; n];
        'outer: loop {
            let coloring: Vec<u16> = stack.iter().map(|&i| palette[i]).collect();
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
                stack[d] += 1;
                if stack[d] < palette.len() {
                    continue 'outer;
                }
                stack[d] = 0;
            }
            break;
        }
        count
    }

    #[test]
    fn k2_single_permutation_counts_k_times_k_minus_one() {
        for k in [2usize, 3, 4, 5] {
            let g = arc_graph(&[(0, 1)], 2);
            for p in all_permutations(k) {
                let l =
                    SLabeling::new(g.clone(), canonical_orientation(&g), vec![vec![p]], k).unwrap();
                assert_eq!(count_colorings(&l, &full_palette(k)).unwrap(), (k * (k - 1)) as u64);
            }
        }
    }

    #[test]
    fn identity_path_counts() {
        let g = arc_graph(&[(0, 1), (1, 2)], 3);
        let l = SLabeling::identity(g, 3);
        assert_eq!(count_colorings(&l, &full_palette(3)).unwrap(), 12);
    }

    #[test]
    fn c4_with_three_cycle_twist() {
        // Non-tree edge (2,3) labeled x -> x+1 over three colors, rest
        // identity; fixed by the 81-assignment oracle.
        let g = arc_graph(&[(0, 1), (1, 2), (2, 3), (0, 3)], 4);
        let rho = Permutation::parse_one_line("120").unwrap();
        let id = Permutation::identity(3);
        let tuples = [vec![id.clone()], vec![id.clone()], vec![id], vec![rho]];
        // edge order: (0,1),(0,3),(1,2),(2,3)
        let tuples = vec![tuples[0].clone(), tuples[2].clone(), tuples[1].clone(), tuples[3].clone()];
        let l = SLabeling::new(g.clone(), canonical_orientation(&g), tuples, 3).unwrap();
        let brute = brute_force(&l, &full_palette(3));
        assert_eq!(brute, 15);
        assert_eq!(count_colorings(&l, &full_palette(3)).unwrap(), brute);
    }

    #[test]
    fn engine_matches_oracle_on_random_labelings() {
        use rand::prelude::*;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..60 {
            let n = rng.gen_range(2..=5);
            let mut pairs = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(0.6) {
                        pairs.push((u, v));
                    }
                }
            }
            if pairs.is_empty() {
                pairs.push((0, 1));
            }
            let g = arc_graph(&pairs, n);
            let k = rng.gen_range(2..=4usize);
            let perms = all_permutations(k);
            let tuples: Vec<Vec<Permutation>> = g
                .edge_records()
                .iter()
                .map(|_| vec![perms[rng.gen_range(0..perms.len())].clone()])
                .collect();
            let l = SLabeling::new(g.clone(), canonical_orientation(&g), tuples, k).unwrap();
            let full = full_palette(k);
            assert_eq!(count_colorings(&l, &full).unwrap(), brute_force(&l, &full));
            // restricted palette as well
            let palette: Vec<u16> = (0..k as u16).filter(|&c| c != 0).collect();
            if !palette.is_empty() {
                assert_eq!(
                    count_colorings(&l, &palette).unwrap(),
                    brute_force(&l, &palette)
                );
            }
        }
    }

    #[test]
    fn chromatic_values_match_delcon() {
        let k3 = arc_graph(&[(0, 1), (0, 2), (1, 2)], 3);
        assert_eq!(chromatic_value(&k3, 3).unwrap(), 6);
        assert_eq!(chromatic_poly_delcon(&k3, 3), 6);
        let c4 = arc_graph(&[(0, 1), (1, 2), (2, 3), (0, 3)], 4);
        assert_eq!(chromatic_value(&c4, 3).unwrap(), 18);
        assert_eq!(chromatic_poly_delcon(&c4, 3), 18);
        let p3 = arc_graph(&[(0, 1), (1, 2)], 3);
        assert_eq!(chromatic_value(&p3, 4).unwrap(), 36);
        assert_eq!(chromatic_poly_delcon(&p3, 4), 36);
    }

    #[test]
    fn dp_color_function_small_cases() {
        let opts = SearchOptions::default();
        // Trees collapse to the identity labeling.
        let p4 = arc_graph(&[(0, 1), (1, 2), (2, 3)], 4);
        let r = dp_color_function(&p4, 3, &opts).unwrap();
        assert_eq!(r.value, 3 * 2 * 2 * 2);
        assert!(!r.partial);

        let k2 = arc_graph(&[(0, 1)], 2);
        assert_eq!(dp_color_function(&k2, 5, &opts).unwrap().value, 20);

        // C_4 at k = 3: brute-force over all 6 labelings without dedup must
        // agree with the deduplicated sweep.
        let c4 = arc_graph(&[(0, 1), (1, 2), (2, 3), (0, 3)], 4);
        let deduped = dp_color_function(&c4, 3, &opts).unwrap();
        let raw = dp_color_function(&c4, 3, &SearchOptions { dedup: false, ..opts }).unwrap();
        assert_eq!(deduped.value, raw.value);
        assert_eq!(deduped.value, 15);
        assert_eq!(raw.labelings_examined, 6);
        assert_eq!(deduped.labelings_examined, 3);
        // witness reproduces the value
        if let Some(Witness::Labeling(w)) = &deduped.witness {
            assert_eq!(count_colorings(w, &full_palette(3)).unwrap() as u128, deduped.value);
        } else {
            panic!("missing witness");
        }
    }

    #[test]
    fn linear_equals_dp_at_three_colors() {
        let opts = SearchOptions::default();
        for pairs in [
            vec![(0usize, 1usize), (1, 2), (2, 3), (0, 3)],
            vec![(0, 1), (0, 2), (1, 2)],
            vec![(0, 1), (0, 2), (0, 3), (1, 2), (2, 3)],
        ] {
            let n = 1 + pairs.iter().map(|&(u, v)| u.max(v)).max().unwrap();
            let g = arc_graph(&pairs, n);
            assert_eq!(
                linear_color_function(&g, 3, &opts).unwrap().value,
                dp_color_function(&g, 3, &opts).unwrap().value
            );
        }
    }

    #[test]
    fn sandwich_ordering() {
        let opts = SearchOptions::default();
        let graphs = [
            vec![(0usize, 1usize), (1, 2), (2, 3), (0, 3)],
            vec![(0, 1), (0, 2), (1, 2), (2, 3)],
        ];
        for pairs in graphs {
            let n = 1 + pairs.iter().map(|&(u, v)| u.max(v)).max().unwrap();
            let g = arc_graph(&pairs, n);
            for k in [3usize, 4] {
                let dp = dp_color_function(&g, k, &opts).unwrap().value;
                let lin = linear_color_function(&g, k, &opts).unwrap().value;
                let signed = signed_color_function(&g, k, &opts).unwrap().value;
                let classical = chromatic_value(&g, k).unwrap() as u128;
                assert!(dp <= lin && lin <= classical);
                assert!(dp <= signed && signed <= classical);
            }
        }
    }

    #[test]
    fn multiplicative_over_components() {
        let opts = SearchOptions::default();
        let g = arc_graph(&[(0, 1), (1, 2), (0, 2), (3, 4)], 5);
        let k3 = arc_graph(&[(0, 1), (1, 2), (0, 2)], 3);
        let k2 = arc_graph(&[(0, 1)], 2);
        for k in [3usize, 4] {
            let whole = dp_color_function(&g, k, &opts).unwrap().value;
            let a = dp_color_function(&k3, k, &opts).unwrap().value;
            let b = dp_color_function(&k2, k, &opts).unwrap().value;
            assert_eq!(whole, a * b);
        }
    }

    #[test]
    fn colorability_thresholds() {
        let opts = SearchOptions::default();
        let c4 = arc_graph(&[(0, 1), (1, 2), (2, 3), (0, 3)], 4);
        assert!(!dp_chromatic_leq(&c4, 2, &opts).unwrap());
        assert!(dp_chromatic_leq(&c4, 3, &opts).unwrap());
        let tree = arc_graph(&[(0, 1), (1, 2), (1, 3)], 4);
        assert!(dp_chromatic_leq(&tree, 2, &opts).unwrap());
        let k4 = arc_graph(&[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)], 4);
        assert!(dp_chromatic_leq(&k4, 4, &opts).unwrap());
        assert!(!dp_chromatic_leq(&k4, 3, &opts).unwrap());
    }

    #[test]
    fn multigraph_colorability() {
        // A doubled edge needs three colors under fully-general labelings.
        let dipole = Arc::new(Multigraph::new(2, &[(0, 1, 2)]).unwrap());
        let opts = SearchOptions::default();
        assert!(!dp_chromatic_leq(&dipole, 2, &opts).unwrap());
        assert!(dp_chromatic_leq(&dipole, 3, &opts).unwrap());
    }

    #[test]
    fn signed_counts() {
        let k2 = arc_graph(&[(0, 1)], 2);
        let neg = SignedGraph::new(k2.clone(), vec![-1]).unwrap();
        assert_eq!(signed_count(&neg, 2).unwrap(), 2);
        let pos = SignedGraph::all_positive(k2.clone()).unwrap();
        assert_eq!(signed_count(&pos, 3).unwrap(), 6);
        let c3 = arc_graph(&[(0, 1), (0, 2), (1, 2)], 3);
        let allneg = SignedGraph::new(c3, vec![-1, -1, -1]).unwrap();
        assert_eq!(signed_count(&allneg, 3).unwrap(), 8);
    }

    #[test]
    fn signed_function_cases() {
        let opts = SearchOptions::default();
        // Trees: switching collapses to all-positive, k(k-1)^{n-1} for odd k.
        let p4 = arc_graph(&[(0, 1), (1, 2), (2, 3)], 4);
        assert_eq!(signed_color_function(&p4, 3, &opts).unwrap().value, 3 * 2 * 2 * 2);
        assert_eq!(signed_color_function(&p4, 5, &opts).unwrap().value, 5 * 4 * 4 * 4);

        // K_2 at k = 4: both switching classes give 12.
        let k2 = arc_graph(&[(0, 1)], 2);
        assert_eq!(signed_color_function(&k2, 4, &opts).unwrap().value, 12);

        // C_4 at k = 3: the two switching classes, against a full scan over
        // all 16 sign patterns.
        let c4 = arc_graph(&[(0, 1), (1, 2), (2, 3), (0, 3)], 4);
        let reps = signed_color_function(&c4, 3, &opts).unwrap();
        let mut full_min = u64::MAX;
        for bits in 0..16u32 {
            let signs: Vec<i8> = (0..4).map(|i| if (bits >> i) & 1 == 1 { -1 } else { 1 }).collect();
            let sg = SignedGraph::new(c4.clone(), signs).unwrap();
            full_min = full_min.min(signed_count(&sg, 3).unwrap());
        }
        assert_eq!(reps.value, full_min as u128);
        assert_eq!(reps.labelings_examined, 2);
    }

    #[test]
    fn budget_flags_partial() {
        let c4 = arc_graph(&[(0, 1), (1, 2), (2, 3), (0, 3)], 4);
        let opts = SearchOptions { budget: 10, dedup: true };
        let r = dp_color_function(&c4, 3, &opts).unwrap();
        assert!(r.partial);
        assert_eq!(r.labelings_examined, 1);
        assert!(matches!(s_colorable(&c4, &all_permutations(3), 3, &opts), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn reversed_orientation_with_inverse_counts_equal() {
        // the pair (u -> v, pi) and (v -> u, pi^-1) impose the same
        // constraint, so counts agree
        let g = arc_graph(&[(0, 1), (1, 2)], 3);
        for k in [3usize, 4] {
            for pi in all_permutations(k) {
                let id = Permutation::identity(k);
                let forward = SLabeling::new(
                    g.clone(),
                    canonical_orientation(&g),
                    vec![vec![pi.clone()], vec![id.clone()]],
                    k,
                )
                .unwrap();
                let reversed = SLabeling::new(
                    g.clone(),
                    crate::graph::Orientation { arcs: vec![(1, 0), (1, 2)] },
                    vec![vec![pi.inverse()], vec![id.clone()]],
                    k,
                )
                .unwrap();
                let full = full_palette(k);
                assert_eq!(
                    count_colorings(&forward, &full).unwrap(),
                    count_colorings(&reversed, &full).unwrap()
                );
            }
        }
    }

    #[test]
    fn gauge_invariance_of_counts() {
        use rand::prelude::*;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..40 {
            let n = rng.gen_range(2..=5);
            let mut pairs = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(0.5) {
                        pairs.push((u, v));
                    }
                }
            }
            if pairs.is_empty() {
                pairs.push((0, 1));
            }
            let g = arc_graph(&pairs, n);
            let k = rng.gen_range(2..=4usize);
            let perms = all_permutations(k);
            let tuples: Vec<Vec<Permutation>> = g
                .edge_records()
                .iter()
                .map(|_| vec![perms[rng.gen_range(0..perms.len())].clone()])
                .collect();
            let l = SLabeling::new(g.clone(), canonical_orientation(&g), tuples, k).unwrap();
            let taus: Vec<Permutation> =
                (0..n).map(|_| perms[rng.gen_range(0..perms.len())].clone()).collect();
            let gauged = l.apply_gauge(&taus).unwrap();
            let full = full_palette(k);
            assert_eq!(
                count_colorings(&l, &full).unwrap(),
                count_colorings(&gauged, &full).unwrap()
            );
        }
    }
}
