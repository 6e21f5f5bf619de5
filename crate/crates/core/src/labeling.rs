//! S-labelings and their equivalence transformations.
//!
//! A labeling assigns to every oriented underlying edge a tuple of
//! permutations, one per parallel edge. Gauging by per-vertex permutations
//! (tau_head . pi . tau_tail^-1) preserves the number of proper colorings;
//! tree normalization gauges a spanning tree to the identity, and the
//! residual freedom is simultaneous conjugation of the remaining slots.

use std::collections::HashMap;
use std::fmt;
use std::ops::ControlFlow;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::graph::{canonical_orientation, Multigraph, Orientation, SpanningTree};

/// A permutation of a color set of size k, stored in one-line notation:
/// image[x] is the image of x.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Permutation {
    image: Vec<u16>,
}

impl Permutation {
    pub fn identity(k: usize) -> Permutation {
        Permutation { image: (0..k as u16).collect() }
    }

    pub fn from_images(image: Vec<u16>) -> Result<Permutation> {
        let k = image.len();
        let mut seen = vec![false; k];
        for &x in &image {
            if (x as usize) >= k || seen[x as usize] {
                return Err(Error::NotBijection);
            }
            seen[x as usize] = true;
        }
        Ok(Permutation { image })
    }

    pub fn degree(&self) -> usize {
        self.image.len()
    }

    pub fn apply(&self, x: u16) -> u16 {
        self.image[x as usize]
    }

    pub fn images(&self) -> &[u16] {
        &self.image
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &x)| i as u16 == x)
    }

    /// self . other: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation { image: other.image.iter().map(|&x| self.image[x as usize]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u16; self.image.len()];
        for (i, &x) in self.image.iter().enumerate() {
            inv[x as usize] = i as u16;
        }
        Permutation { image: inv }
    }

    /// alpha^-1 . self . alpha
    pub fn conjugate_by(&self, alpha: &Permutation) -> Permutation {
        alpha.inverse().compose(self).compose(alpha)
    }

    /// One-line notation with 0-9 then a-z digits; supports k <= 36.
    pub fn parse_one_line(s: &str) -> Result<Permutation> {
        let mut image = Vec::with_capacity(s.len());
        for ch in s.chars() {
            let v = match ch {
                '0'..='9' => ch as u16 - '0' as u16,
                'a'..='z' => ch as u16 - 'a' as u16 + 10,
                _ => return Err(Error::LabelingParse(format!("bad symbol '{ch}' in permutation"))),
            };
            image.push(v);
        }
        Permutation::from_images(image)
    }

    /// Returns a permutation ax + b over the field when self is affine.
    pub fn as_affine(&self, field: &Field) -> Option<(FieldElement, FieldElement)> {
        if self.degree() != field.order() {
            return None;
        }
        let b = FieldElement(self.image[0]);
        let a = field.sub(FieldElement(self.image[1]), b);
        if a == field.zero() {
            return None;
        }
        for x in field.elements() {
            if self.apply(x.0) != field.add(field.mul(a, x), b).0 {
                return None;
            }
        }
        Some((a, b))
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree() <= 36 {
            for &x in &self.image {
                let ch = if x < 10 {
                    (b'0' + x as u8) as char
                } else {
                    (b'a' + (x - 10) as u8) as char
                };
                write!(f, "{ch}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.image.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", parts.join(","))
        }
    }
}

/// All k! permutations of 0..k-1 in lexicographic one-line order.
pub fn all_permutations(k: usize) -> Vec<Permutation> {
    assert!(k <= 10, "full symmetric group enumeration is capped at k = 10");
    let mut image: Vec<u16> = (0..k as u16).collect();
    let mut out = Vec::new();
    loop {
        out.push(Permutation { image: image.clone() });
        // next lexicographic permutation
        let Some(i) = (0..k.saturating_sub(1)).rev().find(|&i| image[i] < image[i + 1]) else {
            break;
        };
        let j = (i + 1..k).rev().find(|&j| image[j] > image[i]).unwrap();
        image.swap(i, j);
        image[i + 1..].reverse();
    }
    out
}

/// The field-linear permutations x -> ax + b (a != 0), sorted lexicographically.
pub fn affine_permutations(field: &Field) -> Vec<Permutation> {
    let mut out = Vec::new();
    for a in field.elements().skip(1) {
        for b in field.elements() {
            out.push(affine_permutation(field, a, b));
        }
    }
    out.sort();
    out
}

pub fn affine_permutation(field: &Field, a: FieldElement, b: FieldElement) -> Permutation {
    assert!(a != field.zero(), "affine permutations need a != 0");
    let image = field.elements().map(|x| field.add(field.mul(a, x), b).0).collect();
    Permutation { image }
}

/// x -> -x over the field.
pub fn negation_permutation(field: &Field) -> Permutation {
    Permutation { image: field.elements().map(|x| field.neg(x).0).collect() }
}

/// x -> x + 1 over the field.
pub fn add_one_permutation(field: &Field) -> Permutation {
    let one = field.one();
    Permutation { image: field.elements().map(|x| field.add(x, one).0).collect() }
}

/// An S-labeling: an orientation plus one permutation tuple per underlying
/// edge (tuple length = edge multiplicity).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SLabeling {
    graph: Arc<Multigraph>,
    orientation: Orientation,
    tuples: Vec<Vec<Permutation>>,
    k: usize,
}

impl SLabeling {
    pub fn new(
        graph: Arc<Multigraph>,
        orientation: Orientation,
        tuples: Vec<Vec<Permutation>>,
        k: usize,
    ) -> Result<SLabeling> {
        if orientation.arcs.len() != graph.underlying_edge_count()
            || tuples.len() != graph.underlying_edge_count()
        {
            return Err(Error::SizeMismatch {
                expected: graph.underlying_edge_count(),
                got: tuples.len(),
            });
        }
        for (e, tup) in graph.edge_records().iter().zip(&tuples) {
            if tup.len() != e.multiplicity {
                return Err(Error::SizeMismatch { expected: e.multiplicity, got: tup.len() });
            }
            for p in tup {
                if p.degree() != k {
                    return Err(Error::SizeMismatch { expected: k, got: p.degree() });
                }
            }
        }
        Ok(SLabeling { graph, orientation, tuples, k })
    }

    /// The all-identity labeling with the canonical orientation.
    pub fn identity(graph: Arc<Multigraph>, k: usize) -> SLabeling {
        let orientation = canonical_orientation(&graph);
        let tuples = graph
            .edge_records()
            .iter()
            .map(|e| vec![Permutation::identity(k); e.multiplicity])
            .collect();
        SLabeling { graph, orientation, tuples, k }
    }

    pub fn graph(&self) -> &Arc<Multigraph> {
        &self.graph
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn orientation(&self) -> &Orientation {
        &self.orientation
    }

    pub fn tuples(&self) -> &[Vec<Permutation>] {
        &self.tuples
    }

    /// Gauges by one permutation per vertex: each component pi on an arc
    /// (t, h) becomes tau[h] . pi . tau[t]^-1. The result is equivalent to
    /// self (same number of proper colorings).
    pub fn apply_gauge(&self, taus: &[Permutation]) -> Result<SLabeling> {
        if taus.len() != self.graph.vertex_count() {
            return Err(Error::SizeMismatch {
                expected: self.graph.vertex_count(),
                got: taus.len(),
            });
        }
        for t in taus {
            if t.degree() != self.k {
                return Err(Error::SizeMismatch { expected: self.k, got: t.degree() });
            }
        }
        let inv: Vec<Permutation> = taus.iter().map(|t| t.inverse()).collect();
        let tuples = self
            .orientation
            .arcs
            .iter()
            .zip(&self.tuples)
            .map(|(&(t, h), tup)| {
                tup.iter().map(|p| taus[h].compose(p).compose(&inv[t])).collect()
            })
            .collect();
        Ok(SLabeling {
            graph: self.graph.clone(),
            orientation: self.orientation.clone(),
            tuples,
            k: self.k,
        })
    }

    /// Gauges at a single vertex: out-edges become pi . alpha^-1, in-edges
    /// alpha . pi.
    pub fn gauge_at_vertex(&self, u: usize, alpha: &Permutation) -> Result<SLabeling> {
        let mut taus = vec![Permutation::identity(self.k); self.graph.vertex_count()];
        taus[u] = alpha.clone();
        self.apply_gauge(&taus)
    }

    /// Simultaneous conjugation: every component becomes alpha^-1 . pi . alpha.
    pub fn conjugate(&self, alpha: &Permutation) -> Result<SLabeling> {
        let taus = vec![alpha.inverse(); self.graph.vertex_count()];
        self.apply_gauge(&taus)
    }

    /// Gauges the labeling so that every tree edge carries the identity (its
    /// first tuple component, for parallel tree edges). Gauge permutations
    /// are built along the BFS order, so a labeling whose components all lie
    /// in a composition-closed set stays inside it.
    pub fn normalize_tree(&self, tree: &SpanningTree) -> Result<SLabeling> {
        if tree.order.len() != self.graph.vertex_count() {
            return Err(Error::Disconnected);
        }
        let mut taus: Vec<Option<Permutation>> = vec![None; self.graph.vertex_count()];
        for &v in &tree.order {
            match tree.parent[v] {
                None => taus[v] = Some(Permutation::identity(self.k)),
                Some(u) => {
                    let ei = self.graph.edge_index(u, v).ok_or(Error::NotSpanningTree)?;
                    let pi = &self.tuples[ei][0];
                    let tau_u = taus[u].clone().ok_or(Error::NotSpanningTree)?;
                    let (tail, _head) = self.orientation.arcs[ei];
                    let tau_v = if tail == u {
                        tau_u.compose(&pi.inverse())
                    } else {
                        tau_u.compose(pi)
                    };
                    taus[v] = Some(tau_v);
                }
            }
        }
        let taus: Vec<Permutation> = taus.into_iter().map(|t| t.unwrap()).collect();
        self.apply_gauge(&taus)
    }

    /// True when the first component of every tree edge is the identity.
    pub fn is_normalized(&self, tree: &SpanningTree) -> bool {
        tree.edges.iter().all(|&ei| self.tuples[ei][0].is_identity())
    }

    /// Induced labeling on a sorted vertex subset (for per-component work).
    pub fn induced(&self, vertices: &[usize]) -> SLabeling {
        let mut index = vec![usize::MAX; self.graph.vertex_count()];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let sub = Arc::new(self.graph.induced(vertices));
        let mut arcs = Vec::new();
        let mut tuples = Vec::new();
        // induced() keeps edge order among surviving edges
        for (ei, e) in self.graph.edge_records().iter().enumerate() {
            if index[e.u] != usize::MAX && index[e.v] != usize::MAX {
                let (t, h) = self.orientation.arcs[ei];
                arcs.push((index[t], index[h]));
                tuples.push(self.tuples[ei].clone());
            }
        }
        SLabeling { graph: sub, orientation: Orientation { arcs }, tuples, k: self.k }
    }
}

/// Lexicographically smallest simultaneous conjugate of a tuple, over the
/// full symmetric group of the color set.
pub fn canonical_conjugate(tuple: &[Permutation]) -> Vec<Permutation> {
    assert!(!tuple.is_empty());
    let k = tuple[0].degree();
    canonical_conjugate_under(tuple, &all_permutations(k))
}

/// Same, restricted to a given gauge group.
pub fn canonical_conjugate_under(tuple: &[Permutation], group: &[Permutation]) -> Vec<Permutation> {
    let mut best: Option<Vec<Permutation>> = None;
    for alpha in group {
        let cand: Vec<Permutation> = tuple.iter().map(|p| p.conjugate_by(alpha)).collect();
        if best.as_ref().is_none_or(|b| cand < *b) {
            best = Some(cand);
        }
    }
    best.unwrap()
}

/// Labeling literal format: one line per underlying edge, "u v : perm[,perm...]"
/// in one-line notation, arc oriented u -> v as written.
pub fn parse_labeling(text: &str, graph: Arc<Multigraph>) -> Result<SLabeling> {
    let mut arcs: Vec<Option<(usize, usize)>> = vec![None; graph.underlying_edge_count()];
    let mut tuples: Vec<Option<Vec<Permutation>>> = vec![None; graph.underlying_edge_count()];
    let mut k: Option<usize> = None;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (head, perms) = line
            .split_once(':')
            .ok_or_else(|| Error::LabelingParse(format!("line {}: missing ':'", lineno + 1)))?;
        let ends: Vec<&str> = head.split_whitespace().collect();
        if ends.len() != 2 {
            return Err(Error::LabelingParse(format!("line {}: expected 'u v :'", lineno + 1)));
        }
        let u: usize = ends[0]
            .parse()
            .map_err(|_| Error::LabelingParse(format!("line {}: bad vertex", lineno + 1)))?;
        let v: usize = ends[1]
            .parse()
            .map_err(|_| Error::LabelingParse(format!("line {}: bad vertex", lineno + 1)))?;
        let ei = graph.edge_index(u, v).ok_or_else(|| {
            Error::LabelingParse(format!("line {}: {u} {v} is not an edge", lineno + 1))
        })?;
        if arcs[ei].is_some() {
            return Err(Error::LabelingParse(format!("line {}: duplicate edge", lineno + 1)));
        }
        let mut tup = Vec::new();
        for tok in perms.split(',') {
            let p = Permutation::parse_one_line(tok.trim())?;
            if *k.get_or_insert(p.degree()) != p.degree() {
                return Err(Error::SizeMismatch { expected: k.unwrap(), got: p.degree() });
            }
            tup.push(p);
        }
        arcs[ei] = Some((u, v));
        tuples[ei] = Some(tup);
    }
    let arcs: Vec<(usize, usize)> = arcs
        .into_iter()
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::LabelingParse("labeling does not cover every edge".into()))?;
    let tuples: Vec<Vec<Permutation>> = tuples.into_iter().map(|t| t.unwrap()).collect();
    let k = k.ok_or_else(|| Error::LabelingParse("empty labeling".into()))?;
    SLabeling::new(graph, Orientation { arcs }, tuples, k)
}

pub fn format_labeling(l: &SLabeling) -> String {
    let mut out = String::new();
    for (arc, tup) in l.orientation().arcs.iter().zip(l.tuples()) {
        let perms: Vec<String> = tup.iter().map(|p| p.to_string()).collect();
        out.push_str(&format!("{} {} : {}\n", arc.0, arc.1, perms.join(",")));
    }
    out
}

/// One free slot of the normalized labeling space.
#[derive(Copy, Clone, Debug)]
struct Slot {
    edge_index: usize,
    component: usize,
}

/// The stream of tree-normalized labelings: identity pinned on the first
/// component of every tree edge, all remaining components running over S.
/// With dedup, exactly one representative per simultaneous-conjugation orbit
/// is produced (lexicographic minimum), conjugating by the stabilizer of S
/// within S.
pub struct LabelingSpace {
    graph: Arc<Multigraph>,
    tree: SpanningTree,
    sset: Vec<Permutation>,
    slots: Vec<Slot>,
    group: Vec<Permutation>,
    /// conj_table[a * |S| + v] = index of group[a]^-1 . sset[v] . group[a]
    conj_table: Option<Vec<u32>>,
    k: usize,
}

const CONJ_TABLE_CAP: usize = 1 << 22;

impl LabelingSpace {
    pub fn new(
        graph: Arc<Multigraph>,
        tree: SpanningTree,
        sset: Vec<Permutation>,
        dedup: bool,
    ) -> Result<LabelingSpace> {
        if sset.is_empty() {
            return Err(Error::InvalidArgument("empty permutation set".into()));
        }
        let k = sset[0].degree();
        if sset.iter().any(|p| p.degree() != k) {
            return Err(Error::SizeMismatch { expected: k, got: 0 });
        }
        let mut sset = sset;
        sset.sort();
        sset.dedup();
        let mut slots = Vec::new();
        for (ei, e) in graph.edge_records().iter().enumerate() {
            let first_free = if tree.contains_edge(ei) { 1 } else { 0 };
            for c in first_free..e.multiplicity {
                slots.push(Slot { edge_index: ei, component: c });
            }
        }
        let group = if dedup { conjugation_stabilizer(&sset) } else { vec![Permutation::identity(k)] };
        let conj_table = if group.len() * sset.len() <= CONJ_TABLE_CAP {
            let index: HashMap<&Permutation, u32> =
                sset.iter().enumerate().map(|(i, p)| (p, i as u32)).collect();
            let mut t = Vec::with_capacity(group.len() * sset.len());
            for alpha in &group {
                for p in &sset {
                    t.push(index[&p.conjugate_by(alpha)]);
                }
            }
            Some(t)
        } else {
            None
        };
        Ok(LabelingSpace { graph, tree, sset, slots, group, conj_table, k })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn slot_count(&self) -> usize {
        self.slots.len()
    }

    pub fn set_size(&self) -> usize {
        self.sset.len()
    }

    pub fn dedup_group_size(&self) -> u64 {
        self.group.len().max(1) as u64
    }

    /// |S|^slots, the stream size without dedup.
    pub fn raw_size(&self) -> BigUint {
        let mut acc = BigUint::one();
        for _ in 0..self.slots.len() {
            acc *= self.sset.len();
        }
        acc
    }

    fn conj(&self, alpha_idx: u32, v: u16) -> u32 {
        match &self.conj_table {
            Some(t) => t[alpha_idx as usize * self.sset.len() + v as usize],
            None => {
                let conj = self.sset[v as usize].conjugate_by(&self.group[alpha_idx as usize]);
                self.sset.binary_search(&conj).expect("stabilizer keeps S closed") as u32
            }
        }
    }

    /// Visits every canonical assignment in lexicographic order. The visitor
    /// receives slot values as indices into the sorted S.
    pub fn visit<F>(&self, f: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&[u16]) -> ControlFlow<()>,
    {
        let active: Vec<u32> = (0..self.group.len() as u32).collect();
        let mut assignment = vec![0u16; self.slots.len()];
        self.visit_rec(0, &active, &mut assignment, f)
    }

    fn visit_rec<F>(
        &self,
        depth: usize,
        active: &[u32],
        assignment: &mut Vec<u16>,
        f: &mut F,
    ) -> ControlFlow<()>
    where
        F: FnMut(&[u16]) -> ControlFlow<()>,
    {
        if depth == self.slots.len() {
            return f(assignment);
        }
        let mut next_active = Vec::new();
        'values: for v in 0..self.sset.len() as u16 {
            next_active.clear();
            for &a in active {
                let w = self.conj(a, v);
                match w.cmp(&(v as u32)) {
                    std::cmp::Ordering::Less => continue 'values,
                    std::cmp::Ordering::Equal => next_active.push(a),
                    std::cmp::Ordering::Greater => {}
                }
            }
            assignment[depth] = v;
            self.visit_rec(depth + 1, &next_active, assignment, f)?;
        }
        ControlFlow::Continue(())
    }

    /// Canonical prefixes of the given depth with their surviving gauge sets;
    /// disjoint subtrees for parallel workers.
    pub fn prefixes(&self, depth: usize) -> Vec<(Vec<u16>, Vec<u32>)> {
        let depth = depth.min(self.slots.len());
        let mut out = Vec::new();
        let active: Vec<u32> = (0..self.group.len() as u32).collect();
        self.prefixes_rec(0, depth, &active, &mut Vec::new(), &mut out);
        out
    }

    fn prefixes_rec(
        &self,
        at: usize,
        depth: usize,
        active: &[u32],
        prefix: &mut Vec<u16>,
        out: &mut Vec<(Vec<u16>, Vec<u32>)>,
    ) {
        if at == depth {
            out.push((prefix.clone(), active.to_vec()));
            return;
        }
        let mut next_active = Vec::new();
        'values: for v in 0..self.sset.len() as u16 {
            next_active.clear();
            for &a in active {
                let w = self.conj(a, v);
                match w.cmp(&(v as u32)) {
                    std::cmp::Ordering::Less => continue 'values,
                    std::cmp::Ordering::Equal => next_active.push(a),
                    std::cmp::Ordering::Greater => {}
                }
            }
            prefix.push(v);
            self.prefixes_rec(at + 1, depth, &next_active, prefix, out);
            prefix.pop();
        }
    }

    /// Continues the canonical stream below a prefix produced by `prefixes`.
    pub fn visit_below<F>(&self, prefix: &[u16], active: &[u32], f: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&[u16]) -> ControlFlow<()>,
    {
        let mut assignment = vec![0u16; self.slots.len()];
        assignment[..prefix.len()].copy_from_slice(prefix);
        self.visit_rec(prefix.len(), active, &mut assignment, f)
    }

    /// Materializes the labeling for one assignment.
    pub fn labeling(&self, assignment: &[u16]) -> SLabeling {
        let id = Permutation::identity(self.k);
        let mut tuples: Vec<Vec<Permutation>> = self
            .graph
            .edge_records()
            .iter()
            .map(|e| vec![id.clone(); e.multiplicity])
            .collect();
        for (slot, &v) in self.slots.iter().zip(assignment) {
            tuples[slot.edge_index][slot.component] = self.sset[v as usize].clone();
        }
        SLabeling {
            graph: self.graph.clone(),
            orientation: canonical_orientation(&self.graph),
            tuples,
            k: self.k,
        }
    }

    pub fn tree(&self) -> &SpanningTree {
        &self.tree
    }

    pub fn sset(&self) -> &[Permutation] {
        &self.sset
    }

    pub fn graph(&self) -> &Arc<Multigraph> {
        &self.graph
    }

    /// For each slot-bearing edge, in edge order: the edge index, whether an
    /// identity component is pinned on it (tree edge), and the slot range.
    pub fn slot_groups(&self) -> Vec<(usize, bool, std::ops::Range<usize>)> {
        let mut out: Vec<(usize, bool, std::ops::Range<usize>)> = Vec::new();
        for (i, slot) in self.slots.iter().enumerate() {
            match out.last_mut() {
                Some((ei, _, range)) if *ei == slot.edge_index => range.end = i + 1,
                _ => out.push((
                    slot.edge_index,
                    self.tree.contains_edge(slot.edge_index),
                    i..i + 1,
                )),
            }
        }
        out
    }

    /// Edge indices with no free slot: these stay all-identity in every
    /// labeling of the stream.
    pub fn fixed_edges(&self) -> Vec<usize> {
        (0..self.graph.underlying_edge_count())
            .filter(|ei| !self.slots.iter().any(|s| s.edge_index == *ei))
            .collect()
    }
}

/// The permutations alpha in S whose conjugation maps S onto itself. The
/// full symmetric group and the affine group are self-stabilizing; for an
/// arbitrary explicit list this may shrink to whatever closure is present.
fn conjugation_stabilizer(sset: &[Permutation]) -> Vec<Permutation> {
    let k = sset[0].degree();
    let factorial: u128 = (1..=k as u128).product();
    if sset.len() as u128 == factorial {
        return sset.to_vec();
    }
    let index: std::collections::HashSet<&Permutation> = sset.iter().collect();
    sset.iter()
        .filter(|alpha| sset.iter().all(|p| index.contains(&p.conjugate_by(alpha))))
        .cloned()
        .collect()
}

/// A simple graph with a sign on every edge.
#[derive(Clone, Debug)]
pub struct SignedGraph {
    graph: Arc<Multigraph>,
    signs: Vec<i8>,
}

impl SignedGraph {
    pub fn new(graph: Arc<Multigraph>, signs: Vec<i8>) -> Result<SignedGraph> {
        if !graph.is_simple() {
            return Err(Error::NotSimple);
        }
        if signs.len() != graph.underlying_edge_count() {
            return Err(Error::SizeMismatch {
                expected: graph.underlying_edge_count(),
                got: signs.len(),
            });
        }
        if signs.iter().any(|&s| s != 1 && s != -1) {
            return Err(Error::InvalidArgument("signs must be +1 or -1".into()));
        }
        Ok(SignedGraph { graph, signs })
    }

    pub fn all_positive(graph: Arc<Multigraph>) -> Result<SignedGraph> {
        let m = graph.underlying_edge_count();
        SignedGraph::new(graph, vec![1; m])
    }

    pub fn graph(&self) -> &Arc<Multigraph> {
        &self.graph
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    /// Switching at a vertex negates all incident signs; a gauge that
    /// preserves the coloring count.
    pub fn switch_at(&self, v: usize) -> SignedGraph {
        let signs = self
            .graph
            .edge_records()
            .iter()
            .zip(&self.signs)
            .map(|(e, &s)| if e.u == v || e.v == v { -s } else { s })
            .collect();
        SignedGraph { graph: self.graph.clone(), signs }
    }
}

/// Translates a signed graph into the two-permutation labeling over GF(k):
/// positive edges carry the identity; negative edges carry x -> -x for odd k
/// and x -> x + 1 for k = 2^r (the zero-free convention). Coloring counts
/// over the traditional signed color sets correspond bijectively.
pub fn signed_to_labeling(sg: &SignedGraph, k: u64) -> Result<SLabeling> {
    let field = Field::of_order(k)?;
    let pi = if field.characteristic() == 2 {
        add_one_permutation(&field)
    } else {
        negation_permutation(&field)
    };
    let id = Permutation::identity(field.order());
    let tuples = sg
        .signs
        .iter()
        .map(|&s| vec![if s == 1 { id.clone() } else { pi.clone() }])
        .collect();
    SLabeling::new(sg.graph.clone(), canonical_orientation(&sg.graph), tuples, field.order())
}

/// The deterministic bijection from the symmetric signed palette
/// {0, +-1, ..., +-t} onto GF(k) for odd k, satisfying psi(-a) = -psi(a):
/// returns the field element for each signed value, indexed by t + value.
pub fn signed_palette_bijection(field: &Field) -> Result<Vec<FieldElement>> {
    if field.characteristic() == 2 {
        return Err(Error::InvalidArgument("zero-symmetric palette needs odd order".into()));
    }
    let k = field.order();
    let t = (k - 1) / 2;
    let mut out = vec![field.zero(); k];
    out[t] = field.zero();
    let mut used = vec![false; k];
    used[0] = true;
    let mut plus = Vec::new();
    for e in field.elements() {
        if !used[e.index()] {
            used[e.index()] = true;
            used[field.neg(e).index()] = true;
            plus.push(e);
        }
    }
    for (i, &e) in plus.iter().enumerate() {
        out[t + 1 + i] = e;
        out[t - 1 - i] = field.neg(e);
    }
    Ok(out)
}
