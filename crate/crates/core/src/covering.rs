//! Finite-field covering polynomials whose nonzeros are proper colorings.
//!
//! The building block is the L-polynomial
//! L^pi_{i,j}(x, y) = (j-i)(y-pi(i)) - (pi(j)-pi(i))(x-i), which vanishes on
//! the line through (i, pi(i)) and (j, pi(j)). Products of L-polynomials
//! cover the graph of any permutation in degree floor(k/2), or degree k-2
//! with a prescribed nonzero; gluing one factor per edge of a labeled graph
//! gives a polynomial whose nonzeros are proper colorings, so its degree
//! feeds the Alon-Furedi count lower bound.

use std::sync::Arc;

use rayon::prelude::*;

use crate::bounds::{BoundValue, Hypothesis, Rational};
use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::graph::{add_parallel_edges, canonical_orientation, SpanningTree};
use crate::labeling::{Permutation, SLabeling};

/// A polynomial in two variables over GF(k), coefficients on the k x k
/// monomial grid x^a y^b with a, b <= k-1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BivariatePoly {
    k: usize,
    /// coeffs[a * k + b] multiplies x^a y^b.
    coeffs: Vec<u16>,
    degree: usize,
}

impl BivariatePoly {
    pub fn from_coeffs(k: usize, coeffs: Vec<u16>) -> BivariatePoly {
        assert_eq!(coeffs.len(), k * k);
        let degree = coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, _)| i / k + i % k)
            .max()
            .unwrap_or(0);
        BivariatePoly { k, coeffs, degree }
    }

    /// cx * x + cy * y + c0
    pub fn linear(field: &Field, cx: FieldElement, cy: FieldElement, c0: FieldElement) -> BivariatePoly {
        let k = field.order();
        let mut coeffs = vec![0u16; k * k];
        coeffs[0] = c0.0;
        coeffs[1] = cy.0; // x^0 y^1
        coeffs[k] = cx.0; // x^1 y^0
        BivariatePoly::from_coeffs(k, coeffs)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeff(&self, a: usize, b: usize) -> u16 {
        self.coeffs[a * self.k + b]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn eval(&self, field: &Field, x: FieldElement, y: FieldElement) -> FieldElement {
        let k = self.k;
        let mut xp = vec![field.one(); k];
        let mut yp = vec![field.one(); k];
        for i in 1..k {
            xp[i] = field.mul(xp[i - 1], x);
            yp[i] = field.mul(yp[i - 1], y);
        }
        let mut acc = field.zero();
        for a in 0..k {
            for b in 0..k {
                let c = self.coeffs[a * k + b];
                if c != 0 {
                    let term = field.mul(field.mul(FieldElement(c), xp[a]), yp[b]);
                    acc = field.add(acc, term);
                }
            }
        }
        acc
    }
}

/// One L-polynomial factor, remembering the pair it was built from.
#[derive(Clone, Debug)]
pub struct LPolyFactor {
    pub i: FieldElement,
    pub j: FieldElement,
    pub perm: Permutation,
    pub poly: BivariatePoly,
}

/// L^pi_{i,j}(x,y) = (j-i)(y-pi(i)) - (pi(j)-pi(i))(x-i).
pub fn l_polynomial(field: &Field, perm: &Permutation, i: FieldElement, j: FieldElement) -> LPolyFactor {
    let pi_i = FieldElement(perm.apply(i.0));
    let pi_j = FieldElement(perm.apply(j.0));
    let dj = field.sub(j, i);
    let dp = field.sub(pi_j, pi_i);
    // expand: dj*y - dp*x + (dp*i - dj*pi(i))
    let cx = field.neg(dp);
    let cy = dj;
    let c0 = field.sub(field.mul(dp, i), field.mul(dj, pi_i));
    LPolyFactor { i, j, perm: perm.clone(), poly: BivariatePoly::linear(field, cx, cy, c0) }
}

/// The permutation of GF(k) whose graph is the zero set of L^pi_{i,j}:
/// x -> (j-i)^-1 (pi(j)-pi(i)) (x-i) + pi(i). Affine, and defined for i != j.
pub fn corresponding_permutation(
    field: &Field,
    perm: &Permutation,
    i: FieldElement,
    j: FieldElement,
) -> Result<Permutation> {
    if i == j {
        return Err(Error::InvalidArgument("corresponding permutation needs i != j".into()));
    }
    let pi_i = FieldElement(perm.apply(i.0));
    let pi_j = FieldElement(perm.apply(j.0));
    let slope = field.mul(field.inv(field.sub(j, i))?, field.sub(pi_j, pi_i));
    let image = field
        .elements()
        .map(|x| field.add(field.mul(slope, field.sub(x, i)), pi_i).0)
        .collect();
    Permutation::from_images(image)
}

/// Degree-floor(k/2) product of L-polynomials vanishing on the whole graph
/// of pi. Even k pairs elements in canonical order; odd k first locates two
/// chords of equal slope at a common element (guaranteed because the
/// complete graph on k vertices is not (k-1)-edge-colorable) and pairs the
/// rest.
pub fn cover_halfk(field: &Field, perm: &Permutation) -> Vec<LPolyFactor> {
    let k = field.order();
    assert!(k >= 2, "covering needs k >= 2");
    let els: Vec<FieldElement> = field.elements().collect();
    if k.is_multiple_of(2) {
        return (0..k / 2)
            .map(|i| l_polynomial(field, perm, els[2 * i], els[2 * i + 1]))
            .collect();
    }
    let slope = |a: FieldElement, b: FieldElement| {
        let d = field.sub(b, a);
        let dp = field.sub(FieldElement(perm.apply(b.0)), FieldElement(perm.apply(a.0)));
        field.mul(field.inv(d).expect("distinct elements"), dp)
    };
    for a in &els {
        for (bi, b1) in els.iter().enumerate() {
            if b1 == a {
                continue;
            }
            for b2 in &els[bi + 1..] {
                if b2 == a {
                    continue;
                }
                if slope(*a, *b1) == slope(*a, *b2) {
                    let mut factors = vec![l_polynomial(field, perm, *a, *b1)];
                    let rest: Vec<FieldElement> = els
                        .iter()
                        .copied()
                        .filter(|e| e != a && e != b1 && e != b2)
                        .collect();
                    for pair in rest.chunks(2) {
                        factors.push(l_polynomial(field, perm, pair[0], pair[1]));
                    }
                    return factors;
                }
            }
        }
    }
    unreachable!("a slope collision always exists for odd k")
}

/// Degree-(k-2) product of L-polynomials vanishing on the graph of pi and
/// nonzero at the anchor (a, b) with pi(a) != b. For k = 3 the graph of any
/// permutation is a full line, found by scanning the three candidate
/// L-polynomials.
pub fn cover_km2_anchored(
    field: &Field,
    perm: &Permutation,
    a: FieldElement,
    b: FieldElement,
) -> Result<Vec<LPolyFactor>> {
    let k = field.order();
    if k < 3 {
        return Err(Error::InvalidArgument("anchored covering needs k >= 3".into()));
    }
    if perm.apply(a.0) == b.0 {
        return Err(Error::BadAnchor);
    }
    let els: Vec<FieldElement> = field.elements().collect();
    if k == 3 {
        for (ii, i) in els.iter().enumerate() {
            for j in &els[ii + 1..] {
                let f = l_polynomial(field, perm, *i, *j);
                let vanishes = els
                    .iter()
                    .all(|&c| f.poly.eval(field, c, FieldElement(perm.apply(c.0))) == field.zero());
                if vanishes && f.poly.eval(field, a, b) != field.zero() {
                    return Ok(vec![f]);
                }
            }
        }
        unreachable!("every permutation of GF(3) is covered by one line missing the anchor")
    }
    let pre_b = FieldElement(perm.inverse().apply(b.0));
    let mut others = els.iter().copied().filter(|&e| e != a && e != pre_b);
    let s = others.next().expect("k >= 4 leaves at least two spare elements");
    let t = others.next().expect("k >= 4 leaves at least two spare elements");
    let mut factors = vec![
        l_polynomial(field, perm, a, s),
        l_polynomial(field, perm, pre_b, t),
    ];
    for j in els.iter().copied() {
        if j != s && j != t && j != a && j != pre_b {
            factors.push(l_polynomial(field, perm, a, j));
        }
    }
    Ok(factors)
}

/// Which per-edge cover to use on non-tree edges.
#[derive(Clone, Debug)]
pub enum CoverMode {
    /// floor(k/2) per edge; nonzeros match the derived multigraph labeling.
    HalfK,
    /// k-2 per edge, guaranteed nonzero at the given proper coloring.
    Anchored(Vec<FieldElement>),
}

/// One bivariate factor bound to an ordered vertex pair.
#[derive(Clone, Debug)]
pub struct CoverFactor {
    pub tail: usize,
    pub head: usize,
    pub poly: BivariatePoly,
}

/// A product of per-edge covers for a whole normalized labeling. Kept in
/// factored form; the degree is the sum of factor degrees.
#[derive(Clone, Debug)]
pub struct CoverPolynomial {
    pub factors: Vec<CoverFactor>,
    pub degree: usize,
    k: usize,
    n: usize,
}

impl CoverPolynomial {
    pub fn eval(&self, field: &Field, point: &[FieldElement]) -> FieldElement {
        let mut acc = field.one();
        for f in &self.factors {
            let v = f.poly.eval(field, point[f.tail], point[f.head]);
            if v == field.zero() {
                return field.zero();
            }
            acc = field.mul(acc, v);
        }
        acc
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn field_order(&self) -> usize {
        self.k
    }
}

fn check_normalized(l: &SLabeling, tree: &SpanningTree) -> Result<()> {
    if !l.graph().is_simple() {
        return Err(Error::NotSimple);
    }
    if tree.order.len() != l.graph().vertex_count() {
        return Err(Error::Disconnected);
    }
    if !l.is_normalized(tree) {
        return Err(Error::NotNormalized);
    }
    Ok(())
}

fn check_proper(l: &SLabeling, kappa: &[FieldElement]) -> Result<()> {
    if kappa.len() != l.graph().vertex_count() {
        return Err(Error::SizeMismatch { expected: l.graph().vertex_count(), got: kappa.len() });
    }
    for (ei, tup) in l.tuples().iter().enumerate() {
        let (t, h) = l.orientation().arcs[ei];
        for p in tup {
            if p.apply(kappa[t].0) == kappa[h].0 {
                return Err(Error::ImproperColoring);
            }
        }
    }
    Ok(())
}

/// Builds the whole-graph cover polynomial of a tree-normalized labeling of
/// a connected simple graph: tree edges contribute x_tail - x_head, non-tree
/// edges the chosen per-edge cover. Total degree is
/// floor(k/2)(m-n+1) + n - 1 in HalfK mode and (k-2)(m-n+1) + n - 1
/// anchored.
pub fn graph_cover_polynomial(
    field: &Field,
    l: &SLabeling,
    tree: &SpanningTree,
    mode: &CoverMode,
) -> Result<CoverPolynomial> {
    check_normalized(l, tree)?;
    if l.k() != field.order() {
        return Err(Error::SizeMismatch { expected: field.order(), got: l.k() });
    }
    if let CoverMode::Anchored(kappa) = mode {
        check_proper(l, kappa)?;
    }
    let g = l.graph();
    let n = g.vertex_count();
    let one = field.one();
    let minus_one = field.neg(one);
    let mut factors = Vec::new();
    for (ei, tup) in l.tuples().iter().enumerate() {
        let (tail, head) = l.orientation().arcs[ei];
        if tree.contains_edge(ei) {
            // x_tail - x_head
            factors.push(CoverFactor {
                tail,
                head,
                poly: BivariatePoly::linear(field, one, minus_one, field.zero()),
            });
        } else {
            let pi = &tup[0];
            let per_edge = match mode {
                CoverMode::HalfK => cover_halfk(field, pi),
                CoverMode::Anchored(kappa) => {
                    cover_km2_anchored(field, pi, kappa[tail], kappa[head])?
                }
            };
            for f in per_edge {
                factors.push(CoverFactor { tail, head, poly: f.poly });
            }
        }
    }
    let degree = factors.iter().map(|f| f.poly.degree()).sum();
    Ok(CoverPolynomial { factors, degree, k: field.order(), n })
}

/// The companion labeling on the parallel-edge multigraph: each non-tree
/// edge carries the tuple of permutations corresponding to its HalfK
/// factors, so the cover polynomial is nonzero exactly on that labeling's
/// proper colorings.
pub fn derived_multigraph_labeling(
    field: &Field,
    l: &SLabeling,
    tree: &SpanningTree,
) -> Result<SLabeling> {
    check_normalized(l, tree)?;
    if l.k() != field.order() {
        return Err(Error::SizeMismatch { expected: field.order(), got: l.k() });
    }
    let k = field.order();
    let q = k / 2;
    let g = l.graph();
    let expanded = Arc::new(add_parallel_edges(g, tree, q.saturating_sub(1))?);
    let mut tuples = Vec::with_capacity(expanded.underlying_edge_count());
    for (ei, tup) in l.tuples().iter().enumerate() {
        if tree.contains_edge(ei) {
            tuples.push(vec![Permutation::identity(k)]);
        } else {
            let pi = &tup[0];
            let mut t = Vec::with_capacity(q);
            for f in cover_halfk(field, pi) {
                t.push(corresponding_permutation(field, pi, f.i, f.j)?);
            }
            tuples.push(t);
        }
    }
    SLabeling::new(expanded.clone(), canonical_orientation(&expanded), tuples, k)
}

/// Exhaustive count of nonzeros of the cover polynomial over GF(k)^n.
pub fn count_nonzeros(field: &Field, f: &CoverPolynomial, budget: u64) -> Result<u64> {
    let k = field.order() as u64;
    let n = f.vertex_count();
    let total = k.checked_pow(n as u32).ok_or(Error::BudgetExceeded { budget })?;
    if total > budget {
        return Err(Error::BudgetExceeded { budget });
    }
    if n == 0 {
        return Ok(1);
    }
    let count = (0..field.order() as u16)
        .into_par_iter()
        .map(|first| {
            let mut point = vec![FieldElement(0); n];
            point[0] = FieldElement(first);
            let mut local = 0u64;
            let mut odo = vec![0u16; n - 1];
            loop {
                for (i, &d) in odo.iter().enumerate() {
                    point[i + 1] = FieldElement(d);
                }
                if f.eval(field, &point) != field.zero() {
                    local += 1;
                }
                let mut carry = true;
                for d in odo.iter_mut() {
                    *d += 1;
                    if (*d as usize) < field.order() {
                        carry = false;
                        break;
                    }
                    *d = 0;
                }
                if carry {
                    break;
                }
            }
            local
        })
        .sum();
    Ok(count)
}

/// Exact Alon-Furedi minimum: the least product of q_i with 1 <= q_i <=
/// size_i and sum q_i >= sum size_i - d. Returns 1 when the constraint is
/// vacuous. Greedy: saturate the largest capacities first; one partial slot
/// takes the remainder.
pub fn alon_furedi_exact(sizes: &[u64], d: u64) -> u128 {
    let n = sizes.len() as u64;
    let total: u64 = sizes.iter().sum();
    let required = total.saturating_sub(d);
    if required <= n {
        return 1;
    }
    let mut sorted: Vec<u64> = sizes.to_vec();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    let mut surplus = required - n;
    let mut product: u128 = 1;
    for &s in &sorted {
        if surplus == 0 {
            break;
        }
        let take = surplus.min(s - 1);
        product *= (1 + take) as u128;
        surplus -= take;
    }
    product
}

/// The weakened closed form t^((S-n-d)/(t-1)), valid when S >= n + d and
/// t >= 2.
pub fn alon_furedi_weak(n: u64, s: u64, t: u64, d: u64) -> BoundValue {
    let hyps = vec![
        Hypothesis {
            name: "S >= n + d".into(),
            satisfied: s >= n + d,
            detail: format!("S = {s}, n + d = {}", n + d),
        },
        Hypothesis { name: "t >= 2".into(), satisfied: t >= 2, detail: format!("t = {t}") },
    ];
    let exponent = if t >= 2 {
        Rational::new(s as i64 - n as i64 - d as i64, t as i64 - 1)
    } else {
        Rational::new(0, 1)
    };
    BoundValue {
        theorem: "alon-furedi-weak".into(),
        base: t,
        exponent,
        floor: crate::bounds::pow_ceil(t, exponent),
        hypotheses: hyps,
        note: None,
    }
}

/// Visits all k^n points of GF(k)^n in odometer order.
pub fn for_each_point<F: FnMut(&[FieldElement])>(field: &Field, n: usize, mut f: F) {
    let k = field.order();
    let mut point = vec![FieldElement(0); n];
    loop {
        f(&point);
        let mut carry = true;
        for slot in point.iter_mut() {
            slot.0 += 1;
            if (slot.0 as usize) < k {
                carry = false;
                break;
            }
            slot.0 = 0;
        }
        if carry || n == 0 {
            break;
        }
    }
}
