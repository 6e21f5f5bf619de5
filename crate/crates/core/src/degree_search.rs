//! Minimal-degree searches for polynomials vanishing on the graph of a
//! permutation, optionally with a prescribed nonzero, decided by rank
//! computations over GF(k).
//!
//! Monomials are restricted to x^a y^b with a, b <= k-1; in that space a
//! nonzero polynomial is a nonzero function on GF(k)^2, so kernel vectors of
//! the evaluation matrix are honest witnesses. An anchored witness exists at
//! degree d exactly when appending the anchor evaluation row raises the rank
//! of the k x M evaluation matrix.

use rayon::prelude::*;

use crate::covering::{l_polynomial, BivariatePoly, LPolyFactor};
use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::labeling::{all_permutations, Permutation};

/// Dense matrix over GF(k), row-major.
pub struct GfMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<u16>,
}

impl GfMatrix {
    pub fn new(rows: usize, cols: usize) -> GfMatrix {
        GfMatrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn at(&self, r: usize, c: usize) -> u16 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: u16) {
        self.data[r * self.cols + c] = v;
    }
}

/// Reduced row echelon form in place. Pivots are chosen deterministically:
/// columns left to right, first nonzero row from the top. Returns the rank
/// and the pivot column list.
pub fn rref(field: &Field, m: &mut GfMatrix) -> (usize, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..m.cols {
        if row == m.rows {
            break;
        }
        let Some(p) = (row..m.rows).find(|&r| m.at(r, col) != 0) else {
            continue;
        };
        for c in 0..m.cols {
            let tmp = m.at(row, c);
            let v = m.at(p, c);
            m.set(row, c, v);
            m.set(p, c, tmp);
        }
        let inv = field.inv(FieldElement(m.at(row, col))).expect("pivot nonzero");
        for c in 0..m.cols {
            let v = field.mul(FieldElement(m.at(row, c)), inv);
            m.set(row, c, v.0);
        }
        for r in 0..m.rows {
            if r != row && m.at(r, col) != 0 {
                let factor = FieldElement(m.at(r, col));
                for c in 0..m.cols {
                    let v = field.sub(
                        FieldElement(m.at(r, c)),
                        field.mul(factor, FieldElement(m.at(row, c))),
                    );
                    m.set(r, c, v.0);
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    (row, pivots)
}

pub fn rank(field: &Field, m: &mut GfMatrix) -> usize {
    rref(field, m).0
}

/// Basis of the null space, from the reduced echelon form.
pub fn kernel_basis(field: &Field, m: &mut GfMatrix) -> Vec<Vec<u16>> {
    let (rank, pivots) = rref(field, m);
    let mut basis = Vec::new();
    let piv_of_col: Vec<Option<usize>> = {
        let mut v = vec![None; m.cols];
        for (r, &c) in pivots.iter().enumerate() {
            v[c] = Some(r);
        }
        v
    };
    for free in 0..m.cols {
        if piv_of_col[free].is_some() {
            continue;
        }
        let mut vec = vec![0u16; m.cols];
        vec[free] = 1;
        for (r, &pc) in pivots.iter().enumerate().take(rank) {
            vec[pc] = field.neg(FieldElement(m.at(r, free))).0;
        }
        basis.push(vec);
    }
    basis
}

/// Monomials x^a y^b with a + b <= d and a, b <= k-1, in (total degree, a)
/// order.
pub fn monomials(k: usize, d: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for total in 0..=d {
        for a in 0..=total.min(k - 1) {
            let b = total - a;
            if b < k {
                out.push((a, b));
            }
        }
    }
    out
}

/// Which search produced a result.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchMode {
    General,
    Anchored(u16, u16),
    ProductOfL,
    ProductOfLAnchored(u16, u16),
}

/// The witness carried alongside a minimal degree.
#[derive(Clone, Debug)]
pub enum SearchWitness {
    Poly(BivariatePoly),
    Factors(Vec<LPolyFactor>),
}

#[derive(Clone, Debug)]
pub struct DegreeSearchResult {
    pub perm: Permutation,
    pub degree: usize,
    pub mode: SearchMode,
    pub witness: SearchWitness,
}

fn evaluation_matrix(
    field: &Field,
    perm: &Permutation,
    mons: &[(usize, usize)],
    anchor: Option<(FieldElement, FieldElement)>,
) -> GfMatrix {
    let k = field.order();
    let extra = usize::from(anchor.is_some());
    let mut m = GfMatrix::new(k + extra, mons.len());
    let write_row = |row: usize, x: FieldElement, y: FieldElement, m: &mut GfMatrix| {
        let mut xp = vec![field.one(); k];
        let mut yp = vec![field.one(); k];
        for i in 1..k {
            xp[i] = field.mul(xp[i - 1], x);
            yp[i] = field.mul(yp[i - 1], y);
        }
        for (ci, &(a, b)) in mons.iter().enumerate() {
            m.set(row, ci, field.mul(xp[a], yp[b]).0);
        }
    };
    for (row, x) in field.elements().enumerate() {
        let y = FieldElement(perm.apply(x.0));
        write_row(row, x, y, &mut m);
    }
    if let Some((a, b)) = anchor {
        write_row(k, a, b, &mut m);
    }
    m
}

fn poly_from_coeffs(k: usize, mons: &[(usize, usize)], coeffs: &[u16]) -> BivariatePoly {
    let mut grid = vec![0u16; k * k];
    for (&(a, b), &c) in mons.iter().zip(coeffs) {
        grid[a * k + b] = c;
    }
    BivariatePoly::from_coeffs(k, grid)
}

fn assert_valid_witness(
    field: &Field,
    perm: &Permutation,
    poly: &BivariatePoly,
    anchor: Option<(FieldElement, FieldElement)>,
) {
    assert!(!poly.is_zero(), "witness must be a nonzero polynomial");
    for x in field.elements() {
        let y = FieldElement(perm.apply(x.0));
        assert_eq!(poly.eval(field, x, y), field.zero(), "witness must vanish on the graph");
    }
    if let Some((a, b)) = anchor {
        assert_ne!(poly.eval(field, a, b), field.zero(), "witness must be nonzero at the anchor");
    }
}

/// Smallest total degree of a nonzero polynomial vanishing at every
/// (c, pi(c)).
pub fn min_cover_degree(field: &Field, perm: &Permutation) -> DegreeSearchResult {
    let k = field.order();
    for d in 1..=2 * (k - 1) {
        let mons = monomials(k, d);
        let mut m = evaluation_matrix(field, perm, &mons, None);
        let kernel = kernel_basis(field, &mut m);
        if let Some(vec) = kernel.first() {
            let poly = poly_from_coeffs(k, &mons, vec);
            assert_valid_witness(field, perm, &poly, None);
            // The kernel basis vector may have total degree below d when a
            // lower-degree cover got skipped; it cannot, because we scan d
            // upward, so assert it.
            assert!(poly.degree() <= d);
            return DegreeSearchResult {
                perm: perm.clone(),
                degree: d,
                mode: SearchMode::General,
                witness: SearchWitness::Poly(poly),
            };
        }
    }
    unreachable!("a cover of degree floor(k/2) always exists")
}

/// Smallest total degree of a polynomial vanishing on the graph of pi and
/// nonzero at (a, b); requires pi(a) != b.
pub fn min_cover_degree_anchored(
    field: &Field,
    perm: &Permutation,
    a: FieldElement,
    b: FieldElement,
) -> Result<DegreeSearchResult> {
    if perm.apply(a.0) == b.0 {
        return Err(Error::BadAnchor);
    }
    let k = field.order();
    for d in 1..=2 * (k - 1) {
        let mons = monomials(k, d);
        let mut plain = evaluation_matrix(field, perm, &mons, None);
        let mut anchored = evaluation_matrix(field, perm, &mons, Some((a, b)));
        let r_plain = rank(field, &mut plain);
        let r_anch = rank(field, &mut anchored);
        if r_anch > r_plain {
            // Some kernel vector of the plain matrix has nonzero anchor
            // evaluation.
            let mut again = evaluation_matrix(field, perm, &mons, None);
            let kernel = kernel_basis(field, &mut again);
            let witness = kernel
                .iter()
                .map(|vec| poly_from_coeffs(k, &mons, vec))
                .find(|p| p.eval(field, a, b) != field.zero())
                .expect("rank gap guarantees an anchored kernel vector");
            assert_valid_witness(field, perm, &witness, Some((a, b)));
            return Ok(DegreeSearchResult {
                perm: perm.clone(),
                degree: d,
                mode: SearchMode::Anchored(a.0, b.0),
                witness: SearchWitness::Poly(witness),
            });
        }
    }
    unreachable!("an anchored cover of degree k-2 always exists")
}

/// Exact maximum of the minimal degree over all permutations of GF(k), and
/// over all valid anchors when `anchored`. Runs the plain exhaustive scan;
/// the work is k! (times k^2 anchors), so the budget gate keeps it to small
/// fields.
pub fn worst_case_degree(
    field: &Field,
    anchored: bool,
    budget: u64,
) -> Result<(usize, Vec<DegreeSearchResult>)> {
    let k = field.order();
    let mut work: u64 = (1..=k as u64).product();
    if anchored {
        work = work.saturating_mul((k * k) as u64);
    }
    if work > budget {
        return Err(Error::BudgetExceeded { budget });
    }
    let perms = all_permutations(k);
    let results: Vec<DegreeSearchResult> = perms
        .par_iter()
        .flat_map_iter(|p| {
            let mut local = Vec::new();
            if anchored {
                for a in field.elements() {
                    for b in field.elements() {
                        if p.apply(a.0) != b.0 {
                            local.push(
                                min_cover_degree_anchored(field, p, a, b)
                                    .expect("anchor validated"),
                            );
                        }
                    }
                }
            } else {
                local.push(min_cover_degree(field, p));
            }
            local
        })
        .collect();
    let max = results.iter().map(|r| r.degree).max().expect("nonempty scan");
    let witnesses = results.into_iter().filter(|r| r.degree == max).collect();
    Ok((max, witnesses))
}

/// Minimal number of L-polynomial factors whose zero sets cover every graph
/// point (the restricted product-only setup), with an optional anchor the
/// product must avoid. Exact branch-and-bound set cover over the canonical
/// line list.
pub fn min_cover_degree_product_of_l(
    field: &Field,
    perm: &Permutation,
    anchor: Option<(FieldElement, FieldElement)>,
) -> Result<DegreeSearchResult> {
    let k = field.order();
    if k > 7 {
        return Err(Error::InvalidArgument("product-of-L search is capped at k = 7".into()));
    }
    if let Some((a, b)) = anchor {
        if perm.apply(a.0) == b.0 {
            return Err(Error::BadAnchor);
        }
    }
    let els: Vec<FieldElement> = field.elements().collect();
    // Candidate lines through pairs of graph points, deduplicated by covered
    // set, in canonical pair order.
    let mut candidates: Vec<(u32, LPolyFactor)> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for (ii, &i) in els.iter().enumerate() {
        for &j in &els[ii + 1..] {
            let f = l_polynomial(field, perm, i, j);
            if let Some((a, b)) = anchor {
                if f.poly.eval(field, a, b) == field.zero() {
                    continue;
                }
            }
            let mut mask = 0u32;
            for (ci, &c) in els.iter().enumerate() {
                if f.poly.eval(field, c, FieldElement(perm.apply(c.0))) == field.zero() {
                    mask |= 1 << ci;
                }
            }
            if seen.insert(mask) {
                candidates.push((mask, f));
            }
        }
    }
    let full: u32 = (1 << k) - 1;
    let mut best: Option<Vec<usize>> = None;
    let mut chosen = Vec::new();
    fn bnb(
        candidates: &[(u32, LPolyFactor)],
        covered: u32,
        full: u32,
        chosen: &mut Vec<usize>,
        best: &mut Option<Vec<usize>>,
    ) {
        if covered == full {
            if best.as_ref().is_none_or(|b| chosen.len() < b.len()) {
                *best = Some(chosen.clone());
            }
            return;
        }
        // any completion uses at least one more factor
        if let Some(b) = best.as_ref() {
            if chosen.len() + 1 >= b.len() {
                return;
            }
        }
        // branch on the lowest uncovered graph point
        let lowest = (!covered & full).trailing_zeros();
        for (idx, (mask, _)) in candidates.iter().enumerate() {
            if mask & (1 << lowest) != 0 {
                chosen.push(idx);
                bnb(candidates, covered | mask, full, chosen, best);
                chosen.pop();
            }
        }
    }
    bnb(&candidates, 0, full, &mut chosen, &mut best);
    let best = best.expect("a product cover always exists");
    let factors: Vec<LPolyFactor> = best.iter().map(|&i| candidates[i].1.clone()).collect();
    // re-verify by direct evaluation
    for &c in &els {
        let y = FieldElement(perm.apply(c.0));
        assert!(factors.iter().any(|f| f.poly.eval(field, c, y) == field.zero()));
    }
    if let Some((a, b)) = anchor {
        for f in &factors {
            assert_ne!(f.poly.eval(field, a, b), field.zero());
        }
    }
    let mode = match anchor {
        Some((a, b)) => SearchMode::ProductOfLAnchored(a.0, b.0),
        None => SearchMode::ProductOfL,
    };
    Ok(DegreeSearchResult {
        perm: perm.clone(),
        degree: factors.len(),
        mode,
        witness: SearchWitness::Factors(factors),
    })
}

/// The permutation 10234...(k-1): transposes 0 and 1, fixes the rest. The
/// anchored worst case at (0, 0) for prime fields.
pub fn transposition_01(k: usize) -> Permutation {
    let mut image: Vec<u16> = (0..k as u16).collect();
    image.swap(0, 1);
    Permutation::from_images(image).expect("transposition is a bijection")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::prelude::*;

    fn f(k: u64) -> Field {
        Field::of_order(k).unwrap()
    }

    /// Naive rank oracle: row echelon without the deterministic pivot rule
    /// or back-substitution.
    fn naive_rank(field: &Field, rows: Vec<Vec<u16>>) -> usize {
        let mut rows: Vec<Vec<FieldElement>> = rows
            .into_iter()
            .map(|r| r.into_iter().map(FieldElement).collect())
            .collect();
        let mut rank = 0;
        let cols = rows.first().map_or(0, |r| r.len());
        for c in 0..cols {
            if let Some(p) = (rank..rows.len()).find(|&r| rows[r][c] != field.zero()) {
                rows.swap(rank, p);
                for r in rank + 1..rows.len() {
                    if rows[r][c] != field.zero() {
                        let factor =
                            field.mul(rows[r][c], field.inv(rows[rank][c]).unwrap());
                        for cc in 0..cols {
                            let sub = field.mul(factor, rows[rank][cc]);
                            rows[r][cc] = field.sub(rows[r][cc], sub);
                        }
                    }
                }
                rank += 1;
            }
        }
        rank
    }

    #[test]
    fn rank_matches_naive_on_random_matrices() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for k in [2u64, 3, 5, 8] {
            let field = f(k);
            for _ in 0..30 {
                let rows = rng.gen_range(1..=12usize);
                let cols = rng.gen_range(1..=60usize);
                let data: Vec<u16> =
                    (0..rows * cols).map(|_| rng.gen_range(0..k as u16)).collect();
                let as_rows: Vec<Vec<u16>> =
                    data.chunks(cols).map(|c| c.to_vec()).collect();
                let mut m = GfMatrix { rows, cols, data };
                assert_eq!(rank(&field, &mut m), naive_rank(&field, as_rows));
            }
        }
    }

    #[test]
    fn kernel_vectors_are_in_the_null_space() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let field = f(5);
        for _ in 0..20 {
            let rows = rng.gen_range(1..=6usize);
            let cols = rng.gen_range(1..=10usize);
            let data: Vec<u16> = (0..rows * cols).map(|_| rng.gen_range(0..5u16)).collect();
            let orig = data.clone();
            let mut m = GfMatrix { rows, cols, data };
            let basis = kernel_basis(&field, &mut m);
            for v in basis {
                for r in 0..rows {
                    let mut acc = field.zero();
                    for c in 0..cols {
                        acc = field.add(
                            acc,
                            field.mul(FieldElement(orig[r * cols + c]), FieldElement(v[c])),
                        );
                    }
                    assert_eq!(acc, field.zero());
                }
            }
        }
    }

    #[test]
    fn identity_and_linear_permutations_have_degree_one() {
        for k in [2u64, 3, 4, 5, 7, 8, 9] {
            let field = f(k);
            let r = min_cover_degree(&field, &Permutation::identity(k as usize));
            assert_eq!(r.degree, 1);
        }
        let field = f(5);
        for a in 1..5u16 {
            for b in 0..5u16 {
                let p = crate::labeling::affine_permutation(
                    &field,
                    FieldElement(a),
                    FieldElement(b),
                );
                assert_eq!(min_cover_degree(&field, &p).degree, 1);
            }
        }
    }

    #[test]
    fn anchored_simple_cases() {
        let field = f(3);
        let r = min_cover_degree_anchored(
            &field,
            &Permutation::identity(3),
            FieldElement(0),
            FieldElement(1),
        )
        .unwrap();
        assert_eq!(r.degree, 1);
        assert!(min_cover_degree_anchored(
            &field,
            &Permutation::identity(3),
            FieldElement(1),
            FieldElement(1)
        )
        .is_err());
    }

    #[test]
    fn transposition_family_small_primes() {
        for p in [3u64, 5, 7] {
            let field = f(p);
            let perm = transposition_01(p as usize);
            let r = min_cover_degree_anchored(&field, &perm, FieldElement(0), FieldElement(0))
                .unwrap();
            assert_eq!(r.degree, p as usize - 2, "p = {p}");
        }
    }

    #[test]
    fn worst_case_small_fields() {
        for k in [2u64, 3, 4, 5] {
            let field = f(k);
            let (max, witnesses) = worst_case_degree(&field, false, 1 << 30).unwrap();
            assert_eq!(max, k as usize / 2, "k = {k}");
            assert!(!witnesses.is_empty());
        }
        let field = f(5);
        let (max, _) = worst_case_degree(&field, true, 1 << 30).unwrap();
        assert_eq!(max, 3); // k - 2

        assert!(matches!(
            worst_case_degree(&f(7), true, 10),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn product_of_l_search() {
        let field = f(5);
        assert_eq!(
            min_cover_degree_product_of_l(&field, &Permutation::identity(5), None)
                .unwrap()
                .degree,
            1
        );
        let perm = transposition_01(5);
        let anchored = min_cover_degree_product_of_l(
            &field,
            &perm,
            Some((FieldElement(0), FieldElement(0))),
        )
        .unwrap();
        assert_eq!(anchored.degree, 3);

        // monotone against the general searches
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        let perms = all_permutations(5);
        for _ in 0..25 {
            let p = &perms[rng.gen_range(0..perms.len())];
            let general = min_cover_degree(&field, p).degree;
            let product = min_cover_degree_product_of_l(&field, p, None).unwrap().degree;
            assert!(general <= product);
            let a = FieldElement(rng.gen_range(0..5u16));
            let b = FieldElement((p.apply(a.0) + 1 + rng.gen_range(0..4u16)) % 5);
            if p.apply(a.0) != b.0 {
                let anch = min_cover_degree_anchored(&field, p, a, b).unwrap().degree;
                let panch =
                    min_cover_degree_product_of_l(&field, p, Some((a, b))).unwrap().degree;
                assert!(general <= anch && anch <= panch);
            }
        }
    }

    #[test]
    fn affine_conjugacy_invariance_exhaustive_k5() {
        // min_cover_degree(pi) = min_cover_degree(lambda . pi . mu) for all
        // affine bijections lambda, mu: substitution by degree-one maps
        // carries degree-d covers to degree-d covers.
        let field = f(5);
        let affine = crate::labeling::affine_permutations(&field);
        let perms = all_permutations(5);
        for p in perms.iter() {
            let d = min_cover_degree(&field, p).degree;
            for lambda in affine.iter() {
                for mu in affine.iter() {
                    let composed = lambda.compose(p).compose(mu);
                    assert_eq!(min_cover_degree(&field, &composed).degree, d);
                }
            }
        }
    }
}
