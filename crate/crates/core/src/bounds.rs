//! Closed-form lower-bound evaluators with hypothesis tracking.
//!
//! Every bound is carried as (base, exact rational exponent) plus the
//! smallest integer a count satisfying the bound can take, computed by exact
//! integer power comparison. A bound with an unsatisfied hypothesis is still
//! reported, but flagged non-applicable.

use num_bigint::BigUint;
use num_rational::Ratio;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::field::prime_power;

pub type Rational = Ratio<i64>;

/// How a chromatic-threshold hypothesis was established.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum HypStatus {
    /// Trusted from the caller without a graph to check.
    Assumed,
    /// Confirmed by the counting module on a concrete graph.
    Verified,
    /// Refuted by the counting module on a concrete graph.
    Refuted,
}

#[derive(Clone, Debug, Serialize)]
pub struct Hypothesis {
    pub name: String,
    pub satisfied: bool,
    pub detail: String,
}

impl Hypothesis {
    fn checked(name: &str, satisfied: bool) -> Hypothesis {
        Hypothesis { name: name.into(), satisfied, detail: "checked".into() }
    }

    fn status(name: &str, status: HypStatus) -> Hypothesis {
        let (satisfied, detail) = match status {
            HypStatus::Assumed => (true, "assumed"),
            HypStatus::Verified => (true, "verified"),
            HypStatus::Refuted => (false, "refuted"),
        };
        Hypothesis { name: name.into(), satisfied, detail: detail.into() }
    }
}

/// A lower bound of the form base^exponent.
#[derive(Clone, Debug)]
pub struct BoundValue {
    pub theorem: String,
    pub base: u64,
    pub exponent: Rational,
    /// Smallest integer >= base^exponent: the usable bound on an integer
    /// count.
    pub floor: BigUint,
    pub hypotheses: Vec<Hypothesis>,
    pub note: Option<String>,
}

impl BoundValue {
    fn new(theorem: &str, base: u64, exponent: Rational, hypotheses: Vec<Hypothesis>) -> BoundValue {
        BoundValue {
            theorem: theorem.into(),
            base,
            exponent,
            floor: pow_ceil(base, exponent),
            hypotheses,
            note: None,
        }
    }

    pub fn applicable(&self) -> bool {
        self.hypotheses.iter().all(|h| h.satisfied)
    }

    /// Display-only float approximation of base^exponent.
    pub fn approx(&self) -> f64 {
        let e = self.exponent.numer().to_f64().unwrap() / self.exponent.denom().to_f64().unwrap();
        (self.base as f64).powf(e)
    }
}

impl Serialize for BoundValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("BoundValue", 7)?;
        s.serialize_field("theorem", &self.theorem)?;
        s.serialize_field("hypotheses", &self.hypotheses)?;
        s.serialize_field("applicable", &self.applicable())?;
        s.serialize_field("base", &self.base)?;
        s.serialize_field(
            "exponent",
            &serde_json::json!({"num": self.exponent.numer(), "den": self.exponent.denom()}),
        )?;
        match self.floor.to_u64() {
            Some(v) => s.serialize_field("floor", &v)?,
            None => s.serialize_field("floor", &self.floor.to_string())?,
        }
        s.serialize_field("note", &self.note)?;
        s.end()
    }
}

/// Smallest integer >= base^exponent, by exact comparison c^den >= base^num.
/// Exponents <= 0 give 1 (counts are positive integers once nonzero).
pub fn pow_ceil(base: u64, exponent: Rational) -> BigUint {
    if base == 0 {
        return BigUint::zero();
    }
    if exponent <= Rational::zero() || base == 1 {
        return BigUint::one();
    }
    let num = u32::try_from(*exponent.numer()).expect("exponent numerator within exact range");
    let den = *exponent.denom() as u64;
    let target = BigUint::from(base).pow(num);
    if den == 1 {
        return target;
    }
    // Binary search the smallest c with c^den >= base^num.
    let bits = target.bits();
    let mut hi = BigUint::one() << bits.div_ceil(den) as usize;
    debug_assert!(den <= u32::MAX as u64);
    if hi.pow(den as u32) < target {
        hi <<= 1usize;
    }
    let mut lo = BigUint::one();
    while lo < hi {
        let mid: BigUint = (&lo + &hi) >> 1usize;
        if mid.pow(den as u32) >= target {
            hi = mid;
        } else {
            lo = &mid + BigUint::one();
        }
    }
    lo
}

fn prime_power_hyp(k: u64) -> Hypothesis {
    Hypothesis::checked(&format!("k = {k} is a prime power"), prime_power(k).is_ok())
}

fn edge_hyp(name: &str, m: u64, rhs: Rational) -> Hypothesis {
    Hypothesis {
        name: name.into(),
        satisfied: Rational::from_integer(m as i64) <= rhs,
        detail: format!("m = {m} vs {rhs}"),
    }
}

fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

/// P_DP(G, k) >= k^(((2n-m)(k-2)-(k-3))/(k-1)) for connected simple G with
/// chi_DP(G) <= k and m <= 2n - (k-3)/(k-2); prime-power k > 2.
pub fn bound_main_ii(n: u64, m: u64, k: u64, chi: HypStatus) -> BoundValue {
    let (n_, m_, k_) = (n as i64, m as i64, k as i64);
    let mut hyps = vec![prime_power_hyp(k), Hypothesis::checked("k > 2", k > 2)];
    hyps.push(Hypothesis::status("chi_DP(G) <= k", chi));
    if k > 2 {
        hyps.push(edge_hyp(
            "m <= 2n - (k-3)/(k-2)",
            m,
            rat(2 * n_, 1) - rat(k_ - 3, k_ - 2),
        ));
    }
    let exponent = if k > 2 {
        rat((2 * n_ - m_) * (k_ - 2) - (k_ - 3), k_ - 1)
    } else {
        Rational::zero()
    };
    BoundValue::new("main-ii", k, exponent, hyps)
}

/// The parallel-edge variant: q = floor(k/2), requires chi_DP(G') <= k on the
/// multigraph with q-fold non-tree edges and m <= n(1 + (k-2)/q) - 1 + 1/q.
pub fn bound_main_i(n: u64, m: u64, k: u64, chi_multigraph: HypStatus) -> BoundValue {
    let q = (k / 2) as i64;
    let (n_, m_, k_) = (n as i64, m as i64, k as i64);
    let mut hyps = vec![prime_power_hyp(k), Hypothesis::checked("k > 2", k > 2)];
    hyps.push(Hypothesis::status("chi_DP(G') <= k on the parallel-edge multigraph", chi_multigraph));
    if k > 2 {
        hyps.push(edge_hyp(
            "m <= n(1 + (k-2)/q) - 1 + 1/q",
            m,
            rat(n_, 1) * (rat(1, 1) + rat(k_ - 2, q)) - rat(1, 1) + rat(1, q),
        ));
    }
    let exponent = if k > 2 {
        rat(n_ * (q + k_ - 2) - q * m_ + 1 - q, k_ - 1)
    } else {
        Rational::zero()
    };
    BoundValue::new("main-i", k, exponent, hyps)
}

/// P_S(G, k) >= k^(n - m/(k-1)) for S inside the linear permutations,
/// S-k-colorable G, m <= (k-1)n; prime-power k.
pub fn bound_linear(n: u64, m: u64, k: u64, colorable: HypStatus) -> BoundValue {
    let (n_, m_, k_) = (n as i64, m as i64, k as i64);
    let mut hyps = vec![prime_power_hyp(k), Hypothesis::checked("k >= 2", k >= 2)];
    hyps.push(Hypothesis::status("G is S-k-colorable for the linear S used", colorable));
    if k >= 2 {
        hyps.push(edge_hyp("m <= (k-1)n", m, rat((k_ - 1) * n_, 1)));
    }
    let exponent = if k >= 2 { rat(n_, 1) - rat(m_, k_ - 1) } else { Rational::zero() };
    BoundValue::new("linear", k, exponent, hyps)
}

/// The same exponent for the list color function, any integer k >= 2 with
/// chi_l(G) <= k.
pub fn bound_list(n: u64, m: u64, k: u64, chi_list: HypStatus) -> BoundValue {
    let (n_, m_, k_) = (n as i64, m as i64, k as i64);
    let mut hyps = vec![Hypothesis::checked("k >= 2", k >= 2)];
    hyps.push(Hypothesis::status("chi_l(G) <= k", chi_list));
    if k >= 2 {
        hyps.push(edge_hyp("m <= (k-1)n", m, rat((k_ - 1) * n_, 1)));
    }
    let exponent = if k >= 2 { rat(n_, 1) - rat(m_, k_ - 1) } else { Rational::zero() };
    BoundValue::new("list", k, exponent, hyps)
}

/// Signed coloring bound, k^(n - m/(k-1)). With `per_signature` the
/// chromatic hypothesis is chi(G, eps) <= k for the one signature at hand;
/// otherwise chi_+-(G) <= k quantifies over all signatures.
pub fn bound_signed(n: u64, m: u64, k: u64, per_signature: bool, chi: HypStatus) -> BoundValue {
    let (n_, m_, k_) = (n as i64, m as i64, k as i64);
    let mut hyps = vec![prime_power_hyp(k), Hypothesis::checked("k >= 2", k >= 2)];
    let name = if per_signature { "chi(G,eps) <= k" } else { "chi_pm(G) <= k" };
    hyps.push(Hypothesis::status(name, chi));
    if k >= 2 {
        hyps.push(edge_hyp("m <= (k-1)n", m, rat((k_ - 1) * n_, 1)));
    }
    let exponent = if k >= 2 { rat(n_, 1) - rat(m_, k_ - 1) } else { Rational::zero() };
    BoundValue::new(if per_signature { "signed-sigma" } else { "signed" }, k, exponent, hyps)
}

/// DP bound at c colors borrowed through a prime-power k >= c:
/// P_DP(G, c) >= c^((n(c+k-4)-(k-2)m-(k-3))/(c-1)).
pub fn bound_general_c(n: u64, m: u64, c: u64, k: u64, chi: HypStatus) -> BoundValue {
    let (n_, m_, c_, k_) = (n as i64, m as i64, c as i64, k as i64);
    let mut hyps = vec![
        Hypothesis::checked("c >= 2", c >= 2),
        prime_power_hyp(k),
        Hypothesis::checked("c <= k", c <= k),
        Hypothesis::checked("k > 2", k > 2),
    ];
    hyps.push(Hypothesis::status("chi_DP(G) <= c", chi));
    if k > 2 {
        hyps.push(edge_hyp(
            "m <= n(c+k-4)/(k-2) - (k-3)/(k-2)",
            m,
            rat(n_ * (c_ + k_ - 4), k_ - 2) - rat(k_ - 3, k_ - 2),
        ));
    }
    let exponent = if c >= 2 && k > 2 {
        rat(n_ * (c_ + k_ - 4) - (k_ - 2) * m_ - (k_ - 3), c_ - 1)
    } else {
        Rational::zero()
    };
    BoundValue::new("general-c", c, exponent, hyps)
}

/// Edge-count consequence of the discharging bound for plane graphs with no
/// cycle of length in {4, ..., t}: |E(G)| < (n-2)(3t+3)/(2t-1).
pub fn edge_bound_no_short_cycles(n: u64, t: u64) -> Result<Rational> {
    if t < 4 {
        return Err(Error::InvalidArgument("cycle-exclusion bound needs t >= 4".into()));
    }
    if n < 3 {
        return Err(Error::InvalidArgument("edge bound needs n >= 3".into()));
    }
    Ok(rat((n as i64 - 2) * (3 * t as i64 + 3), 2 * t as i64 - 1))
}

/// Maximum-average-degree bound 3 + 9/(2t-1) for the same family.
pub fn mad_bound(t: u64) -> Result<Rational> {
    if t < 4 {
        return Err(Error::InvalidArgument("mad bound needs t >= 4".into()));
    }
    Ok(rat(3, 1) + rat(9, 2 * t as i64 - 1))
}

/// Planar / embedded graph families with stated exponential lower bounds.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum FamilyId {
    /// Girth >= 5 on a surface of Euler genus g, DP-k-colorable.
    Girth5Genus,
    /// Planar, no cycle of length in {4,...,8}; DP.
    NoCycles4To8,
    /// Planar, no cycle of length in {4,5,6,9}; DP, k >= 3.
    NoCycles4To9,
    /// Planar, no intersecting triangles, no cycle in {4,5,6,7}; DP, k >= 3.
    NoIntersectingTriangles,
    /// Planar, no cycle of length in {4,5,6}; DP, k >= 4.
    NoCycles4To6,
    /// Planar, no cycle of length in {4,5,7,9}; DP, k >= 3.
    NoCycles4579,
    /// Planar; signed, k >= 5.
    PlanarSigned,
    /// Triangle-free planar; signed, k >= 4.
    TriangleFreeSigned,
    /// Girth >= 5 planar; signed, k >= 3.
    Girth5Signed,
    /// Planar, no cycle of length in {4,...,8}; signed, k >= 3.
    NoCycles4To8Signed,
    /// Triangle-free planar; list coloring at k = 4.
    TriangleFreeList,
    /// Triangle-free planar; signed at k = 4 via the sharp edge count.
    TriangleFreePlanarSigned,
    /// Triangle-free planar with m <= (2-c)n; DP at k = 4.
    TriangleFreePlanarDp,
}

impl FamilyId {
    pub fn parse(s: &str) -> Result<FamilyId> {
        Ok(match s {
            "girth5-genus" => FamilyId::Girth5Genus,
            "no-cycles-4-8" => FamilyId::NoCycles4To8,
            "no-cycles-4-9" => FamilyId::NoCycles4To9,
            "no-intersecting-triangles" => FamilyId::NoIntersectingTriangles,
            "no-cycles-4-6" => FamilyId::NoCycles4To6,
            "no-cycles-4-5-7-9" => FamilyId::NoCycles4579,
            "planar-signed" => FamilyId::PlanarSigned,
            "triangle-free-signed" => FamilyId::TriangleFreeSigned,
            "girth5-signed" => FamilyId::Girth5Signed,
            "no-cycles-4-8-signed" => FamilyId::NoCycles4To8Signed,
            "triangle-free-list" => FamilyId::TriangleFreeList,
            "triangle-free-planar-signed" => FamilyId::TriangleFreePlanarSigned,
            "triangle-free-planar-dp" => FamilyId::TriangleFreePlanarDp,
            _ => return Err(Error::Unknown(format!("family '{s}'"))),
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            FamilyId::Girth5Genus => "girth5-genus",
            FamilyId::NoCycles4To8 => "no-cycles-4-8",
            FamilyId::NoCycles4To9 => "no-cycles-4-9",
            FamilyId::NoIntersectingTriangles => "no-intersecting-triangles",
            FamilyId::NoCycles4To6 => "no-cycles-4-6",
            FamilyId::NoCycles4579 => "no-cycles-4-5-7-9",
            FamilyId::PlanarSigned => "planar-signed",
            FamilyId::TriangleFreeSigned => "triangle-free-signed",
            FamilyId::Girth5Signed => "girth5-signed",
            FamilyId::NoCycles4To8Signed => "no-cycles-4-8-signed",
            FamilyId::TriangleFreeList => "triangle-free-list",
            FamilyId::TriangleFreePlanarSigned => "triangle-free-planar-signed",
            FamilyId::TriangleFreePlanarDp => "triangle-free-planar-dp",
        }
    }

    pub fn all() -> &'static [FamilyId] {
        &[
            FamilyId::Girth5Genus,
            FamilyId::NoCycles4To8,
            FamilyId::NoCycles4To9,
            FamilyId::NoIntersectingTriangles,
            FamilyId::NoCycles4To6,
            FamilyId::NoCycles4579,
            FamilyId::PlanarSigned,
            FamilyId::TriangleFreeSigned,
            FamilyId::Girth5Signed,
            FamilyId::NoCycles4To8Signed,
            FamilyId::TriangleFreeList,
            FamilyId::TriangleFreePlanarSigned,
            FamilyId::TriangleFreePlanarDp,
        ]
    }
}

/// Extra inputs for family bounds; structural claims (planarity, girth,
/// forbidden cycles) are trusted from the caller.
#[derive(Clone, Debug)]
pub struct FamilyParams {
    pub n: u64,
    pub k: u64,
    pub genus: u64,
    /// Sparsity constant for the triangle-free DP bound (m <= (2-c)n).
    pub c: Option<Rational>,
    pub m: Option<u64>,
    pub chi: HypStatus,
}

impl FamilyParams {
    pub fn new(n: u64, k: u64) -> FamilyParams {
        FamilyParams { n, k, genus: 0, c: None, m: None, chi: HypStatus::Assumed }
    }
}

pub fn family_bound(family: FamilyId, params: &FamilyParams) -> Result<BoundValue> {
    let n = params.n as i64;
    let k = params.k;
    let k_ = k as i64;
    let trust = |what: &str| Hypothesis {
        name: what.into(),
        satisfied: true,
        detail: "trusted input".into(),
    };
    let kmin = |lo: u64| Hypothesis::checked(&format!("k >= {lo}"), k >= lo);
    let value = match family {
        FamilyId::Girth5Genus => {
            let g = params.genus as i64;
            let hyps = vec![
                prime_power_hyp(k),
                Hypothesis::checked("k > 2", k > 2),
                Hypothesis::checked("n >= 5g", n >= 5 * g),
                trust("girth >= 5, embedded with Euler genus g"),
                Hypothesis::status("G is DP-k-colorable", params.chi),
            ];
            let exponent = if k > 2 {
                (rat(n - 5 * g, 3) * rat(k_ - 2, 1) - rat(k_ - 3, 1)) / rat(k_ - 1, 1)
            } else {
                Rational::zero()
            };
            let mut b = BoundValue::new(family.name(), k, exponent, hyps);
            if k == 3 && params.genus == 0 {
                b.note = Some(format!("reduces to 3^(n/6) in the plane: 3^({n}/6)"));
            }
            b
        }
        FamilyId::NoCycles4To8
        | FamilyId::NoCycles4To9
        | FamilyId::NoIntersectingTriangles
        | FamilyId::NoCycles4To6
        | FamilyId::NoCycles4579 => {
            let (alpha, lo, what) = match family {
                FamilyId::NoCycles4To8 => (rat(1, 5), 3, "planar, no cycle of length 4..8"),
                FamilyId::NoCycles4To9 => (rat(1, 11), 3, "planar, no cycle of length in {4,5,6,9}"),
                FamilyId::NoIntersectingTriangles => {
                    (rat(2, 13), 3, "planar, no intersecting triangles, no cycle in {4,5,6,7}")
                }
                FamilyId::NoCycles4To6 => (rat(1, 11), 4, "planar, no cycle of length in {4,5,6}"),
                FamilyId::NoCycles4579 => (rat(2, 13), 3, "planar, no cycle of length in {4,5,7,9}"),
                _ => unreachable!(),
            };
            let mut hyps = vec![
                prime_power_hyp(k),
                Hypothesis::checked("k > 2", k > 2),
                kmin(lo),
                trust(what),
            ];
            if family == FamilyId::NoCycles4To8 {
                // chi_DP of this family is only known to lie in {3, 4}.
                hyps.push(Hypothesis::status("k >= chi_DP(G)", params.chi));
            }
            if family == FamilyId::NoCycles4579 {
                hyps.push(Hypothesis {
                    name: "|E| < (24/13)n".into(),
                    satisfied: true,
                    detail: "hard-coded from an unpublished discharging argument \
                             (average face length >= 4 + 4/11)"
                        .into(),
                });
            }
            let exponent = if k > 2 {
                alpha * rat(n, 1) * rat(k_ - 2, k_ - 1) - rat(1, 1)
            } else {
                Rational::zero()
            };
            let mut b = BoundValue::new(family.name(), k, exponent, hyps);
            if k == lo {
                b.note = Some(format!("at k = {k}: {k}^({exponent})"));
            }
            b
        }
        FamilyId::PlanarSigned
        | FamilyId::TriangleFreeSigned
        | FamilyId::Girth5Signed
        | FamilyId::NoCycles4To8Signed => {
            let (expfn, lo, what, special): (fn(i64, i64) -> Rational, u64, &str, &str) =
                match family {
                    FamilyId::PlanarSigned => {
                        (|n, k| rat(n * (k - 4), k - 1), 5, "planar", "5^(n/4)")
                    }
                    FamilyId::TriangleFreeSigned => {
                        (|n, k| rat(n * (k - 3), k - 1), 4, "triangle-free planar", "4^(n/3)")
                    }
                    FamilyId::Girth5Signed => {
                        (|n, k| rat(n * (3 * k - 8), 3 * (k - 1)), 3, "planar, girth >= 5", "3^(n/6)")
                    }
                    FamilyId::NoCycles4To8Signed => (
                        |n, k| rat(n * (5 * k - 14), 5 * (k - 1)),
                        3,
                        "planar, no cycle of length 4..8",
                        "3^(n/10)",
                    ),
                    _ => unreachable!(),
                };
            let hyps = vec![
                prime_power_hyp(k),
                Hypothesis::checked("k > 2", k > 2),
                kmin(lo),
                trust(what),
            ];
            let exponent = if k > 2 { expfn(n, k_) } else { Rational::zero() };
            let mut b = BoundValue::new(family.name(), k, exponent, hyps);
            if k == lo {
                b.note = Some(format!("matches the stated special case {special}"));
            }
            b
        }
        FamilyId::TriangleFreeList | FamilyId::TriangleFreePlanarSigned => {
            let hyps = vec![
                Hypothesis::checked("k = 4", k == 4),
                trust("triangle-free planar"),
            ];
            BoundValue::new(family.name(), 4, rat(n + 4, 3), hyps)
        }
        FamilyId::TriangleFreePlanarDp => {
            let c = params
                .c
                .ok_or_else(|| Error::InvalidArgument("this family needs the sparsity c".into()))?;
            let m = params
                .m
                .ok_or_else(|| Error::InvalidArgument("this family needs the edge count m".into()))?;
            let cn = c * rat(n, 1);
            let hyps = vec![
                Hypothesis::checked("k = 4", k == 4),
                trust("triangle-free planar"),
                Hypothesis::checked("c > 0", c.is_positive()),
                edge_hyp("m <= (2-c)n", m, (rat(2, 1) - c) * rat(n, 1)),
                Hypothesis::checked("cn >= 1/2", cn >= rat(1, 2)),
            ];
            let exponent = (rat(4, 1) * cn - rat(1, 1)) / rat(3, 1);
            BoundValue::new(family.name(), 4, exponent, hyps)
        }
    };
    Ok(value)
}
