//! Maximal independent sets in graphs possibly with loops.
//!
//! A vertex with a loop never belongs to an independent set and imposes no
//! maximality constraint, so every routine here works on the loop-free part
//! of the vertex set.
//!
//! Counting branches on the closed neighbourhood of a vertex: every maximal
//! independent set contains a vertex of `N[v]`, and splitting on the first
//! such vertex (in a fixed order) partitions the sets. Vertices passed over
//! are carried along as "must be dominated" so that the leaves are exactly
//! the maximal sets. Independent parts of the residual graph are counted
//! separately and multiplied.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use serde::Serialize;

use crate::bits::{self, bit, Mask};
use crate::graph::Graph;
use crate::{Count, Error, Result};

/// Default limit on loop-free vertices for exact counting.
pub const DEFAULT_VERTEX_LIMIT: usize = 80;

/// Default limit on the number of sets [`enumerate_mis`] will materialise.
pub const DEFAULT_ENUM_CAP: Count = 1 << 22;

const MEMO_CAPACITY: usize = 1 << 21;

#[derive(Clone, Debug)]
pub struct MisResult {
    pub count: Count,
    /// Vertex masks of the maximal independent sets, when enumerated.
    pub sets: Option<Vec<Mask>>,
    pub elapsed: Duration,
}

/// `G` with every looped vertex (and its incident edges) deleted.
pub fn strip_loops(g: &Graph) -> Graph {
    g.remove_vertices(g.loops())
}

fn check_limit(g: &Graph, limit: usize) -> Result<Mask> {
    let live = g.vertex_mask() & !g.loops();
    if bits::count(live) > limit {
        return Err(Error::Limit {
            what: "loop-free vertex count",
            value: bits::count(live) as u128,
            limit: limit as u128,
        });
    }
    Ok(live)
}

struct Counter<'a> {
    g: &'a Graph,
    memo: HashMap<(Mask, Mask), Count>,
}

impl Counter<'_> {
    /// Number of sets `I ⊆ avail`, independent, dominating `avail ∪ must`.
    fn count(&mut self, avail: Mask, must: Mask) -> Count {
        let g = self.g;
        if bits::ones(must).any(|w| g.neighbors(w) & avail == 0) {
            return 0;
        }
        if avail == 0 {
            return 1;
        }
        let comps = g.components_within(avail | must);
        if comps.len() > 1 {
            let mut total: Count = 1;
            for c in comps {
                total *= self.count(avail & c, must & c);
                if total == 0 {
                    break;
                }
            }
            return total;
        }
        if let Some(&hit) = self.memo.get(&(avail, must)) {
            return hit;
        }
        let branch = branch_set(g, avail, must);
        let mut total: Count = 0;
        let mut passed: Mask = 0;
        for b in bits::ones(branch) {
            let nb = g.neighbors(b);
            let next_avail = avail & !bit(b) & !nb & !passed;
            let next_must = (must | passed) & !nb;
            total += self.count(next_avail, next_must);
            passed |= bit(b);
        }
        if self.memo.len() < MEMO_CAPACITY {
            self.memo.insert((avail, must), total);
        }
        total
    }
}

/// The smallest set of candidates one of which must be chosen.
fn branch_set(g: &Graph, avail: Mask, must: Mask) -> Mask {
    let from_avail = bits::ones(avail)
        .map(|v| (g.neighbors(v) & avail) | bit(v))
        .min_by_key(|m| bits::count(*m));
    let from_must = bits::ones(must)
        .map(|w| g.neighbors(w) & avail)
        .min_by_key(|m| bits::count(*m));
    match (from_avail, from_must) {
        (Some(a), Some(m)) if bits::count(m) < bits::count(a) => m,
        (Some(a), _) => a,
        (None, Some(m)) => m,
        (None, None) => 0,
    }
}

/// Exact number of maximal independent sets.
pub fn count_mis(g: &Graph) -> Result<Count> {
    count_mis_with_limit(g, DEFAULT_VERTEX_LIMIT)
}

pub fn count_mis_with_limit(g: &Graph, limit: usize) -> Result<Count> {
    let live = check_limit(g, limit)?;
    let mut c = Counter {
        g,
        memo: HashMap::new(),
    };
    Ok(c.count(live, 0))
}

fn enumerate_rec(g: &Graph, avail: Mask, must: Mask, chosen: Mask, out: &mut Vec<Mask>) {
    if bits::ones(must).any(|w| g.neighbors(w) & avail == 0) {
        return;
    }
    if avail == 0 {
        out.push(chosen);
        return;
    }
    let branch = branch_set(g, avail, must);
    let mut passed: Mask = 0;
    for b in bits::ones(branch) {
        let nb = g.neighbors(b);
        enumerate_rec(
            g,
            avail & !bit(b) & !nb & !passed,
            (must | passed) & !nb,
            chosen | bit(b),
            out,
        );
        passed |= bit(b);
    }
}

/// All maximal independent sets as vertex masks of `g`, ordered
/// lexicographically by their sorted label sequences.
pub fn enumerate_mis(g: &Graph) -> Result<Vec<Mask>> {
    enumerate_mis_with_cap(g, DEFAULT_ENUM_CAP)
}

pub fn enumerate_mis_with_cap(g: &Graph, cap: Count) -> Result<Vec<Mask>> {
    let count = count_mis(g)?;
    if count > cap {
        return Err(Error::Limit {
            what: "maximal independent set count for enumeration",
            value: count,
            limit: cap,
        });
    }
    let live = g.vertex_mask() & !g.loops();
    let mut out = Vec::with_capacity(count as usize);
    enumerate_rec(g, live, 0, 0, &mut out);
    debug_assert_eq!(out.len() as Count, count);
    let mut keyed: Vec<(Vec<i64>, Mask)> = out
        .into_iter()
        .map(|m| {
            let mut labels: Vec<i64> = bits::ones(m).map(|v| g.label(v)).collect();
            labels.sort_unstable();
            (labels, m)
        })
        .collect();
    keyed.sort();
    Ok(keyed.into_iter().map(|(_, m)| m).collect())
}

/// Count, and optionally the list, of maximal independent sets.
pub fn mis(g: &Graph, with_sets: bool) -> Result<MisResult> {
    let start = Instant::now();
    let (count, sets) = if with_sets {
        let sets = enumerate_mis(g)?;
        (sets.len() as Count, Some(sets))
    } else {
        (count_mis(g)?, None)
    };
    Ok(MisResult {
        count,
        sets,
        elapsed: start.elapsed(),
    })
}

/// `MIS(C_m)` from `MIS(C_m) = MIS(C_{m−2}) + MIS(C_{m−3})` (valid for
/// `m ≥ 6`), seeded with exact counts for `C_3, C_4, C_5`.
pub fn mis_cycle(m: usize) -> Result<Count> {
    if m < 3 {
        return Err(Error::Graph(format!(
            "cycle needs at least 3 vertices, got {m}"
        )));
    }
    let mut vals: Vec<Count> = vec![0; m.max(5) + 1];
    for k in 3..=5 {
        vals[k] = count_mis(&Graph::cycle(k)?)?;
    }
    for k in 6..=m {
        vals[k] = vals[k - 2].checked_add(vals[k - 3]).ok_or(Error::Limit {
            what: "cycle MIS value",
            value: Count::MAX,
            limit: Count::MAX,
        })?;
    }
    Ok(vals[m])
}

/// Compares `c^q` with `2^p` exactly.
pub fn compare_pow2(c: Count, p: i128, q: u64) -> Ordering {
    assert!(q > 0, "zero exponent denominator");
    if c == 0 {
        return Ordering::Less;
    }
    if p < 0 {
        // 2^p < 1 ≤ c^q
        return Ordering::Greater;
    }
    if c.is_power_of_two() {
        let a = c.trailing_zeros() as i128;
        return (a * q as i128).cmp(&p);
    }
    // log2(c) is irrational here, so equality is impossible
    let lhs = q as f64 * (c as f64).log2();
    let margin = 1e-9 * (p as f64).abs().max(1.0);
    if lhs + margin < p as f64 {
        return Ordering::Less;
    }
    if lhs - margin > p as f64 {
        return Ordering::Greater;
    }
    let big = BigUint::from(c).pow(q as u32);
    big.cmp(&(BigUint::from(1u8) << (p as u64)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum BoundKind {
    /// `MIS(G) ≤ 3^{|G|/3}`.
    MoonMoser,
    /// `MIS(G) ≤ 2^{|G|/2}` for triangle-free `G`.
    HujterTuza,
    /// `MIS(G) ≤ 2^{n/2 − k/(100D²)}` for triangle-free `G`, `Δ ≤ D`, `e(G) ≥ n/2 + k`.
    Dense,
    /// `MIS(G) ≤ 2^{n/2 − k/(100D²) + 101|T|/100}` where `G \ T` is triangle-free.
    AlmostTriangleFree,
    /// Sum of binomials bound for `Δ(G) ≤ kδ(G)`.
    AlmostRegular,
    /// `MIS(G) ≤ 2^{n/2 − k/25}` for triangle-free `G` with `k` disjoint `P_3`s.
    DisjointP3,
    /// Adding loops never increases `MIS`.
    LoopMonotone,
}

impl BoundKind {
    pub const ALL: [BoundKind; 7] = [
        BoundKind::MoonMoser,
        BoundKind::HujterTuza,
        BoundKind::Dense,
        BoundKind::AlmostTriangleFree,
        BoundKind::AlmostRegular,
        BoundKind::DisjointP3,
        BoundKind::LoopMonotone,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BoundKind::MoonMoser => "moon-moser",
            BoundKind::HujterTuza => "hujter-tuza",
            BoundKind::Dense => "dense",
            BoundKind::AlmostTriangleFree => "almost-triangle-free",
            BoundKind::AlmostRegular => "almost-regular",
            BoundKind::DisjointP3 => "disjoint-p3",
            BoundKind::LoopMonotone => "loop-monotone",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundCheck {
    pub kind: BoundKind,
    /// Whether the hypotheses of the bound hold for this graph.
    pub applicable: bool,
    /// `log2` of the bound value (for `LoopMonotone`, of the loop-free count).
    pub log2_bound: f64,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundCertificates {
    pub exact: Count,
    pub checks: Vec<BoundCheck>,
}

impl BoundCertificates {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| !c.applicable || c.holds)
    }

    pub fn get(&self, kind: BoundKind) -> Option<&BoundCheck> {
        self.checks.iter().find(|c| c.kind == kind)
    }
}

/// Greedy vertex set meeting every triangle (loops ignored).
pub fn triangle_hitting_set(g: &Graph) -> Mask {
    let mut removed: Mask = 0;
    loop {
        let live = g.vertex_mask() & !removed;
        let mut per_vertex = vec![0usize; g.n()];
        let mut any = false;
        for u in bits::ones(live) {
            for v in bits::ones(g.neighbors(u) & live) {
                if v <= u {
                    continue;
                }
                for w in bits::ones(g.neighbors(u) & g.neighbors(v) & live) {
                    if w <= v {
                        continue;
                    }
                    any = true;
                    per_vertex[u] += 1;
                    per_vertex[v] += 1;
                    per_vertex[w] += 1;
                }
            }
        }
        if !any {
            return removed;
        }
        let worst = (0..g.n())
            .max_by_key(|&v| (per_vertex[v], std::cmp::Reverse(v)))
            .expect("vertex");
        removed |= bit(worst);
    }
}

fn log2_binomial_prefix(n: usize, upto: usize) -> f64 {
    let mut term = 1.0f64;
    let mut total = 1.0f64;
    for i in 1..=upto.min(n) {
        term *= (n + 1 - i) as f64 / i as f64;
        total += term;
    }
    total.log2()
}

/// Evaluates every bound on `MIS(G)` whose hypotheses hold and compares it
/// with the exact count. Bounds stated for simple graphs are evaluated on the
/// loop-free version of `G`, which dominates `G` by loop monotonicity.
pub fn bound_certificates(g: &Graph) -> Result<BoundCertificates> {
    let exact = count_mis(g)?;
    let simple = g.without_loops();
    let n = g.n() as i128;
    let tri_free = simple.is_triangle_free();
    let e = simple.edge_count() as i128;
    let dmax = (0..simple.n())
        .map(|v| simple.degree(v))
        .max()
        .unwrap_or(0)
        .max(1) as i128;
    let mut checks = Vec::new();

    // c^3 ≤ 3^n
    let mm = BigUint::from(exact).pow(3) <= BigUint::from(3u8).pow(n as u32);
    checks.push(BoundCheck {
        kind: BoundKind::MoonMoser,
        applicable: true,
        log2_bound: n as f64 / 3.0 * 3f64.log2(),
        holds: mm,
    });

    checks.push(BoundCheck {
        kind: BoundKind::HujterTuza,
        applicable: tri_free,
        log2_bound: n as f64 / 2.0,
        holds: compare_pow2(exact, n, 2) != Ordering::Greater,
    });

    // exponent n/2 − (e − n/2)/(100D²) = (100D²n − (2e − n)) / (200D²)
    let q = 200 * dmax * dmax;
    let p = 100 * dmax * dmax * n - (2 * e - n);
    checks.push(BoundCheck {
        kind: BoundKind::Dense,
        applicable: tri_free,
        log2_bound: p as f64 / q as f64,
        holds: compare_pow2(exact, p, q as u64) != Ordering::Greater,
    });

    let t = triangle_hitting_set(&simple);
    let rest = simple.remove_vertices(t);
    let (n2, e2, tsize) = (
        rest.n() as i128,
        rest.edge_count() as i128,
        bits::count(t) as i128,
    );
    // exponent n'/2 − (2e' − n')/(200D²) + 101|T|/100, over 200D²
    let p = 100 * dmax * dmax * n2 - (2 * e2 - n2) + 101 * tsize * 2 * dmax * dmax;
    checks.push(BoundCheck {
        kind: BoundKind::AlmostTriangleFree,
        applicable: true,
        log2_bound: p as f64 / q as f64,
        holds: compare_pow2(exact, p, q as u64) != Ordering::Greater,
    });

    let stats = g.degree_stats();
    let ik_applicable = stats.min >= 1;
    let (log2_ik, ik_holds) = if ik_applicable {
        let k = (stats.max as f64 / stats.min as f64).max(1.0);
        let b = (stats.min as f64).sqrt();
        let nf = g.n() as f64;
        let upto = (nf / b).floor() as usize;
        let bound = log2_binomial_prefix(g.n(), upto)
            + ((k / (k + 1.0)) * nf / 3.0 + 2.0 * nf / (3.0 * b)) * 3f64.log2();
        (bound, (exact as f64).log2() <= bound + 1e-9)
    } else {
        (f64::NAN, true)
    };
    checks.push(BoundCheck {
        kind: BoundKind::AlmostRegular,
        applicable: ik_applicable,
        log2_bound: log2_ik,
        holds: ik_holds,
    });

    let k = g.disjoint_p3_packing() as i128;
    checks.push(BoundCheck {
        kind: BoundKind::DisjointP3,
        applicable: tri_free,
        log2_bound: n as f64 / 2.0 - k as f64 / 25.0,
        holds: compare_pow2(exact, 25 * n - 2 * k, 50) != Ordering::Greater,
    });

    let simple_count = count_mis(&simple)?;
    checks.push(BoundCheck {
        kind: BoundKind::LoopMonotone,
        applicable: g.loops() != 0,
        log2_bound: (simple_count as f64).log2(),
        holds: exact <= simple_count,
    });

    Ok(BoundCertificates { exact, checks })
}
