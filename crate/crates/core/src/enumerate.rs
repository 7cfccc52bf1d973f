//! Counting and listing sum-free and maximal sum-free sets.
//!
//! The search engine treats a ground structure as the hypergraph of its
//! Schur triples: a set is sum-free iff it contains no hyperedge, and maximal
//! sum-free sets are the maximal independent sets. Elements are decided in
//! increasing order; an excluded element is remembered as *pending* until some
//! later choice blocks it, and a branch dies as soon as a pending element can
//! no longer be blocked.
//!
//! Brute-force oracles over all `2^n` subsets are kept deliberately separate
//! from the engine so the two can be compared.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::abelian::AbelianGroup;
use crate::bits::{self, bit, Mask};
use crate::graph::Graph;
use crate::linkgraph::{link_family, link_graph_masks, link_pair_even, link_single_even};
use crate::miscount::{count_mis, enumerate_mis};
use crate::setcore::{addable_mask, mask_is_sum_free, GroundSet, IntSubset};
use crate::{Count, Error, Result};

/// Largest `n` for the `2^n` oracles.
pub const ORACLE_LIMIT: u32 = 26;

/// Default largest `n` for listing maximal sum-free sets.
pub const DEFAULT_ENUM_LIMIT: u32 = 40;

/// Largest `n` for [`single_even_census`].
pub const CENSUS_LIMIT: u32 = 30;

/// Largest number of candidate sets [`small_sumset_count`] will scan.
pub const SUMSET_CENSUS_LIMIT: u128 = 100_000_000;

/// Largest number of seeds [`two_step_enumerate`] will extend.
pub const TWO_STEP_SEED_LIMIT: Count = 1 << 22;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Mode {
    SumFree,
    Maximal,
}

#[derive(Clone, Copy, Debug)]
struct Node {
    chosen: Mask,
    avail: Mask,
    pending: Mask,
}

/// The Schur-triple hypergraph of a ground structure.
///
/// For `[n]` position `v` is the value `v` (position 0 is unused); for a
/// group it is the element index.
pub struct SchurSystem {
    universe: Mask,
    /// Positions forming a triple on their own (`x + x = x`).
    dead: Mask,
    /// `pair[x]`: the `y` with `{x, y}` a Schur triple.
    pair: Vec<Mask>,
    /// `triple[x][y]`: the `z` with `{x, y, z}` a Schur triple of three
    /// distinct elements.
    triple: Vec<Vec<Mask>>,
}

impl SchurSystem {
    fn from_triples(
        size: usize,
        universe: Mask,
        triples: impl Iterator<Item = (usize, usize, usize)>,
    ) -> Self {
        let mut sys = SchurSystem {
            universe,
            dead: 0,
            pair: vec![0; size],
            triple: vec![vec![0; size]; size],
        };
        for (a, b, c) in triples {
            let mut v = [a, b, c];
            v.sort_unstable();
            match (v[0] == v[1], v[1] == v[2]) {
                (true, true) => sys.dead |= bit(v[0]),
                (true, false) => sys.add_pair(v[0], v[2]),
                (false, true) => sys.add_pair(v[0], v[1]),
                (false, false) => {
                    let [x, y, z] = v;
                    sys.triple[x][y] |= bit(z);
                    sys.triple[y][x] |= bit(z);
                    sys.triple[x][z] |= bit(y);
                    sys.triple[z][x] |= bit(y);
                    sys.triple[y][z] |= bit(x);
                    sys.triple[z][y] |= bit(x);
                }
            }
        }
        sys
    }

    fn add_pair(&mut self, x: usize, y: usize) {
        self.pair[x] |= bit(y);
        self.pair[y] |= bit(x);
    }

    /// The Schur triples of `[n]`.
    pub fn integers(n: u32) -> Result<Self> {
        let ground = GroundSet::new(n)?;
        let n = n as usize;
        let triples = (1..=n).flat_map(move |a| (a..=n - a).map(move |b| (a, b, a + b)));
        Ok(Self::from_triples(n + 1, ground.full_mask(), triples))
    }

    /// The Schur triples of a finite abelian group.
    pub fn group(g: &AbelianGroup) -> Self {
        let order = g.order() as usize;
        let triples = (0..order).flat_map(|a| (a..order).map(move |b| (a, b, g.add_idx(a, b))));
        Self::from_triples(order, g.full_mask(), triples)
    }

    pub fn universe(&self) -> Mask {
        self.universe
    }

    /// Whether `chosen ∪ {x}` contains a Schur triple through `x`.
    pub fn blocks(&self, chosen: Mask, x: usize) -> bool {
        self.dead & bit(x) != 0
            || self.pair[x] & chosen != 0
            || bits::ones(chosen).any(|y| self.triple[x][y] & chosen != 0)
    }

    pub fn is_sum_free(&self, s: Mask) -> bool {
        bits::ones(s).all(|x| !self.blocks(s & !bit(x), x))
    }

    pub fn is_maximal(&self, s: Mask) -> bool {
        self.is_sum_free(s) && bits::ones(self.universe & !s).all(|x| self.blocks(s, x))
    }

    fn root(&self, within: Mask, mode: Mode) -> Node {
        let live = self.universe & !self.dead;
        Node {
            chosen: 0,
            avail: live & within,
            pending: match mode {
                Mode::SumFree => 0,
                Mode::Maximal => live & !within,
            },
        }
    }

    /// Whether every pending element could still be blocked.
    fn feasible(&self, node: &Node) -> bool {
        let reach = node.chosen | node.avail;
        bits::ones(node.pending).all(|p| {
            self.pair[p] & reach != 0 || bits::ones(reach).any(|y| self.triple[p][y] & reach != 0)
        })
    }

    fn children(&self, node: &Node, mode: Mode) -> [Option<Node>; 2] {
        let x = bits::lowest(node.avail).expect("children of a leaf");
        let rest = node.avail & !bit(x);
        let mut block = self.pair[x];
        for y in bits::ones(node.chosen) {
            block |= self.triple[x][y];
        }
        let take = Node {
            chosen: node.chosen | bit(x),
            avail: rest & !block,
            pending: node.pending & !block,
        };
        let skip = Node {
            chosen: node.chosen,
            avail: rest,
            pending: match mode {
                Mode::SumFree => node.pending,
                Mode::Maximal => node.pending | bit(x),
            },
        };
        let ok = |n: Node| (mode == Mode::SumFree || self.feasible(&n)).then_some(n);
        [ok(take), ok(skip)]
    }

    fn walk(&self, node: Node, mode: Mode, sink: &mut Option<&mut Vec<Mask>>) -> Count {
        if node.avail == 0 {
            if node.pending != 0 {
                return 0;
            }
            if let Some(out) = sink {
                out.push(node.chosen);
            }
            return 1;
        }
        let mut total = 0;
        for child in self.children(&node, mode).into_iter().flatten() {
            total += self.walk(child, mode, sink);
        }
        total
    }

    /// Expands the search tree breadth-first until it has about `target`
    /// independent subtrees.
    fn frontier(&self, root: Node, mode: Mode, target: usize) -> Vec<Node> {
        let mut level: VecDeque<Node> = VecDeque::from([root]);
        while level.len() < target && level.iter().any(|n| n.avail != 0) {
            let mut next = VecDeque::with_capacity(level.len() * 2);
            for node in level {
                if node.avail == 0 {
                    next.push_back(node);
                } else {
                    next.extend(self.children(&node, mode).into_iter().flatten());
                }
            }
            level = next;
        }
        level.into()
    }

    fn run(&self, within: Mask, mode: Mode, parallel: bool, collect: bool) -> (Count, Vec<Mask>) {
        let root = self.root(within, mode);
        if mode == Mode::Maximal && !self.feasible(&root) {
            return (0, Vec::new());
        }
        let (count, mut sets) = if parallel {
            let target = 64 * rayon::current_num_threads();
            let parts: Vec<(Count, Vec<Mask>)> = self
                .frontier(root, mode, target)
                .into_par_iter()
                .map(|node| {
                    let mut out = Vec::new();
                    let mut sink = collect.then_some(&mut out);
                    let c = self.walk(node, mode, &mut sink);
                    (c, out)
                })
                .collect();
            let count = parts.iter().map(|p| p.0).sum();
            (count, parts.into_iter().flat_map(|p| p.1).collect())
        } else {
            let mut out = Vec::new();
            let mut sink = collect.then_some(&mut out);
            let c = self.walk(root, mode, &mut sink);
            (c, out)
        };
        sets.sort_unstable_by(|a, b| bits::lex_cmp(*a, *b));
        (count, sets)
    }

    pub fn count_sum_free(&self, parallel: bool) -> Count {
        self.run(self.universe, Mode::SumFree, parallel, false).0
    }

    pub fn count_maximal(&self, parallel: bool) -> Count {
        self.run(self.universe, Mode::Maximal, parallel, false).0
    }

    /// Maximal sum-free sets in lexicographic order of their members.
    pub fn maximal_sets(&self, parallel: bool) -> Vec<Mask> {
        self.run(self.universe, Mode::Maximal, parallel, true).1
    }

    /// Number of sum-free subsets of `within`.
    pub fn count_sum_free_within(&self, within: Mask) -> Count {
        self.run(within, Mode::SumFree, false, false).0
    }

    /// Sum-free subsets of `within`, in lexicographic order.
    pub fn sum_free_sets_within(&self, within: Mask) -> Vec<Mask> {
        self.run(within, Mode::SumFree, false, true).1
    }

    /// Number of maximal sum-free sets of the whole structure contained in `within`.
    pub fn count_maximal_within(&self, within: Mask) -> Count {
        self.run(within, Mode::Maximal, false, false).0
    }

    pub fn maximal_sets_within(&self, within: Mask, parallel: bool) -> Vec<Mask> {
        self.run(within, Mode::Maximal, parallel, true).1
    }

    /// Size of a largest sum-free set.
    pub fn max_sum_free_size(&self) -> usize {
        let mut best = 0;
        self.best(self.root(self.universe, Mode::SumFree), &mut best);
        best
    }

    fn best(&self, node: Node, best: &mut usize) {
        let have = bits::count(node.chosen);
        if have + bits::count(node.avail) <= *best {
            return;
        }
        if node.avail == 0 {
            *best = have;
            return;
        }
        for child in self.children(&node, Mode::SumFree).into_iter().flatten() {
            self.best(child, best);
        }
    }
}

fn check_oracle(n: u32) -> Result<()> {
    if n == 0 || n > ORACLE_LIMIT {
        return Err(Error::Limit {
            what: "oracle ground set size",
            value: n as u128,
            limit: ORACLE_LIMIT as u128,
        });
    }
    Ok(())
}

/// Bit `v − 1` stands for the value `v`.
fn oracle_sum_free(s: u32) -> bool {
    let mut rest = s;
    while rest != 0 {
        let a = rest.trailing_zeros() + 1;
        if (s << a) & s != 0 {
            return false;
        }
        rest &= rest - 1;
    }
    true
}

fn oracle_maximal(s: u32, n: u32) -> bool {
    (0..n)
        .filter(|i| s & (1 << i) == 0)
        .all(|i| !oracle_sum_free(s | (1 << i)))
}

fn oracle_counts(n: u32) -> (Count, Count) {
    (0u64..1 << n)
        .into_par_iter()
        .map(|s| s as u32)
        .filter(|&s| oracle_sum_free(s))
        .map(|s| (1, oracle_maximal(s, n) as Count))
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1))
}

/// `f(n)` by testing every subset of `[n]`.
pub fn f_oracle(n: u32) -> Result<Count> {
    check_oracle(n)?;
    Ok(oracle_counts(n).0)
}

/// `f_max(n)` by testing every subset of `[n]`.
pub fn f_max_oracle(n: u32) -> Result<Count> {
    check_oracle(n)?;
    Ok(oracle_counts(n).1)
}

fn check_enum(n: u32, limit: u32) -> Result<()> {
    if n > limit {
        return Err(Error::Limit {
            what: "enumeration ground set size",
            value: n as u128,
            limit: limit as u128,
        });
    }
    Ok(())
}

/// `f(n)` by the branching search.
pub fn f_branch(n: u32, parallel: bool) -> Result<Count> {
    check_enum(n, crate::setcore::MAX_N)?;
    Ok(SchurSystem::integers(n)?.count_sum_free(parallel))
}

/// `f_max(n)` by the branching search.
pub fn f_max_branch(n: u32, parallel: bool) -> Result<Count> {
    check_enum(n, DEFAULT_ENUM_LIMIT)?;
    Ok(SchurSystem::integers(n)?.count_maximal(parallel))
}

/// The maximal sum-free subsets of `[n]` in canonical order.
pub fn enumerate_maximal_sum_free(n: u32) -> Result<Vec<IntSubset>> {
    enumerate_maximal_sum_free_with(n, DEFAULT_ENUM_LIMIT, true)
}

pub fn enumerate_maximal_sum_free_with(
    n: u32,
    limit: u32,
    parallel: bool,
) -> Result<Vec<IntSubset>> {
    check_enum(n, limit)?;
    let ground = GroundSet::new(n)?;
    SchurSystem::integers(n)?
        .maximal_sets(parallel)
        .into_iter()
        .map(|m| IntSubset::from_mask(ground, m))
        .collect()
}

/// The maximal sum-free subsets of `[n]` contained in `f`.
pub fn maximal_sum_free_within(f: &IntSubset) -> Result<Vec<IntSubset>> {
    check_enum(f.n(), DEFAULT_ENUM_LIMIT)?;
    SchurSystem::integers(f.n())?
        .maximal_sets_within(f.mask(), true)
        .into_iter()
        .map(|m| IntSubset::from_mask(f.ground(), m))
        .collect()
}

/// `A / 2^{n/4}` as an exact dyadic fraction when `4 | n`, otherwise as the
/// rounded integer `A·2^12 / 2^{n/4}` over `2^12`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Ratio {
    pub numerator: Count,
    pub denominator: Count,
    pub exact: bool,
}

/// Fixed-point scale used for inexact ratios.
pub const RATIO_SCALE_BITS: u32 = 12;

impl Ratio {
    pub fn over_pow2_quarter(count: Count, n: u32) -> Ratio {
        if n.is_multiple_of(4) {
            let k = n / 4;
            let tz = if count == 0 {
                k
            } else {
                count.trailing_zeros().min(k)
            };
            Ratio {
                numerator: count >> tz,
                denominator: 1 << (k - tz),
                exact: true,
            }
        } else {
            let scaled = count as f64 * (RATIO_SCALE_BITS as f64 - n as f64 / 4.0).exp2();
            Ratio {
                numerator: scaled.round() as Count,
                denominator: 1 << RATIO_SCALE_BITS,
                exact: false,
            }
        }
    }

    pub fn to_f64(self) -> f64 {
        self.numerator as f64 / self.denominator as f64
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exact {
            write!(f, "{}/{}", self.numerator, self.denominator)
        } else {
            write!(f, "~{:.4}", self.to_f64())
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Oracle,
    Branch,
    TwoStep,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Oracle => "oracle",
            Method::Branch => "branch",
            Method::TwoStep => "two-step",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct EnumRecord {
    pub ground: String,
    pub n: u32,
    pub residue_mod_4: u32,
    pub f: Count,
    pub f_max: Count,
    /// `f_max / 2^{n/4}`.
    pub ratio: Ratio,
    pub method: Method,
    #[serde(skip)]
    pub elapsed: Duration,
}

/// `f(n)` and `f_max(n)` by the chosen method.
pub fn enum_record(n: u32, method: Method, parallel: bool) -> Result<EnumRecord> {
    enum_record_with(n, method, parallel, DEFAULT_ENUM_LIMIT)
}

/// As [`enum_record`], with the ground-size limit of the branching search raised to `limit`.
pub fn enum_record_with(n: u32, method: Method, parallel: bool, limit: u32) -> Result<EnumRecord> {
    let start = Instant::now();
    let (f, f_max) = match method {
        Method::Oracle => {
            check_oracle(n)?;
            oracle_counts(n)
        }
        Method::Branch => {
            check_enum(n, limit)?;
            let sys = SchurSystem::integers(n)?;
            (sys.count_sum_free(parallel), sys.count_maximal(parallel))
        }
        Method::TwoStep => {
            let ground = GroundSet::new(n)?;
            let lower = IntSubset::interval(ground, 1, n / 2);
            let upper = IntSubset::interval(ground, n / 2 + 1, n);
            check_enum(n, limit)?;
            (
                f_branch(n, parallel)?,
                two_step_enumerate(&lower, &upper)?.len() as Count,
            )
        }
    };
    Ok(EnumRecord {
        ground: format!("[{n}]"),
        n,
        residue_mod_4: n % 4,
        f,
        f_max,
        ratio: Ratio::over_pow2_quarter(f_max, n),
        method,
        elapsed: start.elapsed(),
    })
}

/// Maximal sum-free subsets of `[n]` inside `F1 ∪ F2`, found by fixing a
/// sum-free `S ⊆ F1` and extending it by the maximal independent sets of
/// `L_S[F2]`. Requires `F2` sum-free, which makes the extension complete.
pub fn two_step_enumerate(f1: &IntSubset, f2: &IntSubset) -> Result<Vec<IntSubset>> {
    if f1.ground() != f2.ground() {
        return Err(Error::Precondition(
            "F1 and F2 live in different ground sets".into(),
        ));
    }
    if f1.mask() & f2.mask() != 0 {
        return Err(Error::Precondition("F1 and F2 must be disjoint".into()));
    }
    if !mask_is_sum_free(f2.mask()) {
        return Err(Error::Precondition("F2 must be sum-free".into()));
    }
    let ground = f1.ground();
    let sys = SchurSystem::integers(ground.n())?;
    let seeds_count = sys.count_sum_free_within(f1.mask());
    if seeds_count > TWO_STEP_SEED_LIMIT {
        return Err(Error::Limit {
            what: "sum-free seeds in F1",
            value: seeds_count,
            limit: TWO_STEP_SEED_LIMIT,
        });
    }
    let seeds = sys.sum_free_sets_within(f1.mask());
    let full = ground.full_mask();
    let found: Vec<Vec<Mask>> = seeds
        .par_iter()
        .map(|&s| -> Result<Vec<Mask>> {
            let link = link_graph_masks(s, f2.mask())?;
            let mut out = Vec::new();
            for i in enumerate_mis(&link)? {
                let m = s | labels_mask(&link, i);
                if mask_is_sum_free(m) && addable_mask(m, full) == 0 {
                    out.push(m);
                }
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    let unique: HashSet<Mask> = found.into_iter().flatten().collect();
    let mut sets: Vec<Mask> = unique.into_iter().collect();
    sets.sort_unstable_by(|a, b| bits::lex_cmp(*a, *b));
    sets.into_iter()
        .map(|m| IntSubset::from_mask(ground, m))
        .collect()
}

/// Value mask of the labels of the vertices in `vs`.
pub(crate) fn labels_mask(g: &Graph, vs: Mask) -> Mask {
    bits::ones(vs).fold(0, |acc, v| acc | bit(g.label(v) as usize))
}

/// `MSF(n, m, S)` and `MIS(L(n, m, S))`.
#[derive(Clone, Debug, Serialize)]
pub struct RefinedCounts {
    pub n: u32,
    pub m: u32,
    pub s: IntSubset,
    /// Maximal sum-free `M ⊆ [n]` with `min M = m` and `(M ∩ [n/2]) \ {m} = S`.
    pub msf: Count,
    pub mis_link: Count,
    /// `mis_link / 2^{n/4}`.
    pub ratio_c: Ratio,
}

pub fn refined_counts(n: u32, m: u32, s: &IntSubset) -> Result<RefinedCounts> {
    if s.n() != n {
        return Err(Error::Precondition(format!(
            "S lives in [{}], expected [{n}]",
            s.n()
        )));
    }
    let half = n / 2;
    if m == 0 || m > half || s.max().is_some_and(|x| x > half) {
        return Err(Error::Precondition(format!(
            "m and S must lie in [1, {half}]"
        )));
    }
    if s.contains(m) || s.contains(2 * m) {
        return Err(Error::Precondition("S must avoid m and 2m".into()));
    }
    let seed = s.mask() | bit(m as usize);
    if !mask_is_sum_free(seed) {
        return Err(Error::Precondition("S ∪ {m} must be sum-free".into()));
    }
    let link = link_family(n, m, s)?;
    let mis_link = count_mis(&link)?;
    let msf = if s.min().is_some_and(|x| x < m) {
        0
    } else {
        let full = s.ground().full_mask();
        enumerate_mis(&link)?
            .into_iter()
            .map(|i| seed | labels_mask(&link, i))
            .filter(|&mm| mask_is_sum_free(mm) && addable_mask(mm, full) == 0)
            .count() as Count
    };
    Ok(RefinedCounts {
        n,
        m,
        s: *s,
        msf,
        mis_link,
        ratio_c: Ratio::over_pow2_quarter(mis_link, n),
    })
}

/// All `(m, S)` with `S ⊆ [m + 1, n/2]` and `S ∪ {m}` sum-free.
pub fn refined_parameters(n: u32) -> Result<Vec<(u32, IntSubset)>> {
    let ground = GroundSet::new(n)?;
    let sys = SchurSystem::integers(n)?;
    let mut out = Vec::new();
    for m in 1..=n / 2 {
        let region = IntSubset::interval(ground, m + 1, n / 2).mask();
        for s in sys.sum_free_sets_within(region) {
            if mask_is_sum_free(s | bit(m as usize)) {
                out.push((m, IntSubset::from_mask(ground, s)?));
            }
        }
    }
    Ok(out)
}

/// Exact terms of the sandwich for maximal sum-free sets with exactly one
/// even member.
#[derive(Clone, Debug, Serialize)]
pub struct SingleEvenCensus {
    pub n: u32,
    /// Maximal sum-free subsets of `[n]` with exactly one even member.
    pub f_prime_max: Count,
    /// `Σ_{x ∈ E} MIS(L_x[O])`.
    pub single_sum: Count,
    /// `Σ_{x < x' ∈ E} MIS(L_{x,x'}[O])`.
    pub pair_sum: Count,
    /// `single_sum − 2·pair_sum`.
    pub lower: i128,
    pub upper: Count,
}

pub fn single_even_census(n: u32) -> Result<SingleEvenCensus> {
    check_enum(n, CENSUS_LIMIT)?;
    let evens: Vec<u32> = (2..=n).step_by(2).collect();
    let f_prime_max = enumerate_maximal_sum_free(n)?
        .iter()
        .filter(|m| m.iter().filter(|x| x % 2 == 0).count() == 1)
        .count() as Count;
    let mut single_sum = 0;
    for &x in &evens {
        single_sum += count_mis(&link_single_even(n, x)?)?;
    }
    let mut pair_sum = 0;
    for (i, &x) in evens.iter().enumerate() {
        for &x2 in &evens[i + 1..] {
            pair_sum += count_mis(&link_pair_even(n, x, x2)?)?;
        }
    }
    Ok(SingleEvenCensus {
        n,
        f_prime_max,
        single_sum,
        pair_sum,
        lower: single_sum as i128 - 2 * pair_sum as i128,
        upper: single_sum,
    })
}

/// Predicted `MIS(L_m[O])` for even `m > 2n/3`: `2^{m/4}` when `m/2` is
/// even and `2^{(m−2)/4}` when `m/2` is odd.
pub fn single_even_formula(m: u32) -> Count {
    if m.is_multiple_of(4) {
        1 << (m / 4)
    } else {
        1 << ((m - 2) / 4)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DprimeTerm {
    pub m: u32,
    pub mis: Count,
    /// Closed-form value, given for `m > 2n/3` only.
    pub predicted: Option<Count>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DprimeSum {
    pub n: u32,
    /// `Σ_{m ∈ E} MIS(L_m[O])`.
    pub full: Count,
    /// The same sum over `m > 2n/3`.
    pub restricted: Count,
    /// Closed-form values summed over `m > 2n/3`.
    pub predicted_restricted: Count,
    /// Closed-form values summed over every even `m ≤ n`.
    pub formula_all: Count,
    /// `full / 2^{n/4}`.
    pub ratio: Ratio,
    pub terms: Vec<DprimeTerm>,
}

pub fn dprime_sum(n: u32) -> Result<DprimeSum> {
    GroundSet::new(n)?;
    let mut terms = Vec::new();
    for m in (2..=n).step_by(2) {
        let mis = count_mis(&link_single_even(n, m)?)?;
        let predicted = (3 * m > 2 * n).then(|| single_even_formula(m));
        terms.push(DprimeTerm { m, mis, predicted });
    }
    let full = terms.iter().map(|t| t.mis).sum();
    let restricted = terms
        .iter()
        .filter(|t| t.predicted.is_some())
        .map(|t| t.mis)
        .sum();
    let predicted_restricted = terms.iter().filter_map(|t| t.predicted).sum();
    let formula_all = terms.iter().map(|t| single_even_formula(t.m)).sum();
    Ok(DprimeSum {
        n,
        full,
        restricted,
        predicted_restricted,
        formula_all,
        ratio: Ratio::over_pow2_quarter(full, n),
        terms,
    })
}

/// `3·2^{n/4} − 3` for `4 | n`.
pub fn geometric_closed_form(n: u32) -> Option<Count> {
    n.is_multiple_of(4).then(|| 3 * (1 << (n / 4)) - 3)
}

#[derive(Clone, Debug, Serialize)]
pub struct SumsetCensus {
    pub d: u32,
    pub s: u32,
    pub r: f64,
    pub delta: f64,
    /// Sets `S ⊆ [D]` with `|S| = s` and `|S + S| ≤ R·s`.
    pub count: Count,
    /// `binom(D, s)`, the number of candidates scanned.
    pub candidates: Count,
    /// `2^{δs}·binom(Rs/2, s)·D^{⌊R + δ⌋}`.
    pub bound: f64,
}

fn binomial(n: u32, k: u32) -> Count {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1, |acc: Count, i| acc * (n - i) as Count / (i + 1) as Count)
}

fn generalized_binomial(x: f64, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (x - i as f64) / (i + 1) as f64)
}

struct SumsetScan {
    d: usize,
    s: usize,
    max_size: usize,
    count: Count,
}

impl SumsetScan {
    /// `sums` holds `S + S` as a 256-bit mask split into two words.
    fn go(&mut self, next: usize, chosen: Mask, size: usize, sums: [Mask; 2]) {
        let have = (sums[0].count_ones() + sums[1].count_ones()) as usize;
        if have > self.max_size {
            return;
        }
        if size == self.s {
            self.count += 1;
            return;
        }
        for x in next..=self.d {
            if self.d - x + 1 < self.s - size {
                break;
            }
            let with = chosen | bit(x);
            let lo = with << x;
            let hi = with >> (128 - x);
            self.go(x + 1, with, size + 1, [sums[0] | lo, sums[1] | hi]);
        }
    }
}

/// Number of `s`-subsets of `[D]` with `|S + S| ≤ R·s`, next to the
/// small-doubling bound for the supplied `δ`.
pub fn small_sumset_count(d: u32, s: u32, r: f64, delta: f64) -> Result<SumsetCensus> {
    GroundSet::new(d)?;
    if s > d {
        return Err(Error::Precondition(format!("s = {s} exceeds D = {d}")));
    }
    let candidates = binomial(d, s);
    if candidates > SUMSET_CENSUS_LIMIT {
        return Err(Error::Limit {
            what: "sumset census candidates",
            value: candidates,
            limit: SUMSET_CENSUS_LIMIT,
        });
    }
    let max_size = (r * s as f64 + 1e-9).floor().max(0.0) as usize;
    let mut scan = SumsetScan {
        d: d as usize,
        s: s as usize,
        max_size,
        count: 0,
    };
    scan.go(1, 0, 0, [0, 0]);
    let bound = (delta * s as f64).exp2()
        * generalized_binomial(r * s as f64 / 2.0, s)
        * (d as f64).powf((r + delta).floor());
    Ok(SumsetCensus {
        d,
        s,
        r,
        delta,
        count: scan.count,
        candidates,
        bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(n: u32, e: &[u32]) -> IntSubset {
        IntSubset::from_elems(GroundSet::new(n).unwrap(), e.iter().copied()).unwrap()
    }

    fn lists(v: &[IntSubset]) -> Vec<Vec<u32>> {
        v.iter().map(|s| s.to_vec()).collect()
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(f_oracle(3).unwrap(), 6);
        assert_eq!(f_max_oracle(4).unwrap(), 4);
        assert_eq!(f_max_oracle(1).unwrap(), 1);
        assert!(f_oracle(27).is_err());
        assert!(f_oracle(0).is_err());
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(
            lists(&enumerate_maximal_sum_free(1).unwrap()),
            vec![vec![1]]
        );
        assert_eq!(
            lists(&enumerate_maximal_sum_free(2).unwrap()),
            vec![vec![1], vec![2]]
        );
        assert_eq!(
            lists(&enumerate_maximal_sum_free(4).unwrap()),
            vec![vec![1, 3], vec![1, 4], vec![2, 3], vec![3, 4]]
        );
        assert!(enumerate_maximal_sum_free(41).is_err());
    }

    #[test]
    fn engine_matches_oracle() {
        for n in 1..=14 {
            let sys = SchurSystem::integers(n).unwrap();
            assert_eq!(sys.count_sum_free(false), f_oracle(n).unwrap(), "f({n})");
            assert_eq!(
                sys.count_maximal(false),
                f_max_oracle(n).unwrap(),
                "f_max({n})"
            );
            assert_eq!(sys.count_maximal(true), sys.count_maximal(false));
            assert_eq!(sys.maximal_sets(true), sys.maximal_sets(false));
        }
    }

    #[test]
    fn largest_sum_free() {
        // the odd numbers, or the upper half
        for n in 1..=16u32 {
            assert_eq!(
                SchurSystem::integers(n).unwrap().max_sum_free_size() as u32,
                n.div_ceil(2)
            );
        }
    }

    #[test]
    fn two_step_examples() {
        let n = 12;
        let g = GroundSet::new(n).unwrap();
        let lower = IntSubset::interval(g, 1, 6);
        let upper = IntSubset::interval(g, 7, 12);
        assert_eq!(
            two_step_enumerate(&lower, &upper).unwrap(),
            enumerate_maximal_sum_free(n).unwrap()
        );
        let empty = IntSubset::empty(g);
        let inside: Vec<IntSubset> = enumerate_maximal_sum_free(n)
            .unwrap()
            .into_iter()
            .filter(|m| m.is_subset(&upper))
            .collect();
        assert_eq!(two_step_enumerate(&empty, &upper).unwrap(), inside);
        assert_eq!(maximal_sum_free_within(&upper).unwrap(), inside);
        let one = set(1, &[1]);
        assert_eq!(
            lists(&two_step_enumerate(&one, &set(1, &[])).unwrap()),
            vec![vec![1]]
        );
        assert!(two_step_enumerate(&set(6, &[1]), &set(6, &[1, 2])).is_err());
        assert!(two_step_enumerate(&set(6, &[]), &set(6, &[1, 2])).is_err());
    }

    #[test]
    fn refined_examples() {
        let r = refined_counts(16, 4, &set(16, &[])).unwrap();
        assert_eq!(r.mis_link, 16);
        assert!(r.msf <= r.mis_link);
        assert_eq!(
            r.ratio_c,
            Ratio {
                numerator: 1,
                denominator: 1,
                exact: true
            }
        );
        assert!(refined_counts(16, 4, &set(16, &[8])).is_err());
        assert!(refined_counts(16, 3, &set(16, &[6])).is_err());
        assert!(refined_counts(16, 9, &set(16, &[])).is_err());
    }

    #[test]
    fn refined_identity() {
        for n in 2..=14 {
            let total: Count = refined_parameters(n)
                .unwrap()
                .iter()
                .map(|(m, s)| refined_counts(n, *m, s).unwrap().msf)
                .sum();
            let direct = enumerate_maximal_sum_free(n)
                .unwrap()
                .iter()
                .filter(|m| IntSubset::min(m).unwrap() <= n / 2)
                .count() as Count;
            assert_eq!(total, direct, "n = {n}");
        }
    }

    #[test]
    fn census_small() {
        let c = single_even_census(2).unwrap();
        assert_eq!((c.f_prime_max, c.upper, c.lower), (1, 1, 1));
        let c = single_even_census(4).unwrap();
        // {1,4}, {2,3}, {3,4}
        assert_eq!(c.f_prime_max, 3);
        assert!(c.lower <= c.f_prime_max as i128 && c.f_prime_max <= c.upper);
    }

    #[test]
    fn dprime_small() {
        let d = dprime_sum(8).unwrap();
        let t8 = d.terms.iter().find(|t| t.m == 8).unwrap();
        assert_eq!((t8.mis, t8.predicted), (4, Some(4)));
        let d = dprime_sum(24).unwrap();
        for t in d.terms.iter().filter(|t| t.predicted.is_some()) {
            assert_eq!(Some(t.mis), t.predicted, "m = {}", t.m);
        }
        assert_eq!(d.formula_all, geometric_closed_form(24).unwrap());
    }

    #[test]
    fn ratios() {
        assert_eq!(
            Ratio::over_pow2_quarter(6, 8),
            Ratio {
                numerator: 3,
                denominator: 2,
                exact: true
            }
        );
        assert_eq!(Ratio::over_pow2_quarter(0, 8).to_f64(), 0.0);
        let r = Ratio::over_pow2_quarter(3, 2);
        assert!(!r.exact);
        assert_eq!(r.numerator, (3.0 * 2f64.powf(11.5)).round() as Count);
    }

    #[test]
    fn sumset_census() {
        assert_eq!(small_sumset_count(6, 2, 3.0, 0.1).unwrap().count, 15);
        assert_eq!(small_sumset_count(5, 5, 2.0, 0.1).unwrap().count, 1);
        assert_eq!(small_sumset_count(5, 5, 1.0, 0.1).unwrap().count, 0);
        let c = small_sumset_count(10, 3, 2.0, 0.1).unwrap();
        assert_eq!(c.candidates, 120);
        let brute = (1..=10u32)
            .flat_map(|a| (a + 1..=10).flat_map(move |b| (b + 1..=10).map(move |c| [a, b, c])))
            .filter(|t| {
                let sums: HashSet<u32> = t
                    .iter()
                    .flat_map(|x| t.iter().map(move |y| x + y))
                    .collect();
                sums.len() <= 6
            })
            .count() as Count;
        assert_eq!(c.count, brute);
        assert!(small_sumset_count(100, 50, 2.0, 0.1).is_err());
    }
}
