//! Explicit families of sum-free sets that lie in pairwise distinct maximal
//! sum-free sets, giving lower bounds on `f_max`.
//!
//! Each family carries a *window*: a region none of whose unused elements can
//! be added to any member. Two members that differ inside the window can then
//! never lie in a common sum-free set, so their maximal extensions differ.

use serde::Serialize;

use crate::abelian::{coset_partition, is_sum_free_group, AbelianGroup, GroupElem, GroupSubset};
use crate::bits::{self, bit, Mask};
use crate::enumerate::{labels_mask, SchurSystem};
use crate::graph::{are_isomorphic, Graph};
use crate::linkgraph::{link_graph_group, link_of_elem};
use crate::miscount::{count_mis, enumerate_mis};
use crate::setcore::{mask_is_sum_free, GroundSet, IntSubset};
use crate::{Count, Error, Result};

/// Largest integer ground set for which closures are compared exhaustively.
pub const CLOSURE_CHECK_LIMIT: u32 = 18;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Ground {
    Int(GroundSet),
    Group(AbelianGroup),
}

impl Ground {
    pub fn descriptor(&self) -> String {
        match self {
            Ground::Int(g) => format!("[{}]", g.n()),
            Ground::Group(g) => g.descriptor(),
        }
    }

    pub fn is_sum_free(&self, s: Mask) -> bool {
        match self {
            Ground::Int(_) => mask_is_sum_free(s),
            Ground::Group(g) => GroupSubset::from_mask(g, s).is_ok_and(|s| is_sum_free_group(&s)),
        }
    }

    /// Human-readable members of `s` in increasing position order.
    pub fn describe(&self, s: Mask) -> Vec<String> {
        match self {
            Ground::Int(_) => bits::ones(s).map(|v| v.to_string()).collect(),
            Ground::Group(g) => bits::ones(s).map(|i| g.elem(i).to_string()).collect(),
        }
    }

    fn system(&self) -> Result<SchurSystem> {
        match self {
            Ground::Int(g) => SchurSystem::integers(g.n()),
            Ground::Group(g) => Ok(SchurSystem::group(g)),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Family {
    pub name: &'static str,
    pub ground: Ground,
    /// Members as position masks (values for `[n]`, indices for groups),
    /// in lexicographic order.
    pub members: Vec<Mask>,
    pub window: Mask,
    pub claimed_size: Count,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct FamilyCheck {
    pub size_matches: bool,
    pub distinct: bool,
    pub sum_free_failures: Vec<String>,
    pub window_failures: Vec<String>,
    /// `None` when the ground structure is too large for the exhaustive check.
    pub closure_failures: Option<Vec<String>>,
}

impl FamilyCheck {
    pub fn passed(&self) -> bool {
        self.size_matches
            && self.distinct
            && self.sum_free_failures.is_empty()
            && self.window_failures.is_empty()
            && self.closure_failures.as_ref().is_none_or(|f| f.is_empty())
    }
}

impl Family {
    fn new(
        name: &'static str,
        ground: Ground,
        mut members: Vec<Mask>,
        window: Mask,
        claimed_size: Count,
    ) -> Self {
        members.sort_unstable_by(|a, b| bits::lex_cmp(*a, *b));
        Family {
            name,
            ground,
            members,
            window,
            claimed_size,
        }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn sum_free_failures(&self) -> Vec<String> {
        self.members
            .iter()
            .filter(|&&s| !self.ground.is_sum_free(s))
            .map(|&s| format!("{{{}}} is not sum-free", self.ground.describe(s).join(",")))
            .collect()
    }

    /// Members `S` and window elements `w ∉ S` with `S ∪ {w}` still sum-free.
    pub fn window_failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        for &s in &self.members {
            for w in bits::ones(self.window & !s) {
                if self.ground.is_sum_free(s | bit(w)) {
                    out.push(format!(
                        "{{{}}} extends by {}",
                        self.ground.describe(s).join(","),
                        self.ground.describe(bit(w))[0]
                    ));
                }
            }
        }
        out
    }

    /// Maximal sum-free sets containing two members.
    pub fn closure_failures(&self) -> Result<Vec<String>> {
        let maximal = self.ground.system()?.maximal_sets(true);
        let mut out = Vec::new();
        for m in maximal {
            let inside: Vec<Mask> = self
                .members
                .iter()
                .copied()
                .filter(|&s| s & !m == 0)
                .collect();
            if inside.len() > 1 {
                out.push(format!(
                    "maximal set {{{}}} contains {} members",
                    self.ground.describe(m).join(","),
                    inside.len()
                ));
            }
        }
        Ok(out)
    }

    fn closure_checkable(&self) -> bool {
        match &self.ground {
            Ground::Int(g) => g.n() <= CLOSURE_CHECK_LIMIT,
            Ground::Group(g) => g.order() <= 32,
        }
    }

    pub fn check(&self) -> Result<FamilyCheck> {
        let mut sorted = self.members.clone();
        sorted.dedup();
        Ok(FamilyCheck {
            size_matches: self.members.len() as Count == self.claimed_size,
            distinct: sorted.len() == self.members.len(),
            sum_free_failures: self.sum_free_failures(),
            window_failures: self.window_failures(),
            closure_failures: if self.closure_checkable() {
                Some(self.closure_failures()?)
            } else {
                None
            },
        })
    }
}

fn checked_pow2(k: u32) -> Result<Count> {
    if k >= 64 {
        return Err(Error::Limit {
            what: "family size exponent",
            value: k as u128,
            limit: 63,
        });
    }
    Ok(1 << k)
}

/// All masks picking exactly one element of each pair.
fn one_of_each(pairs: &[(usize, usize)], base: Mask) -> Vec<Mask> {
    let mut out = vec![base];
    for &(a, b) in pairs {
        out = out
            .into_iter()
            .flat_map(|m| [m | bit(a), m | bit(b)])
            .collect();
    }
    out
}

/// `m ∈ {n, n−1}` even, together with one of `x, m − x` for each odd `x < m/2`.
pub fn ce_odd_family(n: u32) -> Result<Family> {
    if n < 4 {
        return Err(Error::Precondition(format!("n = {n} must be at least 4")));
    }
    let ground = GroundSet::new(n)?;
    let m = if n.is_multiple_of(2) { n } else { n - 1 } as usize;
    let pairs: Vec<(usize, usize)> = (1..m)
        .step_by(2)
        .filter(|&x| 2 * x < m)
        .map(|x| (x, m - x))
        .collect();
    let claimed = checked_pow2(pairs.len() as u32)?;
    let window = (1..m).step_by(2).fold(0, |acc, x| acc | bit(x));
    Ok(Family::new(
        "ce-odd",
        Ground::Int(ground),
        one_of_each(&pairs, bit(m)),
        window,
        claimed,
    ))
}

/// `{n/4} ∪ S' ∪ {x − n/4 : x ∈ I_2 \ S'}` for every `S' ⊆ I_2 = [3n/4 + 1, n]`.
pub fn interval_family(n: u32) -> Result<Family> {
    if n == 0 || !n.is_multiple_of(4) {
        return Err(Error::Precondition(format!(
            "n = {n} must be a positive multiple of 4"
        )));
    }
    let ground = GroundSet::new(n)?;
    let q = (n / 4) as usize;
    let pairs: Vec<(usize, usize)> = (3 * q + 1..=4 * q).map(|x| (x, x - q)).collect();
    let window = pairs.iter().fold(0, |acc, &(x, _)| acc | bit(x));
    let claimed = checked_pow2(q as u32)?;
    Ok(Family::new(
        "interval",
        Ground::Int(ground),
        one_of_each(&pairs, bit(q)),
        window,
        claimed,
    ))
}

fn first_coord_mask(g: &AbelianGroup, coord: usize, value: u32) -> Mask {
    g.elements()
        .enumerate()
        .filter(|(_, e)| e.coords[coord] == value)
        .fold(0, |acc, (i, _)| acc | bit(i))
}

/// `{x} ∪ I` for `I` a maximal independent set of `L_x[B]`.
fn link_extensions(g: &AbelianGroup, x: usize, b: Mask) -> Result<(Graph, Vec<Mask>)> {
    let link = link_of_elem(g, x, b)?;
    let members = enumerate_mis(&link)?
        .into_iter()
        .map(|i| bit(x) | labels_mask(&link, i))
        .collect();
    Ok((link, members))
}

/// In `Z_2^k`: `x = (0, 1, 0, …)` with one endpoint of each edge of the
/// perfect matching `L_x[U]`, `U` the elements with first coordinate 1.
pub fn z2k_family(k: usize) -> Result<Family> {
    if k < 2 {
        return Err(Error::Precondition(format!("k = {k} must be at least 2")));
    }
    let g = AbelianGroup::power(2, k)?;
    let mut coords = vec![0; k];
    coords[1] = 1;
    let x = g.index_of(&GroupElem::new(coords))?;
    let u = first_coord_mask(&g, 0, 1);
    let (link, members) = link_extensions(&g, x, u)?;
    if link.loops() != 0 || link.edge_count() * 2 != link.n() {
        return Err(Error::Graph("L_x[U] is not a perfect matching".into()));
    }
    let claimed = checked_pow2((g.order() / 4) as u32)?;
    Ok(Family::new("z2k", Ground::Group(g), members, u, claimed))
}

/// Structure of `Γ = L_{{k, −2k}}[M]` in `Z_n`, `M = [3k + 1, 6k]`.
#[derive(Clone, Debug)]
pub struct PrismCensus {
    pub n: u32,
    pub k: u32,
    pub graph: Graph,
    pub components: usize,
    /// Components isomorphic to `K_3 □ K_2`.
    pub prisms: usize,
    pub mis: Count,
}

impl PrismCensus {
    pub fn non_prisms(&self) -> usize {
        self.components - self.prisms
    }

    pub fn window_size(&self) -> usize {
        self.graph.n()
    }
}

pub fn prism() -> Graph {
    Graph::complete(3)
        .and_then(|t| t.cartesian_product(&Graph::path(2)?))
        .expect("six vertices")
}

pub fn zn_prism_graph(n: u32) -> Result<PrismCensus> {
    let k = n / 9;
    if k == 0 {
        return Err(Error::Precondition(format!("n = {n} must be at least 9")));
    }
    let g = AbelianGroup::cyclic(n)?;
    let (ku, nu) = (k as usize, n as usize);
    let s = GroupSubset::from_mask(&g, bit(ku) | bit(nu - 2 * ku))?;
    let m = GroupSubset::from_mask(&g, bits::range_mask(3 * ku + 1, 6 * ku))?;
    let graph = link_graph_group(&s, &m)?;
    let target = prism();
    let comps = graph.components();
    let mut prisms = 0;
    for &c in &comps {
        if bits::count(c) == 6 && are_isomorphic(&graph.induced(c), &target)? {
            prisms += 1;
        }
    }
    let mis = count_mis(&graph)?;
    Ok(PrismCensus {
        n,
        k,
        components: comps.len(),
        graph,
        prisms,
        mis,
    })
}

fn odd_order(g: &AbelianGroup) -> Result<()> {
    if g.order().is_multiple_of(2) {
        return Err(Error::EvenOrder(g.order()));
    }
    Ok(())
}

/// `{x} ∪ I` for `x` the smallest element of `2 + H` and `I` a maximal
/// independent set of `L_x[1 + H]`, `H` of index 3.
pub fn index3_family(g: &AbelianGroup) -> Result<Family> {
    odd_order(g)?;
    if !g.order().is_multiple_of(3) {
        return Err(Error::Precondition(format!(
            "order {} is not divisible by 3",
            g.order()
        )));
    }
    let cosets = coset_partition(g, 3)?;
    let x = bits::lowest(cosets.cosets[2].mask()).expect("nonempty coset");
    let b = cosets.cosets[1].mask();
    let (link, members) = link_extensions(g, x, b)?;
    check_index3_structure(g, x, &link)?;
    let claimed = members.len() as Count;
    Ok(Family::new(
        "index3",
        Ground::Group(g.clone()),
        members,
        b,
        claimed,
    ))
}

/// Loops exactly at `2x` and `x/2`, and every other vertex `y` has the
/// single neighbour `x − y`.
fn check_index3_structure(g: &AbelianGroup, x: usize, link: &Graph) -> Result<()> {
    let half = g.index_of(&g.unique_half(&g.elem(x))?)?;
    let double = g.add_idx(x, x);
    for v in 0..link.n() {
        let y = link.label(v) as usize;
        let looped = y == half || y == double;
        if link.has_loop(v) != looped {
            return Err(Error::Graph(format!(
                "unexpected loop status at vertex {y}"
            )));
        }
        let partner = g.add_idx(x, g.neg_idx(y));
        let expect = if partner == y {
            0
        } else {
            bit(link.vertex_of(partner as i64).expect("partner in coset"))
        };
        if link.neighbors(v) != expect {
            return Err(Error::Graph(format!("vertex {y} is not matched to x − y")));
        }
    }
    Ok(())
}

/// Lower bound `2^{(n−9)/6}` for the index-3 family.
pub fn index3_bound_log2(order: u64) -> f64 {
    (order as f64 - 9.0) / 6.0
}

/// `{x} ∪ I` for `x` the smallest element of `1 + H` and `I` a maximal
/// independent set of `L_x[(2 + H) ∪ (3 + H)]`, `H` of index 7.
pub fn exponent7_family(g: &AbelianGroup) -> Result<Family> {
    if g.exponent() != 7 {
        return Err(Error::Precondition(format!(
            "{} does not have exponent 7",
            g.descriptor()
        )));
    }
    let cosets = coset_partition(g, 7)?;
    let x = bits::lowest(cosets.cosets[1].mask()).expect("nonempty coset");
    let b = cosets.cosets[2].mask() | cosets.cosets[3].mask();
    let (link, members) = link_extensions(g, x, b)?;
    let double = g.add_idx(x, x);
    let loops: Vec<i64> = bits::ones(link.loops()).map(|v| link.label(v)).collect();
    let matching = (0..link.n()).all(|v| bits::count(link.neighbors(v)) == 1);
    if loops != [double as i64] || !matching {
        return Err(Error::Graph(
            "L_x[(2+H) ∪ (3+H)] is not a matching with one loop at 2x".into(),
        ));
    }
    let claimed = checked_pow2((g.order() / 7 - 1) as u32)?;
    Ok(Family::new(
        "exponent7",
        Ground::Group(g.clone()),
        members,
        b,
        claimed,
    ))
}

/// Members of an integer family as subsets of `[n]`.
pub fn int_members(f: &Family) -> Result<Vec<IntSubset>> {
    match &f.ground {
        Ground::Int(g) => f
            .members
            .iter()
            .map(|&m| IntSubset::from_mask(*g, m))
            .collect(),
        Ground::Group(_) => Err(Error::Precondition("family lives in a group".into())),
    }
}
