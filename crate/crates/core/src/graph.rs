//! Graphs possibly with loops, on at most 128 vertices.
//!
//! Vertices are indexed `0..n` and carry integer labels (ground-set values or
//! flattened group-element indices). A loop counts as one edge and contributes
//! two to the degree of its vertex.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use crate::bits::{self, bit, low_mask, Mask};
use crate::{Error, Result};

pub const MAX_VERTICES: usize = 128;

/// Vertex count up to which [`Graph::p3_packing`] is exact.
pub const EXACT_P3_LIMIT: usize = 30;

/// Vertex count limit of [`are_isomorphic`].
pub const ISO_LIMIT: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    labels: Vec<i64>,
    adj: Vec<Mask>,
    loops: Mask,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DegreeStats {
    pub min: usize,
    pub max: usize,
    pub edges: usize,
}

/// A collection of vertex-disjoint paths on three vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct P3Packing {
    /// Each path as `[end, middle, end]`.
    pub paths: Vec<[usize; 3]>,
    /// Whether the packing is maximum (branching) or only a greedy lower bound.
    pub exact: bool,
}

impl Graph {
    /// Edgeless graph with the given labels.
    pub fn new(labels: Vec<i64>) -> Result<Self> {
        if labels.len() > MAX_VERTICES {
            return Err(Error::Graph(format!(
                "{} vertices exceeds the limit of {MAX_VERTICES}",
                labels.len()
            )));
        }
        let n = labels.len();
        Ok(Graph {
            labels,
            adj: vec![0; n],
            loops: 0,
        })
    }

    /// Edgeless graph labelled `0..n`.
    pub fn empty(n: usize) -> Result<Self> {
        Self::new((0..n as i64).collect())
    }

    /// Adds the edge `uv`; `u == v` adds a loop. Repeated edges are ignored.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        let n = self.n();
        if u >= n || v >= n {
            return Err(Error::Graph(format!("edge ({u},{v}) outside 0..{n}")));
        }
        if u == v {
            self.loops |= bit(u);
        } else {
            self.adj[u] |= bit(v);
            self.adj[v] |= bit(u);
        }
        Ok(())
    }

    pub fn path(m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::Graph("path needs at least one vertex".into()));
        }
        let mut g = Self::empty(m)?;
        for i in 1..m {
            g.add_edge(i - 1, i)?;
        }
        Ok(g)
    }

    pub fn cycle(m: usize) -> Result<Self> {
        if m < 3 {
            return Err(Error::Graph(format!(
                "cycle needs at least 3 vertices, got {m}"
            )));
        }
        let mut g = Self::path(m)?;
        g.add_edge(m - 1, 0)?;
        Ok(g)
    }

    pub fn complete(m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::Graph(
                "complete graph needs at least one vertex".into(),
            ));
        }
        let mut g = Self::empty(m)?;
        for u in 0..m {
            for v in u + 1..m {
                g.add_edge(u, v)?;
            }
        }
        Ok(g)
    }

    /// `k` disjoint edges `{2i, 2i+1}`.
    pub fn matching(k: usize) -> Result<Self> {
        let mut g = Self::empty(2 * k)?;
        for i in 0..k {
            g.add_edge(2 * i, 2 * i + 1)?;
        }
        Ok(g)
    }

    /// `G ⊔ H`; vertices of `H` follow those of `G`, labels are kept.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph> {
        let off = self.n();
        let mut labels = self.labels.clone();
        labels.extend_from_slice(&other.labels);
        let mut g = Graph::new(labels)?;
        g.adj[..off].copy_from_slice(&self.adj);
        for (v, &a) in other.adj.iter().enumerate() {
            g.adj[off + v] = a << off;
        }
        g.loops = self.loops | (other.loops << off);
        Ok(g)
    }

    /// `G □ H`; vertex `(x, y)` has index `x·|H| + y` and the same number as label.
    /// Loops are not carried over.
    pub fn cartesian_product(&self, other: &Graph) -> Result<Graph> {
        let (a, b) = (self.n(), other.n());
        let mut g = Graph::empty(a * b)?;
        for x in 0..a {
            for y in 0..b {
                for y2 in bits::ones(other.adj[y]) {
                    g.add_edge(x * b + y, x * b + y2)?;
                }
                for x2 in bits::ones(self.adj[x]) {
                    g.add_edge(x * b + y, x2 * b + y)?;
                }
            }
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[i64] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> i64 {
        self.labels[v]
    }

    pub fn vertex_of(&self, label: i64) -> Option<usize> {
        self.labels.iter().position(|&l| l == label)
    }

    pub fn vertex_mask(&self) -> Mask {
        low_mask(self.n())
    }

    /// Neighbours of `v`, excluding `v` itself even when it carries a loop.
    pub fn neighbors(&self, v: usize) -> Mask {
        self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        if u == v {
            self.has_loop(u)
        } else {
            self.adj[u] & bit(v) != 0
        }
    }

    pub fn has_loop(&self, v: usize) -> bool {
        self.loops & bit(v) != 0
    }

    pub fn loops(&self) -> Mask {
        self.loops
    }

    pub fn degree(&self, v: usize) -> usize {
        bits::count(self.adj[v]) + 2 * self.has_loop(v) as usize
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|&a| bits::count(a)).sum::<usize>() / 2 + bits::count(self.loops)
    }

    /// Minimum degree, maximum degree and edge count.
    pub fn degree_stats(&self) -> DegreeStats {
        let degs = (0..self.n()).map(|v| self.degree(v));
        DegreeStats {
            min: degs.clone().min().unwrap_or(0),
            max: degs.max().unwrap_or(0),
            edges: self.edge_count(),
        }
    }

    /// The same graph with every loop removed.
    pub fn without_loops(&self) -> Graph {
        Graph {
            loops: 0,
            ..self.clone()
        }
    }

    /// Induced subgraph on `keep`, vertices renumbered in increasing order.
    pub fn induced(&self, keep: Mask) -> Graph {
        let keep = keep & self.vertex_mask();
        let order: Vec<usize> = bits::ones(keep).collect();
        let mut pos = [usize::MAX; MAX_VERTICES];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let mut adj = vec![0; order.len()];
        let mut loops = 0;
        for (i, &v) in order.iter().enumerate() {
            for u in bits::ones(self.adj[v] & keep) {
                adj[i] |= bit(pos[u]);
            }
            if self.has_loop(v) {
                loops |= bit(i);
            }
        }
        Graph {
            labels: order.iter().map(|&v| self.labels[v]).collect(),
            adj,
            loops,
        }
    }

    pub fn remove_vertices(&self, drop: Mask) -> Graph {
        self.induced(self.vertex_mask() & !drop)
    }

    /// Connected components of the subgraph induced on `within`.
    pub fn components_within(&self, within: Mask) -> Vec<Mask> {
        let mut rest = within;
        let mut out = Vec::new();
        while let Some(start) = bits::lowest(rest) {
            let mut comp = bit(start);
            let mut frontier = comp;
            while frontier != 0 {
                let mut next = 0;
                for v in bits::ones(frontier) {
                    next |= self.adj[v];
                }
                next &= within & !comp;
                comp |= next;
                frontier = next;
            }
            rest &= !comp;
            out.push(comp);
        }
        out
    }

    pub fn components(&self) -> Vec<Mask> {
        self.components_within(self.vertex_mask())
    }

    /// No three distinct mutually adjacent vertices; loops are ignored.
    pub fn is_triangle_free(&self) -> bool {
        (0..self.n()).all(|u| {
            bits::ones(self.adj[u] & !low_mask(u + 1)).all(|v| self.adj[u] & self.adj[v] == 0)
        })
    }

    /// Whether `set` is independent (no edges, no loops) and maximal.
    pub fn is_maximal_independent(&self, set: Mask) -> bool {
        if set & self.loops != 0 || bits::ones(set).any(|v| self.adj[v] & set != 0) {
            return false;
        }
        let dominated = bits::ones(set).fold(set, |acc, v| acc | self.adj[v]);
        self.vertex_mask() & !self.loops & !dominated == 0
    }

    /// Vertex-disjoint `P_3`s (loops ignored): maximum for at most
    /// [`EXACT_P3_LIMIT`] vertices, greedy otherwise.
    pub fn p3_packing(&self) -> P3Packing {
        if self.n() <= EXACT_P3_LIMIT {
            let mut memo = HashMap::new();
            let mut paths = Vec::new();
            for comp in self.components() {
                paths.extend(self.exact_p3(comp, &mut memo).1);
            }
            P3Packing { paths, exact: true }
        } else {
            P3Packing {
                paths: self.greedy_p3(self.vertex_mask()),
                exact: false,
            }
        }
    }

    /// Size of the packing found by [`Graph::p3_packing`].
    pub fn disjoint_p3_packing(&self) -> usize {
        self.p3_packing().paths.len()
    }

    fn p3s_through(&self, v: usize, avail: Mask) -> Vec<[usize; 3]> {
        let nv = self.adj[v] & avail;
        let mut out = Vec::new();
        let nbrs: Vec<usize> = bits::ones(nv).collect();
        for (i, &a) in nbrs.iter().enumerate() {
            for &b in &nbrs[i + 1..] {
                out.push([a, v, b]);
            }
        }
        for u in nbrs {
            for w in bits::ones(self.adj[u] & avail & !bit(v)) {
                out.push([v, u, w]);
            }
        }
        out
    }

    fn exact_p3(
        &self,
        avail: Mask,
        memo: &mut HashMap<Mask, (usize, Vec<[usize; 3]>)>,
    ) -> (usize, Vec<[usize; 3]>) {
        // isolated vertices cannot be covered
        let avail = bits::ones(avail)
            .filter(|&v| self.adj[v] & avail != 0)
            .fold(0, |acc, v| acc | bit(v));
        if bits::count(avail) < 3 {
            return (0, Vec::new());
        }
        if let Some(hit) = memo.get(&avail) {
            return hit.clone();
        }
        let comps = self.components_within(avail);
        let result = if comps.len() > 1 {
            let mut total = 0;
            let mut paths = Vec::new();
            for c in comps {
                let (k, p) = self.exact_p3(c, memo);
                total += k;
                paths.extend(p);
            }
            (total, paths)
        } else {
            let v = bits::ones(avail)
                .min_by_key(|&u| bits::count(self.adj[u] & avail))
                .expect("non-empty");
            let mut best = self.exact_p3(avail & !bit(v), memo);
            let cap = bits::count(avail) / 3;
            for p in self.p3s_through(v, avail) {
                if best.0 == cap {
                    break;
                }
                let used = bit(p[0]) | bit(p[1]) | bit(p[2]);
                let (k, mut rest) = self.exact_p3(avail & !used, memo);
                if k + 1 > best.0 {
                    rest.push(p);
                    best = (k + 1, rest);
                }
            }
            best
        };
        memo.insert(avail, result.clone());
        result
    }

    fn greedy_p3(&self, mut avail: Mask) -> Vec<[usize; 3]> {
        let mut paths = Vec::new();
        loop {
            let live: Vec<usize> = bits::ones(avail)
                .filter(|&v| self.adj[v] & avail != 0)
                .collect();
            let Some(&v) = live
                .iter()
                .min_by_key(|&&u| bits::count(self.adj[u] & avail))
            else {
                break;
            };
            let choice = self.p3s_through(v, avail).into_iter().min_by_key(|p| {
                p.iter()
                    .map(|&u| bits::count(self.adj[u] & avail))
                    .sum::<usize>()
            });
            match choice {
                Some(p) => {
                    avail &= !(bit(p[0]) | bit(p[1]) | bit(p[2]));
                    paths.push(p);
                }
                None => avail &= !bit(v),
            }
        }
        paths
    }

    /// Text form: `g <n>`, then `v <index> <label>` per vertex, then
    /// `e <u> <v>` per edge with `u ≤ v` (`u = v` is a loop), sorted.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "g {}", self.n());
        for (i, l) in self.labels.iter().enumerate() {
            let _ = writeln!(s, "v {i} {l}");
        }
        for u in 0..self.n() {
            if self.has_loop(u) {
                let _ = writeln!(s, "e {u} {u}");
            }
            for v in bits::ones(self.adj[u] & !low_mask(u + 1)) {
                let _ = writeln!(s, "e {u} {v}");
            }
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Graph> {
        let err = |line: usize, msg: &str| Error::Parse {
            line,
            msg: msg.to_string(),
        };
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hl, header) = lines.next().ok_or_else(|| err(1, "missing header"))?;
        let n: usize = header
            .strip_prefix("g ")
            .and_then(|r| r.trim().parse().ok())
            .ok_or_else(|| err(hl, "expected `g <num_vertices>`"))?;
        if n > MAX_VERTICES {
            return Err(err(hl, "too many vertices"));
        }
        let mut labels: Vec<Option<i64>> = vec![None; n];
        let mut edges = Vec::new();
        for (ln, line) in lines {
            let parts: Vec<&str> = line.split_whitespace().collect();
            match parts.as_slice() {
                ["v", i, l] => {
                    let i: usize = i.parse().map_err(|_| err(ln, "bad vertex index"))?;
                    let l: i64 = l.parse().map_err(|_| err(ln, "bad label"))?;
                    let slot = labels
                        .get_mut(i)
                        .ok_or_else(|| err(ln, "vertex index out of range"))?;
                    if slot.replace(l).is_some() {
                        return Err(err(ln, "duplicate vertex"));
                    }
                }
                ["e", u, v] => {
                    let u: usize = u.parse().map_err(|_| err(ln, "bad endpoint"))?;
                    let v: usize = v.parse().map_err(|_| err(ln, "bad endpoint"))?;
                    if u >= n || v >= n {
                        return Err(err(ln, "edge endpoint out of range"));
                    }
                    edges.push((u, v));
                }
                _ => return Err(err(ln, "unrecognised line")),
            }
        }
        let labels = labels
            .into_iter()
            .enumerate()
            .map(|(i, l)| l.ok_or_else(|| err(0, &format!("vertex {i} not declared"))))
            .collect::<Result<Vec<_>>>()?;
        let mut g = Graph::new(labels)?;
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }
}

/// Whether `f` (vertex `v` of `g` ↦ vertex `f[v]` of `h`) preserves edges,
/// non-edges and loops exactly.
pub fn check_isomorphism_map(g: &Graph, h: &Graph, f: &[usize]) -> Result<bool> {
    let n = g.n();
    if h.n() != n || f.len() != n {
        return Err(Error::NotBijective);
    }
    let mut seen = 0 as Mask;
    for &w in f {
        if w >= n || seen & bit(w) != 0 {
            return Err(Error::NotBijective);
        }
        seen |= bit(w);
    }
    for u in 0..n {
        if g.has_loop(u) != h.has_loop(f[u]) {
            return Ok(false);
        }
        let image = bits::ones(g.adj[u]).fold(0 as Mask, |acc, v| acc | bit(f[v]));
        if image != h.adj[f[u]] {
            return Ok(false);
        }
    }
    Ok(true)
}

/// [`check_isomorphism_map`] with the map given on labels; labels must be
/// unique in both graphs.
pub fn check_label_map(g: &Graph, h: &Graph, f: &HashMap<i64, i64>) -> Result<bool> {
    let index: HashMap<i64, usize> = h.labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();
    if index.len() != h.n() {
        return Err(Error::Precondition(
            "labels of the target graph are not unique".into(),
        ));
    }
    let map = g
        .labels
        .iter()
        .map(|l| {
            f.get(l)
                .and_then(|t| index.get(t).copied())
                .ok_or(Error::NotBijective)
        })
        .collect::<Result<Vec<_>>>()?;
    check_isomorphism_map(g, h, &map)
}

/// Joint colour refinement of two graphs; colours are comparable across them.
fn refine_colors(g: &Graph, h: &Graph) -> (Vec<usize>, Vec<usize>) {
    let init = |x: &Graph| -> Vec<(bool, usize)> {
        (0..x.n()).map(|v| (x.has_loop(v), x.degree(v))).collect()
    };
    let mut table: BTreeMap<(bool, usize), usize> = BTreeMap::new();
    for k in init(g).into_iter().chain(init(h)) {
        let next = table.len();
        table.entry(k).or_insert(next);
    }
    let mut cg: Vec<usize> = init(g).iter().map(|k| table[k]).collect();
    let mut ch: Vec<usize> = init(h).iter().map(|k| table[k]).collect();
    let mut classes = table.len();
    loop {
        let sig = |x: &Graph, c: &[usize]| -> Vec<(usize, Vec<usize>)> {
            (0..x.n())
                .map(|v| {
                    let mut nb: Vec<usize> = bits::ones(x.adj[v]).map(|u| c[u]).collect();
                    nb.sort_unstable();
                    (c[v], nb)
                })
                .collect()
        };
        let (sg, sh) = (sig(g, &cg), sig(h, &ch));
        let mut table: BTreeMap<&(usize, Vec<usize>), usize> = BTreeMap::new();
        for s in sg.iter().chain(&sh) {
            let next = table.len();
            table.entry(s).or_insert(next);
        }
        let ng: Vec<usize> = sg.iter().map(|s| table[s]).collect();
        let nh: Vec<usize> = sh.iter().map(|s| table[s]).collect();
        let stable = table.len() == classes;
        classes = table.len();
        cg = ng;
        ch = nh;
        if stable {
            return (cg, ch);
        }
    }
}

/// Backtracking isomorphism test for graphs of at most [`ISO_LIMIT`] vertices.
pub fn are_isomorphic(g: &Graph, h: &Graph) -> Result<bool> {
    for x in [g, h] {
        if x.n() > ISO_LIMIT {
            return Err(Error::Limit {
                what: "vertex count for isomorphism search",
                value: x.n() as u128,
                limit: ISO_LIMIT as u128,
            });
        }
    }
    Ok(find_isomorphism(g, h).is_some())
}

/// An isomorphism `g → h` as a vertex map, if one exists.
pub fn find_isomorphism(g: &Graph, h: &Graph) -> Option<Vec<usize>> {
    let n = g.n();
    if h.n() != n || g.edge_count() != h.edge_count() {
        return None;
    }
    let (cg, ch) = refine_colors(g, h);
    let mut a = cg.clone();
    let mut b = ch.clone();
    a.sort_unstable();
    b.sort_unstable();
    if a != b {
        return None;
    }
    // visit vertices so that each (after the first of a component) has a mapped neighbour
    let mut order = Vec::with_capacity(n);
    let mut placed = 0 as Mask;
    while order.len() < n {
        let start = (0..n)
            .filter(|&v| placed & bit(v) == 0)
            .min_by_key(|&v| cg.iter().filter(|&&c| c == cg[v]).count())
            .expect("vertex left");
        let mut queue = std::collections::VecDeque::from([start]);
        placed |= bit(start);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for u in bits::ones(g.adj[v] & !placed) {
                placed |= bit(u);
                queue.push_back(u);
            }
        }
    }
    let mut map = vec![usize::MAX; n];
    let mut used = 0 as Mask;
    if extend_iso(g, h, &cg, &ch, &order, 0, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}

#[allow(clippy::too_many_arguments)]
fn extend_iso(
    g: &Graph,
    h: &Graph,
    cg: &[usize],
    ch: &[usize],
    order: &[usize],
    depth: usize,
    map: &mut [usize],
    used: &mut Mask,
) -> bool {
    let Some(&v) = order.get(depth) else {
        return true;
    };
    let mapped_nbrs: Vec<usize> = order[..depth]
        .iter()
        .copied()
        .filter(|&u| g.adj[v] & bit(u) != 0)
        .collect();
    let candidates = match mapped_nbrs.first() {
        Some(&u) => h.adj[map[u]] & !*used,
        None => low_mask(h.n()) & !*used,
    };
    for w in bits::ones(candidates) {
        if ch[w] != cg[v] {
            continue;
        }
        let consistent = order[..depth]
            .iter()
            .all(|&u| (g.adj[v] & bit(u) != 0) == (h.adj[w] & bit(map[u]) != 0));
        if !consistent {
            continue;
        }
        map[v] = w;
        *used |= bit(w);
        if extend_iso(g, h, cg, ch, order, depth + 1, map, used) {
            return true;
        }
        *used &= !bit(w);
        map[v] = usize::MAX;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p3() -> Graph {
        Graph::path(3).unwrap()
    }

    #[test]
    fn families() {
        let prism = Graph::complete(3)
            .unwrap()
            .cartesian_product(&Graph::path(2).unwrap())
            .unwrap();
        assert_eq!((prism.n(), prism.edge_count()), (6, 9));
        let m = Graph::matching(3).unwrap();
        assert_eq!((m.n(), m.edge_count()), (6, 3));
        let u = p3().disjoint_union(&p3()).unwrap();
        assert_eq!((u.n(), u.edge_count()), (6, 4));
        assert!(Graph::cycle(2).is_err());
        assert!(Graph::path(0).is_err());
    }

    #[test]
    fn triangle_free() {
        assert!(Graph::cycle(5).unwrap().is_triangle_free());
        assert!(!Graph::complete(3).unwrap().is_triangle_free());
        let mut c4 = Graph::cycle(4).unwrap();
        c4.add_edge(0, 0).unwrap();
        assert!(c4.is_triangle_free());
    }

    #[test]
    fn degree_rules() {
        let mut g = Graph::empty(1).unwrap();
        g.add_edge(0, 0).unwrap();
        assert_eq!(
            g.degree_stats(),
            DegreeStats {
                min: 2,
                max: 2,
                edges: 1
            }
        );
        assert_eq!(
            p3().degree_stats(),
            DegreeStats {
                min: 1,
                max: 2,
                edges: 2
            }
        );
        let e = Graph::empty(4).unwrap();
        assert_eq!(
            e.degree_stats(),
            DegreeStats {
                min: 0,
                max: 0,
                edges: 0
            }
        );
    }

    #[test]
    fn p3_packings() {
        let mut g = p3();
        for _ in 0..3 {
            g = g.disjoint_union(&p3()).unwrap();
        }
        assert_eq!(g.disjoint_p3_packing(), 4);
        assert_eq!(Graph::matching(5).unwrap().disjoint_p3_packing(), 0);
        assert_eq!(Graph::path(6).unwrap().disjoint_p3_packing(), 2);
        // star K_{1,3}: only one P3 fits
        let mut star = Graph::empty(4).unwrap();
        for v in 1..4 {
            star.add_edge(0, v).unwrap();
        }
        assert_eq!(star.disjoint_p3_packing(), 1);
    }

    #[test]
    fn greedy_packing_is_valid() {
        let g = Graph::path(40).unwrap();
        let pk = g.p3_packing();
        assert!(!pk.exact);
        let mut used = 0u128;
        for p in &pk.paths {
            assert!(g.has_edge(p[0], p[1]) && g.has_edge(p[1], p[2]));
            for &v in p {
                assert_eq!(used & bit(v), 0);
                used |= bit(v);
            }
        }
        assert!(pk.paths.len() >= 10);
    }

    #[test]
    fn explicit_maps() {
        assert!(check_isomorphism_map(&p3(), &p3(), &[0, 1, 2]).unwrap());
        assert!(!check_isomorphism_map(&p3(), &p3(), &[1, 0, 2]).unwrap());
        let c4 = Graph::cycle(4).unwrap();
        assert!(check_isomorphism_map(&c4, &c4, &[1, 2, 3, 0]).unwrap());
        assert_eq!(
            check_isomorphism_map(&p3(), &p3(), &[0, 0, 2]),
            Err(Error::NotBijective)
        );
    }

    #[test]
    fn isomorphism_search() {
        assert!(are_isomorphic(&p3(), &p3()).unwrap());
        let two_k3 = Graph::complete(3)
            .unwrap()
            .disjoint_union(&Graph::complete(3).unwrap())
            .unwrap();
        assert!(!are_isomorphic(&Graph::cycle(6).unwrap(), &two_k3).unwrap());
        assert!(!are_isomorphic(&Graph::matching(2).unwrap(), &Graph::path(4).unwrap()).unwrap());
        // C6 relabelled
        let mut c = Graph::empty(6).unwrap();
        for (u, v) in [(0, 3), (3, 1), (1, 4), (4, 2), (2, 5), (5, 0)] {
            c.add_edge(u, v).unwrap();
        }
        let f = find_isomorphism(&Graph::cycle(6).unwrap(), &c).unwrap();
        assert!(check_isomorphism_map(&Graph::cycle(6).unwrap(), &c, &f).unwrap());
        assert!(are_isomorphic(&Graph::empty(65).unwrap(), &Graph::empty(65).unwrap()).is_err());
    }

    #[test]
    fn loops_matter_for_isomorphism() {
        let mut a = p3();
        a.add_edge(0, 0).unwrap();
        let mut b = p3();
        b.add_edge(1, 1).unwrap();
        assert!(!are_isomorphic(&a, &b).unwrap());
        let mut c = p3();
        c.add_edge(2, 2).unwrap();
        assert!(are_isomorphic(&a, &c).unwrap());
    }

    #[test]
    fn text_roundtrip() {
        let mut g = Graph::new(vec![5, 7, 9]).unwrap();
        g.add_edge(0, 2).unwrap();
        g.add_edge(1, 1).unwrap();
        let t = g.to_text();
        assert_eq!(t, "g 3\nv 0 5\nv 1 7\nv 2 9\ne 0 2\ne 1 1\n");
        assert_eq!(Graph::from_text(&t).unwrap(), g);
        assert!(Graph::from_text("g 2\nv 0 1\n").is_err());
        assert!(Graph::from_text("g 1\nv 0 1\ne 0 1\n").is_err());
        assert!(Graph::from_text("x 1\n").is_err());
    }

    #[test]
    fn maximal_independent_with_loops() {
        let mut g = p3();
        g.add_edge(0, 0).unwrap();
        assert!(g.is_maximal_independent(bit(1)));
        assert!(g.is_maximal_independent(bit(2)));
        assert!(!g.is_maximal_independent(bit(0) | bit(2)));
    }
}
