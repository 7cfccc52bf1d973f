//! Link graphs `L_S[B]`.
//!
//! Vertices are the elements of `B`. Distinct `x, y ∈ B` are adjacent when
//! `{x, y, z}` is a Schur triple for some `z ∈ S` (in some order, `z` may
//! coincide with `x` or `y`). There is a loop at `x` when `{x, x, z}` or
//! `{x, z, z'}` is a Schur triple for some `z, z' ∈ S`.
//!
//! Integer link graphs are labelled by value, group link graphs by element
//! index. Vertices appear in increasing label order.

use crate::abelian::{AbelianGroup, GroupSubset};
use crate::bits::{self, bit, range_mask, Mask};
use crate::graph::Graph;
use crate::setcore::{diff_mask, double_mask, half_mask, GroundSet, IntSubset};
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub enum LinkSpec {
    Int { s: IntSubset, b: IntSubset },
    Group { s: GroupSubset, b: GroupSubset },
}

pub fn link_graph(spec: &LinkSpec) -> Result<Graph> {
    match spec {
        LinkSpec::Int { s, b } => link_graph_int(s, b),
        LinkSpec::Group { s, b } => link_graph_group(s, b),
    }
}

/// `L_S[B]` for `S, B ⊆ [n]`, given as value-indexed masks.
pub(crate) fn link_graph_masks(s: Mask, b: Mask) -> Result<Graph> {
    let verts: Vec<usize> = bits::ones(b).collect();
    let mut g = Graph::new(verts.iter().map(|&v| v as i64).collect())?;
    // loop at x: 2x ∈ S, x ∈ S + S, or x + z = z'
    let looped = (half_mask(s) | double_mask(s) | diff_mask(s)) & b;
    for (i, &x) in verts.iter().enumerate() {
        if looped & bit(x) != 0 {
            g.add_edge(i, i)?;
        }
        for (j, &y) in verts.iter().enumerate().skip(i + 1) {
            // x < y: either x + y ∈ S or y − x ∈ S
            let sum_in = x + y < 128 && s & bit(x + y) != 0;
            if sum_in || s & bit(y - x) != 0 {
                g.add_edge(i, j)?;
            }
        }
    }
    Ok(g)
}

pub fn link_graph_int(s: &IntSubset, b: &IntSubset) -> Result<Graph> {
    if s.ground() != b.ground() {
        return Err(Error::Precondition(format!(
            "S and B live in different ground sets [{}] and [{}]",
            s.n(),
            b.n()
        )));
    }
    link_graph_masks(s.mask(), b.mask())
}

pub fn link_graph_group(s: &GroupSubset, b: &GroupSubset) -> Result<Graph> {
    let g = s.group();
    if g != b.group() {
        return Err(Error::GroupMismatch);
    }
    let sm = s.mask();
    let verts: Vec<usize> = b.indices().collect();
    let mut out = Graph::new(verts.iter().map(|&v| v as i64).collect())?;
    let in_s = |i: usize| sm & bit(i) != 0;
    let s_elems: Vec<usize> = s.indices().collect();
    for (i, &x) in verts.iter().enumerate() {
        let looped = in_s(g.add_idx(x, x))
            || in_s(0)
            || s_elems.iter().any(|&z| {
                // z + z' = x, or x + z = z'
                in_s(g.add_idx(x, g.neg_idx(z))) || in_s(g.add_idx(x, z))
            });
        if looped {
            out.add_edge(i, i)?;
        }
        for (j, &y) in verts.iter().enumerate().skip(i + 1) {
            let adjacent = in_s(g.add_idx(x, y))
                || in_s(g.add_idx(y, g.neg_idx(x)))
                || in_s(g.add_idx(x, g.neg_idx(y)));
            if adjacent {
                out.add_edge(i, j)?;
            }
        }
    }
    Ok(out)
}

/// `L(n, m, S)`: the link graph of `S ∪ {m}` on `[⌊n/2⌋ + 1, n]`.
pub fn link_family(n: u32, m: u32, s: &IntSubset) -> Result<Graph> {
    let half_n = n / 2;
    if m == 0 || m > half_n {
        return Err(Error::Precondition(format!(
            "m = {m} must lie in [1, {half_n}]"
        )));
    }
    if s.n() != n {
        return Err(Error::Precondition(format!(
            "S lives in [{}], expected [{n}]",
            s.n()
        )));
    }
    if s.max().is_some_and(|x| x > half_n) {
        return Err(Error::Precondition(format!("S must lie in [1, {half_n}]")));
    }
    let ground = GroundSet::new(n)?;
    link_graph_masks(
        s.mask() | bit(m as usize),
        ground.full_mask() & range_mask(half_n as usize + 1, n as usize),
    )
}

fn odds_mask(n: u32) -> Result<Mask> {
    Ok(IntSubset::odds(GroundSet::new(n)?).mask())
}

fn check_even(n: u32, x: u32) -> Result<()> {
    if x == 0 || x > n || !x.is_multiple_of(2) {
        return Err(Error::Precondition(format!(
            "{x} is not an even member of [{n}]"
        )));
    }
    Ok(())
}

/// `L_x[O]` for even `x ∈ [n]`, `O` the odd members of `[n]`.
pub fn link_single_even(n: u32, x: u32) -> Result<Graph> {
    check_even(n, x)?;
    link_graph_masks(bit(x as usize), odds_mask(n)?)
}

/// `L_{x, x'}[O]` for distinct even `x, x' ∈ [n]`.
pub fn link_pair_even(n: u32, x: u32, x2: u32) -> Result<Graph> {
    check_even(n, x)?;
    check_even(n, x2)?;
    if x == x2 {
        return Err(Error::Precondition(format!(
            "even elements must differ, got {x} twice"
        )));
    }
    link_graph_masks(bit(x as usize) | bit(x2 as usize), odds_mask(n)?)
}

/// `L_{{x}}[B]` in a group, for convenience of the group constructions.
pub fn link_of_elem(g: &AbelianGroup, x: usize, b: Mask) -> Result<Graph> {
    link_graph_group(
        &GroupSubset::from_mask(g, bit(x))?,
        &GroupSubset::from_mask(g, b)?,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::GroupElem;

    fn set(n: u32, e: &[u32]) -> IntSubset {
        IntSubset::from_elems(GroundSet::new(n).unwrap(), e.iter().copied()).unwrap()
    }

    fn edges(g: &Graph) -> Vec<(i64, i64)> {
        let mut out = Vec::new();
        for u in 0..g.n() {
            if g.has_loop(u) {
                out.push((g.label(u), g.label(u)));
            }
            for v in bits::ones(g.neighbors(u)).filter(|&v| v > u) {
                out.push((g.label(u), g.label(v)));
            }
        }
        out
    }

    #[test]
    fn integer_rules() {
        let g = link_graph_int(&set(7, &[2]), &set(7, &[5, 7])).unwrap();
        assert_eq!(edges(&g), vec![(5, 7)]);
        let g = link_graph_int(&set(8, &[2]), &set(8, &[5, 6, 7, 8])).unwrap();
        assert_eq!(edges(&g), vec![(5, 7), (6, 8)]);
        let g = link_single_even(8, 2).unwrap();
        assert_eq!(edges(&g), vec![(1, 1), (1, 3), (3, 5), (5, 7)]);
    }

    #[test]
    fn family_examples() {
        let g = link_family(16, 4, &set(16, &[])).unwrap();
        assert_eq!(edges(&g), vec![(9, 13), (10, 14), (11, 15), (12, 16)]);
        let g = link_family(16, 4, &set(16, &[8])).unwrap();
        let loops: Vec<i64> = bits::ones(g.loops()).map(|v| g.label(v)).collect();
        assert_eq!(loops, vec![12, 16]);
        assert!(link_family(16, 9, &set(16, &[])).is_err());
        assert!(link_family(16, 4, &set(16, &[9])).is_err());
    }

    #[test]
    fn even_preconditions() {
        assert!(link_single_even(10, 3).is_err());
        assert!(link_single_even(10, 12).is_err());
        assert!(link_pair_even(10, 4, 4).is_err());
        assert!(link_pair_even(10, 4, 6).is_ok());
    }

    #[test]
    fn group_matching() {
        let g = AbelianGroup::power(2, 2).unwrap();
        let x = g.index_of(&GroupElem::new(vec![0, 1])).unwrap();
        let u: Mask = g
            .elements()
            .enumerate()
            .filter(|(_, e)| e.coords[0] == 1)
            .fold(0, |acc, (i, _)| acc | bit(i));
        let l = link_of_elem(&g, x, u).unwrap();
        assert_eq!((l.n(), l.edge_count(), l.loops()), (2, 1, 0));
    }

    #[test]
    fn group_loops() {
        // in Z_5 with S = {1}: loop at x iff 2x = 1 (x = 3) or x = 1 + 1 or x + 1 = 1
        let g = AbelianGroup::cyclic(5).unwrap();
        let l = link_of_elem(&g, 1, g.full_mask()).unwrap();
        let loops: Vec<i64> = bits::ones(l.loops()).map(|v| l.label(v)).collect();
        assert_eq!(loops, vec![0, 2, 3]);
    }
}
