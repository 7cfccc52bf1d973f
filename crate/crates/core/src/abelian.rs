//! Finite abelian groups `Z_{n_1} × … × Z_{n_k}`.
//!
//! Elements are residue vectors; internally they are addressed by a
//! mixed-radix index (first coordinate most significant) so that subsets can
//! be stored as bitsets.

use std::fmt;

use serde::Serialize;

use crate::bits::{self, bit, Mask};
use crate::enumerate::SchurSystem;
use crate::{Count, Error, Result};

/// Largest group order for which subsets can be represented.
pub const MAX_ORDER: u64 = 128;

/// Largest group order accepted by the exhaustive searches (`mu`, `f`, `f_max`).
pub const SEARCH_LIMIT: u64 = 64;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct AbelianGroup {
    factors: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GroupElem {
    pub coords: Vec<u32>,
}

impl GroupElem {
    pub fn new(coords: Vec<u32>) -> Self {
        GroupElem { coords }
    }
}

impl fmt::Display for GroupElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl AbelianGroup {
    pub fn new(factors: Vec<u32>) -> Result<Self> {
        if factors.is_empty() || factors.iter().any(|&f| f < 2) {
            return Err(Error::GroupDescriptor(format!("{factors:?}")));
        }
        let order = factors.iter().try_fold(1u64, |acc, &f| {
            acc.checked_mul(f as u64).filter(|&o| o <= MAX_ORDER)
        });
        match order {
            Some(_) => Ok(AbelianGroup { factors }),
            None => Err(Error::Limit {
                what: "group order",
                value: factors.iter().map(|&f| f as u128).product(),
                limit: MAX_ORDER as u128,
            }),
        }
    }

    pub fn cyclic(n: u32) -> Result<Self> {
        Self::new(vec![n])
    }

    /// `Z_p^k`.
    pub fn power(p: u32, k: usize) -> Result<Self> {
        Self::new(vec![p; k])
    }

    /// Parses descriptors such as `Z4xZ2xZ2` (also accepts `×` and lowercase `z`).
    pub fn parse(desc: &str) -> Result<Self> {
        let bad = || Error::GroupDescriptor(desc.to_string());
        let factors = desc
            .trim()
            .split(['x', 'X', '×'])
            .map(|part| {
                let part = part.trim();
                let digits = part
                    .strip_prefix('Z')
                    .or_else(|| part.strip_prefix('z'))
                    .ok_or_else(bad)?;
                digits.parse::<u32>().map_err(|_| bad())
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(factors).map_err(|e| match e {
            Error::GroupDescriptor(_) => bad(),
            other => other,
        })
    }

    pub fn descriptor(&self) -> String {
        self.factors
            .iter()
            .map(|f| format!("Z{f}"))
            .collect::<Vec<_>>()
            .join("x")
    }

    pub fn factors(&self) -> &[u32] {
        &self.factors
    }

    pub fn order(&self) -> u64 {
        self.factors.iter().map(|&f| f as u64).product()
    }

    pub fn exponent(&self) -> u64 {
        self.factors
            .iter()
            .fold(1u64, |acc, &f| acc / gcd(acc, f as u64) * f as u64)
    }

    pub fn zero(&self) -> GroupElem {
        GroupElem::new(vec![0; self.factors.len()])
    }

    fn check(&self, g: &GroupElem) -> Result<()> {
        if g.coords.len() != self.factors.len()
            || g.coords.iter().zip(&self.factors).any(|(c, f)| c >= f)
        {
            return Err(Error::GroupMismatch);
        }
        Ok(())
    }

    pub fn add(&self, g: &GroupElem, h: &GroupElem) -> Result<GroupElem> {
        self.check(g)?;
        self.check(h)?;
        Ok(GroupElem::new(
            g.coords
                .iter()
                .zip(&h.coords)
                .zip(&self.factors)
                .map(|((a, b), f)| (a + b) % f)
                .collect(),
        ))
    }

    pub fn neg(&self, g: &GroupElem) -> Result<GroupElem> {
        self.check(g)?;
        Ok(GroupElem::new(
            g.coords
                .iter()
                .zip(&self.factors)
                .map(|(a, f)| (f - a) % f)
                .collect(),
        ))
    }

    pub fn sub(&self, g: &GroupElem, h: &GroupElem) -> Result<GroupElem> {
        self.add(g, &self.neg(h)?)
    }

    pub fn index_of(&self, g: &GroupElem) -> Result<usize> {
        self.check(g)?;
        Ok(g.coords
            .iter()
            .zip(&self.factors)
            .fold(0usize, |acc, (c, f)| acc * *f as usize + *c as usize))
    }

    pub fn elem(&self, mut index: usize) -> GroupElem {
        let mut coords = vec![0; self.factors.len()];
        for (c, f) in coords.iter_mut().zip(&self.factors).rev() {
            *c = (index % *f as usize) as u32;
            index /= *f as usize;
        }
        GroupElem::new(coords)
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElem> + '_ {
        (0..self.order() as usize).map(|i| self.elem(i))
    }

    /// Addition on element indices.
    pub fn add_idx(&self, a: usize, b: usize) -> usize {
        let mut out = 0usize;
        let mut scale = 1usize;
        let (mut a, mut b) = (a, b);
        for &f in self.factors.iter().rev() {
            let f = f as usize;
            out += ((a % f + b % f) % f) * scale;
            scale *= f;
            a /= f;
            b /= f;
        }
        out
    }

    pub fn neg_idx(&self, a: usize) -> usize {
        let mut out = 0usize;
        let mut scale = 1usize;
        let mut a = a;
        for &f in self.factors.iter().rev() {
            let f = f as usize;
            out += ((f - a % f) % f) * scale;
            scale *= f;
            a /= f;
        }
        out
    }

    /// The unique `y` with `y + y = x`; defined for odd-order groups only.
    pub fn unique_half(&self, x: &GroupElem) -> Result<GroupElem> {
        self.check(x)?;
        if self.order().is_multiple_of(2) {
            return Err(Error::EvenOrder(self.order()));
        }
        // each factor is odd, so 2 is invertible with inverse (f + 1) / 2
        Ok(GroupElem::new(
            x.coords
                .iter()
                .zip(&self.factors)
                .map(|(&a, &f)| ((a as u64 * (f as u64).div_ceil(2)) % f as u64) as u32)
                .collect(),
        ))
    }

    pub fn full_mask(&self) -> Mask {
        bits::low_mask(self.order() as usize)
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.descriptor())
    }
}

/// A subset of a group, stored by element index.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupSubset {
    group: AbelianGroup,
    bits: Mask,
}

impl GroupSubset {
    pub fn empty(group: &AbelianGroup) -> Self {
        GroupSubset {
            group: group.clone(),
            bits: 0,
        }
    }

    pub fn full(group: &AbelianGroup) -> Self {
        GroupSubset {
            group: group.clone(),
            bits: group.full_mask(),
        }
    }

    pub fn from_elems<'a, I>(group: &AbelianGroup, elems: I) -> Result<Self>
    where
        I: IntoIterator<Item = &'a GroupElem>,
    {
        let mut bits = 0;
        for e in elems {
            bits |= bit(group.index_of(e)?);
        }
        Ok(GroupSubset {
            group: group.clone(),
            bits,
        })
    }

    pub fn from_mask(group: &AbelianGroup, bits: Mask) -> Result<Self> {
        if bits & !group.full_mask() != 0 {
            return Err(Error::GroupMismatch);
        }
        Ok(GroupSubset {
            group: group.clone(),
            bits,
        })
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn mask(&self) -> Mask {
        self.bits
    }

    pub fn len(&self) -> usize {
        bits::count(self.bits)
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn contains(&self, g: &GroupElem) -> bool {
        self.group
            .index_of(g)
            .map(|i| self.bits & bit(i) != 0)
            .unwrap_or(false)
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> {
        bits::ones(self.bits)
    }

    pub fn elems(&self) -> Vec<GroupElem> {
        self.indices().map(|i| self.group.elem(i)).collect()
    }

    pub fn insert(&mut self, g: &GroupElem) -> Result<()> {
        self.bits |= bit(self.group.index_of(g)?);
        Ok(())
    }
}

/// No `x, y, z ∈ S` (with `x = y` allowed) satisfy `x + y = z`.
pub fn is_sum_free_group(s: &GroupSubset) -> bool {
    let g = &s.group;
    s.indices()
        .all(|a| s.indices().all(|b| s.bits & bit(g.add_idx(a, b)) == 0))
}

fn check_search_size(g: &AbelianGroup) -> Result<()> {
    if g.order() > SEARCH_LIMIT {
        return Err(Error::Limit {
            what: "group order for exhaustive search",
            value: g.order() as u128,
            limit: SEARCH_LIMIT as u128,
        });
    }
    Ok(())
}

/// Size of the largest sum-free subset, by exhaustive branch and bound.
pub fn mu(g: &AbelianGroup) -> Result<usize> {
    check_search_size(g)?;
    Ok(SchurSystem::group(g).max_sum_free_size())
}

/// Number of sum-free subsets of `G`.
pub fn f_group(g: &AbelianGroup) -> Result<Count> {
    check_search_size(g)?;
    Ok(SchurSystem::group(g).count_sum_free(false))
}

/// Number of maximal sum-free subsets of `G`.
pub fn f_max_group(g: &AbelianGroup) -> Result<Count> {
    check_search_size(g)?;
    Ok(SchurSystem::group(g).count_maximal(false))
}

/// All maximal sum-free subsets of `G`, ordered by their sorted index lists.
pub fn maximal_sum_free_group(g: &AbelianGroup) -> Result<Vec<GroupSubset>> {
    check_search_size(g)?;
    let sets = SchurSystem::group(g).maximal_sets(false);
    Ok(sets
        .into_iter()
        .map(|bits| GroupSubset {
            group: g.clone(),
            bits,
        })
        .collect())
}

/// The surjection `G → Z_r`, `g ↦ g[factor] mod r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CosetProjection {
    pub factor: usize,
    pub r: u32,
}

impl CosetProjection {
    /// Coset label `j` such that `g ∈ j + H`.
    pub fn class_of(&self, g: &GroupElem) -> u32 {
        g.coords[self.factor] % self.r
    }
}

#[derive(Clone, Debug)]
pub struct CosetPartition {
    pub projection: CosetProjection,
    /// `cosets[j] = j + H` where `H` is the kernel of the projection.
    pub cosets: Vec<GroupSubset>,
}

/// Cosets `0 + H, …, (r−1) + H` of an index-`r` subgroup `H`, taken as the
/// kernel of the first coordinate projection whose order is divisible by `r`.
pub fn coset_partition(g: &AbelianGroup, r: u32) -> Result<CosetPartition> {
    if r < 2 {
        return Err(Error::NoIndexSubgroup(r));
    }
    let factor = g
        .factors
        .iter()
        .position(|&f| f % r == 0)
        .ok_or(Error::NoIndexSubgroup(r))?;
    let projection = CosetProjection { factor, r };
    let mut masks = vec![0 as Mask; r as usize];
    for (i, e) in g.elements().enumerate() {
        masks[projection.class_of(&e) as usize] |= bit(i);
    }
    Ok(CosetPartition {
        projection,
        cosets: masks
            .into_iter()
            .map(|bits| GroupSubset {
                group: g.clone(),
                bits,
            })
            .collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(c: &[u32]) -> GroupElem {
        GroupElem::new(c.to_vec())
    }

    #[test]
    fn arithmetic() {
        let z5 = AbelianGroup::cyclic(5).unwrap();
        assert_eq!(z5.add(&e(&[3]), &e(&[4])).unwrap(), e(&[2]));
        let k4 = AbelianGroup::power(2, 2).unwrap();
        assert_eq!(k4.add(&e(&[1, 0]), &e(&[1, 1])).unwrap(), e(&[0, 1]));
        let z7 = AbelianGroup::cyclic(7).unwrap();
        assert_eq!(z7.neg(&e(&[3])).unwrap(), e(&[4]));
        assert_eq!(z7.add(&e(&[3]), &e(&[1, 0])), Err(Error::GroupMismatch));
        assert_eq!(z7.neg(&e(&[7])), Err(Error::GroupMismatch));
    }

    #[test]
    fn index_roundtrip_and_table() {
        let g = AbelianGroup::parse("Z4xZ3xZ2").unwrap();
        for (i, x) in g.elements().enumerate() {
            assert_eq!(g.index_of(&x).unwrap(), i);
            assert_eq!(g.neg_idx(i), g.index_of(&g.neg(&x).unwrap()).unwrap());
            for (j, y) in g.elements().enumerate() {
                let s = g.add(&x, &y).unwrap();
                assert_eq!(g.add_idx(i, j), g.index_of(&s).unwrap());
            }
        }
    }

    #[test]
    fn parse_descriptors() {
        assert_eq!(
            AbelianGroup::parse("Z4xZ2xZ2").unwrap().factors(),
            &[4, 2, 2]
        );
        assert_eq!(AbelianGroup::parse("z7×z7").unwrap().order(), 49);
        assert!(AbelianGroup::parse("Z1").is_err());
        assert!(AbelianGroup::parse("Q8").is_err());
        assert!(AbelianGroup::parse("Z64xZ4").is_err());
        assert_eq!(AbelianGroup::parse("Z6xZ4").unwrap().exponent(), 12);
        assert_eq!(AbelianGroup::parse("Z6xZ4").unwrap().descriptor(), "Z6xZ4");
    }

    #[test]
    fn sum_free_in_groups() {
        let k4 = AbelianGroup::power(2, 2).unwrap();
        let s = GroupSubset::from_elems(&k4, &[e(&[0, 1]), e(&[1, 0])]).unwrap();
        assert!(is_sum_free_group(&s));
        let z5 = AbelianGroup::cyclic(5).unwrap();
        let s = GroupSubset::from_elems(&z5, &[e(&[1]), e(&[4])]).unwrap();
        assert!(is_sum_free_group(&s));
        let s = GroupSubset::from_elems(&z5, &[z5.zero()]).unwrap();
        assert!(!is_sum_free_group(&s));
    }

    #[test]
    fn mu_small() {
        assert_eq!(mu(&AbelianGroup::power(2, 3).unwrap()).unwrap(), 4);
        assert_eq!(mu(&AbelianGroup::cyclic(5).unwrap()).unwrap(), 2);
        assert_eq!(mu(&AbelianGroup::cyclic(2).unwrap()).unwrap(), 1);
        assert!(mu(&AbelianGroup::parse("Z9xZ9").unwrap()).is_err());
    }

    #[test]
    fn halving() {
        let z5 = AbelianGroup::cyclic(5).unwrap();
        assert_eq!(z5.unique_half(&e(&[1])).unwrap(), e(&[3]));
        let z9 = AbelianGroup::cyclic(9).unwrap();
        assert_eq!(z9.unique_half(&e(&[0])).unwrap(), e(&[0]));
        let z4 = AbelianGroup::cyclic(4).unwrap();
        assert_eq!(z4.unique_half(&e(&[2])), Err(Error::EvenOrder(4)));
    }

    #[test]
    fn cosets() {
        let z9 = AbelianGroup::cyclic(9).unwrap();
        let p = coset_partition(&z9, 3).unwrap();
        let got: Vec<Vec<usize>> = p.cosets.iter().map(|c| c.indices().collect()).collect();
        assert_eq!(got, vec![vec![0, 3, 6], vec![1, 4, 7], vec![2, 5, 8]]);
        let z7 = AbelianGroup::cyclic(7).unwrap();
        assert!(coset_partition(&z7, 7)
            .unwrap()
            .cosets
            .iter()
            .all(|c| c.len() == 1));
        let z4 = AbelianGroup::cyclic(4).unwrap();
        assert_eq!(
            coset_partition(&z4, 3).unwrap_err(),
            Error::NoIndexSubgroup(3)
        );
    }

    #[test]
    fn counts_tiny() {
        let z2 = AbelianGroup::cyclic(2).unwrap();
        assert_eq!(f_group(&z2).unwrap(), 2);
        assert_eq!(f_max_group(&z2).unwrap(), 1);
    }
}
