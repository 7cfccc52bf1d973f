//! Arithmetic on subsets of the interval `[n] = {1, …, n}`.
//!
//! Subsets are bitsets indexed by value: bit `v` is set iff `v` is a member.
//! Bit 0 is never set.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bits::{self, bit, range_mask, Mask};
use crate::{Error, Result};

/// Largest supported ground set size.
pub const MAX_N: u32 = 127;

/// The interval `[n]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroundSet {
    n: u32,
}

impl GroundSet {
    pub fn new(n: u32) -> Result<Self> {
        if n == 0 || n > MAX_N {
            return Err(Error::GroundSize(n));
        }
        Ok(GroundSet { n })
    }

    pub fn n(self) -> u32 {
        self.n
    }

    /// Mask of all of `[n]`.
    pub fn full_mask(self) -> Mask {
        range_mask(1, self.n as usize)
    }
}

/// A subset of `[n]`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct IntSubset {
    ground: GroundSet,
    bits: Mask,
}

/// Order statistics of a subset.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SetStats {
    pub min: Option<u32>,
    pub min2: Option<u32>,
    pub max: Option<u32>,
    pub even_count: usize,
    pub size: usize,
}

impl IntSubset {
    pub fn empty(ground: GroundSet) -> Self {
        IntSubset { ground, bits: 0 }
    }

    pub fn full(ground: GroundSet) -> Self {
        IntSubset {
            ground,
            bits: ground.full_mask(),
        }
    }

    pub fn from_elems<I: IntoIterator<Item = u32>>(ground: GroundSet, elems: I) -> Result<Self> {
        let mut s = Self::empty(ground);
        for e in elems {
            s.insert(e)?;
        }
        Ok(s)
    }

    /// Builds a subset from a raw value-indexed mask.
    pub fn from_mask(ground: GroundSet, bits: Mask) -> Result<Self> {
        let outside = bits & !ground.full_mask();
        if let Some(elem) = bits::lowest(outside) {
            return Err(Error::OutOfGround {
                elem: elem as u32,
                n: ground.n,
            });
        }
        Ok(IntSubset { ground, bits })
    }

    /// `{lo, …, hi} ∩ [n]`.
    pub fn interval(ground: GroundSet, lo: u32, hi: u32) -> Self {
        let lo = lo.max(1) as usize;
        let hi = hi.min(ground.n) as usize;
        IntSubset {
            ground,
            bits: range_mask(lo, hi),
        }
    }

    /// The odd members `O` of `[n]`.
    pub fn odds(ground: GroundSet) -> Self {
        let odd = 0xAAAA_AAAA_AAAA_AAAA_AAAA_AAAA_AAAA_AAAAu128;
        IntSubset {
            ground,
            bits: odd & ground.full_mask(),
        }
    }

    /// The even members `E` of `[n]`.
    pub fn evens(ground: GroundSet) -> Self {
        let even = 0x5555_5555_5555_5555_5555_5555_5555_5554u128;
        IntSubset {
            ground,
            bits: even & ground.full_mask(),
        }
    }

    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    pub fn n(&self) -> u32 {
        self.ground.n
    }

    pub fn mask(&self) -> Mask {
        self.bits
    }

    pub fn insert(&mut self, e: u32) -> Result<()> {
        if e == 0 || e > self.ground.n {
            return Err(Error::OutOfGround {
                elem: e,
                n: self.ground.n,
            });
        }
        self.bits |= bit(e as usize);
        Ok(())
    }

    pub fn remove(&mut self, e: u32) {
        if e <= MAX_N {
            self.bits &= !bit(e as usize);
        }
    }

    pub fn with(mut self, e: u32) -> Result<Self> {
        self.insert(e)?;
        Ok(self)
    }

    pub fn contains(&self, e: u32) -> bool {
        e != 0 && e <= self.ground.n && self.bits & bit(e as usize) != 0
    }

    pub fn len(&self) -> usize {
        bits::count(self.bits)
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        bits::ones(self.bits).map(|i| i as u32)
    }

    pub fn to_vec(&self) -> Vec<u32> {
        self.iter().collect()
    }

    pub fn union(&self, other: &IntSubset) -> IntSubset {
        IntSubset {
            ground: self.ground,
            bits: self.bits | other.bits,
        }
    }

    pub fn intersection(&self, other: &IntSubset) -> IntSubset {
        IntSubset {
            ground: self.ground,
            bits: self.bits & other.bits,
        }
    }

    pub fn difference(&self, other: &IntSubset) -> IntSubset {
        IntSubset {
            ground: self.ground,
            bits: self.bits & !other.bits,
        }
    }

    pub fn is_subset(&self, other: &IntSubset) -> bool {
        self.bits & !other.bits == 0
    }

    pub fn min(&self) -> Option<u32> {
        bits::lowest(self.bits).map(|i| i as u32)
    }

    pub fn max(&self) -> Option<u32> {
        (self.bits != 0).then(|| 127 - self.bits.leading_zeros())
    }

    /// Second smallest element.
    pub fn min2(&self) -> Option<u32> {
        let rest = self.bits & self.bits.wrapping_sub(1);
        bits::lowest(rest).map(|i| i as u32)
    }

    pub fn stats(&self) -> SetStats {
        SetStats {
            min: self.min(),
            min2: self.min2(),
            max: self.max(),
            even_count: self.iter().filter(|e| e % 2 == 0).count(),
            size: self.len(),
        }
    }
}

impl fmt::Debug for IntSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}⊆[{}]", self.ground.n)
    }
}

impl PartialOrd for IntSubset {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic order on the sorted element sequences.
impl Ord for IntSubset {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.ground
            .n
            .cmp(&other.ground.n)
            .then_with(|| self.iter().cmp(other.iter()))
    }
}

impl Serialize for IntSubset {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(self.len()))?;
        for e in self.iter() {
            seq.serialize_element(&e)?;
        }
        seq.end()
    }
}

/// `x + y = z`, with `x = y` allowed.
pub fn is_schur_triple(x: u32, y: u32, z: u32) -> bool {
    x as u64 + y as u64 == z as u64
}

/// Whether some ordering of `{a, b, c}` is a Schur triple.
pub fn unordered_schur(a: u32, b: u32, c: u32) -> bool {
    is_schur_triple(a, b, c) || is_schur_triple(a, c, b) || is_schur_triple(b, c, a)
}

/// `S + S` as a value-indexed mask, truncated to 127.
pub(crate) fn double_mask(s: Mask) -> Mask {
    bits::ones(s).fold(0, |acc, x| acc | (s << x))
}

/// Positive differences `{b - a : a < b ∈ S}`.
pub(crate) fn diff_mask(s: Mask) -> Mask {
    bits::ones(s).fold(0, |acc, x| acc | (s >> x)) & !1
}

/// `{x : 2x ∈ S}`.
pub(crate) fn half_mask(s: Mask) -> Mask {
    bits::ones(s)
        .filter(|v| v % 2 == 0)
        .fold(0, |acc, v| acc | bit(v / 2))
}

pub(crate) fn mask_is_sum_free(s: Mask) -> bool {
    bits::ones(s).all(|x| (s << x) & s == 0)
}

pub fn is_sum_free(s: &IntSubset) -> bool {
    mask_is_sum_free(s.bits)
}

/// Values outside `s` that can be added to `s` keeping it sum-free.
pub(crate) fn addable_mask(s: Mask, full: Mask) -> Mask {
    full & !s & !(double_mask(s) | diff_mask(s) | half_mask(s))
}

/// `{x ∈ [n] \ S : S ∪ {x} is sum-free}`.
pub fn addable_elements(s: &IntSubset) -> Result<IntSubset> {
    if !is_sum_free(s) {
        return Err(Error::NotSumFree);
    }
    Ok(IntSubset {
        ground: s.ground,
        bits: addable_mask(s.bits, s.ground.full_mask()),
    })
}

pub fn is_maximal_sum_free(s: &IntSubset) -> bool {
    is_sum_free(s) && addable_mask(s.bits, s.ground.full_mask()) == 0
}

/// Number of triples `(x, y, z)` in `F` with `x ≤ y` and `x + y = z`.
pub fn schur_triple_count(f: &IntSubset) -> u64 {
    let mut count = 0;
    for x in f.iter() {
        for y in f.iter().filter(|&y| y >= x) {
            if f.contains(x + y) {
                count += 1;
            }
        }
    }
    count
}

/// `A + B`, not truncated to the ground set.
pub fn sumset(a: &IntSubset, b: &IntSubset) -> BTreeSet<u32> {
    a.iter()
        .flat_map(|x| b.iter().map(move |y| x + y))
        .collect()
}
