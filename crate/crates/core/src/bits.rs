//! Small helpers for `u128` bitsets.

/// Bitset over at most 128 positions.
pub type Mask = u128;

#[inline(always)]
pub const fn bit(i: usize) -> Mask {
    1u128 << i
}

/// Mask with the low `n` bits set.
#[inline]
pub const fn low_mask(n: usize) -> Mask {
    if n >= 128 {
        u128::MAX
    } else {
        (1u128 << n) - 1
    }
}

/// Mask with bits `lo..=hi` set; empty when `lo > hi`.
#[inline]
pub fn range_mask(lo: usize, hi: usize) -> Mask {
    if lo > hi || lo >= 128 {
        return 0;
    }
    low_mask(hi.min(127) + 1) & !low_mask(lo)
}

#[inline(always)]
pub fn count(m: Mask) -> usize {
    m.count_ones() as usize
}

/// Iterator over the set bit positions of a mask, in increasing order.
#[derive(Clone, Copy, Debug)]
pub struct Ones(Mask);

impl Iterator for Ones {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let c = count(self.0);
        (c, Some(c))
    }
}

impl ExactSizeIterator for Ones {}

#[inline]
pub fn ones(m: Mask) -> Ones {
    Ones(m)
}

/// Index of the lowest set bit.
#[inline(always)]
pub fn lowest(m: Mask) -> Option<usize> {
    (m != 0).then(|| m.trailing_zeros() as usize)
}

/// Lexicographic order of the sorted member sequences.
pub fn lex_cmp(a: Mask, b: Mask) -> std::cmp::Ordering {
    ones(a).cmp(ones(b))
}
