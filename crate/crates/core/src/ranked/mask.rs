use std::fmt;

/// Hard cap on the size of a ground set carrying full power-set maps.
pub const MAX_GROUND: usize = 24;

/// A subset of a ground set `{0, …, n-1}` as a bitmask.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SubsetMask(pub u32);

impl SubsetMask {
    pub const EMPTY: SubsetMask = SubsetMask(0);

    pub fn full(n: usize) -> Self {
        debug_assert!(n <= 32);
        if n == 32 {
            SubsetMask(u32::MAX)
        } else {
            SubsetMask((1u32 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> Self {
        SubsetMask(1 << i)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Self {
        SubsetMask(it.into_iter().fold(0, |m, i| m | (1 << i)))
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn is_subset_of(self, other: SubsetMask) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: SubsetMask) -> Self {
        SubsetMask(self.0 | other.0)
    }

    pub fn intersection(self, other: SubsetMask) -> Self {
        SubsetMask(self.0 & other.0)
    }

    pub fn difference(self, other: SubsetMask) -> Self {
        SubsetMask(self.0 & !other.0)
    }

    pub fn symmetric_difference(self, other: SubsetMask) -> Self {
        SubsetMask(self.0 ^ other.0)
    }

    pub fn with(self, i: usize) -> Self {
        SubsetMask(self.0 | 1 << i)
    }

    pub fn without(self, i: usize) -> Self {
        SubsetMask(self.0 & !(1 << i))
    }

    pub fn elements(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(i)
        })
    }

    /// All subsets of `self`, in increasing numeric order.
    pub fn subsets(self) -> impl Iterator<Item = SubsetMask> {
        let full = self.0;
        let mut next = Some(0u32);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == full { None } else { Some((cur.wrapping_sub(full)) & full) };
            Some(SubsetMask(cur))
        })
    }

    /// Packs the bits of `self` lying in `support` into the low positions.
    pub fn compress(self, support: SubsetMask) -> SubsetMask {
        let mut out = 0;
        for (k, i) in support.elements().enumerate() {
            if self.contains(i) {
                out |= 1 << k;
            }
        }
        SubsetMask(out)
    }

    /// Inverse of [`compress`](Self::compress).
    pub fn expand(self, support: SubsetMask) -> SubsetMask {
        let mut out = 0;
        for (k, i) in support.elements().enumerate() {
            if self.contains(k) {
                out |= 1 << i;
            }
        }
        SubsetMask(out)
    }
}

impl fmt::Debug for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.elements()).finish()
    }
}
