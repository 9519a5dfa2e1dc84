//! Subsets of the generating set, stored as bitmasks.

use std::fmt;

/// Index of a simple generator (position in the system's generator list).
pub type Gen = usize;

/// Maximum supported rank.
pub const MAX_RANK: usize = 64;

/// A subset of the simple generators of a Coxeter system.
///
/// Stored as a 64-bit mask; iteration is always in ascending generator order,
/// which is the canonical order used for every tie-break in the crate.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct GenSubset(u64);

impl GenSubset {
    /// The empty subset.
    pub const EMPTY: GenSubset = GenSubset(0);

    /// Builds a subset from a raw bitmask.
    pub const fn from_bits(bits: u64) -> Self {
        GenSubset(bits)
    }

    /// The raw bitmask.
    pub const fn bits(self) -> u64 {
        self.0
    }

    /// `{0, 1, ..., n-1}`.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_RANK, "rank {n} exceeds {MAX_RANK}");
        if n == MAX_RANK {
            GenSubset(u64::MAX)
        } else {
            GenSubset((1u64 << n) - 1)
        }
    }

    /// The subset `{g}`.
    pub fn singleton(g: Gen) -> Self {
        assert!(g < MAX_RANK, "generator index {g} out of range");
        GenSubset(1u64 << g)
    }

    /// Builds a subset from generator indices.
    pub fn from_gens<I: IntoIterator<Item = Gen>>(gens: I) -> Self {
        gens.into_iter().fold(Self::EMPTY, |acc, g| acc.with(g))
    }

    /// Membership test.
    pub fn contains(self, g: Gen) -> bool {
        g < MAX_RANK && (self.0 >> g) & 1 == 1
    }

    /// `self ∪ {g}`.
    pub fn with(self, g: Gen) -> Self {
        self | Self::singleton(g)
    }

    /// `self ∖ {g}`.
    pub fn without(self, g: Gen) -> Self {
        GenSubset(self.0 & !(1u64 << g))
    }

    /// Union.
    pub fn union(self, other: Self) -> Self {
        GenSubset(self.0 | other.0)
    }

    /// Intersection.
    pub fn intersection(self, other: Self) -> Self {
        GenSubset(self.0 & other.0)
    }

    /// Set difference `self ∖ other`.
    pub fn difference(self, other: Self) -> Self {
        GenSubset(self.0 & !other.0)
    }

    /// `self ⊆ other`.
    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    /// Cardinality.
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Whether the subset is empty.
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Smallest generator in the subset.
    pub fn first(self) -> Option<Gen> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as Gen)
        }
    }

    /// Generators in ascending order.
    pub fn iter(self) -> impl Iterator<Item = Gen> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let g = bits.trailing_zeros() as Gen;
                bits &= bits - 1;
                Some(g)
            }
        })
    }

    /// All subsets of `self`, in increasing order of bitmask.
    pub fn subsets(self) -> impl Iterator<Item = GenSubset> {
        let full = self.0;
        let mut cur: Option<u64> = Some(0);
        std::iter::from_fn(move || {
            let c = cur?;
            cur = if c == full { None } else { Some(((c | !full).wrapping_add(1)) & full) };
            Some(GenSubset(c))
        })
    }
}

impl std::ops::BitOr for GenSubset {
    type Output = GenSubset;
    fn bitor(self, rhs: Self) -> Self {
        self.union(rhs)
    }
}

impl std::ops::BitAnd for GenSubset {
    type Output = GenSubset;
    fn bitand(self, rhs: Self) -> Self {
        self.intersection(rhs)
    }
}

impl fmt::Debug for GenSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<Gen> for GenSubset {
    fn from_iter<I: IntoIterator<Item = Gen>>(iter: I) -> Self {
        Self::from_gens(iter)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subset_enumeration_is_complete() {
        let s = GenSubset::from_gens([0, 2, 5]);
        let all: Vec<_> = s.subsets().collect();
        assert_eq!(all.len(), 8);
        assert!(all.iter().all(|x| x.is_subset(s)));
        assert_eq!(GenSubset::EMPTY.subsets().count(), 1);
    }

    #[test]
    fn basic_set_algebra() {
        let a = GenSubset::from_gens([0, 1]);
        let b = GenSubset::from_gens([1, 2]);
        assert_eq!(a.union(b).iter().collect::<Vec<_>>(), vec![0, 1, 2]);
        assert_eq!(a.intersection(b), GenSubset::singleton(1));
        assert_eq!(a.difference(b), GenSubset::singleton(0));
        assert!(GenSubset::EMPTY.is_subset(a));
        assert_eq!(GenSubset::full(3).len(), 3);
    }
}
