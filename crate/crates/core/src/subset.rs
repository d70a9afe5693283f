//! Subsets of a finite carrier `{0, …, n−1}`.

use std::fmt;

use fixedbitset::FixedBitSet;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subset {
    bits: FixedBitSet,
}

impl Subset {
    pub fn empty(n: usize) -> Subset {
        Subset { bits: FixedBitSet::with_capacity(n) }
    }

    pub fn full(n: usize) -> Subset {
        let mut bits = FixedBitSet::with_capacity(n);
        bits.insert_range(..);
        Subset { bits }
    }

    pub fn from_members(n: usize, members: impl IntoIterator<Item = usize>) -> Subset {
        let mut s = Subset::empty(n);
        for m in members {
            s.insert(m);
        }
        s
    }

    pub fn universe(&self) -> usize {
        self.bits.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.bits.contains(x)
    }

    pub fn insert(&mut self, x: usize) {
        self.bits.insert(x);
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn is_full(&self) -> bool {
        self.len() == self.universe()
    }

    pub fn members(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.ones()
    }

    pub fn is_subset(&self, other: &Subset) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub fn intersection(&self, other: &Subset) -> Subset {
        let mut bits = self.bits.clone();
        bits.intersect_with(&other.bits);
        Subset { bits }
    }

    /// Image under a carrier map.
    pub fn map(&self, f: impl Fn(usize) -> usize) -> Subset {
        Subset::from_members(self.universe(), self.members().map(f))
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.members()).finish()
    }
}
