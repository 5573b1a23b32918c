use alloc::vec::Vec;
use core::fmt;

use crate::bits::BitSet;

/// A sorted, duplicate-free set of dense coordinate positions.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SupportSet(Vec<usize>);

impl SupportSet {
    pub fn new() -> Self {
        SupportSet(Vec::new())
    }

    pub(crate) fn from_sorted_unchecked(v: Vec<usize>) -> Self {
        debug_assert!(v.windows(2).all(|w| w[0] < w[1]));
        SupportSet(v)
    }

    pub fn from_bitset(set: &BitSet) -> Self {
        SupportSet(set.to_vec())
    }

    #[inline]
    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn max(&self) -> Option<usize> {
        self.0.last().copied()
    }

    pub fn with(&self, i: usize) -> SupportSet {
        let mut v = self.0.clone();
        if let Err(pos) = v.binary_search(&i) {
            v.insert(pos, i);
        }
        SupportSet(v)
    }

    pub fn without(&self, i: usize) -> SupportSet {
        SupportSet(self.0.iter().copied().filter(|&x| x != i).collect())
    }

    pub fn is_subset(&self, other: &SupportSet) -> bool {
        self.0.iter().all(|&x| other.contains(x))
    }

    pub fn is_disjoint(&self, other: &SupportSet) -> bool {
        self.0.iter().all(|&x| !other.contains(x))
    }

    pub fn intersection(&self, other: &SupportSet) -> SupportSet {
        SupportSet(
            self.0
                .iter()
                .copied()
                .filter(|&x| other.contains(x))
                .collect(),
        )
    }

    pub fn to_bitset(&self, len: usize) -> BitSet {
        BitSet::from_indices(len, self.0.iter().copied())
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }
}

impl FromIterator<usize> for SupportSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut v: Vec<usize> = iter.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        SupportSet(v)
    }
}

impl From<Vec<usize>> for SupportSet {
    fn from(v: Vec<usize>) -> Self {
        v.into_iter().collect()
    }
}

impl<const N: usize> From<[usize; N]> for SupportSet {
    fn from(v: [usize; N]) -> Self {
        v.into_iter().collect()
    }
}

impl fmt::Debug for SupportSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(&self.0).finish()
    }
}
