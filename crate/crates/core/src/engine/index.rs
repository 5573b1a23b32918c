use alloc::format;
use alloc::vec::Vec;

use crate::bits::BitSet;
use crate::code::LinearCode;
use crate::error::{Error, Result};
use crate::gf2::{DualSearch, SupportSet};

/// Smallest recovering-set size considered; single-symbol copies are not
/// treated as local repair.
pub const MIN_RECOVERING_SET: usize = 2;

/// A set `members` from which `target` is the XOR, witnessed by the dual
/// codeword with support `members ∪ {target}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecoveringSet {
    target: usize,
    members: SupportSet,
    mask: BitSet,
}

impl RecoveringSet {
    pub fn new(n: usize, target: usize, members: SupportSet) -> Self {
        let mask = members.to_bitset(n);
        RecoveringSet {
            target,
            members,
            mask,
        }
    }

    #[inline]
    pub fn target(&self) -> usize {
        self.target
    }

    #[inline]
    pub fn members(&self) -> &SupportSet {
        &self.members
    }

    #[inline]
    pub fn mask(&self) -> &BitSet {
        &self.mask
    }

    pub fn witness(&self) -> SupportSet {
        self.members.with(self.target)
    }
}

/// All recovering sets of size `2..=r` for every coordinate of a code,
/// precomputed once from the dual supports of weight at most `r + 1`.
///
/// Sets of each coordinate are sorted lexicographically by member list.
#[derive(Clone, Debug)]
pub struct RecoveryIndex {
    n: usize,
    k: usize,
    r: usize,
    sets: Vec<Vec<RecoveringSet>>,
}

impl RecoveryIndex {
    pub fn new(code: &LinearCode, r: usize) -> Result<Self> {
        Self::with_search(code, r, DualSearch::default())
    }

    pub fn with_search(code: &LinearCode, r: usize, search: DualSearch) -> Result<Self> {
        let n = code.n();
        if r < MIN_RECOVERING_SET || r >= n {
            return Err(Error::arg(format!(
                "locality r = {r} must satisfy 2 <= r <= n - 1 = {}",
                n - 1
            )));
        }
        let supports = search.supports(code.pcm(), r + 1)?;
        let mut sets: Vec<Vec<RecoveringSet>> = alloc::vec![Vec::new(); n];
        for s in supports.iter().filter(|s| s.len() > MIN_RECOVERING_SET) {
            for i in s.iter() {
                sets[i].push(RecoveringSet::new(n, i, s.without(i)));
            }
        }
        for list in &mut sets {
            list.sort_by(|a, b| a.members.cmp(&b.members));
        }
        Ok(RecoveryIndex {
            n,
            k: code.k(),
            r,
            sets,
        })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn r(&self) -> usize {
        self.r
    }

    /// `true` when the locality is at least the dimension, a regime outside
    /// the usual `r < k` assumption; verification still works there.
    pub fn locality_exceeds_dimension(&self) -> bool {
        self.r >= self.k
    }

    #[inline]
    pub fn sets(&self, i: usize) -> &[RecoveringSet] {
        &self.sets[i]
    }

    /// Lexicographically first recovering set of `i` avoiding `blocked`.
    #[inline]
    pub fn first_avoiding(&self, i: usize, blocked: &BitSet) -> Option<&RecoveringSet> {
        self.sets[i].iter().find(|s| s.mask.is_disjoint(blocked))
    }

    /// Lexicographically first recovering set of `i` inside `allowed`.
    #[inline]
    pub fn first_within(&self, i: usize, allowed: &BitSet) -> Option<&RecoveringSet> {
        self.sets[i].iter().find(|s| s.mask.is_subset(allowed))
    }

    pub fn total_sets(&self) -> usize {
        self.sets.iter().map(Vec::len).sum()
    }
}

/// Recovering sets of coordinate `i` of size `2..=r`, in lexicographic order.
pub fn recovering_sets(code: &LinearCode, i: usize, r: usize) -> Result<Vec<RecoveringSet>> {
    if i >= code.n() {
        return Err(Error::arg(format!("coordinate {i} out of range")));
    }
    Ok(RecoveryIndex::new(code, r)?.sets[i].clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::BitMatrix;

    #[test]
    fn parity_code_has_single_set() {
        let code = LinearCode::new(BitMatrix::from_rows(&[[1u8, 1, 1]]).unwrap()).unwrap();
        let sets = recovering_sets(&code, 0, 2).unwrap();
        assert_eq!(sets.len(), 1);
        assert_eq!(sets[0].members(), &SupportSet::from([1, 2]));
        assert_eq!(sets[0].witness(), SupportSet::from([0, 1, 2]));
    }

    #[test]
    fn locality_range_checked() {
        let code = LinearCode::new(BitMatrix::from_rows(&[[1u8, 1, 1]]).unwrap()).unwrap();
        assert!(RecoveryIndex::new(&code, 1).is_err());
        assert!(RecoveryIndex::new(&code, 3).is_err());
        assert!(RecoveryIndex::new(&code, 2)
            .unwrap()
            .locality_exceeds_dimension());
    }
}
