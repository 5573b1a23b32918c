use alloc::format;
use alloc::vec::Vec;
use core::ops::Range;

use super::index::RecoveryIndex;
use crate::bits::BitSet;
use crate::budget::Budget;
use crate::combin::{binomial, binomial_sum, colex_next, colex_unrank};
use crate::error::{Error, Result};
use crate::gf2::SupportSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Some erased coordinate has a recovering set among the survivors
    /// (applied recursively this yields a sequential repair order).
    Sequential,
    /// Every erased coordinate has a recovering set among the survivors.
    Parallel,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Sequential => "sequential",
            Mode::Parallel => "parallel",
        }
    }
}

/// Which erasure patterns to enumerate and where recovering sets may lie.
///
/// Patterns are the subsets of `universe`; a recovering set qualifies when
/// it avoids the pattern and, if `ambient` is set, lies inside it.
#[derive(Clone, Debug)]
pub struct Scope {
    universe: Vec<usize>,
    ambient: Option<BitSet>,
    n: usize,
}

impl Scope {
    pub fn all(n: usize) -> Self {
        Scope {
            universe: (0..n).collect(),
            ambient: None,
            n,
        }
    }

    pub fn within(n: usize, universe: &SupportSet, ambient: Option<&SupportSet>) -> Self {
        Scope {
            universe: universe.as_slice().to_vec(),
            ambient: ambient.map(|a| a.to_bitset(n)),
            n,
        }
    }

    pub fn universe(&self) -> &[usize] {
        &self.universe
    }

    /// Number of patterns of the given size.
    pub fn level_len(&self, size: usize) -> u64 {
        binomial(self.universe.len(), size)
    }
}

/// Checks one erasure pattern (`e` listed, `mask` its bit set).
#[inline]
pub fn pattern_ok(
    index: &RecoveryIndex,
    e: &[usize],
    mask: &BitSet,
    ambient: Option<&BitSet>,
    mode: Mode,
) -> bool {
    let has_set = |i: usize| {
        index
            .sets(i)
            .iter()
            .any(|s| s.mask().is_disjoint(mask) && ambient.is_none_or(|a| s.mask().is_subset(a)))
    };
    match mode {
        Mode::Sequential => e.iter().any(|&i| has_set(i)),
        Mode::Parallel => e.iter().all(|&i| has_set(i)),
    }
}

/// Scans the patterns of one size whose colex ranks fall in `ranks` and
/// returns the rank of the first failing pattern.
pub fn scan_level(
    index: &RecoveryIndex,
    scope: &Scope,
    size: usize,
    ranks: Range<u64>,
    mode: Mode,
) -> Option<u64> {
    if ranks.is_empty() || size == 0 {
        return None;
    }
    let u = scope.universe.len();
    let mut combo = colex_unrank(ranks.start, size);
    let mut e = alloc::vec![0usize; size];
    let mut mask = BitSet::new(scope.n);
    let ambient = scope.ambient.as_ref();
    let mut rank = ranks.start;
    loop {
        mask.clear();
        for (slot, &c) in e.iter_mut().zip(&combo) {
            *slot = scope.universe[c];
            mask.insert(*slot);
        }
        if !pattern_ok(index, &e, &mask, ambient, mode) {
            return Some(rank);
        }
        rank += 1;
        if rank >= ranks.end || !colex_next(&mut combo, u) {
            return None;
        }
    }
}

/// Outcome of an exhaustive recoverability check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub mode: Mode,
    pub r: usize,
    pub t: usize,
    pub verdict: bool,
    /// Patterns examined in canonical order (by size, then colex), up to and
    /// including the counterexample when there is one.
    pub patterns_checked: u64,
    /// The first failing pattern in canonical order.
    pub counterexample: Option<SupportSet>,
}

/// Checks every nonempty pattern of at most `t` coordinates.
pub fn verify_recoverability(
    index: &RecoveryIndex,
    t: usize,
    mode: Mode,
    budget: Budget,
) -> Result<VerifyReport> {
    let n = index.n();
    if t == 0 || t >= n {
        return Err(Error::arg(format!("t = {t} must satisfy 1 <= t < n = {n}")));
    }
    verify_scope(index, &Scope::all(n), t, mode, budget)
}

/// [`verify_recoverability`] over an arbitrary [`Scope`]; sizes above the
/// universe size are skipped.
pub fn verify_scope(
    index: &RecoveryIndex,
    scope: &Scope,
    t: usize,
    mode: Mode,
    budget: Budget,
) -> Result<VerifyReport> {
    let top = t.min(scope.universe.len());
    budget.check(binomial_sum(scope.universe.len(), 1, top))?;
    let mut checked = 0u64;
    for size in 1..=top {
        let len = scope.level_len(size);
        if let Some(rank) = scan_level(index, scope, size, 0..len, mode) {
            let combo = colex_unrank(rank, size);
            return Ok(VerifyReport {
                mode,
                r: index.r(),
                t,
                verdict: false,
                patterns_checked: checked + rank + 1,
                counterexample: Some(combo.iter().map(|&c| scope.universe[c]).collect()),
            });
        }
        checked += len;
    }
    Ok(VerifyReport {
        mode,
        r: index.r(),
        t,
        verdict: true,
        patterns_checked: checked,
        counterexample: None,
    })
}

/// Largest `t` for which sequential verification passes.
///
/// Levels are scanned in increasing size; the first failing size `j` gives
/// `j - 1`. Erasing the support of a minimum-weight codeword always fails,
/// so the scan stops by size `d`.
pub fn max_sequential_t(index: &RecoveryIndex, budget: Budget) -> Result<usize> {
    let n = index.n();
    let scope = Scope::all(n);
    let mut spent = 0u64;
    for size in 1..n {
        let len = scope.level_len(size);
        spent = spent.saturating_add(len);
        budget.check(spent)?;
        if scan_level(index, &scope, size, 0..len, Mode::Sequential).is_some() {
            return Ok(size - 1);
        }
    }
    Ok(n - 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::LinearCode;
    use crate::gf2::BitMatrix;

    fn parity(r: usize) -> LinearCode {
        LinearCode::new(BitMatrix::from_rows(&[alloc::vec![1u8; r + 1]]).unwrap()).unwrap()
    }

    #[test]
    fn parity_code_repairs_one() {
        let code = parity(3);
        let idx = RecoveryIndex::new(&code, 3).unwrap();
        let ok = verify_recoverability(&idx, 1, Mode::Sequential, Budget::DEFAULT).unwrap();
        assert!(ok.verdict);
        assert_eq!(ok.patterns_checked, 4);
        let bad = verify_recoverability(&idx, 2, Mode::Sequential, Budget::DEFAULT).unwrap();
        assert!(!bad.verdict);
        assert_eq!(bad.counterexample, Some(SupportSet::from([0, 1])));
        assert_eq!(bad.patterns_checked, 5);
        assert_eq!(max_sequential_t(&idx, Budget::DEFAULT).unwrap(), 1);
    }

    #[test]
    fn t_range_checked() {
        let code = parity(2);
        let idx = RecoveryIndex::new(&code, 2).unwrap();
        assert!(verify_recoverability(&idx, 0, Mode::Sequential, Budget::DEFAULT).is_err());
        assert!(verify_recoverability(&idx, 3, Mode::Sequential, Budget::DEFAULT).is_err());
    }

    #[test]
    fn budget_refuses_large_scans() {
        let code = parity(9);
        let idx = RecoveryIndex::new(&code, 9).unwrap();
        let err = verify_recoverability(&idx, 5, Mode::Sequential, Budget(10)).unwrap_err();
        assert!(matches!(err, Error::ResourceLimit { .. }));
    }

    #[test]
    fn chunked_scan_matches_full_scan() {
        let code = parity(5);
        let idx = RecoveryIndex::new(&code, 5).unwrap();
        let scope = Scope::all(6);
        let len = scope.level_len(2);
        let full = scan_level(&idx, &scope, 2, 0..len, Mode::Sequential);
        let split = (0..len)
            .step_by(4)
            .find_map(|lo| scan_level(&idx, &scope, 2, lo..(lo + 4).min(len), Mode::Sequential));
        assert_eq!(full, split);
        assert_eq!(full, Some(0));
    }
}
