use alloc::vec::Vec;
use core::ops::Range;

use super::RepairGraph;
use crate::bits::BitSet;
use crate::budget::Budget;
use crate::combin::{binomial, colex_next, colex_unrank};
use crate::engine::RecoveryIndex;
use crate::error::{Error, Result};
use crate::gf2::SupportSet;

/// Grows `start` by any vertex with a recovering set inside the current set
/// until nothing changes.
pub fn closure(index: &RecoveryIndex, start: &BitSet) -> BitSet {
    let mut cur = start.clone();
    loop {
        let mut grew = false;
        for v in 0..index.n() {
            if !cur.contains(v) && index.sets(v).iter().any(|s| s.mask().is_subset(&cur)) {
                cur.insert(v);
                grew = true;
            }
        }
        if !grew {
            return cur;
        }
    }
}

fn closes(index: &RecoveryIndex, start: &BitSet) -> bool {
    closure(index, start).count() == index.n()
}

/// Scans `size`-subsets with colex ranks in `ranks` and returns the first
/// rank whose closure is everything.
pub fn closure_scan_level(index: &RecoveryIndex, size: usize, ranks: Range<u64>) -> Option<u64> {
    let n = index.n();
    if ranks.is_empty() {
        return None;
    }
    let mut combo = colex_unrank(ranks.start, size);
    let mut set = BitSet::new(n);
    let mut rank = ranks.start;
    loop {
        set.clear();
        for &c in &combo {
            set.insert(c);
        }
        if closes(index, &set) {
            return Some(rank);
        }
        rank += 1;
        if rank >= ranks.end || !colex_next(&mut combo, n) {
            return None;
        }
    }
}

/// A repair graph whose sources are `sources`: vertices are added in
/// closure order, each reading its lexicographically first recovering set
/// among the vertices already present.
pub fn graph_from_sources(index: &RecoveryIndex, sources: &SupportSet) -> Result<RepairGraph> {
    let n = index.n();
    let mut cur = sources.to_bitset(n);
    let mut edges = Vec::new();
    loop {
        let mut grew = false;
        for v in 0..n {
            if cur.contains(v) {
                continue;
            }
            if let Some(s) = index.first_within(v, &cur) {
                edges.extend(s.members().iter().map(|m| (m, v)));
                cur.insert(v);
                grew = true;
            }
        }
        if !grew {
            break;
        }
    }
    if cur.count() != n {
        return Err(Error::arg("the given sources do not generate every vertex"));
    }
    RepairGraph::new(n, edges)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DeltaMode {
    Exact,
    Heuristic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DeltaKind {
    Exact,
    UpperBound,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaStarResult {
    pub value: usize,
    pub kind: DeltaKind,
    pub witness: SupportSet,
    /// The dimension, which no source set can undercut.
    pub lower_bound: usize,
}

/// Minimum number of sources over all repair graphs.
///
/// Exact mode tries sizes upward from `k` and returns the colex-first
/// generating set of the first size that has one. Heuristic mode descends
/// greedily from all coordinates and then tries trading two sources for one.
pub fn delta_star(
    index: &RecoveryIndex,
    k: usize,
    mode: DeltaMode,
    budget: Budget,
) -> Result<DeltaStarResult> {
    let n = index.n();
    match mode {
        DeltaMode::Exact => {
            let mut spent = 0u64;
            for size in k..=n {
                let len = binomial(n, size);
                spent = spent.saturating_add(len);
                budget.check(spent)?;
                if let Some(rank) = closure_scan_level(index, size, 0..len) {
                    return Ok(DeltaStarResult {
                        value: size,
                        kind: DeltaKind::Exact,
                        witness: colex_unrank(rank, size).into_iter().collect(),
                        lower_bound: k,
                    });
                }
            }
            Err(Error::Invariant(
                "the full coordinate set failed to close".into(),
            ))
        }
        DeltaMode::Heuristic => {
            let witness = heuristic(index, budget)?;
            Ok(DeltaStarResult {
                value: witness.len(),
                kind: DeltaKind::UpperBound,
                witness,
                lower_bound: k,
            })
        }
    }
}

fn heuristic(index: &RecoveryIndex, budget: Budget) -> Result<SupportSet> {
    let n = index.n();
    let mut cur = BitSet::full(n);
    let mut spent = 0u64;
    let mut charge = |c: u64| -> Result<()> {
        spent = spent.saturating_add(c);
        budget.check(spent)
    };
    loop {
        // Greedy removal.
        for v in 0..n {
            if cur.contains(v) {
                charge(1)?;
                cur.remove(v);
                if !closes(index, &cur) {
                    cur.insert(v);
                }
            }
        }
        // One improving 2-for-1 exchange, then descend again.
        let inside = cur.to_vec();
        let outside: Vec<usize> = (0..n).filter(|&v| !cur.contains(v)).collect();
        charge((inside.len() * inside.len() * outside.len()) as u64 / 2)?;
        let mut improved = false;
        'swap: for (i, &a) in inside.iter().enumerate() {
            for &b in &inside[i + 1..] {
                for &c in &outside {
                    let mut trial = cur.clone();
                    trial.remove(a);
                    trial.remove(b);
                    trial.insert(c);
                    if closes(index, &trial) {
                        cur = trial;
                        improved = true;
                        break 'swap;
                    }
                }
            }
        }
        if !improved {
            return Ok(SupportSet::from_bitset(&cur));
        }
    }
}
