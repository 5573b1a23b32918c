//! Multi-threaded versions of the exhaustive scans.
//!
//! Each level of patterns is cut into fixed chunks of colex ranks. Workers
//! publish the smallest failing rank through an atomic minimum and skip
//! chunks that start beyond it, so the answer is the colex-first failure no
//! matter how the chunks are scheduled.

use std::ops::Range;
use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;
use rayon::ThreadPool;

use slrc_core::combin::{binomial, binomial_sum, colex_unrank};
use slrc_core::engine::{scan_level, Mode, RecoveryIndex, Scope, VerifyReport};
use slrc_core::graph::{closure_scan_level, delta_star, DeltaKind, DeltaMode, DeltaStarResult};
use slrc_core::{Budget, Error, Result};

const CHUNK: u64 = 1 << 12;

pub fn pool(threads: Option<usize>) -> Result<ThreadPool, rayon::ThreadPoolBuildError> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(t) = threads {
        b = b.num_threads(t.max(1));
    }
    b.build()
}

/// Smallest rank in `0..len` for which `scan` reports a hit.
fn first_hit<F>(pool: &ThreadPool, len: u64, scan: F) -> Option<u64>
where
    F: Fn(Range<u64>) -> Option<u64> + Sync,
{
    let best = AtomicU64::new(u64::MAX);
    let chunks = len.div_ceil(CHUNK);
    pool.install(|| {
        (0..chunks).into_par_iter().for_each(|c| {
            let lo = c * CHUNK;
            if lo > best.load(Ordering::Relaxed) {
                return;
            }
            if let Some(rank) = scan(lo..(lo + CHUNK).min(len)) {
                best.fetch_min(rank, Ordering::Relaxed);
            }
        })
    });
    Some(best.into_inner()).filter(|&b| b != u64::MAX)
}

/// Same report as [`slrc_core::engine::verify_recoverability`].
pub fn verify(
    pool: &ThreadPool,
    index: &RecoveryIndex,
    t: usize,
    mode: Mode,
    budget: Budget,
) -> Result<VerifyReport> {
    let n = index.n();
    if t == 0 || t >= n {
        return Err(Error::Argument(format!(
            "t = {t} must satisfy 1 <= t < n = {n}"
        )));
    }
    budget.check(binomial_sum(n, 1, t))?;
    let scope = Scope::all(n);
    let mut checked = 0u64;
    for size in 1..=t {
        let len = binomial(n, size);
        if let Some(rank) = first_hit(pool, len, |ranks| {
            scan_level(index, &scope, size, ranks, mode)
        }) {
            return Ok(VerifyReport {
                mode,
                r: index.r(),
                t,
                verdict: false,
                patterns_checked: checked + rank + 1,
                counterexample: Some(colex_unrank(rank, size).into_iter().collect()),
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

/// Same value as [`slrc_core::engine::max_sequential_t`].
pub fn max_sequential_t(pool: &ThreadPool, index: &RecoveryIndex, budget: Budget) -> Result<usize> {
    let n = index.n();
    let scope = Scope::all(n);
    let mut spent = 0u64;
    for size in 1..n {
        let len = binomial(n, size);
        spent = spent.saturating_add(len);
        budget.check(spent)?;
        let hit = first_hit(pool, len, |ranks| {
            scan_level(index, &scope, size, ranks, Mode::Sequential)
        });
        if hit.is_some() {
            return Ok(size - 1);
        }
    }
    Ok(n - 1)
}

/// Same result as [`slrc_core::graph::delta_star`]; only the exact search
/// is spread over threads.
pub fn delta_star_search(
    pool: &ThreadPool,
    index: &RecoveryIndex,
    k: usize,
    mode: DeltaMode,
    budget: Budget,
) -> Result<DeltaStarResult> {
    if mode == DeltaMode::Heuristic {
        return delta_star(index, k, mode, budget);
    }
    let n = index.n();
    let mut spent = 0u64;
    for size in k..=n {
        let len = binomial(n, size);
        spent = spent.saturating_add(len);
        budget.check(spent)?;
        if let Some(rank) = first_hit(pool, len, |ranks| closure_scan_level(index, size, ranks)) {
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
