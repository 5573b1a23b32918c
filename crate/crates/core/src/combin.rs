//! Subset enumeration in colexicographic order.
//!
//! A `k`-subset `c_0 < c_1 < ... < c_{k-1}` of `0..n` has colex rank
//! `sum_i C(c_i, i + 1)`. Ranks are contiguous, so a level of subsets can be
//! split into independent rank ranges and scanned in any order.

use alloc::vec::Vec;

/// `C(n, k)`, saturating at `u64::MAX`.
pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// `sum_{j=lo}^{hi} C(n, j)`, saturating.
pub fn binomial_sum(n: usize, lo: usize, hi: usize) -> u64 {
    (lo..=hi).fold(0u64, |acc, j| acc.saturating_add(binomial(n, j)))
}

pub fn colex_rank(subset: &[usize]) -> u64 {
    subset
        .iter()
        .enumerate()
        .map(|(i, &c)| binomial(c, i + 1))
        .sum()
}

/// Inverse of [`colex_rank`] for `k`-subsets.
pub fn colex_unrank(mut rank: u64, k: usize) -> Vec<usize> {
    let mut out = alloc::vec![0; k];
    for i in (0..k).rev() {
        // largest c with C(c, i+1) <= rank
        let mut c = i;
        while binomial(c + 1, i + 1) <= rank {
            c += 1;
        }
        out[i] = c;
        rank -= binomial(c, i + 1);
    }
    out
}

/// Advances `c` to the next `k`-subset of `0..n` in colex order. Returns
/// `false` (leaving `c` unspecified) when `c` was the last one.
pub fn colex_next(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    for i in 0..k {
        let limit = if i + 1 < k { c[i + 1] } else { n };
        if c[i] + 1 < limit {
            c[i] += 1;
            for (j, slot) in c.iter_mut().enumerate().take(i) {
                *slot = j;
            }
            return true;
        }
    }
    false
}

/// Iterator over all `k`-subsets of `0..n` in colex order.
pub struct Combinations {
    n: usize,
    cur: Vec<usize>,
    started: bool,
    done: bool,
}

impl Combinations {
    pub fn new(n: usize, k: usize) -> Self {
        Combinations {
            n,
            cur: (0..k).collect(),
            started: false,
            done: k > n,
        }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        if self.started {
            if !colex_next(&mut self.cur, self.n) {
                self.done = true;
                return None;
            }
        } else {
            self.started = true;
        }
        Some(self.cur.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(27, 7), 888_030);
        assert_eq!(binomial(5, 0), 1);
        assert_eq!(binomial(3, 4), 0);
        assert_eq!(binomial_sum(22, 1, 5), 22 + 231 + 1540 + 7315 + 26334);
    }

    #[test]
    fn colex_order_ranks_are_consecutive() {
        for (rank, c) in Combinations::new(7, 3).enumerate() {
            assert_eq!(colex_rank(&c), rank as u64);
            assert_eq!(colex_unrank(rank as u64, 3), c);
        }
        assert_eq!(Combinations::new(7, 3).count() as u64, binomial(7, 3));
    }

    #[test]
    fn colex_starts_with_lowest_maxima() {
        let all: Vec<_> = Combinations::new(4, 2).collect();
        assert_eq!(
            all,
            alloc::vec![
                alloc::vec![0, 1],
                alloc::vec![0, 2],
                alloc::vec![1, 2],
                alloc::vec![0, 3],
                alloc::vec![1, 3],
                alloc::vec![2, 3]
            ]
        );
    }

    #[test]
    fn empty_subset_once() {
        assert_eq!(Combinations::new(3, 0).count(), 1);
        assert_eq!(Combinations::new(2, 3).count(), 0);
    }
}
