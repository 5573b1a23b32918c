//! Reference implementations used as test oracles. They work on `u64`
//! bit masks (length at most 64) and share no code with the library.

#![allow(dead_code)]

use slrc_core::gf2::BitMatrix;
use slrc_core::LinearCode;

pub fn row_masks(h: &BitMatrix) -> Vec<u64> {
    (0..h.rows())
        .map(|i| {
            (0..h.cols())
                .filter(|&j| h.get(i, j))
                .fold(0u64, |m, j| m | 1 << j)
        })
        .collect()
}

/// Every vector of the row space, by walking all 2^rows combinations.
pub fn row_space(rows: &[u64]) -> Vec<u64> {
    assert!(rows.len() <= 24, "oracle limited to 24 rows");
    let mut out: Vec<u64> = (0u64..1 << rows.len())
        .map(|c| {
            rows.iter()
                .enumerate()
                .filter(|(i, _)| c >> i & 1 == 1)
                .fold(0, |a, (_, r)| a ^ r)
        })
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Nonzero dual supports of weight at most `w`, as masks.
pub fn dual_supports(h: &BitMatrix, w: u32) -> Vec<u64> {
    row_space(&row_masks(h))
        .into_iter()
        .filter(|&x| x != 0 && x.count_ones() <= w)
        .collect()
}

/// Null-space basis of `rows` over `n` columns, by textbook elimination.
pub fn kernel(rows: &[u64], n: usize) -> Vec<u64> {
    let mut m: Vec<u64> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..m.len()).find(|&i| m[i] >> c & 1 == 1) else {
            continue;
        };
        m.swap(r, p);
        for i in 0..m.len() {
            if i != r && m[i] >> c & 1 == 1 {
                m[i] ^= m[r];
            }
        }
        pivots.push(c);
        r += 1;
    }
    (0..n)
        .filter(|c| !pivots.contains(c))
        .map(|f| {
            let mut v = 1u64 << f;
            for (i, &p) in pivots.iter().enumerate() {
                if m[i] >> f & 1 == 1 {
                    v |= 1 << p;
                }
            }
            v
        })
        .collect()
}

pub fn min_distance(h: &BitMatrix) -> u32 {
    let basis = kernel(&row_masks(h), h.cols());
    row_space(&basis)
        .into_iter()
        .filter(|&x| x != 0)
        .map(u64::count_ones)
        .min()
        .unwrap()
}

/// Recovering sets of `i` with sizes `2..=r`, as masks.
pub fn recovering_sets(duals: &[u64], i: usize, r: u32) -> Vec<u64> {
    duals
        .iter()
        .filter(|&&d| d >> i & 1 == 1 && (3..=r + 1).contains(&d.count_ones()))
        .map(|&d| d & !(1 << i))
        .collect()
}

/// Sequential (some member repairable) or parallel (all members) check.
pub fn pattern_ok(duals: &[u64], e: u64, n: usize, r: u32, parallel: bool) -> bool {
    let ok = |i: usize| recovering_sets(duals, i, r).iter().any(|&s| s & e == 0);
    let mut members = (0..n).filter(|&i| e >> i & 1 == 1);
    if parallel {
        members.all(ok)
    } else {
        members.any(ok)
    }
}

/// Whether every nonempty pattern of at most `t` coordinates passes.
pub fn recoverable(duals: &[u64], n: usize, r: u32, t: u32, parallel: bool) -> bool {
    (1u64..1 << n)
        .filter(|e| e.count_ones() <= t)
        .all(|e| pattern_ok(duals, e, n, r, parallel))
}

/// Whether erasures can be cleared one at a time. Repairing a symbol only
/// frees more recovering sets, so peeling in any order decides this.
pub fn sequentially_repairable(duals: &[u64], mut e: u64, n: usize, r: u32) -> bool {
    while e != 0 {
        let Some(i) = (0..n)
            .find(|&i| e >> i & 1 == 1 && recovering_sets(duals, i, r).iter().any(|&s| s & e == 0))
        else {
            return false;
        };
        e &= !(1 << i);
    }
    true
}

pub fn mask_of(set: impl IntoIterator<Item = usize>) -> u64 {
    set.into_iter().fold(0, |m, i| m | 1 << i)
}

pub fn codewords(code: &LinearCode) -> Vec<u64> {
    row_space(&kernel(&row_masks(code.pcm()), code.n()))
}
