use alloc::vec::Vec;

use super::{BitMatrix, SupportSet};
use crate::bits;
use crate::budget::Budget;
use crate::combin::{binomial_sum, colex_next};
use crate::error::Result;

/// Strategy knobs for enumerating low-weight vectors of a row space.
#[derive(Debug, Clone, Copy)]
pub struct DualSearch {
    /// Row spaces of at most this rank are walked in full by Gray-code
    /// stepping; larger ones enumerate combinations of echelon rows.
    pub gray_rank_threshold: usize,
    pub budget: Budget,
}

impl Default for DualSearch {
    fn default() -> Self {
        DualSearch {
            gray_rank_threshold: 24,
            budget: Budget::DEFAULT,
        }
    }
}

impl DualSearch {
    /// Supports of all nonzero vectors in the row space of `h` with Hamming
    /// weight at most `w_max`, sorted lexicographically.
    pub fn supports(&self, h: &BitMatrix, w_max: usize) -> Result<Vec<SupportSet>> {
        let ech = h.echelon();
        let rank = ech.rank();
        let basis = ech.basis();
        let mut out = Vec::new();
        if rank == 0 || w_max == 0 {
            return Ok(out);
        }
        let stride = basis[0].len();
        if rank <= self.gray_rank_threshold {
            self.budget.check(1u64 << rank)?;
            let mut v = alloc::vec![0u64; stride];
            for step in 1u64..(1u64 << rank) {
                bits::xor_into(&mut v, &basis[step.trailing_zeros() as usize]);
                if bits::weight(&v) <= w_max {
                    out.push(SupportSet::from_sorted_unchecked(bits::ones(&v).collect()));
                }
            }
        } else {
            // A vector of weight <= w_max has at most w_max pivot
            // coordinates set, and its pivot pattern fixes the combination
            // of echelon rows, so every candidate is reached exactly once.
            let top = w_max.min(rank);
            self.budget.check(binomial_sum(rank, 1, top))?;
            let mut v = alloc::vec![0u64; stride];
            for size in 1..=top {
                let mut combo: Vec<usize> = (0..size).collect();
                loop {
                    v.iter_mut().for_each(|w| *w = 0);
                    for &i in &combo {
                        bits::xor_into(&mut v, &basis[i]);
                    }
                    if bits::weight(&v) <= w_max {
                        out.push(SupportSet::from_sorted_unchecked(bits::ones(&v).collect()));
                    }
                    if !colex_next(&mut combo, rank) {
                        break;
                    }
                }
            }
        }
        out.sort_unstable();
        Ok(out)
    }
}

/// [`DualSearch::supports`] with the default strategy and budget.
pub fn low_weight_dual_supports(h: &BitMatrix, w_max: usize) -> Result<Vec<SupportSet>> {
    DualSearch::default().supports(h, w_max)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_row_code() {
        let h = BitMatrix::from_rows(&[[1u8, 1, 1]]).unwrap();
        assert_eq!(
            low_weight_dual_supports(&h, 3).unwrap(),
            alloc::vec![SupportSet::from([0, 1, 2])]
        );
        assert!(low_weight_dual_supports(&h, 2).unwrap().is_empty());
    }

    #[test]
    fn both_regimes_agree() {
        let rows: [[u8; 8]; 4] = [
            [1, 1, 0, 1, 0, 0, 1, 0],
            [0, 1, 1, 0, 1, 0, 0, 1],
            [1, 0, 1, 1, 1, 1, 0, 0],
            [0, 0, 0, 1, 1, 1, 1, 1],
        ];
        let h = BitMatrix::from_rows(&rows).unwrap();
        for w in 1..=8 {
            let gray = DualSearch::default().supports(&h, w).unwrap();
            let pivots = DualSearch {
                gray_rank_threshold: 0,
                ..DualSearch::default()
            }
            .supports(&h, w)
            .unwrap();
            assert_eq!(gray, pivots, "w_max = {w}");
        }
    }

    #[test]
    fn budget_is_enforced() {
        let h = BitMatrix::identity(30);
        let search = DualSearch {
            gray_rank_threshold: 24,
            budget: Budget(1000),
        };
        assert!(matches!(
            search.supports(&h, 30),
            Err(crate::Error::ResourceLimit { .. })
        ));
        // weight-1 search over pivots needs only 30 checks
        assert_eq!(search.supports(&h, 1).unwrap().len(), 30);
    }
}
