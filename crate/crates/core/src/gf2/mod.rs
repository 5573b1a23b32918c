//! Dense linear algebra over GF(2).
//!
//! Matrices store each row as packed `u64` words; column operations go
//! through [`BitMatrix::transpose`]. Supports and erasure sets use dense
//! 0-based column positions; mapping to external labels is the job of
//! [`crate::LinearCode`].

mod distance;
mod dual;
mod support;

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::bits::{self, words_for, BitSet};
use crate::error::{Error, Result};

pub use distance::min_distance_bruteforce;
pub use dual::{low_weight_dual_supports, DualSearch};
pub use support::SupportSet;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    /// All-zero `rows x cols` matrix.
    ///
    /// # Panics
    ///
    /// Panics if either dimension is zero.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows >= 1 && cols >= 1, "matrix dimensions must be positive");
        let stride = words_for(cols);
        BitMatrix {
            rows,
            cols,
            stride,
            data: vec![0; rows * stride],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix from rows of 0/1 bytes.
    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Result<Self> {
        let Some(first) = rows.first() else {
            return Err(Error::arg("matrix needs at least one row"));
        };
        let cols = first.as_ref().len();
        if cols == 0 {
            return Err(Error::arg("matrix needs at least one column"));
        }
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != cols {
                return Err(Error::arg(alloc::format!(
                    "row {} has {} entries, expected {cols}",
                    i + 1,
                    row.len()
                )));
            }
            for (j, &b) in row.iter().enumerate() {
                match b {
                    0 => {}
                    1 => m.set(i, j, true),
                    other => {
                        return Err(Error::arg(alloc::format!(
                            "entry ({}, {}) is {other}, expected 0 or 1",
                            i + 1,
                            j + 1
                        )))
                    }
                }
            }
        }
        Ok(m)
    }

    /// Builds a matrix whose rows are the given packed vectors of length `cols`.
    pub fn from_word_rows(cols: usize, rows: &[Vec<u64>]) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        let stride = m.stride;
        for (i, r) in rows.iter().enumerate() {
            m.row_mut(i).copy_from_slice(&r[..stride]);
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        assert!(r < self.rows && c < self.cols);
        bits::get(self.row(r), c)
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        assert!(r < self.rows && c < self.cols);
        let w = &mut self.data[r * self.stride + c / 64];
        if value {
            *w |= 1 << (c % 64);
        } else {
            *w &= !(1 << (c % 64));
        }
    }

    #[inline]
    pub fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.stride..(r + 1) * self.stride]
    }

    #[inline]
    pub fn row_mut(&mut self, r: usize) -> &mut [u64] {
        &mut self.data[r * self.stride..(r + 1) * self.stride]
    }

    pub fn row_set(&self, r: usize) -> BitSet {
        BitSet::from_words(self.cols, self.row(r).to_vec())
    }

    pub fn row_support(&self, r: usize) -> SupportSet {
        SupportSet::from_sorted_unchecked(bits::ones(self.row(r)).collect())
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in bits::ones(self.row(r)) {
                t.set(c, r, true);
            }
        }
        t
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &BitMatrix) -> Result<BitMatrix> {
        if self.cols != other.cols {
            return Err(Error::arg("vstack: column counts differ"));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(BitMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            stride: self.stride,
            data,
        })
    }

    /// Reduced row-echelon form and rank.
    ///
    /// The returned matrix has the same shape as `self`; its first `rank`
    /// rows are the nonzero echelon rows and the rest are zero.
    pub fn rank_and_reduce(&self) -> (BitMatrix, usize) {
        let ech = self.echelon();
        let rank = ech.rank();
        let mut out = BitMatrix::zeros(self.rows, self.cols);
        for (i, row) in ech.basis.iter().enumerate() {
            out.row_mut(i).copy_from_slice(row);
        }
        (out, rank)
    }

    pub fn rank(&self) -> usize {
        self.echelon().rank()
    }

    /// Gauss-Jordan elimination keeping only the nonzero rows.
    pub fn echelon(&self) -> Echelon {
        let mut rows: Vec<Vec<u64>> = (0..self.rows).map(|r| self.row(r).to_vec()).collect();
        let mut pivots = Vec::new();
        let mut lead = 0;
        for col in 0..self.cols {
            if lead == rows.len() {
                break;
            }
            let Some(p) = (lead..rows.len()).find(|&i| bits::get(&rows[i], col)) else {
                continue;
            };
            rows.swap(lead, p);
            let pivot_row = rows[lead].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i != lead && bits::get(row, col) {
                    bits::xor_into(row, &pivot_row);
                }
            }
            pivots.push(col);
            lead += 1;
        }
        rows.truncate(lead);
        Echelon {
            cols: self.cols,
            basis: rows,
            pivots,
        }
    }

    /// `true` when `x` (packed, length `cols`) satisfies every row.
    pub fn annihilates(&self, x: &[u64]) -> bool {
        (0..self.rows).all(|r| {
            self.row(r)
                .iter()
                .zip(x)
                .map(|(a, b)| (a & b).count_ones())
                .sum::<u32>()
                % 2
                == 0
        })
    }

    /// Submatrix made of the given columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> BitMatrix {
        let mut out = BitMatrix::zeros(self.rows, cols.len().max(1));
        for r in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                if self.get(r, c) {
                    out.set(r, j, true);
                }
            }
        }
        out
    }

    /// Rows as 0/1 character strings.
    pub fn to_row_strings(&self) -> Vec<alloc::string::String> {
        (0..self.rows)
            .map(|r| {
                (0..self.cols)
                    .map(|c| if self.get(r, c) { '1' } else { '0' })
                    .collect()
            })
            .collect()
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.rows, self.cols)?;
        for line in self.to_row_strings() {
            writeln!(f, "  {line}")?;
        }
        Ok(())
    }
}

/// Row space of a matrix in reduced row-echelon form.
#[derive(Clone, Debug)]
pub struct Echelon {
    cols: usize,
    basis: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl Echelon {
    #[inline]
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn basis(&self) -> &[Vec<u64>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduces `v` in place against the basis; the residue is zero exactly
    /// when `v` was in the row space.
    pub fn reduce(&self, v: &mut [u64]) {
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if bits::get(v, p) {
                bits::xor_into(v, row);
            }
        }
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|&x| x == 0)
    }

    pub fn contains_support(&self, support: &[usize]) -> bool {
        let set = BitSet::from_indices(self.cols, support.iter().copied());
        self.contains(set.words())
    }

    /// Basis of `{x : M x = 0}`, one packed vector per free column.
    pub fn kernel_basis(&self) -> Vec<Vec<u64>> {
        let mut is_pivot = vec![false; self.cols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        let stride = words_for(self.cols);
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut x = vec![0u64; stride];
                x[free / 64] |= 1 << (free % 64);
                for (row, &p) in self.basis.iter().zip(&self.pivots) {
                    if bits::get(row, free) {
                        x[p / 64] |= 1 << (p % 64);
                    }
                }
                x
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&str]) -> BitMatrix {
        let rows: Vec<Vec<u8>> = rows
            .iter()
            .map(|r| r.bytes().map(|b| b - b'0').collect())
            .collect();
        BitMatrix::from_rows(&rows).unwrap()
    }

    #[test]
    fn identity_rank() {
        let (red, rank) = BitMatrix::identity(3).rank_and_reduce();
        assert_eq!(rank, 3);
        assert_eq!(red, BitMatrix::identity(3));
    }

    #[test]
    fn single_parity_row_rank_one() {
        assert_eq!(m(&["111"]).rank(), 1);
    }

    #[test]
    fn reduction_keeps_zero_rows_at_bottom() {
        let a = m(&["110", "011", "101"]);
        let (red, rank) = a.rank_and_reduce();
        assert_eq!(rank, 2);
        assert_eq!(red.to_row_strings(), ["101", "011", "000"]);
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let a = m(&["1100110", "0110011", "1011100"]);
        let ech = a.echelon();
        let ker = ech.kernel_basis();
        assert_eq!(ker.len(), 7 - ech.rank());
        for x in &ker {
            assert!(a.annihilates(x));
        }
    }

    #[test]
    fn membership() {
        let a = m(&["1100", "0011"]);
        let ech = a.echelon();
        assert!(ech.contains_support(&[0, 1, 2, 3]));
        assert!(!ech.contains_support(&[0, 2]));
    }

    #[test]
    fn rejects_ragged_rows() {
        let rows: [&[u8]; 2] = [&[1, 0], &[1]];
        assert!(BitMatrix::from_rows(&rows).is_err());
        let bad: [&[u8]; 1] = [&[2]];
        assert!(BitMatrix::from_rows(&bad).is_err());
    }
}
