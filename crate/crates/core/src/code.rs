use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::bits::BitSet;
use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, Echelon, SupportSet};

/// A binary linear code given by a parity-check matrix.
///
/// Coordinates are dense column positions `0..n`; `labels` maps them to the
/// external names used in files and reports.
#[derive(Clone, Debug)]
pub struct LinearCode {
    pcm: BitMatrix,
    labels: Vec<String>,
    echelon: Echelon,
    generators: Vec<Vec<u64>>,
}

impl LinearCode {
    /// Wraps `pcm` with labels `1..=n`.
    pub fn new(pcm: BitMatrix) -> Result<Self> {
        let labels = (1..=pcm.cols()).map(|i| i.to_string()).collect();
        Self::with_labels(pcm, labels)
    }

    pub fn with_labels(pcm: BitMatrix, labels: Vec<String>) -> Result<Self> {
        if labels.len() != pcm.cols() {
            return Err(Error::arg(format!(
                "{} labels for {} columns",
                labels.len(),
                pcm.cols()
            )));
        }
        let mut seen: Vec<&String> = labels.iter().collect();
        seen.sort();
        if seen.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::arg("coordinate labels must be distinct"));
        }
        let echelon = pcm.echelon();
        if echelon.rank() >= pcm.cols() {
            return Err(Error::arg("code has dimension 0"));
        }
        let generators = echelon.kernel_basis();
        Ok(LinearCode {
            pcm,
            labels,
            echelon,
            generators,
        })
    }

    #[inline]
    pub fn pcm(&self) -> &BitMatrix {
        &self.pcm
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.pcm.cols()
    }

    #[inline]
    pub fn k(&self) -> usize {
        self.generators.len()
    }

    pub fn redundancy(&self) -> usize {
        self.echelon.rank()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn position(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn labels_of(&self, set: &SupportSet) -> Vec<String> {
        set.iter().map(|i| self.labels[i].clone()).collect()
    }

    /// Row space of the parity-check matrix (the dual code).
    pub fn dual(&self) -> &Echelon {
        &self.echelon
    }

    /// Basis of the code itself, one packed word vector per generator.
    pub fn generator_basis(&self) -> &[Vec<u64>] {
        &self.generators
    }

    /// `true` when some dual codeword has exactly this support.
    pub fn is_dual_support(&self, support: &SupportSet) -> bool {
        !support.is_empty() && self.echelon.contains_support(support.as_slice())
    }

    /// `true` when `members` is a recovering set of `target`.
    pub fn is_recovering_set(&self, target: usize, members: &SupportSet) -> bool {
        !members.contains(target) && self.is_dual_support(&members.with(target))
    }

    pub fn is_codeword(&self, word: &[bool]) -> bool {
        let set = BitSet::from_indices(
            self.n(),
            word.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i),
        );
        self.pcm.annihilates(set.words())
    }

    /// Rank of the generator columns indexed by `cols`.
    pub fn rank_on(&self, cols: &SupportSet) -> usize {
        let g = BitMatrix::from_word_rows(self.n(), &self.generators);
        g.select_columns(cols.as_slice()).rank()
    }

    /// All codewords, as packed word vectors. Only for tiny dimensions.
    pub fn codeword_words(&self) -> impl Iterator<Item = Vec<u64>> + '_ {
        let k = self.k();
        let stride = crate::bits::words_for(self.n());
        (0u64..(1u64 << k)).map(move |mask| {
            let mut w = alloc::vec![0u64; stride];
            for (i, g) in self.generators.iter().enumerate() {
                if (mask >> i) & 1 == 1 {
                    crate::bits::xor_into(&mut w, g);
                }
            }
            w
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parity_code_parameters() {
        let code = LinearCode::new(BitMatrix::from_rows(&[[1u8, 1, 1]]).unwrap()).unwrap();
        assert_eq!((code.n(), code.k()), (3, 2));
        assert!(code.is_recovering_set(0, &SupportSet::from([1, 2])));
        assert!(!code.is_recovering_set(0, &SupportSet::from([1])));
        assert!(code.is_codeword(&[true, true, false]));
        assert!(!code.is_codeword(&[true, false, false]));
    }

    #[test]
    fn zero_dimension_rejected() {
        assert!(LinearCode::new(BitMatrix::identity(3)).is_err());
    }

    #[test]
    fn duplicate_labels_rejected() {
        let h = BitMatrix::from_rows(&[[1u8, 1, 1]]).unwrap();
        let labels = ["a", "b", "a"].iter().map(|s| s.to_string()).collect();
        assert!(LinearCode::with_labels(h, labels).is_err());
    }
}
