use alloc::vec::Vec;

use super::index::RecoveryIndex;
use super::plan::repair_plan;
use crate::code::LinearCode;
use crate::error::{Error, Result};
use crate::gf2::SupportSet;

/// Fills the erased coordinates of `word` by XOR along a greedy repair plan.
///
/// Values at erased positions are ignored. The result is checked against
/// the parity-check matrix; a mismatch means the surviving symbols were not
/// consistent with any codeword.
pub fn sequential_decode(
    code: &LinearCode,
    index: &RecoveryIndex,
    word: &[bool],
    erasures: &SupportSet,
) -> Result<Vec<bool>> {
    if word.len() != code.n() {
        return Err(Error::arg(alloc::format!(
            "word has length {}, code length is {}",
            word.len(),
            code.n()
        )));
    }
    let plan = repair_plan(index, erasures)?;
    let mut out = word.to_vec();
    for i in erasures.iter() {
        out[i] = false;
    }
    for step in plan.steps() {
        out[step.target()] = step.members().iter().fold(false, |acc, m| acc ^ out[m]);
    }
    if !code.is_codeword(&out) {
        return Err(Error::Inconsistent);
    }
    Ok(out)
}
