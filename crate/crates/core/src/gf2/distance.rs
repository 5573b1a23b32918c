use crate::bits;
use crate::budget::Budget;
use crate::code::LinearCode;
use crate::error::{Error, Result};

/// Minimum Hamming weight over all `2^k - 1` nonzero codewords.
pub fn min_distance_bruteforce(code: &LinearCode, budget: Budget) -> Result<usize> {
    let gens = code.generator_basis();
    let k = gens.len();
    if k >= 63 {
        return Err(Error::ResourceLimit {
            needed: u64::MAX,
            budget: budget.0,
        });
    }
    budget.check(1u64 << k)?;
    let mut word = alloc::vec![0u64; bits::words_for(code.n())];
    let mut best = usize::MAX;
    for step in 1u64..(1u64 << k) {
        bits::xor_into(&mut word, &gens[step.trailing_zeros() as usize]);
        best = best.min(bits::weight(&word));
    }
    Ok(best)
}
