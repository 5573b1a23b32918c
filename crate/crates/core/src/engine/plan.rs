use alloc::format;
use alloc::vec::Vec;

use super::index::{RecoveringSet, RecoveryIndex, MIN_RECOVERING_SET};
use crate::bits::BitSet;
use crate::code::LinearCode;
use crate::error::{Error, Result};
use crate::gf2::SupportSet;

/// An ordered list of repair steps; step `j` may read only surviving
/// coordinates and targets of earlier steps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepairPlan {
    erasures: SupportSet,
    steps: Vec<RecoveringSet>,
}

impl RepairPlan {
    pub fn new(erasures: SupportSet, steps: Vec<RecoveringSet>) -> Self {
        RepairPlan { erasures, steps }
    }

    pub fn erasures(&self) -> &SupportSet {
        &self.erasures
    }

    pub fn steps(&self) -> &[RecoveringSet] {
        &self.steps
    }

    pub fn order(&self) -> Vec<usize> {
        self.steps.iter().map(RecoveringSet::target).collect()
    }
}

/// Greedy repair got stuck: no coordinate of `residual` has a recovering set
/// avoiding it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stuck {
    pub residual: SupportSet,
}

impl From<Stuck> for Error {
    fn from(s: Stuck) -> Self {
        Error::Unrecoverable(s.residual)
    }
}

/// Greedy sequential repair: repeatedly repairs the smallest erased
/// coordinate that has a recovering set among the currently known symbols,
/// using its lexicographically first such set.
pub fn repair_plan(index: &RecoveryIndex, erasures: &SupportSet) -> Result<RepairPlan, Stuck> {
    let mut residual = erasures.to_bitset(index.n());
    let mut steps = Vec::with_capacity(erasures.len());
    while !residual.is_empty() {
        let next = residual
            .iter()
            .find_map(|i| index.first_avoiding(i, &residual).cloned());
        match next {
            Some(step) => {
                residual.remove(step.target());
                steps.push(step);
            }
            None => {
                return Err(Stuck {
                    residual: SupportSet::from_bitset(&residual),
                })
            }
        }
    }
    Ok(RepairPlan::new(erasures.clone(), steps))
}

/// Greedy repair with a caller-chosen tie break. At every step `choose`
/// receives all available `(coordinate, set)` candidates and returns the
/// index of the one to apply.
pub fn repair_plan_by<F>(
    index: &RecoveryIndex,
    erasures: &SupportSet,
    mut choose: F,
) -> Result<RepairPlan, Stuck>
where
    F: FnMut(&[&RecoveringSet]) -> usize,
{
    let mut residual = erasures.to_bitset(index.n());
    let mut steps = Vec::with_capacity(erasures.len());
    let mut candidates = Vec::new();
    while !residual.is_empty() {
        candidates.clear();
        for i in residual.iter() {
            candidates.extend(
                index
                    .sets(i)
                    .iter()
                    .filter(|s| s.mask().is_disjoint(&residual)),
            );
        }
        if candidates.is_empty() {
            return Err(Stuck {
                residual: SupportSet::from_bitset(&residual),
            });
        }
        let pick = choose(&candidates).min(candidates.len() - 1);
        let step = candidates[pick].clone();
        residual.remove(step.target());
        steps.push(step);
    }
    Ok(RepairPlan::new(erasures.clone(), steps))
}

/// Checks a plan against the code itself, independent of any index: every
/// erased coordinate is repaired exactly once, each step is a genuine
/// recovering set of size `2..=r`, and reads only known symbols.
pub fn validate_plan(code: &LinearCode, plan: &RepairPlan, r: usize) -> Result<()> {
    let n = code.n();
    let e = plan.erasures();
    if e.max().is_some_and(|m| m >= n) {
        return Err(Error::PlanInvalid("erasure outside the code length".into()));
    }
    let mut unknown: BitSet = e.to_bitset(n);
    for (j, step) in plan.steps().iter().enumerate() {
        let t = step.target();
        if t >= n || !unknown.contains(t) {
            return Err(Error::PlanInvalid(format!(
                "step {j} targets {t}, which is not an outstanding erasure"
            )));
        }
        let size = step.members().len();
        if !(MIN_RECOVERING_SET..=r).contains(&size) {
            return Err(Error::PlanInvalid(format!(
                "step {j} uses {size} symbols, outside 2..={r}"
            )));
        }
        if step.members().iter().any(|m| m >= n || unknown.contains(m)) {
            return Err(Error::PlanInvalid(format!(
                "step {j} reads a symbol that is still erased"
            )));
        }
        if !code.is_recovering_set(t, step.members()) {
            return Err(Error::PlanInvalid(format!(
                "step {j}: {:?} is not a recovering set of {t}",
                step.members()
            )));
        }
        unknown.remove(t);
    }
    if !unknown.is_empty() {
        return Err(Error::PlanInvalid(format!(
            "coordinates {:?} are never repaired",
            SupportSet::from_bitset(&unknown)
        )));
    }
    Ok(())
}
