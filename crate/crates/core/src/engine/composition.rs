use alloc::format;
use alloc::vec::Vec;

use super::index::RecoveryIndex;
use super::verify::{verify_recoverability, verify_scope, Mode, Scope, VerifyReport};
use crate::budget::Budget;
use crate::combin::binomial_sum;
use crate::error::{Error, Result};
use crate::gf2::SupportSet;

/// Result of one of the four composition conditions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionOutcome {
    /// Condition number, 1 to 4.
    pub condition: u8,
    pub holds: bool,
    pub patterns_checked: u64,
    pub witness: Option<SupportSet>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompositionReport {
    pub t1: usize,
    pub t2: usize,
    pub conditions: Vec<ConditionOutcome>,
    /// Direct sequential check at `t1 + t2 + 1`, run when all four
    /// conditions hold and the value is below `n`.
    pub cross_check: Option<VerifyReport>,
}

impl CompositionReport {
    pub fn holds(&self) -> bool {
        self.conditions.iter().all(|c| c.holds)
    }

    pub fn t(&self) -> usize {
        self.t1 + self.t2 + 1
    }

    pub fn first_violation(&self) -> Option<&ConditionOutcome> {
        self.conditions.iter().find(|c| !c.holds)
    }
}

/// Checks the partition conditions under which a code is sequentially
/// recoverable from `t1 + t2 + 1` erasures:
///
/// 1. patterns `E ⊆ A`, `|E| ≤ t1`, repairable from inside `A ∖ E`;
/// 2. patterns `E ⊆ A`, `|E| ≤ t1 + t2 + 1`, repairable from `[n] ∖ E`;
/// 3. patterns `E ⊆ B`, `|E| ≤ t2`, repairable from inside `B ∖ E`;
/// 4. patterns `E ⊆ B`, `|E| ≤ t1 + t2 + 1`, repairable from `[n] ∖ E`.
///
/// When all four hold the conclusion is cross-checked directly; a
/// disagreement is reported as an invariant error.
pub fn verify_composition(
    index: &RecoveryIndex,
    a: &SupportSet,
    b: &SupportSet,
    t1: usize,
    t2: usize,
    budget: Budget,
) -> Result<CompositionReport> {
    let n = index.n();
    if !a.is_disjoint(b)
        || a.len() + b.len() != n
        || a.max().is_some_and(|m| m >= n)
        || b.max().is_some_and(|m| m >= n)
    {
        return Err(Error::arg("A and B must partition the coordinates"));
    }
    let t = t1 + t2 + 1;
    let specs: [(u8, &SupportSet, usize, bool); 4] = [
        (1, a, t1, true),
        (2, a, t, false),
        (3, b, t2, true),
        (4, b, t, false),
    ];
    let needed: u64 = specs
        .iter()
        .map(|&(_, u, size, _)| binomial_sum(u.len(), 1, size.min(u.len())))
        .fold(0u64, u64::saturating_add);
    budget.check(needed)?;

    let mut conditions = Vec::with_capacity(4);
    for (condition, universe, size, local) in specs {
        let scope = Scope::within(n, universe, local.then_some(universe));
        let rep = verify_scope(index, &scope, size, Mode::Sequential, Budget::UNLIMITED)?;
        conditions.push(ConditionOutcome {
            condition,
            holds: rep.verdict,
            patterns_checked: rep.patterns_checked,
            witness: rep.counterexample,
        });
    }
    let mut report = CompositionReport {
        t1,
        t2,
        conditions,
        cross_check: None,
    };
    if report.holds() && t < n {
        let direct = verify_recoverability(index, t, Mode::Sequential, budget)?;
        if !direct.verdict {
            return Err(Error::Invariant(format!(
                "composition conditions hold but {:?} is not repairable",
                direct.counterexample
            )));
        }
        report.cross_check = Some(direct);
    }
    Ok(report)
}
