//! Recovering sets, recoverability verification, repair planning and
//! erasure decoding for arbitrary binary codes.

mod composition;
mod decode;
mod index;
mod plan;
mod verify;

pub use composition::{verify_composition, CompositionReport, ConditionOutcome};
pub use decode::sequential_decode;
pub use index::{recovering_sets, RecoveringSet, RecoveryIndex};
pub use plan::{repair_plan, repair_plan_by, validate_plan, RepairPlan, Stuck};
pub use verify::{
    max_sequential_t, pattern_ok, scan_level, verify_recoverability, verify_scope, Mode, Scope,
    VerifyReport,
};
