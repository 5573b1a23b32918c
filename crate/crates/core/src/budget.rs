use crate::error::{Error, Result};

/// Upper bound on the number of elementary checks an exhaustive loop may
/// perform before giving up with [`Error::ResourceLimit`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget(pub u64);

impl Budget {
    pub const DEFAULT: Budget = Budget(100_000_000);

    pub const UNLIMITED: Budget = Budget(u64::MAX);

    pub fn check(self, needed: u64) -> Result<()> {
        if needed > self.0 {
            Err(Error::ResourceLimit {
                needed,
                budget: self.0,
            })
        } else {
            Ok(())
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::DEFAULT
    }
}
