//! Enumeration budget shared by every exhaustive search.

use std::sync::atomic::{AtomicU64, Ordering};

use thiserror::Error;

/// Default number of candidate checks an exhaustive search may perform.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error(
    "enumeration budget exceeded: limit {limit}, attempted at least {estimate} candidate checks"
)]
pub struct BudgetExceeded {
    pub limit: u64,
    pub estimate: u64,
}

/// Counter of candidate checks. Exceeding the limit is a hard error; searches
/// never truncate silently.
#[derive(Debug)]
pub struct Budget {
    limit: u64,
    used: AtomicU64,
}

impl Budget {
    pub fn new(limit: u64) -> Self {
        Budget {
            limit,
            used: AtomicU64::new(0),
        }
    }

    pub fn unlimited() -> Self {
        Budget::new(u64::MAX)
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn used(&self) -> u64 {
        self.used.load(Ordering::Relaxed)
    }

    pub fn spend(&self, n: u64) -> Result<(), BudgetExceeded> {
        let before = self.used.fetch_add(n, Ordering::Relaxed);
        let after = before.saturating_add(n);
        if after > self.limit {
            Err(BudgetExceeded {
                limit: self.limit,
                estimate: after,
            })
        } else {
            Ok(())
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(DEFAULT_BUDGET)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exceeding_the_limit_is_an_error() {
        let b = Budget::new(10);
        assert!(b.spend(10).is_ok());
        let err = b.spend(1).unwrap_err();
        assert_eq!(err.limit, 10);
        assert_eq!(err.estimate, 11);
    }
}
