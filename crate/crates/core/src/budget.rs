//! Wall-clock budgets for exact searches.
//!
//! Budgets are checked at DFS-node granularity. A check samples the clock
//! only every `CHECK_INTERVAL` ticks so the hot loop stays cheap.

use std::time::{Duration, Instant};

use crate::error::Error;

const CHECK_INTERVAL: u64 = 256;

/// A wall-clock budget handed down into a solver.
#[derive(Debug, Clone)]
pub struct Budget {
    deadline: Option<Instant>,
    limit: Option<Duration>,
    ticks: u64,
}

impl Budget {
    /// No limit; `tick` never fails.
    pub fn unlimited() -> Self {
        Budget {
            deadline: None,
            limit: None,
            ticks: 0,
        }
    }

    /// Budget of `ms` milliseconds starting now.
    pub fn with_millis(ms: u64) -> Self {
        let limit = Duration::from_millis(ms);
        Budget {
            deadline: Some(Instant::now() + limit),
            limit: Some(limit),
            ticks: 0,
        }
    }

    pub fn from_opt_millis(ms: Option<u64>) -> Self {
        match ms {
            Some(ms) => Budget::with_millis(ms),
            None => Budget::unlimited(),
        }
    }

    pub fn limit_millis(&self) -> Option<u64> {
        self.limit.map(|d| d.as_millis() as u64)
    }

    /// Counts one search node. Fails with `Error::BudgetExceeded` once the
    /// deadline has passed; `context` describes what was being searched.
    #[inline]
    pub fn tick(&mut self, context: &str) -> Result<(), Error> {
        self.ticks += 1;
        if self.ticks % CHECK_INTERVAL == 0 {
            if let Some(deadline) = self.deadline {
                if Instant::now() > deadline {
                    return Err(Error::BudgetExceeded(context.to_string()));
                }
            }
        }
        Ok(())
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::unlimited()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unlimited_never_trips() {
        let mut b = Budget::unlimited();
        for _ in 0..100_000 {
            b.tick("test").unwrap();
        }
    }

    #[test]
    fn expired_budget_trips() {
        let mut b = Budget::with_millis(0);
        std::thread::sleep(Duration::from_millis(5));
        let mut tripped = false;
        for _ in 0..2 * CHECK_INTERVAL {
            if b.tick("expired test").is_err() {
                tripped = true;
                break;
            }
        }
        assert!(tripped);
    }
}
