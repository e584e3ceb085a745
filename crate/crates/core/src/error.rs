use std::sync::atomic::{AtomicU64, Ordering};

/// Errors shared by every module in the crate.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    /// Malformed input: bad syntax, unknown names, mismatched posets.
    #[error("input error: {0}")]
    Input(String),
    /// A bounded search ran out of its node budget.
    #[error("budget exhausted: {0}")]
    Budget(String),
    /// An operation was called on a game outside its supported class.
    #[error("precondition violation: {0}")]
    Precondition(String),
    /// An internal invariant failed; this is a bug.
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    /// Process exit code for the CLI: 1 input, 2 budget, 3 precondition.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Input(_) | Error::Internal(_) => 1,
            Error::Budget(_) => 2,
            Error::Precondition(_) => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

/// Countdown over "expanded nodes" that caps every exponential search.
///
/// One budget is shared across the searches of a single invocation, so a
/// pipeline cannot exceed the global cap by splitting work across stages.
#[derive(Debug)]
pub struct Budget {
    remaining: AtomicU64,
}

pub const DEFAULT_BUDGET: u64 = 10_000_000;

impl Budget {
    pub fn new(nodes: u64) -> Self {
        Budget { remaining: AtomicU64::new(nodes) }
    }

    /// Consume `n` nodes, failing once the budget is spent.
    pub fn tick(&self, n: u64, what: &str) -> Result<()> {
        let prev = self.remaining.fetch_sub(n, Ordering::Relaxed);
        if prev < n {
            self.remaining.store(0, Ordering::Relaxed);
            return Err(Error::Budget(format!("{what} exceeded the node budget")));
        }
        Ok(())
    }

    pub fn remaining(&self) -> u64 {
        self.remaining.load(Ordering::Relaxed)
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(DEFAULT_BUDGET)
    }
}
