use std::cell::Cell;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// A construction produced more states than the global state budget allows.
    #[error("state budget of {limit} states exceeded")]
    Budget { limit: usize },

    /// A search ran out of its step budget before reaching a verdict.
    #[error("search step budget of {limit} steps exhausted")]
    Timeout { limit: u64 },

    #[error("arity mismatch: {0}")]
    Arity(String),

    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),

    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),

    #[error("symbol `{0}` is not in the alphabet")]
    UnknownSymbol(String),

    #[error("index {index} out of range (must be below {bound})")]
    IndexOutOfRange { index: usize, bound: usize },

    #[error("malformed track permutation: {0}")]
    Permutation(String),

    #[error("malformed automaton: {0}")]
    Malformed(String),

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("invalid coloring: {0}")]
    InvalidColoring(String),

    #[error("fresh symbol `{0}` already occurs in the alphabet")]
    SymbolClash(String),

    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },

    #[error("json: {0}")]
    Json(String),

    #[error("invalid Turing machine: {0}")]
    Machine(String),

    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}

impl Error {
    /// True for errors meaning "gave up" rather than "the input is wrong".
    pub fn is_resource_exhaustion(&self) -> bool {
        matches!(self, Error::Budget { .. } | Error::Timeout { .. })
    }
}

pub const DEFAULT_STATE_BUDGET: usize = 1_000_000;

thread_local! {
    static STATE_BUDGET: Cell<usize> = const { Cell::new(DEFAULT_STATE_BUDGET) };
}

/// Sets the cap, for the calling thread, on the number of states any single
/// construction may create.
pub fn set_state_budget(limit: usize) {
    STATE_BUDGET.with(|b| b.set(limit.max(1)));
}

pub fn state_budget() -> usize {
    STATE_BUDGET.with(Cell::get)
}

pub(crate) fn check_states(count: usize) -> Result<()> {
    let limit = state_budget();
    if count > limit {
        Err(Error::Budget { limit })
    } else {
        Ok(())
    }
}

/// Cooperative step counter for long-running searches.
#[derive(Debug, Clone)]
pub struct StepBudget {
    limit: u64,
    used: u64,
}

impl StepBudget {
    pub fn new(limit: u64) -> Self {
        StepBudget { limit, used: 0 }
    }

    pub fn unlimited() -> Self {
        StepBudget::new(u64::MAX)
    }

    pub fn tick(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.limit {
            Err(Error::Timeout { limit: self.limit })
        } else {
            Ok(())
        }
    }

    pub fn used(&self) -> u64 {
        self.used
    }
}

impl Default for StepBudget {
    fn default() -> Self {
        StepBudget::new(50_000_000)
    }
}
