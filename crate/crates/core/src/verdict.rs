//! Three-valued decision results.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default step budget for exponential enumerations.
pub const DEFAULT_STEP_BUDGET: u64 = 10_000_000;

/// Value part of a [`Verdict`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Answer {
    Yes,
    No,
    Unknown,
}

impl fmt::Display for Answer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Answer::Yes => "yes",
            Answer::No => "no",
            Answer::Unknown => "unknown",
        })
    }
}

/// Note attached to an `unknown` verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Exhausted {
    pub budget: u64,
}

/// A decision carrying a witness on both sides.
///
/// `Yes` and `No` always hold a checkable payload; `Unknown` records the
/// budget that ran out.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "value", content = "witness", rename_all = "lowercase")]
pub enum Verdict<Y, N> {
    Yes(Y),
    No(N),
    Unknown(Exhausted),
}

impl<Y, N> Verdict<Y, N> {
    pub fn answer(&self) -> Answer {
        match self {
            Verdict::Yes(_) => Answer::Yes,
            Verdict::No(_) => Answer::No,
            Verdict::Unknown(_) => Answer::Unknown,
        }
    }

    pub fn is_yes(&self) -> bool {
        matches!(self, Verdict::Yes(_))
    }

    pub fn is_no(&self) -> bool {
        matches!(self, Verdict::No(_))
    }

    pub fn yes(&self) -> Option<&Y> {
        match self {
            Verdict::Yes(y) => Some(y),
            _ => None,
        }
    }

    pub fn no(&self) -> Option<&N> {
        match self {
            Verdict::No(n) => Some(n),
            _ => None,
        }
    }

    /// Turns a budget error into `Unknown`, passing other errors through.
    pub fn from_result(r: Result<Verdict<Y, N>>) -> Result<Verdict<Y, N>> {
        match r {
            Err(Error::BudgetExhausted(budget)) => Ok(Verdict::Unknown(Exhausted { budget })),
            other => other,
        }
    }
}

/// Counts recursion steps against a fixed limit.
#[derive(Debug, Clone)]
pub struct Steps {
    limit: u64,
    used: u64,
}

impl Steps {
    pub fn new(limit: u64) -> Self {
        Steps { limit, used: 0 }
    }

    #[inline]
    pub fn tick(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.limit {
            Err(Error::BudgetExhausted(self.limit))
        } else {
            Ok(())
        }
    }

    pub fn used(&self) -> u64 {
        self.used
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }
}
