//! Resource budgets for operations whose cost depends on class sizes.
//!
//! Conjugacy-class enumeration stores one 128-bit fingerprint per member, so
//! both its memory and its time scale with the class size, which is not
//! known in advance. Every operation that enumerates classes takes a
//! [`Budget`] and stops with [`BudgetExceeded`] instead of running away.
//! Exhausting a budget is never reported as a mathematical answer: callers
//! that cannot decide a question within budget return
//! [`Tri::Unknown`] rather than guessing.

use std::fmt;
use std::time::Duration;

use thiserror::Error;

/// Limits for a single class-enumeration call.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Maximum number of members a single conjugacy class may reach while
    /// being enumerated (one stored fingerprint each).
    pub max_class_members: u64,
    /// Wall-clock limit for a single class-enumeration call.
    pub class_time_limit: Duration,
}

impl Budget {
    /// Default limits: 5e6 members per class, 600 seconds per call.
    ///
    /// The member limit is deliberately conservative: enumeration keeps the
    /// breadth-first frontier as full image tables, so classes of ~2e7
    /// members peak at several GB. Raising the limit is safe on machines
    /// with enough memory (the CLI exposes it as `--budget-class-size`).
    pub const DEFAULT_MAX_CLASS_MEMBERS: u64 = 5_000_000;
    pub const DEFAULT_CLASS_TIME_LIMIT: Duration = Duration::from_secs(600);

    pub fn new(max_class_members: u64, class_time_limit: Duration) -> Self {
        Budget {
            max_class_members,
            class_time_limit,
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_class_members: Self::DEFAULT_MAX_CLASS_MEMBERS,
            class_time_limit: Self::DEFAULT_CLASS_TIME_LIMIT,
        }
    }
}

/// Which budget dimension ran out.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BudgetKind {
    ClassMembers,
    Time,
}

impl fmt::Display for BudgetKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BudgetKind::ClassMembers => write!(f, "class member limit"),
            BudgetKind::Time => write!(f, "time limit"),
        }
    }
}

/// A class enumeration stopped because it hit a resource limit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("budget exhausted ({kind}) enumerating the class of {class_rep} after {reached} members")]
pub struct BudgetExceeded {
    pub kind: BudgetKind,
    /// Cycle notation of the class representative being enumerated.
    pub class_rep: String,
    /// Members enumerated before stopping.
    pub reached: u64,
}

/// Outcome of a decision procedure that may run out of resources.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tri {
    Yes,
    No,
    /// The question was not decided; carries the budget failure that
    /// prevented a definite answer.
    Unknown(BudgetExceeded),
}

impl Tri {
    pub fn is_yes(&self) -> bool {
        matches!(self, Tri::Yes)
    }

    pub fn is_no(&self) -> bool {
        matches!(self, Tri::No)
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, Tri::Unknown(_))
    }
}

impl fmt::Display for Tri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tri::Yes => write!(f, "yes"),
            Tri::No => write!(f, "no"),
            Tri::Unknown(e) => write!(f, "unknown ({e})"),
        }
    }
}
