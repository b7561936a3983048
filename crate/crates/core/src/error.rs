use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{line}:{col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },

    #[error("predicate `{0}` is not declared in the schema")]
    UnknownPredicate(String),

    #[error("predicate `{pred}` has arity {expected}, used with {found} arguments")]
    Arity {
        pred: String,
        expected: usize,
        found: usize,
    },

    #[error("unsafe rule: {0}")]
    Unsafe(String),

    #[error("fact `{0}` is outside the fact universe")]
    OutsideUniverse(String),

    #[error("literal `{0}` is not an element of the literal universe")]
    NotInLits(String),

    #[error("invalid priority: {0}")]
    InvalidPriority(String),

    #[error("budget exceeded: {0}")]
    Budget(String),

    #[error("invalid input: {0}")]
    Invalid(String),
}

/// Caps for the exponential enumerations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest universe (or action set) an exhaustive subset enumeration may range over.
    pub max_universe: usize,
    /// Largest number of completions the completion enumeration may produce.
    pub max_completions: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_universe: 22,
            max_completions: 1_000_000,
        }
    }
}

impl Limits {
    pub(crate) fn check_universe(&self, what: &str, n: usize) -> Result<()> {
        if n > self.max_universe || n > 62 {
            return Err(Error::Budget(format!(
                "{what} ranges over {n} elements (limit {})",
                self.max_universe.min(62)
            )));
        }
        Ok(())
    }
}
