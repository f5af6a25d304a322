use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Failure modes shared by every operation in the crate.
///
/// The variants map one-to-one onto the CLI exit codes: input errors exit
/// with 2, capacity errors with 3 and consistency errors with 4.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("input error: {0}")]
    Input(String),
    #[error("capacity exceeded: {what} is {got}, limit {limit}")]
    Capacity {
        what: &'static str,
        limit: usize,
        got: usize,
    },
    #[error("internal consistency error: {0}")]
    Consistency(String),
    #[error("contract error: {0}")]
    Contract(String),
}

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub fn consistency(msg: impl Into<String>) -> Self {
        Error::Consistency(msg.into())
    }

    pub(crate) fn check_cap(what: &'static str, got: usize, limit: usize) -> Result<()> {
        if got > limit {
            Err(Error::Capacity { what, limit, got })
        } else {
            Ok(())
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

/// Size limits for the exhaustive routines.
///
/// Every limit is explicit; exceeding one yields [`Error::Capacity`] instead
/// of falling back to an approximation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    /// Maximum vertex count for canonical labelling.
    pub canon: usize,
    /// Maximum vertex count for exact treewidth (and the tree-decomposition
    /// homomorphism counter).
    pub treewidth: usize,
    /// Maximum number of pattern edges indexed by an edge-subset mask.
    pub mask_bits: usize,
    /// Maximum number of vertex subsets a brute-force counter may visit.
    pub enumeration: u64,
    /// Maximum pattern size for brute-force embedding counts.
    pub brute_pattern: usize,
    /// Maximum vertex count of the pattern in the uncoloured basis.
    pub basis_k: usize,
    /// Maximum number of cells in a tree-decomposition DP table.
    pub dp_table: usize,
}

impl Caps {
    pub const DEFAULT: Caps = Caps {
        canon: 10,
        treewidth: 12,
        mask_bits: 25,
        enumeration: 50_000_000,
        brute_pattern: 5,
        basis_k: 5,
        dp_table: 1 << 21,
    };
}

impl Default for Caps {
    fn default() -> Self {
        Caps::DEFAULT
    }
}
