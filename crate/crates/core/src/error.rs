use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// The transitive closure of the given relation would contain a cycle.
    #[error("relation has a cycle through element {element}")]
    Cycle { element: usize },

    /// An element index fell outside the ground set `1..=d`.
    #[error("index {index} out of range for ground set of size {d}")]
    Index { index: usize, d: usize },

    /// Two posets that must share a ground-set size do not.
    #[error("ground-set sizes differ: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    /// An operation was asked to run outside its supported size range.
    #[error("{what} supports sizes {min}..={max}, got {d}")]
    Size {
        what: &'static str,
        d: usize,
        min: usize,
        max: usize,
    },

    /// An operation defined only for even dimension was called with odd d.
    #[error("operation requires even dimension, got d = {d}")]
    OddDimension { d: usize },

    /// Input points do not affinely span the ambient dimension.
    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    /// A predicate that requires a validated H-representation was given an
    /// unvalidated or failed one.
    #[error("H-representation was not validated: {0}")]
    UnvalidatedInput(String),

    /// A recomputed table cell disagrees with the embedded golden constant.
    #[error("golden mismatch in {table} at {cell}: expected {expected}, got {actual}")]
    GoldenMismatch {
        table: String,
        cell: String,
        expected: String,
        actual: String,
    },

    /// A census pair exceeded the facet bound. Carries a dump of the pair in
    /// the poset text format so the counterexample can be replayed.
    #[error("facet bound violated at d = {d}: count {count} > bound {bound}\n{pair_dump}")]
    BoundViolation {
        d: usize,
        count: u64,
        bound: String,
        pair_dump: String,
    },

    /// Malformed poset text or structured input.
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
