//! Error taxonomy shared by every module.
//!
//! Domain errors describe *why* an input is outside a function's domain
//! (non-stable graph, odd valency, cap blown, ...); `Parse`/`Io` exist so the
//! CLI and FFI layers can distinguish malformed input (exit 2 / their own
//! status codes) from well-formed input that the mathematics rejects (exit 1).

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Structurally broken graph data: duplicate ids, dangling edge
    /// endpoints, no vertices, or a disconnected vertex set.
    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    /// A vertex violates `2·genus − 2 + valency > 0`, or the total genus
    /// is below 2.
    #[error("graph is not stable: {0}")]
    NotStable(String),

    /// An edge subset that must lie in the cycle space has a vertex of odd
    /// valency.
    #[error("edge subset is not eulerian: {0}")]
    NotEulerian(String),

    /// Exhaustive enumeration would exceed the configured cap.
    #[error("enumeration cap exceeded: rank {rank} with cap {cap} (2^rank subsets requested)")]
    CapExceeded { rank: usize, cap: u32 },

    /// The twisting exponent is below the floor of 10 under which the
    /// multidegree statements are not asserted.
    #[error("t = {0} is not supported: the inequality machinery requires t >= 10")]
    BadT(i64),

    /// Subcurve enumeration is exponential in the component count.
    #[error("too many components: {count} exceeds the subcurve-enumeration limit {limit}")]
    TooManyComponents { count: usize, limit: usize },

    /// A structure-theorem check was invoked on a graph outside the
    /// theorem's hypothesis.
    #[error("hypothesis not met: {0}")]
    HypothesisNotMet(String),

    /// A search space whose raw candidate count exceeds the exhaustive
    /// budget, or a canonical form requested beyond the exact range.
    #[error("search space too large: {0}")]
    SpaceTooLarge(String),

    /// The requested double cover falls apart into two components — the
    /// combinatorial shadow of the trivial square root, which is excluded.
    #[error("cover is disconnected: the monodromy data describes the trivial double cover")]
    Disconnected,

    /// Monodromy data with an invalid split/connected assignment.
    #[error("invalid monodromy: {0}")]
    SplitInvalid(String),

    /// Checked integer arithmetic overflowed (absurdly large t or genus).
    #[error("arithmetic overflow: {0}")]
    Overflow(String),

    /// Malformed JSON or schema violation in an input document.
    #[error("parse error: {0}")]
    Parse(String),

    /// Filesystem-level failure while reading input or writing output.
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
