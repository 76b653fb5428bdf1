use thiserror::Error;

/// Errors surfaced by the counting and recurrence-mining pipeline.
#[derive(Debug, Error)]
pub enum CoreError {
    /// `k` outside the supported range for the requested operation.
    #[error("unsupported chord step k={0}: supported range is {1}")]
    UnsupportedK(usize, &'static str),

    /// `n` too small for the requested graph family (G(n,k) needs n ≥ 3,
    /// and n > 2k for the graph to be simple and cubic).
    #[error("n={n} is out of range for k={k}: {reason}")]
    BadOrder { n: usize, k: usize, reason: &'static str },

    /// A stored value window was too short to carry out a zero test or
    /// sequence extraction at the requested index.
    #[error("value window exhausted: needed index {needed}, window ends at {end}")]
    WindowExhausted { needed: usize, end: usize },

    /// Golden data file missing or malformed.
    #[error("golden data `{name}`: {problem}")]
    GoldenData { name: String, problem: String },

    /// Berlekamp–Massey was given fewer terms than it needs to pin down a
    /// recurrence of the requested order.
    #[error("sequence too short: {have} terms, need at least {need}")]
    SequenceTooShort { have: usize, need: usize },

    /// Recurrence mining exhausted its retry budget without producing a
    /// verified polynomial.
    #[error("recurrence mining failed: {0}")]
    Mining(String),
}
