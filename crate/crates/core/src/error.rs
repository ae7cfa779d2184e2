use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// `j + d - n` is odd, so no admissible cover realises the pair.
    #[error("boundary type j={j}, mu={mu} is not admissible: j + d - n = {sum} is odd")]
    Parity { j: i64, mu: String, sum: i64 },

    /// The joint (Z, N) correction needs a part of `mu` equal to 1.
    #[error("correction 2 is not applicable to mu={0}: no part equals 1")]
    NotApplicable(String),

    /// A property guaranteed by the theory failed; this signals a bug.
    #[error("invariant violated: {0}")]
    Invariant(String),

    /// Scaled integer arithmetic in the lattice search left the i128 range.
    #[error("integer overflow in lattice search")]
    Overflow,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
