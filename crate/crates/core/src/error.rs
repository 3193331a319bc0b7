use crate::cartan::Node;

/// Errors surfaced by the library.
///
/// Failures that are *results* rather than errors (a monomial that does not
/// factor, an incomparable pair, a conjecture check that does not hold) are
/// reported through `Option` / result types of the individual operations, not
/// through this enum.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("unsupported Cartan type {label}{rank}")]
    InvalidType { label: String, rank: usize },

    #[error("node {node} out of range 1..={rank}")]
    NodeOutOfRange { node: Node, rank: usize },

    #[error("monomial is not dominant")]
    NotDominant,

    #[error("monomial is not {k}-dominant")]
    NotKDominant { k: Node },

    #[error("monomial has support outside node {k}")]
    NotSingleNode { k: Node },

    #[error("decomposition failure at residual monomial {witness}")]
    Decomposition { witness: String },

    #[error("monomial closure exceeded the size cap of {0} monomials")]
    SizeCap(usize),

    #[error("inconsistent multiplicities at {witness} (input is not a q-character of the expected shape)")]
    Inconsistent { witness: String },

    #[error("cannot regroup color-{k} variables into W-blocks")]
    Regrouping { k: Node },

    #[error("X-series factorization routes disagree for i={i}, w={word:?}")]
    RouteMismatch { i: Node, word: Vec<Node> },

    #[error("quantum Cartan matrix is singular at the chosen evaluation point")]
    SingularMatrix,

    #[error("invalid monomial literal: {0}")]
    MonomialSyntax(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
