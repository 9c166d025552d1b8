use thiserror::Error;

use crate::subset::Subset;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("element {element} is outside the ground set 1..={n}")]
    OutOfRange { element: usize, n: usize },

    #[error("circuit axiom violated by {first} and {second}: {reason}")]
    AxiomViolation {
        first: Subset,
        second: Subset,
        reason: String,
    },

    #[error("{0} is not a circuit of the matroid")]
    NotACircuit(Subset),

    #[error("{0} is not a hyperplane of the matroid")]
    NotAHyperplane(Subset),

    #[error("{0} is dependent")]
    NotIndependent(Subset),

    #[error("element {element} is not in the closure of {set}")]
    NotInClosure { element: usize, set: Subset },

    #[error("{circuit} is not a circuit of the contracted family C_L/{element}")]
    NotInContraction { circuit: Subset, element: usize },

    #[error("deletion set {delete} and contraction set {contract} overlap")]
    Overlap { delete: Subset, contract: Subset },

    #[error("element {0} is a loop and cannot be contracted here")]
    LoopContraction(usize),

    #[error("the matroid has a loop at {0}; this operation requires a loop-free matroid")]
    LoopPresent(usize),

    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },

    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),

    #[error("instance too large: {0}")]
    TooLarge(String),

    #[error("invalid input: {0}")]
    Input(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
