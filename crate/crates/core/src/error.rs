//! Error types shared across the crate.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("division by zero")]
    DivisionByZero,
    #[error("unrecognized base field `{0}` (expected Q or Fp with p an odd prime)")]
    BadField(String),
    #[error("jet has odd valuation {0}; no square root exists")]
    OddValuation(i64),
    #[error("leading jet coefficient is not a recognized square in k; a degree-{degree} extension would be needed")]
    NeedsEtaleExtension { degree: u64 },
    #[error("operation on jets with incompatible fields")]
    FieldMismatch,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("generators span a module of rank {0} < 8")]
    RankDeficient(usize),
    #[error("lattice containment does not hold")]
    NotContained,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("residue isotropic-vector search failed; a degree-{degree} etale extension would be needed")]
    NeedsEtaleExtension { degree: u64 },
    #[error("internal invariant failed: {0}")]
    Internal(String),
    #[error("quasi-split standard form reached for a lattice rationally equivalent to the split algebra; input is inconsistent")]
    QuasiSplitInconsistency,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReduceError {
    #[error("input does not satisfy the precondition: {0}")]
    Precondition(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum JsonError {
    #[error("malformed document: {0}")]
    Malformed(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}
