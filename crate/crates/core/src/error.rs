use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is not square ({rows}×{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("Lie algebra axioms violated: {0:?}")]
    InvalidAlgebra(Vec<crate::liealg::AxiomViolation>),
    #[error("not a subalgebra: bracket of spanning vectors {0} and {1} leaves the span")]
    NotSubalgebra(usize, usize),
    #[error("module {id:?} violates ρ([aᵢ,aⱼ]) = [ρ(aᵢ),ρ(aⱼ)] at pairs {pairs:?}")]
    InvalidModule { id: String, pairs: Vec<(usize, usize)> },
    #[error("modules belong to different Lie algebras")]
    ParentMismatch,
    #[error("empty submodule")]
    EmptySubmodule,
    #[error("category closure exceeds the object cap of {cap}")]
    ObjectCap { cap: usize },
    #[error("family has {found} entries but the closure has {expected} objects")]
    FamilyShape { expected: usize, found: usize },
    #[error("not diagonalizable over ℚ: {0}")]
    NotDiagonalizable(String),
    #[error("action on object {object:?} is not nilpotent")]
    NotNilpotent { object: String },
    #[error("non-integer eigenvalue {value} on object {object:?}")]
    NonIntegerEigenvalue { object: String, value: String },
    #[error("not invertible on the image of the idempotent; kernel witness {witness:?}")]
    NotInvertible { witness: Vec<String> },
    #[error("not an idempotent")]
    NotIdempotent,
    #[error("element does not commute with the idempotent")]
    IdempotentMismatch,
    #[error("module {0:?} is not irreducible")]
    NotIrreducible(String),
    #[error("modules {0:?} and {1:?} are isomorphic")]
    IsomorphicInputs(String, String),
    #[error("object {0:?} is not a direct sum of the supplied irreducibles")]
    NotIsotypic(String),
    #[error("component for {0:?} does not commute with its commutant")]
    CommutantViolation(String),
    #[error("inconsistent coefficient functional: {0}")]
    InconsistentFunctional(String),
    #[error("nilpotency class {class} exceeds the BCH table depth {max}")]
    ClassTooLarge { class: usize, max: usize },
    #[error("algebra is not nilpotent")]
    NotNilpotentAlgebra,
    #[error("actions do not commute")]
    NonCommuting,
    #[error("generator count {found} exceeds the cap {cap}")]
    CapExceeded { cap: usize, found: usize },
    #[error("point violates a monoid relation: {0}")]
    RelationInconsistency(String),
    #[error("weight {0:?} is not in the weight monoid")]
    WeightNotRepresentable(Vec<i64>),
    #[error("unknown object or parameter {0:?}")]
    Unknown(String),
}
