use thiserror::Error;

#[derive(Debug, Error)]
pub enum DeformationError {
    #[error(transparent)]
    Algebra(#[from] exact_algebra::AlgebraError),

    #[error(transparent)]
    Cohomology(#[from] group_cohomology::CohomologyError),

    #[error("coefficient ring is not artinian local with finite residue field: {0}")]
    NotArtinianLocal(String),

    #[error("residue field mismatch between test ring and residual representation")]
    ResidueFieldMismatch,

    #[error("generator image {index} does not reduce to the residual representation")]
    BadReduction { index: usize },

    #[error("relator {index} is not killed by the supplied images")]
    RelatorViolated { index: usize },

    #[error("letter {letter} in relator {index} is out of range")]
    BadLetter { index: usize, letter: i32 },

    #[error("generator image {index} is not invertible")]
    NotInvertible { index: usize },

    #[error("determinant of generator image {index} deviates from the required character")]
    DeterminantMismatch { index: usize },

    #[error("residual representation has endomorphisms beyond scalars; Schur precondition fails")]
    NotSchur,

    #[error("enumeration budget of {budget} candidates exceeded")]
    Budget { budget: u64 },

    #[error("shape error: {0}")]
    Shape(String),
}

pub type Result<T> = std::result::Result<T, DeformationError>;
