use exact_algebra::AlgebraError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CohomologyError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("group closure exceeded the cap of {cap} elements")]
    CapExceeded { cap: usize },
    #[error("generator {index} is not invertible")]
    BadGenerator { index: usize },
    #[error("the assignment on generators does not extend to a homomorphism")]
    NotAHomomorphism,
    #[error("element set is not closed under the group operation")]
    NotASubgroup,
    #[error("pairing is not equivariant for the group action")]
    NotEquivariant,
    #[error("cochain fails the cocycle identity")]
    NotACocycle,
    #[error("module/group size mismatch: {0}")]
    Shape(String),
    #[error("cohomology degree {0} not supported (only 0, 1, 2)")]
    Degree(u8),
    #[error("linear algebra would need {cells} cells, budget is {budget}")]
    Budget { cells: u64, budget: u64 },
}

pub type Result<T> = std::result::Result<T, CohomologyError>;
