//! Deformed-oscillator realizations of cubic algebras and the structure
//! function they induce.

mod expr;
mod realize;
mod structure;

pub use expr::{LadderExpr, PhiMono, PhiPoly};
pub use realize::{choose_rho, derive_realization, OscRealization, RealizationCase};
pub use structure::{
    ac_residual, bc_residual, casimir_ladder, derive_structure_function, relation_residuals, StructureFunction,
};

use thiserror::Error;

use crate::algebra::AlgebraError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LadderError {
    #[error("unsupported case: beta = 0 and delta = 0")]
    UnsupportedCase,
    #[error("delta = {0} is not a perfect square of a monomial fraction")]
    NotPerfectSquare(String),
    #[error("{0} is not invertible over the declared denominators")]
    NonInvertible(String),
    #[error("singular system: the two structure-function relations are dependent")]
    SingularSystem,
    #[error("non-polynomial structure function: {0}")]
    NonPolynomialPhi(String),
    #[error("shift inconsistency: Phi(N+1) from the relations differs from Phi(N) shifted")]
    ShiftInconsistency,
    #[error("inconsistent realization: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}
