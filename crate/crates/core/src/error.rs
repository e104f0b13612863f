use thiserror::Error;

use crate::report::Violation;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("exponential needs a series with vanishing constant term")]
    NonNilpotentExponent,
    #[error("basis mismatch: {0}")]
    BasisMismatch(String),
    #[error("schema error: {0}")]
    Schema(String),
    #[error("Leibniz identity fails: {0}")]
    LeibnizViolation(Box<Violation>),
    #[error("ideal sandwich violated: {0}")]
    IdealSandwichViolation(String),
    #[error("degree cap exceeded: need degree {needed}, cap is {cap}")]
    DegreeCapExceeded { needed: usize, cap: usize },
    #[error("axiom violation: {0}")]
    AxiomViolation(Box<Violation>),
    #[error("gauge map is not equivariant: {0}")]
    GaugeEquivarianceViolation(Box<Violation>),
    #[error("decomposition failed: {0}")]
    DecompositionFailure(String),
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
}

pub type Result<T> = std::result::Result<T, Error>;
