use thiserror::Error;

/// Errors produced by the solver library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{quantity} must be non-negative, got {value}")]
    Negative { quantity: &'static str, value: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("unknown molecule '{name}'; available: {}", available.join(", "))]
    UnknownMolecule {
        name: String,
        available: Vec<String>,
    },

    #[error("molecule registry line {line}: {message}")]
    Registry { line: usize, message: String },

    #[error("unsupported case: {0}")]
    Unsupported(String),

    #[error("degenerate potential: {0}")]
    DegeneratePotential(String),

    #[error("special case A2 = A4 = 0 not applicable: V2 = {v2}, m1c^2 = {m1c2}")]
    SpecialCaseNotApplicable { v2: f64, m1c2: f64 },

    #[error("degenerate recurrence: Z_{index} = 0")]
    DegenerateRecurrence { index: usize },

    #[error("divergent: {0}")]
    Divergent(String),

    #[error("invalid request: {0}")]
    InvalidRequest(String),

    #[error(
        "provenance mismatch: closed-form inputs {closed_form:016x}, oracle inputs {oracle:016x}"
    )]
    ProvenanceMismatch { closed_form: u64, oracle: u64 },

    #[error("no convergence: {0}")]
    Convergence(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
