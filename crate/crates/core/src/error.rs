use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid grid: {0}")]
    Grid(String),

    #[error("config error: {0}")]
    Config(String),

    #[error("nonpositive conductivity (min = {0})")]
    NonpositiveConductivity(f64),

    #[error("conjugate gradient breakdown: operator is not positive definite (p.Ap = {0})")]
    CgBreakdown(f64),

    #[error("linear solver did not converge: {0}")]
    SolverStalled(String),

    #[error("interface seed is empty or degenerate: {0}")]
    EmptyInterface(String),

    #[error("narrow band too thin: {0}")]
    BandTooThin(String),

    #[error("degenerate support domain: {0}")]
    DegenerateSupport(String),

    #[error("infeasible admissible set: {0}")]
    InfeasibleSet(String),

    #[error("optimizer stagnated: {0}")]
    Stagnation(String),

    #[error("budget exhausted: {0}")]
    BudgetExhausted(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("malformed output file: {0}")]
    OutputFormat(String),
}

pub type Result<T> = std::result::Result<T, Error>;
