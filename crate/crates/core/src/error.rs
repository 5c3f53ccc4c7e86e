use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("matrix is not Hermitian: max |M_ij - conj(M_ji)| = {max_asymmetry:.3e} > {tol:.3e}")]
    NotHermitian { max_asymmetry: f64, tol: f64 },

    #[error("matrix is not unitary: max |U^dag U - I| = {max_deviation:.3e} > {tol:.3e}")]
    NotUnitary { max_deviation: f64, tol: f64 },

    #[error("matrix is not positive semidefinite: smallest eigenvalue {min_eigenvalue:.3e}")]
    NotPositiveSemidefinite { min_eigenvalue: f64 },

    #[error("trace {trace:.12} deviates from 1 beyond tolerance {tol:.3e}")]
    TraceNotOne { trace: f64, tol: f64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("eigendecomposition failed: reconstruction residual {residual:.3e}")]
    DecompositionFailure { residual: f64 },

    #[error("certificate unitary failed verification: ground population {achieved:.12} < 1")]
    InfeasiblePairing { achieved: f64 },

    #[error("invalid correlated-state split: partial sum {partial_sum:.12}, expected {expected:.12}")]
    InvalidSplit { partial_sum: f64, expected: f64 },

    #[error("thermal spec would overflow: max |E_i/T| = {exponent:.3e}")]
    OverflowGuard { exponent: f64 },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("integrator step too large: dt = {dt:.3e}, limit {limit:.3e}")]
    StepSizeTooLarge { dt: f64, limit: f64 },

    #[error("state lost positivity at t = {time:.6}: smallest eigenvalue {min_eigenvalue:.3e}")]
    PositivityLoss { min_eigenvalue: f64, time: f64 },
}
