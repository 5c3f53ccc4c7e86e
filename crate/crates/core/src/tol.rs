use serde::{Deserialize, Serialize};

/// Central tolerance configuration. Every numerical check in the crate reads
/// its threshold from here so that property tests have a single point of
/// truth.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Max allowed |M_ij - conj(M_ji)| for a matrix to count as Hermitian.
    pub hermiticity: f64,
    /// Max allowed |Tr(rho) - 1|.
    pub trace: f64,
    /// Eigenvalues of a density matrix must be >= -psd.
    pub psd: f64,
    /// Max allowed entry of |U^dag U - I|.
    pub unitarity: f64,
    /// Elementwise tolerance for sorted-spectrum comparison.
    pub spectrum_match: f64,
    /// Relative scale for eigendecomposition reconstruction residuals.
    pub reconstruction: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            hermiticity: 1e-12,
            trace: 1e-10,
            psd: 1e-10,
            unitarity: 1e-10,
            spectrum_match: 1e-10,
            reconstruction: 1e-10,
        }
    }
}

/// Default numerical-rank cutoff: `dim * eps * largest_eigenvalue`.
pub fn default_rank_tol(dim: usize, largest_eigenvalue: f64) -> f64 {
    (dim as f64) * f64::EPSILON * largest_eigenvalue.max(f64::EPSILON)
}
