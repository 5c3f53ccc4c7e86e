//! Unitary reachability analysis for ground-state cooling.
//!
//! Given a bipartite system-bath density matrix, this crate decides whether a
//! global unitary can drive the system into its ground state, computes the
//! exact achievable ground-population bound (the sum of the `N_B` largest
//! joint eigenvalues), constructs explicit cooling unitaries when the
//! transformation is feasible, and contrasts these rigorous results against
//! factorized-initial-state Lindblad predictions.
//!
//! Index convention: joint states use system-major Kronecker ordering
//! throughout, i.e. joint basis index `= m * n_bath + j` for system level `m`
//! and bath level `j`. The system ground state is level 0.

pub mod dynamics;
pub mod error;
pub mod feasibility;
pub mod linalg;
pub mod scenarios;
pub mod spectral;
pub mod tol;

pub use error::Error;
pub use feasibility::{FeasibilityReport, Pairing, Verdict};
pub use linalg::{BipartiteDims, DensityMatrix, HermitianOperator, Keep, UnitaryMatrix};
pub use spectral::{RankReport, Spectrum};
pub use tol::Tolerances;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
