//! Dense complex linear algebra on density matrices and unitaries:
//! Hermitian eigendecomposition, Kronecker products, partial trace, unitary
//! conjugation, matrix exponentials, and seedable Haar-random sampling.
//!
//! All joint-space indexing is system-major: the system index is the slow
//! index, so joint basis state `|m>|j>` lives at row `m * n_bath + j`.

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::tol::Tolerances;
use crate::Result;

pub type CMatrix = DMatrix<C64>;

/// Which subsystem `partial_trace` keeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Keep {
    System,
    Bath,
}

/// System and bath Hilbert-space dimensions for a bipartite joint space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BipartiteDims {
    pub n_system: usize,
    pub n_bath: usize,
}

impl BipartiteDims {
    pub fn new(n_system: usize, n_bath: usize) -> Result<Self> {
        if n_system == 0 || n_bath == 0 {
            return Err(Error::InvalidInput(
                "bipartite dimensions must both be >= 1".into(),
            ));
        }
        Ok(Self { n_system, n_bath })
    }

    pub fn joint(&self) -> usize {
        self.n_system * self.n_bath
    }
}

fn max_asymmetry(m: &CMatrix) -> f64 {
    let n = m.nrows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in i..n {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    worst
}

fn require_hermitian(m: &CMatrix, tol: f64) -> Result<()> {
    if m.nrows() != m.ncols() {
        return Err(Error::DimensionMismatch {
            expected: m.nrows(),
            found: m.ncols(),
        });
    }
    let asym = max_asymmetry(m);
    if asym > tol {
        return Err(Error::NotHermitian {
            max_asymmetry: asym,
            tol,
        });
    }
    Ok(())
}

fn symmetrize(m: &CMatrix) -> CMatrix {
    (m + m.adjoint()).scale(0.5)
}

/// Hermitian, positive-semidefinite, unit-trace complex matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensityMatrix {
    elements: CMatrix,
    dim: usize,
    pub label: Option<String>,
}

impl DensityMatrix {
    /// Validates Hermiticity, unit trace, and positive semidefiniteness
    /// against the default tolerances.
    pub fn new(elements: CMatrix, label: Option<String>) -> Result<Self> {
        Self::new_with(elements, label, &Tolerances::default())
    }

    pub fn new_with(elements: CMatrix, label: Option<String>, tol: &Tolerances) -> Result<Self> {
        require_hermitian(&elements, tol.hermiticity)?;
        let trace = elements.trace().re;
        if (trace - 1.0).abs() > tol.trace {
            return Err(Error::TraceNotOne {
                trace,
                tol: tol.trace,
            });
        }
        let sym = symmetrize(&elements);
        let eigs = sym.symmetric_eigen().eigenvalues;
        let min = eigs.iter().cloned().fold(f64::INFINITY, f64::min);
        if min < -tol.psd {
            return Err(Error::NotPositiveSemidefinite {
                min_eigenvalue: min,
            });
        }
        let dim = elements.nrows();
        Ok(Self {
            elements,
            dim,
            label,
        })
    }

    /// Diagonal density matrix from a probability vector.
    pub fn from_diagonal(probs: &[f64], label: Option<String>) -> Result<Self> {
        let elements = CMatrix::from_fn(probs.len(), probs.len(), |i, j| {
            if i == j {
                C64::new(probs[i], 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        });
        Self::new(elements, label)
    }

    /// Pure state |k><k| on a `dim`-dimensional space.
    pub fn basis_projector(dim: usize, k: usize) -> Result<Self> {
        if k >= dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: k,
            });
        }
        let mut probs = vec![0.0; dim];
        probs[k] = 1.0;
        Self::from_diagonal(&probs, None)
    }

    pub fn elements(&self) -> &CMatrix {
        &self.elements
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn trace(&self) -> f64 {
        self.elements.trace().re
    }

    /// Tr(rho^2).
    pub fn purity(&self) -> f64 {
        (&self.elements * &self.elements).trace().re
    }

    /// Population of basis state |k>.
    pub fn population(&self, k: usize) -> f64 {
        self.elements[(k, k)].re
    }
}

/// Square complex matrix with U^dag U = I up to tolerance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UnitaryMatrix {
    elements: CMatrix,
    dim: usize,
}

impl UnitaryMatrix {
    pub fn new(elements: CMatrix) -> Result<Self> {
        Self::new_with(elements, Tolerances::default().unitarity)
    }

    pub fn new_with(elements: CMatrix, tol: f64) -> Result<Self> {
        if elements.nrows() != elements.ncols() {
            return Err(Error::DimensionMismatch {
                expected: elements.nrows(),
                found: elements.ncols(),
            });
        }
        let dev = unitarity_deviation(&elements);
        if dev > tol {
            return Err(Error::NotUnitary {
                max_deviation: dev,
                tol,
            });
        }
        let dim = elements.nrows();
        Ok(Self { elements, dim })
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            elements: CMatrix::identity(dim, dim),
            dim,
        }
    }

    /// Permutation unitary sending basis state `k` to `perm[k]`.
    pub fn permutation(perm: &[usize]) -> Result<Self> {
        let n = perm.len();
        let mut seen = vec![false; n];
        for &p in perm {
            if p >= n || seen[p] {
                return Err(Error::InvalidInput(format!(
                    "not a permutation of 0..{n}: {perm:?}"
                )));
            }
            seen[p] = true;
        }
        let mut m = CMatrix::zeros(n, n);
        for (k, &p) in perm.iter().enumerate() {
            m[(p, k)] = C64::new(1.0, 0.0);
        }
        Ok(Self {
            elements: m,
            dim: n,
        })
    }

    pub fn elements(&self) -> &CMatrix {
        &self.elements
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn adjoint(&self) -> Self {
        Self {
            elements: self.elements.adjoint(),
            dim: self.dim,
        }
    }
}

/// Hermitian operator in energy units (a Hamiltonian or a Hamiltonian term).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HermitianOperator {
    elements: CMatrix,
    dim: usize,
}

impl HermitianOperator {
    pub fn new(elements: CMatrix) -> Result<Self> {
        require_hermitian(&elements, Tolerances::default().hermiticity)?;
        let dim = elements.nrows();
        Ok(Self { elements, dim })
    }

    pub fn from_diagonal(energies: &[f64]) -> Self {
        let n = energies.len();
        let elements = CMatrix::from_fn(n, n, |i, j| {
            if i == j {
                C64::new(energies[i], 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        });
        Self { elements, dim: n }
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            elements: CMatrix::zeros(dim, dim),
            dim,
        }
    }

    pub fn elements(&self) -> &CMatrix {
        &self.elements
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Largest absolute eigenvalue.
    pub fn spectral_norm(&self) -> f64 {
        let eigs = symmetrize(&self.elements).symmetric_eigen().eigenvalues;
        eigs.iter().fold(0.0f64, |a, &x| a.max(x.abs()))
    }
}

fn unitarity_deviation(m: &CMatrix) -> f64 {
    let prod = m.adjoint() * m;
    let n = m.nrows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            let target = if i == j {
                C64::new(1.0, 0.0)
            } else {
                C64::new(0.0, 0.0)
            };
            worst = worst.max((prod[(i, j)] - target).norm());
        }
    }
    worst
}

/// True iff max entry of |U^dag U - I| <= tol.
pub fn is_unitary(m: &CMatrix, tol: f64) -> bool {
    m.nrows() == m.ncols() && unitarity_deviation(m) <= tol
}

/// Eigendecomposition of a Hermitian matrix, eigenvalues sorted descending.
///
/// The input is symmetrized as (M + M^dag)/2 before decomposing so that
/// round-off asymmetry can never produce complex eigenvalues. The
/// reconstruction V L V^dag is checked against the input.
pub fn eig_hermitian(m: &CMatrix) -> Result<(Vec<f64>, UnitaryMatrix)> {
    let tol = Tolerances::default();
    require_hermitian(m, tol.hermiticity.max(1e-12))?;
    let sym = symmetrize(m);
    let decomp = sym.symmetric_eigen();
    let n = m.nrows();

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        decomp.eigenvalues[b]
            .partial_cmp(&decomp.eigenvalues[a])
            .unwrap()
    });
    let values: Vec<f64> = order.iter().map(|&i| decomp.eigenvalues[i]).collect();
    let mut vectors = CMatrix::zeros(n, n);
    for (col, &i) in order.iter().enumerate() {
        vectors.set_column(col, &decomp.eigenvectors.column(i));
    }

    let lambda = CMatrix::from_fn(n, n, |i, j| {
        if i == j {
            C64::new(values[i], 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    });
    let recon = &vectors * lambda * vectors.adjoint();
    let max_eig = values.iter().fold(0.0f64, |a, &x| a.max(x.abs()));
    let mut residual = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            residual = residual.max((recon[(i, j)] - m[(i, j)]).norm());
        }
    }
    if residual > tol.reconstruction * (max_eig + 1.0) {
        return Err(Error::DecompositionFailure { residual });
    }

    let vectors = UnitaryMatrix::new_with(vectors, tol.unitarity)?;
    Ok((values, vectors))
}

/// Kronecker product A (x) B with A as the system (slow) factor.
pub fn tensor(a: &DensityMatrix, b: &DensityMatrix) -> Result<DensityMatrix> {
    let elements = a.elements().kronecker(b.elements());
    DensityMatrix::new(elements, None)
}

/// Kronecker product of Hermitian operators, system-major.
pub fn tensor_op(a: &HermitianOperator, b: &HermitianOperator) -> HermitianOperator {
    HermitianOperator {
        dim: a.dim() * b.dim(),
        elements: a.elements().kronecker(b.elements()),
    }
}

/// Reduce a joint state to one subsystem by tracing out the other.
pub fn partial_trace(
    rho: &DensityMatrix,
    dims: BipartiteDims,
    keep: Keep,
) -> Result<DensityMatrix> {
    if rho.dim() != dims.joint() {
        return Err(Error::DimensionMismatch {
            expected: dims.joint(),
            found: rho.dim(),
        });
    }
    let (ns, nb) = (dims.n_system, dims.n_bath);
    let m = rho.elements();
    let elements = match keep {
        Keep::System => CMatrix::from_fn(ns, ns, |i, j| {
            (0..nb).map(|k| m[(i * nb + k, j * nb + k)]).sum()
        }),
        Keep::Bath => CMatrix::from_fn(nb, nb, |k, l| {
            (0..ns).map(|i| m[(i * nb + k, i * nb + l)]).sum()
        }),
    };
    DensityMatrix::new(elements, None)
}

/// Unitary conjugation U rho U^dag.
pub fn evolve(rho: &DensityMatrix, u: &UnitaryMatrix) -> Result<DensityMatrix> {
    if rho.dim() != u.dim() {
        return Err(Error::DimensionMismatch {
            expected: rho.dim(),
            found: u.dim(),
        });
    }
    let elements = u.elements() * rho.elements() * u.elements().adjoint();
    DensityMatrix::new(elements, rho.label.clone())
}

/// Propagator exp(-i H t) built from the eigendecomposition of H.
pub fn expm_unitary(h: &HermitianOperator, t: f64) -> Result<UnitaryMatrix> {
    let (values, vectors) = eig_hermitian(h.elements())?;
    let n = h.dim();
    let phases = CMatrix::from_fn(n, n, |i, j| {
        if i == j {
            C64::from_polar(1.0, -values[i] * t)
        } else {
            C64::new(0.0, 0.0)
        }
    });
    let u = vectors.elements() * phases * vectors.elements().adjoint();
    UnitaryMatrix::new(u)
}

/// Ground-block population Tr[(|0><0| (x) I) rho] in system-major ordering.
pub fn ground_population(rho: &DensityMatrix, dims: BipartiteDims) -> Result<f64> {
    if rho.dim() != dims.joint() {
        return Err(Error::DimensionMismatch {
            expected: dims.joint(),
            found: rho.dim(),
        });
    }
    Ok((0..dims.n_bath).map(|j| rho.elements()[(j, j)].re).sum())
}

/// Haar-random unitary via QR of a standard complex Gaussian matrix, with the
/// R-diagonal phases folded into Q to land on the correct measure.
pub fn haar_unitary<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> UnitaryMatrix {
    let g = CMatrix::from_fn(dim, dim, |_, _| {
        C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    });
    let qr = g.qr();
    let r = qr.r();
    let mut q = qr.q();
    for k in 0..dim {
        let d = r[(k, k)];
        let phase = if d.norm() > 0.0 {
            d / d.norm()
        } else {
            C64::new(1.0, 0.0)
        };
        for i in 0..dim {
            q[(i, k)] *= phase;
        }
    }
    UnitaryMatrix {
        elements: q,
        dim,
    }
}
