//! Exact joint propagation versus factorized-initial-state Lindblad
//! dynamics.
//!
//! The exact run conjugates the joint state by exp(-iHt) built from a single
//! eigendecomposition of H, so the sorted joint spectrum is conserved to
//! round-off at every recorded time and the system ground population can
//! never exceed the spectral bound. The Lindblad run integrates the reduced
//! master equation with a fixed-step RK4 scheme; its predictions are what the
//! contrast report audits against the bound.

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::feasibility::max_ground_population;
use crate::linalg::{
    eig_hermitian, ground_population, partial_trace, tensor, tensor_op, BipartiteDims, CMatrix,
    DensityMatrix, HermitianOperator, Keep, UnitaryMatrix,
};
use crate::spectral::{spectrum, Spectrum};
use crate::Result;
use num_complex::Complex64 as C64;

/// Joint Hamiltonian H = H_S (x) I + I (x) H_B + H_SB.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JointModel {
    pub h_system: HermitianOperator,
    pub h_bath: HermitianOperator,
    /// Coupling term on the full joint space.
    pub h_coupling: HermitianOperator,
    pub dims: BipartiteDims,
}

impl JointModel {
    pub fn new(
        h_system: HermitianOperator,
        h_bath: HermitianOperator,
        h_coupling: HermitianOperator,
    ) -> Result<Self> {
        let dims = BipartiteDims::new(h_system.dim(), h_bath.dim())?;
        if h_coupling.dim() != dims.joint() {
            return Err(Error::DimensionMismatch {
                expected: dims.joint(),
                found: h_coupling.dim(),
            });
        }
        Ok(Self {
            h_system,
            h_bath,
            h_coupling,
            dims,
        })
    }

    /// Assemble the total joint-space Hamiltonian.
    pub fn total(&self) -> HermitianOperator {
        let i_s = HermitianOperator::from_diagonal(&vec![1.0; self.dims.n_system]);
        let i_b = HermitianOperator::from_diagonal(&vec![1.0; self.dims.n_bath]);
        let total = tensor_op(&self.h_system, &i_b).elements()
            + tensor_op(&i_s, &self.h_bath).elements()
            + self.h_coupling.elements();
        HermitianOperator::new(total).expect("sum of Hermitian terms is Hermitian")
    }
}

/// Reduced-system Markovian model: dρ/dt = -i[H_S, ρ] + Σ γ D[L]ρ.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LindbladModel {
    pub h_system: HermitianOperator,
    /// (jump operator, nonnegative rate) pairs.
    pub jump_operators: Vec<(CMatrix, f64)>,
}

impl LindbladModel {
    pub fn new(h_system: HermitianOperator, jump_operators: Vec<(CMatrix, f64)>) -> Result<Self> {
        for (op, rate) in &jump_operators {
            if op.nrows() != h_system.dim() || op.ncols() != h_system.dim() {
                return Err(Error::DimensionMismatch {
                    expected: h_system.dim(),
                    found: op.nrows(),
                });
            }
            if *rate < 0.0 {
                return Err(Error::InvalidInput(format!("negative rate {rate}")));
            }
        }
        Ok(Self {
            h_system,
            jump_operators,
        })
    }

    /// Qubit amplitude damping: lowering operator |0><1| at rate gamma.
    pub fn amplitude_damping(gap: f64, gamma: f64) -> Result<Self> {
        let mut lower = CMatrix::zeros(2, 2);
        lower[(0, 1)] = C64::new(1.0, 0.0);
        Self::new(HermitianOperator::from_diagonal(&[0.0, gap]), vec![(lower, gamma)])
    }
}

/// Time series of the quantities the contrast audit needs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    pub times: Vec<f64>,
    /// System ground-state population at each time.
    pub ground_population: Vec<f64>,
    /// Max elementwise deviation of the sorted joint spectrum from t=0.
    /// Empty for reduced (Lindblad) runs where it has no meaning.
    pub joint_spectrum_drift: Vec<f64>,
    /// System purity Tr(ρ_S^2) at each time.
    pub purity: Vec<f64>,
    /// Largest per-step trace correction applied during integration
    /// (0 for exact unitary runs).
    pub max_trace_correction: f64,
}

impl Trajectory {
    pub fn max_ground_population(&self) -> f64 {
        self.ground_population.iter().cloned().fold(0.0, f64::max)
    }

    pub fn final_ground_population(&self) -> f64 {
        self.ground_population.last().copied().unwrap_or(0.0)
    }
}

/// Verdict of the unitary-bound audit on a master-equation prediction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContrastReport {
    /// Spectral bound on the final ground population over all joint
    /// unitaries acting on the factorized initial data.
    pub unitary_bound: f64,
    pub exact_max_ground_population: f64,
    pub me_asymptotic_ground_population: f64,
    /// True when the master equation claims more cooling than any joint
    /// unitary could deliver.
    pub violation: bool,
}

fn sorted_eigenvalues(rho: &CMatrix) -> Vec<f64> {
    let sym = (rho + rho.adjoint()).scale(0.5);
    let mut vals: Vec<f64> = sym.symmetric_eigen().eigenvalues.iter().cloned().collect();
    vals.sort_by(|a, b| b.partial_cmp(a).unwrap());
    vals
}

/// Exact unitary propagation of the joint state over a time grid. One
/// eigendecomposition of H is reused for every time point.
pub fn exact_propagate(
    model: &JointModel,
    rho0: &DensityMatrix,
    times: &[f64],
) -> Result<Trajectory> {
    if rho0.dim() != model.dims.joint() {
        return Err(Error::DimensionMismatch {
            expected: model.dims.joint(),
            found: rho0.dim(),
        });
    }
    if times.is_empty() || times[0] < 0.0 || times.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidInput(
            "times must be a nonempty ascending grid starting at t >= 0".into(),
        ));
    }
    let h = model.total();
    let (evals, evecs) = eig_hermitian(h.elements())?;
    let n = h.dim();
    let reference = sorted_eigenvalues(rho0.elements());

    let mut traj = Trajectory {
        times: times.to_vec(),
        ground_population: Vec::with_capacity(times.len()),
        joint_spectrum_drift: Vec::with_capacity(times.len()),
        purity: Vec::with_capacity(times.len()),
        max_trace_correction: 0.0,
    };
    for &t in times {
        let phases = CMatrix::from_fn(n, n, |i, j| {
            if i == j {
                C64::from_polar(1.0, -evals[i] * t)
            } else {
                C64::new(0.0, 0.0)
            }
        });
        let u = evecs.elements() * phases * evecs.elements().adjoint();
        let u = UnitaryMatrix::new(u)?;
        let rho_t = crate::linalg::evolve(rho0, &u)?;
        traj.ground_population
            .push(ground_population(&rho_t, model.dims)?);
        let spec_t = sorted_eigenvalues(rho_t.elements());
        let drift = reference
            .iter()
            .zip(&spec_t)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0f64, f64::max);
        traj.joint_spectrum_drift.push(drift);
        let red = partial_trace(&rho_t, model.dims, Keep::System)?;
        traj.purity.push(red.purity());
    }
    Ok(traj)
}

fn lindblad_rhs(model: &LindbladModel, rho: &CMatrix) -> CMatrix {
    let h = model.h_system.elements();
    let i = C64::new(0.0, 1.0);
    let mut out = (h * rho - rho * h) * (-i);
    for (l, gamma) in &model.jump_operators {
        if *gamma == 0.0 {
            continue;
        }
        let ldag = l.adjoint();
        let ldl = &ldag * l;
        let term = l * rho * &ldag - (&ldl * rho + rho * &ldl).scale(0.5);
        out += term.scale(*gamma);
    }
    out
}

fn check_step_size(model: &LindbladModel, dt: f64) -> Result<()> {
    let max_rate = model
        .jump_operators
        .iter()
        .map(|(_, g)| *g)
        .fold(0.0f64, f64::max);
    let scale = max_rate + model.h_system.spectral_norm();
    if dt <= 0.0 || dt * scale > 0.1 {
        return Err(Error::StepSizeTooLarge {
            dt,
            limit: if scale > 0.0 { 0.1 / scale } else { f64::INFINITY },
        });
    }
    Ok(())
}

/// Advance `rho` by `span` using RK4 steps of at most `dt` (shrunk to divide
/// the span evenly), renormalizing trace after each step. Returns the largest
/// trace correction applied.
fn rk4_advance(model: &LindbladModel, rho: &mut CMatrix, span: f64, dt: f64) -> f64 {
    let steps = (span / dt).ceil().max(1.0) as usize;
    let h = span / steps as f64;
    let mut max_correction = 0.0f64;
    for _ in 0..steps {
        let k1 = lindblad_rhs(model, rho);
        let k2 = lindblad_rhs(model, &(&*rho + k1.scale(h / 2.0)));
        let k3 = lindblad_rhs(model, &(&*rho + k2.scale(h / 2.0)));
        let k4 = lindblad_rhs(model, &(&*rho + k3.scale(h)));
        *rho += (k1 + k2.scale(2.0) + k3.scale(2.0) + k4).scale(h / 6.0);
        let trace = rho.trace().re;
        max_correction = max_correction.max((trace - 1.0).abs());
        *rho = rho.scale(1.0 / trace);
    }
    max_correction
}

/// Fixed-step RK4 integration of the Lindblad equation, recording at each
/// entry of `times`. The step inside each interval is `dt` shrunk to divide
/// the interval evenly. Trace is renormalized after every step; the largest
/// correction is reported so callers can flag drift above 1e-8.
pub fn lindblad_propagate(
    model: &LindbladModel,
    rho_s0: &DensityMatrix,
    times: &[f64],
    dt: f64,
) -> Result<Trajectory> {
    let dim = model.h_system.dim();
    if rho_s0.dim() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: rho_s0.dim(),
        });
    }
    if times.is_empty() || times[0] < 0.0 || times.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidInput(
            "times must be a nonempty ascending grid starting at t >= 0".into(),
        ));
    }
    check_step_size(model, dt)?;

    let mut rho = rho_s0.elements().clone();
    let mut t = 0.0f64;
    let mut max_correction = 0.0f64;
    let mut traj = Trajectory {
        times: times.to_vec(),
        ground_population: Vec::with_capacity(times.len()),
        joint_spectrum_drift: Vec::new(),
        purity: Vec::with_capacity(times.len()),
        max_trace_correction: 0.0,
    };

    for &target in times {
        let span = target - t;
        if span > 0.0 {
            max_correction = max_correction.max(rk4_advance(model, &mut rho, span, dt));
            t = target;
        }
        let min_eig = sorted_eigenvalues(&rho).last().copied().unwrap_or(0.0);
        if min_eig < -1e-6 {
            return Err(Error::PositivityLoss {
                min_eigenvalue: min_eig,
                time: t,
            });
        }
        traj.ground_population.push(rho[(0, 0)].re);
        traj.purity.push((&rho * &rho).trace().re);
    }
    traj.max_trace_correction = max_correction;
    Ok(traj)
}

/// Final reduced state of a Lindblad run, for convergence checks against a
/// halved step size.
pub fn lindblad_final_state(
    model: &LindbladModel,
    rho_s0: &DensityMatrix,
    t_final: f64,
    dt: f64,
) -> Result<DensityMatrix> {
    if t_final <= 0.0 {
        return Ok(rho_s0.clone());
    }
    check_step_size(model, dt)?;
    let mut rho = rho_s0.elements().clone();
    rk4_advance(model, &mut rho, t_final, dt);
    DensityMatrix::new(rho, None)
}

/// Run both propagations from the same factorized data and flag a
/// master-equation prediction that no joint unitary could reproduce.
pub fn contrast_report(
    joint: &JointModel,
    lindblad: &LindbladModel,
    s: &DensityMatrix,
    b: &DensityMatrix,
    horizon: f64,
    n_times: usize,
    dt: f64,
) -> Result<(ContrastReport, Trajectory, Trajectory)> {
    if lindblad.h_system.dim() != s.dim() {
        return Err(Error::DimensionMismatch {
            expected: s.dim(),
            found: lindblad.h_system.dim(),
        });
    }
    if joint.dims.n_system != s.dim() || joint.dims.n_bath != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: joint.dims.joint(),
            found: s.dim() * b.dim(),
        });
    }
    let rho0 = tensor(s, b)?;
    let joint_spec: Spectrum = spectrum(&rho0)?;
    let unitary_bound = max_ground_population(&joint_spec, joint.dims.n_bath);

    let n = n_times.max(2);
    let times: Vec<f64> = (0..n).map(|k| horizon * (k + 1) as f64 / n as f64).collect();
    let exact = exact_propagate(joint, &rho0, &times)?;
    let me = lindblad_propagate(lindblad, s, &times, dt)?;

    let me_final = me.final_ground_population();
    let report = ContrastReport {
        unitary_bound,
        exact_max_ground_population: exact.max_ground_population(),
        me_asymptotic_ground_population: me_final,
        violation: me_final > unitary_bound + 1e-6,
    };
    Ok((report, exact, me))
}

/// Default demo model: qubit system with unit gap coupled to a two-qubit
/// bath by an exchange interaction of strength `g` between the system and
/// each bath qubit.
pub fn demo_joint_model(gap: f64, bath_gaps: (f64, f64), g: f64) -> Result<JointModel> {
    let h_s = HermitianOperator::from_diagonal(&[0.0, gap]);
    let (g1, g2) = bath_gaps;
    // two-qubit bath energies in tensor order |q1 q2>
    let h_b = HermitianOperator::from_diagonal(&[0.0, g2, g1, g1 + g2]);

    // exchange coupling sigma+ (x) sigma-_k + h.c. between system and each
    // bath qubit, written directly on the 8-dim joint space, system-major.
    let mut hc = CMatrix::zeros(8, 8);
    let one = C64::new(1.0, 0.0);
    // joint index = m*4 + (q1*2 + q2)
    for q2 in 0..2usize {
        // system <-> bath qubit 1: |0, 1 q2> <-> |1, 0 q2>
        let a = 2 + q2;
        let bidx = 4 + q2;
        hc[(a, bidx)] = one;
        hc[(bidx, a)] = one;
    }
    for q1 in 0..2usize {
        // system <-> bath qubit 2: |0, q1 1> <-> |1, q1 0>
        let a = q1 * 2 + 1;
        let bidx = 4 + q1 * 2;
        hc[(a, bidx)] = one;
        hc[(bidx, a)] = one;
    }
    let h_sb = HermitianOperator::new(hc.scale(g))?;
    JointModel::new(h_s, h_b, h_sb)
}
