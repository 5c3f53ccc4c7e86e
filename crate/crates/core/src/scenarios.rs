//! Builders and analyses for the worked cooling scenarios: thermal states,
//! swap cooling with a pure bath, the rank-deficient two-qubit bath, the
//! correlated initial state, and the approximate-cooling deduction.

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::feasibility::{
    build_cooling_unitary, check_no_go, max_ground_population, pair_eigenvalues, Assignment,
    FeasibilityReport, Pairing, PairingOutcome, Verdict,
};
use crate::linalg::{
    evolve, partial_trace, tensor, BipartiteDims, CMatrix, DensityMatrix, Keep, UnitaryMatrix,
};
use crate::spectral::{numerical_rank, spectrum, Spectrum};
use crate::tol::default_rank_tol;
use crate::Result;
use num_complex::Complex64 as C64;

/// Energy levels and temperature of a Gibbs state. The Boltzmann constant is
/// absorbed into the temperature, which carries energy units.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThermalSpec {
    /// Ascending energy levels.
    pub energies: Vec<f64>,
    pub temperature: f64,
}

/// Correlated initial state |0><0| (x) b0 + |1><1| (x) b1, where the bath
/// weight list is split after `split_index`: weights 0..=split_index populate
/// the ground block, the rest the excited block.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorrelatedStateSpec {
    pub bath_weights: Vec<f64>,
    pub split_index: usize,
}

/// Conclusions of the approximate-cooling argument on a factorized thermal
/// setup: when the gap condition holds and the final bath is again thermal
/// with unchanged internal spectrum, the bath temperature cannot change and
/// the system spectrum is frozen.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ApproxCoolingReport {
    /// s0*b1 > s1*b0.
    pub gap_condition_holds: bool,
    pub nondegenerate_ground: bool,
    /// b1/b0 at the initial time.
    pub ratio_initial: f64,
    /// B1/B0 forced at the final time; None when no conclusion is claimed.
    pub ratio_final: Option<f64>,
    pub implied_tf_equals_ti: bool,
    /// S_m = s_m for all m.
    pub system_spectrum_unchanged: bool,
}

/// Everything a scenario run produced, bundled for audit: inputs, verdict,
/// certificate, reduced states before and after, and the relevant spectra.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioResult {
    pub dims: BipartiteDims,
    pub initial_system: DensityMatrix,
    pub initial_bath: DensityMatrix,
    pub initial_joint_spectrum: Spectrum,
    pub report: FeasibilityReport,
    pub certificate: Option<UnitaryMatrix>,
    pub final_system: Option<DensityMatrix>,
    pub final_bath: Option<DensityMatrix>,
    pub final_joint_spectrum: Option<Spectrum>,
}

/// Diagonal Gibbs state exp(-E_i/T)/Z in the energy basis. Exponents are
/// shifted by the ground energy before exponentiating so large E_i/T ratios
/// underflow to zero weight instead of overflowing.
pub fn thermal_state(spec: &ThermalSpec) -> Result<DensityMatrix> {
    if spec.energies.is_empty() {
        return Err(Error::InvalidInput("thermal spec needs at least one level".into()));
    }
    if spec.temperature <= 0.0 || !spec.temperature.is_finite() {
        return Err(Error::InvalidInput(format!(
            "temperature must be positive and finite, got {}",
            spec.temperature
        )));
    }
    if spec.energies.iter().any(|e| !e.is_finite()) {
        return Err(Error::InvalidInput("energies must be finite".into()));
    }
    let e0 = spec.energies.iter().cloned().fold(f64::INFINITY, f64::min);
    let exponents: Vec<f64> = spec
        .energies
        .iter()
        .map(|&e| -(e - e0) / spec.temperature)
        .collect();
    if exponents.iter().any(|x| !x.is_finite()) {
        let worst = spec
            .energies
            .iter()
            .map(|&e| (e / spec.temperature).abs())
            .fold(0.0f64, f64::max);
        return Err(Error::OverflowGuard { exponent: worst });
    }
    let weights: Vec<f64> = exponents.iter().map(|&x| x.exp()).collect();
    let z: f64 = weights.iter().sum();
    let probs: Vec<f64> = weights.iter().map(|&w| w / z).collect();
    DensityMatrix::from_diagonal(&probs, Some("thermal".into()))
}

fn run_factorized(s: DensityMatrix, b: DensityMatrix) -> Result<ScenarioResult> {
    let dims = BipartiteDims::new(s.dim(), b.dim())?;
    let joint = tensor(&s, &b)?;
    let initial_joint_spectrum = spectrum(&joint)?;
    let report = check_no_go(&s, &b, None)?;

    let (certificate, final_system, final_bath, final_joint_spectrum) =
        if let Some(pairing) = report.pairing.as_ref() {
            let u = build_cooling_unitary(&s, &b, pairing)?;
            let cooled = evolve(&joint, &u)?;
            let fs = partial_trace(&cooled, dims, Keep::System)?;
            let fb = partial_trace(&cooled, dims, Keep::Bath)?;
            let fspec = spectrum(&cooled)?;
            (Some(u), Some(fs), Some(fb), Some(fspec))
        } else {
            (None, None, None, None)
        };

    Ok(ScenarioResult {
        dims,
        initial_system: s,
        initial_bath: b,
        initial_joint_spectrum,
        report,
        certificate,
        final_system,
        final_bath,
        final_joint_spectrum,
    })
}

/// Mixed qubit system against a pure single-qubit "bath": cooling succeeds by
/// a swap-style permutation that dumps the system mixedness into the bath.
pub fn swap_scenario(s0: f64) -> Result<ScenarioResult> {
    if !(s0 > 0.0 && s0 < 1.0) {
        return Err(Error::InvalidInput(format!(
            "swap scenario needs s0 in (0,1), got {s0}"
        )));
    }
    let s = DensityMatrix::from_diagonal(&[s0, 1.0 - s0], Some("system".into()))?;
    let b = DensityMatrix::from_diagonal(&[1.0, 0.0], Some("pure bath".into()))?;
    run_factorized(s, b)
}

/// Factorized no-go check for arbitrary diagonal system and bath states.
pub fn no_go_scenario(s: DensityMatrix, b: DensityMatrix) -> Result<ScenarioResult> {
    run_factorized(s, b)
}

/// Mixed qubit system with a two-qubit bath prepared rank-deficient,
/// b = diag(b0, b1, 0, 0): the joint rank fits the ground block exactly and
/// cooling succeeds with all four final bath eigenvalues nonzero.
pub fn nonthermal_bath_scenario(s: &DensityMatrix, b01: (f64, f64)) -> Result<ScenarioResult> {
    let (b0, b1) = b01;
    if b0 <= 0.0 || b1 <= 0.0 || (b0 + b1 - 1.0).abs() > 1e-9 {
        return Err(Error::InvalidInput(format!(
            "bath pair must be positive and sum to 1, got ({b0}, {b1})"
        )));
    }
    let b = DensityMatrix::from_diagonal(&[b0, b1, 0.0, 0.0], Some("nonthermal bath".into()))?;
    run_factorized(s.clone(), b)
}

/// Correlated initial state of a qubit system with an `N_B`-level bath.
/// The ground-block partial sum must be 1/2, which makes the initial system
/// reduced state maximally mixed; cooling then succeeds while leaving the
/// bath reduced state untouched.
pub fn correlated_scenario(spec: &CorrelatedStateSpec) -> Result<ScenarioResult> {
    let nb = spec.bath_weights.len();
    if nb == 0 || spec.split_index >= nb {
        return Err(Error::InvalidInput(format!(
            "split index {} out of range for {} bath weights",
            spec.split_index, nb
        )));
    }
    let total: f64 = spec.bath_weights.iter().sum();
    if (total - 1.0).abs() > 1e-10 {
        return Err(Error::InvalidInput(format!(
            "bath weights must sum to 1, got {total}"
        )));
    }
    if spec.bath_weights.iter().any(|&w| w < 0.0) {
        return Err(Error::InvalidInput("bath weights must be nonnegative".into()));
    }
    let partial: f64 = spec.bath_weights[..=spec.split_index].iter().sum();
    if (partial - 0.5).abs() > 1e-9 {
        return Err(Error::InvalidSplit {
            partial_sum: partial,
            expected: 0.5,
        });
    }

    let dims = BipartiteDims::new(2, nb)?;
    // rho0 = |0><0| (x) diag(b_0..b_n, 0..) + |1><1| (x) diag(0.., b_{n+1}..)
    let mut joint_diag = vec![0.0; 2 * nb];
    for (k, &w) in spec.bath_weights.iter().enumerate() {
        if k <= spec.split_index {
            joint_diag[k] = w;
        } else {
            joint_diag[nb + k] = w;
        }
    }
    let joint = DensityMatrix::from_diagonal(&joint_diag, Some("correlated".into()))?;
    let initial_system = partial_trace(&joint, dims, Keep::System)?;
    let initial_bath = partial_trace(&joint, dims, Keep::Bath)?;
    let initial_joint_spectrum = spectrum(&joint)?;

    // Rank bookkeeping: the joint eigenvalues are exactly the bath weights,
    // and the target B reproduces them, so d0 = d_f and pairing succeeds.
    let rank_tol = default_rank_tol(2 * nb, initial_joint_spectrum.largest());
    let d0 = numerical_rank(&initial_joint_spectrum, rank_tol).rank;
    let target = Spectrum::from_unsorted(spec.bath_weights.clone(), nb)?;
    let pairing_outcome = pair_eigenvalues(&initial_joint_spectrum, &target, 1e-9);
    let assignments: Vec<Assignment> = match pairing_outcome {
        PairingOutcome::Paired(_) => spec
            .bath_weights
            .iter()
            .enumerate()
            .filter(|(_, &w)| w > rank_tol)
            .map(|(k, _)| Assignment {
                system_index: if k <= spec.split_index { 0 } else { 1 },
                bath_index: k,
                final_index: k,
            })
            .collect(),
        PairingOutcome::Obstructed(o) => {
            return Err(Error::InvalidInput(format!(
                "correlated pairing failed at index {}: {} vs {}",
                o.index, o.initial_value, o.target_value
            )))
        }
    };
    let report = FeasibilityReport {
        d0,
        df_max: nb,
        verdict: Verdict::Feasible,
        bound: max_ground_population(&initial_joint_spectrum, nb),
        pairing: Some(Pairing { assignments }),
        obstruction: None,
    };

    // Certificate: swap |0,k> <-> |1,k> on the excited block, identity on the
    // ground block. This moves the b^(1) weights into the ground block while
    // keeping every bath index in place.
    let mut perm: Vec<usize> = (0..2 * nb).collect();
    for k in (spec.split_index + 1)..nb {
        perm.swap(k, nb + k);
    }
    let u = UnitaryMatrix::permutation(&perm)?;
    let cooled = evolve(&joint, &u)?;
    let final_system = partial_trace(&cooled, dims, Keep::System)?;
    let final_bath = partial_trace(&cooled, dims, Keep::Bath)?;
    let final_joint_spectrum = spectrum(&cooled)?;

    Ok(ScenarioResult {
        dims,
        initial_system,
        initial_bath,
        initial_joint_spectrum,
        report,
        certificate: Some(u),
        final_system: Some(final_system),
        final_bath: Some(final_bath),
        final_joint_spectrum: Some(final_joint_spectrum),
    })
}

/// The approximate-cooling deduction, as spectral algebra rather than
/// dynamics: matching the two leading products s_0*b_0 and s_0*b_1 across a
/// factorized-to-factorized evolution forces B1/B0 = b1/b0. If the final
/// bath is thermal with the same internal spectrum, its temperature equals
/// the initial one and the system spectrum cannot change at all.
pub fn approximate_cooling_analysis(
    s: &Spectrum,
    bath: &ThermalSpec,
    final_bath_thermal: bool,
) -> Result<ApproxCoolingReport> {
    if s.len() < 2 {
        return Err(Error::InvalidInput("system needs at least two levels".into()));
    }
    if bath.energies.len() < 2 {
        return Err(Error::InvalidInput("bath needs at least two levels".into()));
    }
    let b = thermal_state(bath)?;
    let bspec = spectrum(&b)?;
    let (s0, s1) = (s.values()[0], s.values()[1]);
    let (b0, b1) = (bspec.values()[0], bspec.values()[1]);

    let gap_condition_holds = s0 * b1 > s1 * b0;
    let nondegenerate_ground = s0 > s1 + 1e-12;
    let ratio_initial = b1 / b0;

    // The conclusion chain needs the gap condition, a nondegenerate system
    // ground state, and the final-bath-thermal constraint. Otherwise no
    // claim is made.
    let conclude = gap_condition_holds && nondegenerate_ground && final_bath_thermal;
    Ok(ApproxCoolingReport {
        gap_condition_holds,
        nondegenerate_ground,
        ratio_initial,
        ratio_final: conclude.then_some(ratio_initial),
        implied_tf_equals_ti: conclude,
        system_spectrum_unchanged: conclude,
    })
}

/// Build a diagonal density matrix on the computational basis, for callers
/// assembling custom scenarios.
pub fn diagonal_state(probs: &[f64], label: &str) -> Result<DensityMatrix> {
    DensityMatrix::from_diagonal(probs, Some(label.into()))
}

/// Embed a list of diagonal weights into a complex matrix. Test and CLI
/// helper for building structured joint states.
pub fn diagonal_matrix(weights: &[f64]) -> CMatrix {
    CMatrix::from_fn(weights.len(), weights.len(), |i, j| {
        if i == j {
            C64::new(weights[i], 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    })
}
