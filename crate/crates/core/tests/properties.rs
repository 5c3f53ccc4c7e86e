//! Property tests for the spectral invariants the whole analysis rests on.

use nogo_cool::feasibility::{check_no_go, max_ground_population, Verdict};
use nogo_cool::linalg::{
    evolve, expm_unitary, haar_unitary, partial_trace, tensor, BipartiteDims, DensityMatrix,
    HermitianOperator, Keep,
};
use nogo_cool::spectral::{numerical_rank, product_spectrum, spectra_equal, spectrum, Spectrum};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn probs(len: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.01f64..1.0, len).prop_map(|v| {
        let z: f64 = v.iter().sum();
        v.into_iter().map(|x| x / z).collect()
    })
}

fn diag(p: &[f64]) -> DensityMatrix {
    DensityMatrix::from_diagonal(p, None).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn evolve_preserves_sorted_spectrum(p in probs(4), seed in 0u64..1u64 << 48) {
        let rho = diag(&p);
        let u = haar_unitary(4, &mut ChaCha8Rng::seed_from_u64(seed));
        let out = evolve(&rho, &u).unwrap();
        let before = spectrum(&rho).unwrap();
        let after = spectrum(&out).unwrap();
        prop_assert!(spectra_equal(&before, &after, 1e-10));
        // evolve also preserves trace and positivity: reconstruction as a
        // DensityMatrix would have failed otherwise.
        prop_assert!((out.trace() - 1.0).abs() <= 1e-10);
    }

    #[test]
    fn tensor_partial_trace_roundtrip(a in probs(2), b in probs(3)) {
        let s = diag(&a);
        let bath = diag(&b);
        let joint = tensor(&s, &bath).unwrap();
        let dims = BipartiteDims::new(2, 3).unwrap();
        let red = partial_trace(&joint, dims, Keep::System).unwrap();
        for (i, &ai) in a.iter().enumerate() {
            prop_assert!((red.population(i) - ai).abs() <= 1e-12);
        }
        let red_b = partial_trace(&joint, dims, Keep::Bath).unwrap();
        for (j, &bj) in b.iter().enumerate() {
            prop_assert!((red_b.population(j) - bj).abs() <= 1e-12);
        }
    }

    #[test]
    fn product_spectrum_matches_tensor_spectrum(a in probs(2), b in probs(3)) {
        let s = diag(&a);
        let bath = diag(&b);
        let via_tensor = spectrum(&tensor(&s, &bath).unwrap()).unwrap();
        let via_product = product_spectrum(&spectrum(&s).unwrap(), &spectrum(&bath).unwrap());
        prop_assert!(spectra_equal(&via_tensor, &via_product, 1e-10));
    }

    #[test]
    fn rank_monotone_in_tolerance(p in probs(5), t1 in 1e-12f64..1e-2, t2 in 1e-12f64..1e-2) {
        let spec = Spectrum::from_unsorted(p, 5).unwrap();
        let (lo, hi) = if t1 <= t2 { (t1, t2) } else { (t2, t1) };
        prop_assert!(numerical_rank(&spec, lo).rank >= numerical_rank(&spec, hi).rank);
    }

    #[test]
    fn rank_of_product_is_product_of_ranks(a in probs(2), b in probs(3)) {
        // well-separated inputs: all values >= 0.01 after normalization by
        // construction, far above the 1e-9 cutoff
        let sa = Spectrum::from_unsorted(a, 2).unwrap();
        let sb = Spectrum::from_unsorted(b, 3).unwrap();
        let prod = product_spectrum(&sa, &sb);
        let tol = 1e-9;
        prop_assert_eq!(
            numerical_rank(&prod, tol).rank,
            numerical_rank(&sa, tol).rank * numerical_rank(&sb, tol).rank
        );
    }

    #[test]
    fn spectra_equal_reflexive_symmetric(p in probs(4), q in probs(4)) {
        let sp = Spectrum::from_unsorted(p, 4).unwrap();
        let sq = Spectrum::from_unsorted(q, 4).unwrap();
        prop_assert!(spectra_equal(&sp, &sp, 1e-12));
        prop_assert_eq!(
            spectra_equal(&sp, &sq, 1e-9),
            spectra_equal(&sq, &sp, 1e-9)
        );
    }

    #[test]
    fn bound_monotone_and_saturating(p in probs(6)) {
        let spec = Spectrum::from_unsorted(p, 6).unwrap();
        let mut prev = 0.0;
        for nb in 1..=6 {
            let b = max_ground_population(&spec, nb);
            prop_assert!(b + 1e-12 >= prev);
            prev = b;
        }
        prop_assert!((prev - 1.0).abs() <= 1e-9);
    }

    #[test]
    fn expm_is_additive_in_time(t1 in -2.0f64..2.0, t2 in -2.0f64..2.0) {
        let h = HermitianOperator::from_diagonal(&[0.0, 0.7, 1.9]);
        let u1 = expm_unitary(&h, t1).unwrap();
        let u2 = expm_unitary(&h, t2).unwrap();
        let u12 = expm_unitary(&h, t1 + t2).unwrap();
        let prod = u1.elements() * u2.elements();
        let diff = (&prod - u12.elements())
            .iter()
            .map(|c| c.norm())
            .fold(0.0f64, f64::max);
        prop_assert!(diff <= 1e-9);
    }

    #[test]
    fn pure_system_never_rank_infeasible(b in probs(3)) {
        let s = diag(&[1.0 - 1e-15, 1e-15]);
        let bath = diag(&b);
        let report = check_no_go(&s, &bath, None).unwrap();
        prop_assert!(report.verdict != Verdict::Infeasible);
    }

    #[test]
    fn swap_scenario_spectrum_conserved(s0 in 0.01f64..0.99) {
        let result = nogo_cool::scenarios::swap_scenario(s0).unwrap();
        let after = result.final_joint_spectrum.unwrap();
        prop_assert!(spectra_equal(&result.initial_joint_spectrum, &after, 1e-10));
    }

    #[test]
    fn correlated_scenario_preserves_bath(weights in probs(3)) {
        // rescale so the first weight is exactly 1/2 and split there
        let rest: f64 = weights[1..].iter().sum();
        let mut w = vec![0.5];
        w.extend(weights[1..].iter().map(|x| 0.5 * x / rest));
        let spec = nogo_cool::scenarios::CorrelatedStateSpec {
            bath_weights: w.clone(),
            split_index: 0,
        };
        let result = nogo_cool::scenarios::correlated_scenario(&spec).unwrap();
        let fb = result.final_bath.unwrap();
        for (k, &wk) in w.iter().enumerate() {
            prop_assert!((fb.population(k) - result.initial_bath.population(k)).abs() <= 1e-10);
            prop_assert!((fb.population(k) - wk).abs() <= 1e-10);
        }
        prop_assert!(result.final_system.unwrap().population(0) >= 1.0 - 1e-10);
    }
}

#[test]
fn infeasible_verdicts_are_sound_against_haar_search() {
    // every Infeasible report: no unitary gets past bound + 1e-8
    let cases = [
        (vec![0.7, 0.3], vec![0.8, 0.2]),
        (vec![0.6, 0.4], vec![0.5, 0.3, 0.2]),
        (vec![0.9, 0.1], vec![0.4, 0.35, 0.25]),
    ];
    for (sp, bp) in cases {
        let s = DensityMatrix::from_diagonal(&sp, None).unwrap();
        let b = DensityMatrix::from_diagonal(&bp, None).unwrap();
        let report = check_no_go(&s, &b, None).unwrap();
        assert_eq!(report.verdict, Verdict::Infeasible);
        assert!(report.bound < 1.0);
        let joint = tensor(&s, &b).unwrap();
        let dims = BipartiteDims::new(sp.len(), bp.len()).unwrap();
        let best =
            nogo_cool::feasibility::haar_bound_search(&joint, dims, 2000, 99).unwrap();
        assert!(
            best <= report.bound + 1e-8,
            "haar search {best} exceeded bound {}",
            report.bound
        );
    }
}
