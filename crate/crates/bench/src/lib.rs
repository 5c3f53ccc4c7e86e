//! Shared fixtures for the kernel benchmarks.

use nogo_cool::linalg::{haar_unitary, tensor, DensityMatrix, UnitaryMatrix};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Thermal-by-thermal factorized joint state of the given bath dimension.
pub fn demo_state(n_bath: usize) -> DensityMatrix {
    let s = DensityMatrix::from_diagonal(&[0.7, 0.3], None).unwrap();
    let weights: Vec<f64> = (0..n_bath).map(|k| 0.5f64.powi(k as i32)).collect();
    let z: f64 = weights.iter().sum();
    let b: Vec<f64> = weights.iter().map(|w| w / z).collect();
    let b = DensityMatrix::from_diagonal(&b, None).unwrap();
    tensor(&s, &b).unwrap()
}

pub fn seeded_haar(dim: usize, seed: u64) -> UnitaryMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    haar_unitary(dim, &mut rng)
}
