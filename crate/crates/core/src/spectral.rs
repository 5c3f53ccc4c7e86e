//! Spectrum extraction, numerical rank, sorted-multiset comparison, and
//! product spectra.
//!
//! Unitary conjugation preserves the eigenvalue multiset, so every
//! reachability question downstream reduces to bookkeeping on the
//! descending-sorted spectra handled here. "Number of non-zero eigenvalues"
//! statements are realized as numerical rank above a tolerance.

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::linalg::{eig_hermitian, DensityMatrix};
use crate::tol::{default_rank_tol, Tolerances};
use crate::Result;

/// Descending-sorted real eigenvalue list.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    values: Vec<f64>,
    source_dim: usize,
}

impl Spectrum {
    pub fn new(values: Vec<f64>, source_dim: usize) -> Result<Self> {
        for w in values.windows(2) {
            if w[0] < w[1] {
                return Err(Error::InvalidInput(
                    "spectrum values must be sorted descending".into(),
                ));
            }
        }
        if values.iter().any(|&v| v < -Tolerances::default().psd) {
            return Err(Error::NotPositiveSemidefinite {
                min_eigenvalue: values.last().copied().unwrap_or(0.0),
            });
        }
        Ok(Self { values, source_dim })
    }

    pub fn from_unsorted(mut values: Vec<f64>, source_dim: usize) -> Result<Self> {
        values.sort_by(|a, b| b.partial_cmp(a).unwrap());
        Self::new(values, source_dim)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn source_dim(&self) -> usize {
        self.source_dim
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn largest(&self) -> f64 {
        self.values.first().copied().unwrap_or(0.0)
    }

    /// Sum of the `n` largest values.
    pub fn top_sum(&self, n: usize) -> f64 {
        self.values.iter().take(n).sum()
    }

    /// True if any value sits uncomfortably close to the rank cutoff,
    /// i.e. within [tol/10, 10*tol]. Rank decisions are discontinuous there.
    pub fn has_marginal_values(&self, tol: f64) -> bool {
        self.values
            .iter()
            .any(|&v| v >= tol / 10.0 && v <= 10.0 * tol)
    }
}

/// Numerical-rank decision with the boundary values that produced it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankReport {
    pub rank: usize,
    pub tolerance_used: f64,
    /// Smallest value counted as nonzero (0 when rank = 0).
    pub smallest_kept: f64,
    /// Largest value treated as zero (0 when full rank).
    pub largest_dropped: f64,
}

/// Eigenvalues of a density matrix, sorted descending. Values in
/// [-psd_tol, 0) are clamped to zero; anything more negative is an error.
pub fn spectrum(rho: &DensityMatrix) -> Result<Spectrum> {
    let psd = Tolerances::default().psd;
    let (values, _) = eig_hermitian(rho.elements())?;
    let min = values.iter().cloned().fold(f64::INFINITY, f64::min);
    if min < -psd {
        return Err(Error::NotPositiveSemidefinite {
            min_eigenvalue: min,
        });
    }
    let clamped: Vec<f64> = values.into_iter().map(|v| v.max(0.0)).collect();
    Spectrum::new(clamped, rho.dim())
}

/// Count of values strictly above `tol`, with an audit trail.
pub fn numerical_rank(spec: &Spectrum, tol: f64) -> RankReport {
    let rank = spec.values().iter().filter(|&&v| v > tol).count();
    let smallest_kept = if rank > 0 { spec.values()[rank - 1] } else { 0.0 };
    let largest_dropped = spec.values().get(rank).copied().unwrap_or(0.0);
    RankReport {
        rank,
        tolerance_used: tol,
        smallest_kept,
        largest_dropped,
    }
}

/// Rank with the default cutoff `dim * eps * largest_eigenvalue`.
pub fn numerical_rank_default(spec: &Spectrum) -> RankReport {
    let tol = default_rank_tol(spec.source_dim(), spec.largest());
    numerical_rank(spec, tol)
}

/// Sorted elementwise comparison; the shorter spectrum is zero-padded.
pub fn spectra_equal(p: &Spectrum, q: &Spectrum, tol: f64) -> bool {
    let n = p.len().max(q.len());
    (0..n).all(|k| {
        let a = p.values().get(k).copied().unwrap_or(0.0);
        let b = q.values().get(k).copied().unwrap_or(0.0);
        (a - b).abs() <= tol
    })
}

/// All pairwise products a[m] * b[j], sorted descending. This is the spectrum
/// of a tensor product whenever `a` and `b` are spectra of the factors.
pub fn product_spectrum(a: &Spectrum, b: &Spectrum) -> Spectrum {
    let mut values: Vec<f64> = a
        .values()
        .iter()
        .flat_map(|&x| b.values().iter().map(move |&y| x * y))
        .collect();
    values.sort_by(|x, y| y.partial_cmp(x).unwrap());
    Spectrum {
        values,
        source_dim: a.source_dim() * b.source_dim(),
    }
}

/// Pairwise products with their factor indices, sorted descending by value
/// with ties broken by (system index, bath index). Feeds the pairing
/// certificate, which must be deterministic.
pub fn indexed_product_spectrum(a: &Spectrum, b: &Spectrum) -> Vec<(f64, usize, usize)> {
    let mut entries: Vec<(f64, usize, usize)> = a
        .values()
        .iter()
        .enumerate()
        .flat_map(|(m, &x)| {
            b.values()
                .iter()
                .enumerate()
                .map(move |(j, &y)| (x * y, m, j))
        })
        .collect();
    entries.sort_by(|p, q| {
        q.0.partial_cmp(&p.0)
            .unwrap()
            .then(p.1.cmp(&q.1))
            .then(p.2.cmp(&q.2))
    });
    entries
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::tensor;
    use approx::assert_abs_diff_eq;

    fn spec(vals: &[f64]) -> Spectrum {
        Spectrum::from_unsorted(vals.to_vec(), vals.len()).unwrap()
    }

    #[test]
    fn spectrum_sorts_descending() {
        let rho = DensityMatrix::from_diagonal(&[0.3, 0.7], None).unwrap();
        let s = spectrum(&rho).unwrap();
        assert_abs_diff_eq!(s.values()[0], 0.7, epsilon = 1e-14);
        assert_abs_diff_eq!(s.values()[1], 0.3, epsilon = 1e-14);
    }

    #[test]
    fn spectrum_of_tensor_product() {
        let a = DensityMatrix::from_diagonal(&[0.7, 0.3], None).unwrap();
        let b = DensityMatrix::from_diagonal(&[0.8, 0.2], None).unwrap();
        let s = spectrum(&tensor(&a, &b).unwrap()).unwrap();
        let expect = [0.56, 0.24, 0.14, 0.06];
        for (k, e) in expect.iter().enumerate() {
            assert_abs_diff_eq!(s.values()[k], *e, epsilon = 1e-12);
        }
    }

    #[test]
    fn spectrum_of_pure_state() {
        let rho = DensityMatrix::basis_projector(4, 2).unwrap();
        let s = spectrum(&rho).unwrap();
        assert_abs_diff_eq!(s.values()[0], 1.0, epsilon = 1e-12);
        for k in 1..4 {
            assert_abs_diff_eq!(s.values()[k], 0.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn rank_counts_above_tol() {
        let r = numerical_rank(&spec(&[0.7, 0.3]), 1e-9);
        assert_eq!(r.rank, 2);
        assert_abs_diff_eq!(r.smallest_kept, 0.3, epsilon = 1e-14);
        assert_abs_diff_eq!(r.largest_dropped, 0.0, epsilon = 1e-14);

        let r = numerical_rank(&spec(&[0.8, 0.2, 0.0, 0.0]), 1e-9);
        assert_eq!(r.rank, 2);
        assert_abs_diff_eq!(r.largest_dropped, 0.0, epsilon = 1e-14);
    }

    #[test]
    fn rank_of_thermal_tensor_thermal_is_full() {
        // full-rank x full-rank on 2x2 levels
        let p = product_spectrum(&spec(&[0.7, 0.3]), &spec(&[0.8, 0.2]));
        assert_eq!(numerical_rank_default(&p).rank, 4);
    }

    #[test]
    fn rank_of_pure_target_is_bath_rank() {
        let p = product_spectrum(&spec(&[1.0, 0.0]), &spec(&[0.6, 0.4]));
        assert_eq!(numerical_rank_default(&p).rank, 2);
    }

    #[test]
    fn spectra_equal_basic() {
        assert!(spectra_equal(&spec(&[0.7, 0.3]), &spec(&[0.7, 0.3]), 1e-12));
        assert!(!spectra_equal(
            &spec(&[0.56, 0.24, 0.14, 0.06]),
            &spec(&[0.8, 0.2, 0.0, 0.0]),
            1e-10
        ));
        // zero padding
        assert!(spectra_equal(&spec(&[1.0, 0.0, 0.0]), &spec(&[1.0]), 1e-12));
    }

    #[test]
    fn product_spectrum_examples() {
        let p = product_spectrum(&spec(&[1.0, 0.0]), &spec(&[0.8, 0.2]));
        assert_eq!(p.values(), &[0.8, 0.2, 0.0, 0.0]);

        let p = product_spectrum(&spec(&[0.7, 0.3]), &spec(&[0.8, 0.2]));
        let expect = [0.56, 0.24, 0.14, 0.06];
        for (k, e) in expect.iter().enumerate() {
            assert_abs_diff_eq!(p.values()[k], *e, epsilon = 1e-14);
        }

        // symmetric system halves every bath weight, each appearing twice
        let p = product_spectrum(&spec(&[0.5, 0.5]), &spec(&[0.6, 0.4]));
        assert_abs_diff_eq!(p.values()[0], 0.3, epsilon = 1e-14);
        assert_abs_diff_eq!(p.values()[1], 0.3, epsilon = 1e-14);
        assert_abs_diff_eq!(p.values()[2], 0.2, epsilon = 1e-14);
        assert_abs_diff_eq!(p.values()[3], 0.2, epsilon = 1e-14);
    }

    #[test]
    fn marginal_detection() {
        let s = spec(&[0.9, 5e-9, 0.1 - 5e-9]);
        assert!(s.has_marginal_values(1e-9));
        assert!(!spec(&[0.7, 0.3]).has_marginal_values(1e-9));
    }
}
