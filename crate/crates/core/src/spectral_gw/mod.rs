//! Spectral certificates and the Goemans–Williamson relaxation.
//!
//! Matrices are dense row-major `Vec<f64>` of side `n`, the same layout as
//! [`Instance::weights`](crate::Instance::weights).

mod bipolar;
mod glev;
mod gw;
mod spectral;

pub use bipolar::{bipolarity_check, bipolarity_diagonal, strongly_bipolar_perturb, BipolarityReport};
pub use glev::{glev_cut, glev_scaling_perturbation, glev_stability_condition, GlevCondition, GlevCut};
pub use gw::{
    gw_dual_extract, gw_primal_solve, gw_round, kernel_residual, DualCertificate, GwConfig, GwRounding,
    GwSolution,
};
pub use spectral::{
    build_spectral_bundle, distinguished_condition, distinguished_threshold, psd_rank_certificate,
    Certificate, DistinguishedReport, SpectralBundle, Verdict,
};

use nalgebra::{DMatrix, SymmetricEigen};

/// Eigenpairs sorted by ascending eigenvalue; column `k` of `vectors` belongs
/// to `values[k]`.
#[derive(Debug, Clone)]
pub(crate) struct Eigen {
    pub values: Vec<f64>,
    pub vectors: DMatrix<f64>,
}

impl Eigen {
    pub fn vector(&self, k: usize) -> Vec<f64> {
        self.vectors.column(k).iter().copied().collect()
    }
}

pub(crate) fn eigen(n: usize, m: &[f64]) -> Eigen {
    let dec = SymmetricEigen::new(DMatrix::from_row_slice(n, n, m));
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| dec.eigenvalues[a].total_cmp(&dec.eigenvalues[b]));
    let values = order.iter().map(|&k| dec.eigenvalues[k]).collect();
    let vectors = DMatrix::from_fn(n, n, |i, j| dec.eigenvectors[(i, order[j])]);
    Eigen { values, vectors }
}

/// An eigenvalue counts as zero below `1e-8·(1 + ‖M‖_max·n)`.
pub(crate) fn zero_tol(n: usize, m: &[f64]) -> f64 {
    let max = m.iter().fold(0.0f64, |a, x| a.max(x.abs()));
    1e-8 * (1.0 + max * n as f64)
}

/// `W + diag(d)`.
pub(crate) fn plus_diag(n: usize, w: &[f64], d: &[f64]) -> Vec<f64> {
    let mut m = w.to_vec();
    for i in 0..n {
        m[i * n + i] += d[i];
    }
    m
}

pub(crate) fn mat_vec(n: usize, m: &[f64], v: &[f64]) -> Vec<f64> {
    (0..n).map(|i| (0..n).map(|j| m[i * n + j] * v[j]).sum()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eigen_is_sorted_and_consistent() {
        let m = [2.0, 1.0, 0.0, 1.0, 2.0, 0.0, 0.0, 0.0, -1.0];
        let e = eigen(3, &m);
        assert!(e.values.windows(2).all(|w| w[0] <= w[1]));
        for k in 0..3 {
            let v = e.vector(k);
            let mv = mat_vec(3, &m, &v);
            for i in 0..3 {
                assert!((mv[i] - e.values[k] * v[i]).abs() < 1e-12);
            }
        }
        assert!((e.values[0] + 1.0).abs() < 1e-12 && (e.values[2] - 3.0).abs() < 1e-12);
    }
}
