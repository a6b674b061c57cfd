use serde::Serialize;

use super::{eigen, plus_diag, zero_tol};
use crate::error::Result;
use crate::instance::{Cut, Instance};
use crate::io::inf_f64;
use crate::io::check_cut_for;
use crate::oracle::{local_stability_gamma, Oracle};

/// The cut/non-cut decomposition of `W` and the spectrum of `W + D′`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectralBundle {
    pub n: usize,
    pub w_cut: Vec<f64>,
    pub w_uncut: Vec<f64>,
    pub d_cut: Vec<f64>,
    pub d_uncut: Vec<f64>,
    pub d: Vec<f64>,
    /// `D′ = D^cut − D^uncut`.
    pub d_prime: Vec<f64>,
    /// Eigenvalues of `W + D′`, ascending.
    pub eigenvalues: Vec<f64>,
    /// Unit eigenvector of the least eigenvalue.
    pub least_vector: Vec<f64>,
    pub tolerance: f64,
}

impl SpectralBundle {
    /// `W + D′`.
    pub fn w_plus_d_prime(&self) -> Vec<f64> {
        let w: Vec<f64> = self.w_cut.iter().zip(&self.w_uncut).map(|(a, b)| a + b).collect();
        plus_diag(self.n, &w, &self.d_prime)
    }
}

pub fn build_spectral_bundle(inst: &Instance, cut: &Cut) -> Result<SpectralBundle> {
    check_cut_for(inst, cut)?;
    let n = inst.n();
    let mut w_cut = vec![0.0; n * n];
    let mut w_uncut = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            if cut.separates(i, j) {
                w_cut[i * n + j] = inst.w(i, j);
            } else {
                w_uncut[i * n + j] = inst.w(i, j);
            }
        }
    }
    let row_sum = |m: &[f64], i: usize| m[i * n..(i + 1) * n].iter().sum::<f64>();
    let d_cut: Vec<f64> = (0..n).map(|i| row_sum(&w_cut, i)).collect();
    let d_uncut: Vec<f64> = (0..n).map(|i| row_sum(&w_uncut, i)).collect();
    let d = d_cut.iter().zip(&d_uncut).map(|(a, b)| a + b).collect();
    let d_prime: Vec<f64> = d_cut.iter().zip(&d_uncut).map(|(a, b)| a - b).collect();
    let m = plus_diag(n, inst.weights(), &d_prime);
    let e = eigen(n, &m);
    Ok(SpectralBundle {
        n,
        w_cut,
        w_uncut,
        d_cut,
        d_uncut,
        d,
        d_prime,
        least_vector: e.vector(0),
        eigenvalues: e.values,
        tolerance: zero_tol(n, &m),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    /// PSD of rank `n − 1` with kernel spanned by `δ_S`.
    Certified,
    NotPsd,
    RankDeficient,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Certificate {
    pub verdict: Verdict,
    pub lambda_1: f64,
    pub lambda_2: f64,
    pub tolerance: f64,
    /// Whether the sign pattern of the least eigenvector reproduces the cut.
    pub kernel_matches_cut: bool,
    pub eigenvalues: Vec<f64>,
}

/// Checks that `W + D′` is PSD with a one-dimensional kernel inducing `cut`.
pub fn psd_rank_certificate(bundle: &SpectralBundle, cut: &Cut) -> Certificate {
    let tol = bundle.tolerance;
    let (l1, l2) = (bundle.eigenvalues[0], bundle.eigenvalues.get(1).copied().unwrap_or(f64::INFINITY));
    let v = &bundle.least_vector;
    let coord_tol = 1e-8 / (bundle.n as f64).sqrt();
    let kernel_matches_cut = v.iter().all(|x| x.abs() > coord_tol)
        && Cut::from_signs(v).map(|c| c.same_partition(cut)).unwrap_or(false);
    let verdict = if l1 < -tol {
        Verdict::NotPsd
    } else if l2 <= tol || !kernel_matches_cut {
        Verdict::RankDeficient
    } else {
        Verdict::Certified
    };
    Certificate {
        verdict,
        lambda_1: l1,
        lambda_2: l2,
        tolerance: tol,
        kernel_matches_cut,
        eigenvalues: bundle.eigenvalues.clone(),
    }
}

/// `2 / (1 − √(1 − x²))`, infinite for `x ≤ 0`.
pub fn distinguished_threshold(x: f64) -> f64 {
    if x <= 0.0 {
        return f64::INFINITY;
    }
    2.0 / (1.0 - (1.0 - x.min(1.0).powi(2)).sqrt())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DistinguishedReport {
    #[serde(with = "inf_f64")]
    pub gamma_local: f64,
    /// Cheeger constant of `w_cut`.
    pub h_cut: f64,
    pub alpha: f64,
    #[serde(with = "inf_f64")]
    pub threshold_alpha: f64,
    #[serde(with = "inf_f64")]
    pub threshold_h: f64,
    pub holds_alpha: bool,
    pub holds_h: bool,
    /// `α ≤ h(w_cut)`.
    pub alpha_below_h: bool,
}

pub fn distinguished_condition(inst: &Instance, cut: &Cut) -> Result<DistinguishedReport> {
    check_cut_for(inst, cut)?;
    let oracle = Oracle::default();
    let bundle = build_spectral_bundle(inst, cut)?;
    let h_cut = oracle.cheeger_of_matrix(inst.n(), &bundle.w_cut)?;
    let alpha = oracle.distinction_alpha(inst, cut)?;
    let gamma_local = local_stability_gamma(inst, cut);
    let threshold_alpha = distinguished_threshold(alpha);
    let threshold_h = distinguished_threshold(h_cut);
    Ok(DistinguishedReport {
        gamma_local,
        h_cut,
        alpha,
        threshold_alpha,
        threshold_h,
        holds_alpha: gamma_local > threshold_alpha,
        holds_h: gamma_local > threshold_h,
        alpha_below_h: alpha <= h_cut + 1e-9,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{c4, cut_of, k3};
    use crate::generators::gen_infinite_stable_not_distinguished;
    use crate::spectral_gw::mat_vec;

    fn close_all(a: &[f64], b: &[f64], tol: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
    }

    #[test]
    fn c4_bundle() {
        let b = build_spectral_bundle(&c4(), &cut_of(4, &[0, 2])).unwrap();
        assert!(b.w_uncut.iter().all(|&x| x == 0.0));
        assert_eq!(b.d_prime, vec![2.0; 4]);
        assert_eq!(b.d, vec![2.0; 4]);
        assert!(close_all(&b.eigenvalues, &[0.0, 2.0, 2.0, 4.0], 1e-12));
        let cert = psd_rank_certificate(&b, &cut_of(4, &[0, 2]));
        assert_eq!(cert.verdict, Verdict::Certified);
        assert!((cert.lambda_2 - 2.0).abs() < 1e-12);
    }

    #[test]
    fn k3_bundle() {
        let cut = cut_of(3, &[0]);
        let b = build_spectral_bundle(&k3(), &cut).unwrap();
        assert_eq!(b.d_prime, vec![2.0, 0.0, 0.0]);
        assert!(b.eigenvalues[0] < -1e-6);
        assert_eq!(psd_rank_certificate(&b, &cut).verdict, Verdict::NotPsd);
    }

    #[test]
    fn non_max_cut_not_certified() {
        let cut = cut_of(4, &[0, 1]);
        let b = build_spectral_bundle(&c4(), &cut).unwrap();
        assert_ne!(psd_rank_certificate(&b, &cut).verdict, Verdict::Certified);
    }

    #[test]
    fn kernel_identity() {
        let inst = k3();
        for set in [&[0usize][..], &[1], &[0, 1]] {
            let cut = cut_of(3, set);
            let b = build_spectral_bundle(&inst, &cut).unwrap();
            let r = mat_vec(3, &b.w_plus_d_prime(), &cut.delta());
            assert!(r.iter().all(|x| x.abs() < 1e-12));
        }
    }

    #[test]
    fn distinguished_examples() {
        let r = distinguished_condition(&c4(), &cut_of(4, &[0, 2])).unwrap();
        assert!((r.h_cut - 0.5).abs() < 1e-12);
        assert!((r.threshold_h - 2.0 / (1.0 - 0.75f64.sqrt())).abs() < 1e-9);
        assert!((r.threshold_h - 14.93).abs() < 0.01);
        assert!(r.gamma_local.is_infinite() && r.holds_h && r.alpha_below_h);

        let r = distinguished_condition(&k3(), &cut_of(3, &[0])).unwrap();
        assert_eq!(r.gamma_local, 1.0);
        assert!(!r.holds_h && !r.holds_alpha);

        let g = gen_infinite_stable_not_distinguished(4, 1e-3).unwrap();
        let r = distinguished_condition(&g.instance, &g.planted_cut).unwrap();
        assert!(r.threshold_alpha > 1e4 && r.alpha_below_h);
    }
}
