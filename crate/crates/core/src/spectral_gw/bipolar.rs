use serde::Serialize;

use super::gw::{gw_primal_solve, GwConfig, GwSolution};
use super::{eigen, plus_diag, zero_tol};
use crate::error::{Error, Result};
use crate::instance::{Cut, Instance};
use crate::io::check_cut_for;

/// `D_ii = −δᵢ Σⱼ Wᵢⱼ δⱼ` for `δ = δ_S`.
pub fn bipolarity_diagonal(inst: &Instance, cut: &Cut) -> Vec<f64> {
    let delta = cut.delta();
    (0..inst.n())
        .map(|i| -delta[i] * (0..inst.n()).map(|j| inst.w(i, j) * delta[j]).sum::<f64>())
        .collect()
}

/// The four equivalent bipolarity conditions, each evaluated on its own.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BipolarityReport {
    pub d: Vec<f64>,
    /// `δᵀWδ`.
    pub delta_value: f64,
    /// (1) the relaxation's optimum equals `δᵀWδ`.
    pub gw_bipolar: bool,
    /// (2) `δ_S` lies in the least eigenspace of `W + D`.
    pub delta_is_glev: bool,
    /// (3) `W + D ⪰ 0`.
    pub w_plus_d_psd: bool,
    /// (4) the relaxation's dual optimum is `−D`.
    pub dual_is_minus_d: bool,
    pub lambda_min: f64,
    pub eigenspace_residual: f64,
    pub gw_primal_value: f64,
    pub gw_dual_lower_bound: f64,
    pub gw_gap: f64,
    /// `max |D^gw_ii + D_ii|`.
    pub dual_distance: f64,
    pub agree: bool,
    /// The relaxation was re-solved at a tighter tolerance because the first
    /// pass disagreed with the spectral verdicts.
    pub escalated: bool,
}

fn relaxation_verdicts(inst: &Instance, d: &[f64], delta_value: f64, sol: &GwSolution) -> (bool, bool, f64) {
    let scale: f64 = inst.weights().iter().sum();
    let bipolar = delta_value <= sol.dual.feasible_dual_value + 1e-6 * scale;
    let distance = sol.dual.diag.iter().zip(d).map(|(g, d)| (g + d).abs()).fold(0.0, f64::max);
    let max_degree = inst.degrees().into_iter().fold(0.0, f64::max);
    (bipolar, distance <= 1e-4 * max_degree, distance)
}

pub fn bipolarity_check(inst: &Instance, cut: &Cut, cfg: &GwConfig) -> Result<BipolarityReport> {
    check_cut_for(inst, cut)?;
    let n = inst.n();
    let d = bipolarity_diagonal(inst, cut);
    let delta = cut.delta();
    let delta_value: f64 = (0..n).map(|i| (0..n).map(|j| delta[i] * inst.w(i, j) * delta[j]).sum::<f64>()).sum();

    let m = plus_diag(n, inst.weights(), &d);
    let tol = zero_tol(n, &m);
    let e = eigen(n, &m);
    let lambda_min = e.values[0];
    let w_plus_d_psd = lambda_min >= -tol;

    // Project δ/√n onto the eigenspace of the least eigenvalue.
    let unit: Vec<f64> = delta.iter().map(|x| x / (n as f64).sqrt()).collect();
    let mut projected = vec![0.0; n];
    for k in (0..n).take_while(|&k| e.values[k] <= lambda_min + tol) {
        let v = e.vector(k);
        let c: f64 = v.iter().zip(&unit).map(|(a, b)| a * b).sum();
        projected.iter_mut().zip(&v).for_each(|(p, x)| *p += c * x);
    }
    let eigenspace_residual = unit.iter().zip(&projected).map(|(a, b)| (a - b).powi(2)).sum::<f64>().sqrt();
    let delta_is_glev = eigenspace_residual <= 1e-6;

    let mut sol = gw_primal_solve(inst, cfg)?;
    let (mut gw_bipolar, mut dual_is_minus_d, mut dual_distance) = relaxation_verdicts(inst, &d, delta_value, &sol);
    let spectral_agree = delta_is_glev == w_plus_d_psd;
    let mut escalated = false;
    if !(spectral_agree && gw_bipolar == w_plus_d_psd && dual_is_minus_d == w_plus_d_psd) {
        escalated = true;
        let tight = GwConfig { tol: cfg.tol.min(1e-14), max_sweeps: cfg.max_sweeps * 10, seed: cfg.seed ^ 0x9e37, ..cfg.clone() };
        sol = gw_primal_solve(inst, &tight)?;
        (gw_bipolar, dual_is_minus_d, dual_distance) = relaxation_verdicts(inst, &d, delta_value, &sol);
    }
    let verdicts = [gw_bipolar, delta_is_glev, w_plus_d_psd, dual_is_minus_d];
    Ok(BipolarityReport {
        d,
        delta_value,
        gw_bipolar,
        delta_is_glev,
        w_plus_d_psd,
        dual_is_minus_d,
        lambda_min,
        eigenspace_residual,
        gw_primal_value: sol.primal_value,
        gw_dual_lower_bound: sol.dual.feasible_dual_value,
        gw_gap: sol.dual.gap,
        dual_distance,
        agree: verdicts.iter().all(|&v| v == verdicts[0]),
        escalated,
    })
}

/// Multiplies the weights of cut edges by `1 + eps`. Requires `W + D ⪰ 0`.
pub fn strongly_bipolar_perturb(inst: &Instance, cut: &Cut, eps: f64) -> Result<Instance> {
    check_cut_for(inst, cut)?;
    if !(eps >= 0.0) || !eps.is_finite() {
        return Err(Error::Parameter(format!("eps must be nonnegative, got {eps}")));
    }
    let n = inst.n();
    let m = plus_diag(n, inst.weights(), &bipolarity_diagonal(inst, cut));
    let lambda_min = eigen(n, &m).values[0];
    if lambda_min < -zero_tol(n, &m) {
        return Err(Error::Precondition(format!("cut is not GW-bipolar: λ_min(W + D) = {lambda_min}")));
    }
    if eps == 0.0 {
        return Ok(inst.clone());
    }
    let weights = (0..n * n)
        .map(|k| {
            let w = inst.weights()[k];
            if cut.separates(k / n, k % n) {
                w * (1.0 + eps)
            } else {
                w
            }
        })
        .collect();
    Instance::new(n, weights)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{c4, cut_of, k3};
    use crate::generators::gen_planted_partition;
    use crate::spectral_gw::build_spectral_bundle;

    #[test]
    fn c4_all_true() {
        let r = bipolarity_check(&c4(), &cut_of(4, &[0, 2]), &GwConfig::with_seed(1)).unwrap();
        assert_eq!(r.d, vec![2.0; 4]);
        assert_eq!(r.delta_value, -8.0);
        assert!(r.gw_bipolar && r.delta_is_glev && r.w_plus_d_psd && r.dual_is_minus_d && r.agree);
    }

    #[test]
    fn k3_all_false() {
        let cut = cut_of(3, &[0]);
        let r = bipolarity_check(&k3(), &cut, &GwConfig::with_seed(1)).unwrap();
        assert_eq!(r.d, vec![2.0, 0.0, 0.0]);
        // u = (0, 1, −1): uᵀ(W + D)u = −2.
        let u = [0.0, 1.0, -1.0];
        let m = plus_diag(3, k3().weights(), &r.d);
        let q: f64 = (0..3).map(|i| (0..3).map(|j| u[i] * m[i * 3 + j] * u[j]).sum::<f64>()).sum();
        assert_eq!(q, -2.0);
        assert!(!r.gw_bipolar && !r.delta_is_glev && !r.w_plus_d_psd && !r.dual_is_minus_d && r.agree);
    }

    #[test]
    fn bipartite_instances_are_bipolar() {
        for seed in 0..5 {
            let g = gen_planted_partition(8, 0.7, 0.0, seed).unwrap();
            let r = bipolarity_check(&g.instance, &g.planted_cut, &GwConfig::with_seed(seed)).unwrap();
            assert!(r.agree && r.w_plus_d_psd, "{r:?}");
        }
    }

    #[test]
    fn strong_perturbation() {
        let cut = cut_of(4, &[0, 2]);
        let p = strongly_bipolar_perturb(&c4(), &cut, 0.1).unwrap();
        assert!(p.edges().all(|(_, _, w)| (w - 1.1).abs() < 1e-15));
        let b = build_spectral_bundle(&p, &cut).unwrap();
        assert!(b.eigenvalues[1] > b.tolerance);
        for seed in 0..3 {
            let sol = gw_primal_solve(&p, &GwConfig::with_seed(seed)).unwrap();
            assert!(sol.gram.iter().all(|x| (x.abs() - 1.0).abs() < 1e-3));
        }
        assert_eq!(strongly_bipolar_perturb(&c4(), &cut, 0.0).unwrap(), c4());
        assert!(matches!(strongly_bipolar_perturb(&k3(), &cut_of(3, &[0]), 0.1), Err(Error::Precondition(_))));
    }
}
