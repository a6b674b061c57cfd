use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::Serialize;

use super::{eigen, mat_vec, plus_diag};
use crate::error::{Error, Result};
use crate::instance::{Cut, Instance};

#[derive(Debug, Clone, PartialEq)]
pub struct GwConfig {
    /// Dimension of the vectors; `None` means `n`.
    pub rank: Option<usize>,
    pub max_sweeps: usize,
    /// Stop once a sweep changes the objective by less than this, relatively.
    pub tol: f64,
    pub seed: u64,
}

impl Default for GwConfig {
    fn default() -> Self {
        GwConfig { rank: None, max_sweeps: 100_000, tol: 1e-10, seed: 0 }
    }
}

impl GwConfig {
    pub fn with_seed(seed: u64) -> Self {
        GwConfig { seed, ..GwConfig::default() }
    }
}

/// Dual diagonal extracted from a primal solution and its quality.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DualCertificate {
    /// `D_jj = Σᵢ P_ji W_ij`.
    pub diag: Vec<f64>,
    /// `Σ D_ii`.
    pub dual_value: f64,
    /// `λ_min(W − D)`.
    pub lambda_min: f64,
    /// `Σ D_ii + n·min(0, λ_min)`: the value of the feasible dual `D + min(0, λ_min)·I`.
    pub feasible_dual_value: f64,
    /// `P∘W − feasible_dual_value`, nonnegative by weak duality.
    pub gap: f64,
    /// `|P∘W − Σ D_ii|`.
    pub value_mismatch: f64,
    /// `max |(P(W − D))_ij|`.
    pub complementarity: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GwSolution {
    /// Unit vectors, one per vertex.
    pub vectors: Vec<Vec<f64>>,
    /// `P_ij = ⟨vᵢ, vⱼ⟩`, row-major.
    pub gram: Vec<f64>,
    /// `P∘W`.
    pub primal_value: f64,
    pub dual: DualCertificate,
    pub converged: bool,
    pub sweeps: usize,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn normalize(v: &mut [f64]) -> bool {
    let norm = dot(v, v).sqrt();
    if norm == 0.0 || !norm.is_finite() {
        return false;
    }
    v.iter_mut().for_each(|x| *x /= norm);
    true
}

fn gram_of(vectors: &[Vec<f64>]) -> Vec<f64> {
    let n = vectors.len();
    let mut p = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            p[i * n + j] = if i == j { 1.0 } else { dot(&vectors[i], &vectors[j]) };
        }
    }
    p
}

fn objective(inst: &Instance, vectors: &[Vec<f64>]) -> f64 {
    let n = inst.n();
    let mut total = 0.0;
    for i in 0..n {
        for j in 0..n {
            let w = inst.w(i, j);
            if w != 0.0 {
                total += w * dot(&vectors[i], &vectors[j]);
            }
        }
    }
    total
}

/// Minimizes `Σ Wᵢⱼ⟨vᵢ, vⱼ⟩` over unit vectors by cyclic coordinate descent:
/// `vᵢ ← −normalize(Σⱼ Wᵢⱼ vⱼ)`.
pub fn gw_primal_solve(inst: &Instance, cfg: &GwConfig) -> Result<GwSolution> {
    let n = inst.n();
    let r = cfg.rank.unwrap_or(n);
    if r < 2 {
        return Err(Error::Parameter(format!("rank must be at least 2, got {r}")));
    }
    if !(cfg.tol > 0.0) {
        return Err(Error::Parameter(format!("tolerance must be positive, got {}", cfg.tol)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut vectors: Vec<Vec<f64>> = (0..n)
        .map(|_| loop {
            let mut v: Vec<f64> = (0..r).map(|_| StandardNormal.sample(&mut rng)).collect();
            if normalize(&mut v) {
                break v;
            }
        })
        .collect();
    let scale: f64 = inst.weights().iter().sum::<f64>().max(f64::MIN_POSITIVE);
    let mut value = objective(inst, &vectors);
    let mut converged = false;
    let mut sweeps = 0;
    let mut g = vec![0.0; r];
    while sweeps < cfg.max_sweeps {
        sweeps += 1;
        for i in 0..n {
            g.iter_mut().for_each(|x| *x = 0.0);
            for j in (0..n).filter(|&j| j != i) {
                let w = inst.w(i, j);
                if w != 0.0 {
                    for (gk, vk) in g.iter_mut().zip(&vectors[j]) {
                        *gk += w * vk;
                    }
                }
            }
            let norm = dot(&g, &g).sqrt();
            if norm > 1e-14 * scale {
                vectors[i] = g.iter().map(|x| -x / norm).collect();
            }
        }
        let next = objective(inst, &vectors);
        let change = (value - next).abs();
        value = next;
        if change <= cfg.tol * value.abs().max(1.0) {
            converged = true;
            break;
        }
    }
    let gram = gram_of(&vectors);
    let dual = gw_dual_extract(inst, &gram);
    let primal_value = dot(&gram, inst.weights());
    Ok(GwSolution { vectors, gram, primal_value, dual, converged, sweeps })
}

/// The dual candidate `D_jj = Σᵢ P_ji W_ij` and its residuals.
pub fn gw_dual_extract(inst: &Instance, gram: &[f64]) -> DualCertificate {
    let n = inst.n();
    let w = inst.weights();
    let diag: Vec<f64> = (0..n).map(|j| (0..n).map(|i| gram[j * n + i] * w[i * n + j]).sum()).collect();
    let dual_value: f64 = diag.iter().sum();
    let neg: Vec<f64> = diag.iter().map(|d| -d).collect();
    let w_minus_d = plus_diag(n, w, &neg);
    let lambda_min = eigen(n, &w_minus_d).values[0];
    let feasible_dual_value = dual_value + n as f64 * lambda_min.min(0.0);
    let primal: f64 = dot(gram, w);
    let mut complementarity = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            let entry: f64 = (0..n).map(|k| gram[i * n + k] * w_minus_d[k * n + j]).sum();
            complementarity = complementarity.max(entry.abs());
        }
    }
    DualCertificate {
        diag,
        dual_value,
        lambda_min,
        feasible_dual_value,
        gap: primal - feasible_dual_value,
        value_mismatch: (primal - dual_value).abs(),
        complementarity,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GwRounding {
    pub cut: Cut,
    pub weight: f64,
    /// `uᵢ = ⟨g, vᵢ⟩` for the winning direction `g`.
    pub u: Vec<f64>,
    pub trial: usize,
}

/// Random-hyperplane rounding: the heaviest cut `{i : ⟨g, vᵢ⟩ > 0}` over
/// `trials` Gaussian directions `g`. Ties go to the earliest trial.
pub fn gw_round(inst: &Instance, vectors: &[Vec<f64>], seed: u64, trials: usize) -> Result<GwRounding> {
    if trials == 0 {
        return Err(Error::Parameter("trials must be at least 1".into()));
    }
    if vectors.len() != inst.n() {
        return Err(Error::Parameter(format!("{} vectors for {} vertices", vectors.len(), inst.n())));
    }
    let r = vectors[0].len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: Option<GwRounding> = None;
    for trial in 0..trials {
        let u = loop {
            let g: Vec<f64> = (0..r).map(|_| StandardNormal.sample(&mut rng)).collect();
            let u: Vec<f64> = vectors.iter().map(|v| dot(&g, v)).collect();
            if u.iter().any(|&x| x != 0.0) {
                break u;
            }
        };
        let Ok(cut) = Cut::from_signs(&u) else { continue };
        let weight = inst.cut_weight(&cut);
        if best.as_ref().is_none_or(|b| weight > b.weight) {
            best = Some(GwRounding { cut: cut.canonical(), weight, u, trial });
        }
    }
    best.ok_or_else(|| Error::SolverFailed(format!("all {trials} directions put every vertex on one side")))
}

/// `(W − D)u`, for checking that a rounding vector lies in the kernel.
pub fn kernel_residual(inst: &Instance, diag: &[f64], u: &[f64]) -> Vec<f64> {
    let n = inst.n();
    let neg: Vec<f64> = diag.iter().map(|d| -d).collect();
    mat_vec(n, &plus_diag(n, inst.weights(), &neg), u)
}
