use serde::Serialize;

use super::{eigen, plus_diag, zero_tol};
use crate::error::{Error, Result};
use crate::instance::{Cut, Instance};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GlevCut {
    pub cut: Cut,
    /// Least eigenvector of `W + Δ`.
    pub vector: Vec<f64>,
    pub lambda_1: f64,
    pub lambda_2: f64,
}

/// The cut induced by the least eigenvector of `W + diag(delta)`.
///
/// Fails when the least eigenvalue is not simple or some coordinate of the
/// eigenvector is numerically zero.
pub fn glev_cut(inst: &Instance, delta: &[f64]) -> Result<GlevCut> {
    let n = inst.n();
    if delta.len() != n {
        return Err(Error::Parameter(format!("diagonal has {} entries, expected {n}", delta.len())));
    }
    let m = plus_diag(n, inst.weights(), delta);
    let tol = zero_tol(n, &m);
    let e = eigen(n, &m);
    let (l1, l2) = (e.values[0], e.values[1]);
    if l1 < -tol {
        return Err(Error::Precondition(format!("W + Δ is not PSD: least eigenvalue {l1}")));
    }
    if l2 - l1 <= tol {
        return Err(Error::SolverFailed(format!("least eigenvalue is not simple: {l1}, {l2}")));
    }
    let vector = e.vector(0);
    let coord_tol = 1e-8 / (n as f64).sqrt();
    if let Some(i) = vector.iter().position(|x| x.abs() <= coord_tol) {
        return Err(Error::SolverFailed(format!("eigenvector coordinate {i} is numerically zero")));
    }
    let cut = Cut::from_signs(&vector)?.canonical();
    Ok(GlevCut { cut, vector, lambda_1: l1, lambda_2: l2 })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GlevCondition {
    /// `max |uᵢuⱼ| / min |uᵢuⱼ|` over all pairs `i ≠ j`.
    pub ratio: f64,
    pub holds: bool,
}

/// Whether `γ ≥ max |uᵢuⱼ| / min |uᵢuⱼ|`, the ratio taken over every pair of
/// distinct vertices.
pub fn glev_stability_condition(u: &[f64], gamma: f64) -> Result<GlevCondition> {
    if let Some(i) = u.iter().position(|&x| x == 0.0 || !x.is_finite()) {
        return Err(Error::Parameter(format!("coordinate {i} of u is zero or not finite")));
    }
    let n = u.len();
    let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
    for i in 0..n {
        for j in i + 1..n {
            let p = (u[i] * u[j]).abs();
            lo = lo.min(p);
            hi = hi.max(p);
        }
    }
    let ratio = hi / lo;
    Ok(GlevCondition { ratio, holds: gamma >= ratio * (1.0 - 1e-12) })
}

/// `W′ᵢⱼ = |vᵢ|·|vⱼ|·Wᵢⱼ`.
pub fn glev_scaling_perturbation(inst: &Instance, v: &[f64]) -> Result<Instance> {
    let n = inst.n();
    if v.len() != n {
        return Err(Error::Parameter(format!("vector has {} entries, expected {n}", v.len())));
    }
    if let Some(i) = v.iter().position(|&x| x == 0.0 || !x.is_finite()) {
        return Err(Error::Parameter(format!("coordinate {i} of v is zero or not finite")));
    }
    let weights = (0..n * n).map(|k| v[k / n].abs() * v[k % n].abs() * inst.weights()[k]).collect();
    Instance::new(n, weights)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{c4, complete, cut_of};

    #[test]
    fn glev_cut_examples() {
        let g = glev_cut(&c4(), &[2.0; 4]).unwrap();
        assert_eq!(g.cut, cut_of(4, &[0, 2]));
        assert!(g.lambda_1.abs() < 1e-12);
        let g = glev_cut(&c4(), &[2.001; 4]).unwrap();
        assert_eq!(g.cut, cut_of(4, &[0, 2]));
        // K4 has eigenvalues {-1, -1, -1, 3}.
        let k4 = complete(4);
        assert!(matches!(glev_cut(&k4, &[-0.5; 4]), Err(Error::Precondition(_))));
        assert!(matches!(glev_cut(&k4, &[1.0; 4]), Err(Error::SolverFailed(_))));
        assert!(matches!(glev_cut(&c4(), &[0.0; 4]), Err(Error::Precondition(_))));
    }

    #[test]
    fn stability_condition_examples() {
        let r = glev_stability_condition(&[1.0, -1.0, 1.0, -1.0], 1.0).unwrap();
        assert_eq!(r.ratio, 1.0);
        assert!(r.holds);
        let r = glev_stability_condition(&[1.0, 2.0, 1.0, 2.0], 3.9).unwrap();
        assert_eq!(r.ratio, 4.0);
        assert!(!r.holds);
        assert!(glev_stability_condition(&[1.0, 2.0, 1.0, 2.0], 4.0).unwrap().holds);
        assert!(glev_stability_condition(&[1.0, 0.0, 1.0], 10.0).is_err());
    }

    #[test]
    fn scaling_examples() {
        let inst = c4();
        assert_eq!(glev_scaling_perturbation(&inst, &[1.0, -1.0, 1.0, -1.0]).unwrap(), inst);
        let scaled = glev_scaling_perturbation(&inst, &[2.0, -2.0, 2.0, -2.0]).unwrap();
        assert_eq!(scaled, inst.scaled(4.0).unwrap());
        let w = glev_scaling_perturbation(&inst, &[1.0, 2.0, 1.0, 2.0]).unwrap();
        assert!(w.edges().all(|(_, _, x)| x == 2.0));
        assert!(glev_scaling_perturbation(&inst, &[1.0, 0.0, 1.0, 1.0]).is_err());
    }
}
