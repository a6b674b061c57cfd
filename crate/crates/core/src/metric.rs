//! Metric instances: vertex splitting into a dense instance, the solver built
//! on it, and ball enumeration.

use rayon::prelude::*;
use serde::Serialize;

use crate::dense::{self, DenseSolution, DenseSolverConfig, SampleMode};
use crate::error::{Error, Result};
use crate::instance::{Cut, Instance};
use crate::tol;

/// Largest split instance that will be materialized.
pub const SPLIT_LIMIT: usize = 3000;

/// Rescales so that `w(V, V)` (ordered pairs) equals `2n²`. Returns the new
/// instance and the factor applied.
pub fn normalize_total_weight(inst: &Instance) -> Result<(Instance, f64)> {
    let total = inst.total_weight();
    if !(total > 0.0) {
        return Err(Error::Degenerate("total weight is zero".into()));
    }
    let n = inst.n() as f64;
    let scale = n * n / total;
    Ok((inst.scaled(scale)?, scale))
}

/// The split instance together with its projection onto the original.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SplitMap {
    #[serde(skip)]
    pub original: Instance,
    #[serde(skip)]
    pub split: Instance,
    /// Split vertex to original vertex.
    pub pi: Vec<usize>,
    /// Number of copies of each original vertex.
    pub multiplicity: Vec<usize>,
}

impl SplitMap {
    /// Copies of `x` occupy a contiguous block starting here.
    pub fn fiber(&self, x: usize) -> std::ops::Range<usize> {
        let start: usize = self.multiplicity[..x].iter().sum();
        start..start + self.multiplicity[x]
    }
}

/// Replaces each `x` by `⌊τ(x)⌋` copies; copies of `x` and `y ≠ x` are joined
/// by `w(x, y) / (k_x·k_y)`, copies of the same vertex by nothing.
pub fn split_instance(inst: &Instance) -> Result<SplitMap> {
    let n = inst.n();
    let target = 2.0 * (n * n) as f64;
    let total = 2.0 * inst.total_weight();
    if (total - target).abs() > 1e-9 * target {
        return Err(Error::Precondition(format!(
            "instance is not normalized: w(V,V) = {total}, expected {target}"
        )));
    }
    let mut multiplicity = Vec::with_capacity(n);
    for x in 0..n {
        let k = (inst.degree(x) + 1e-9).floor();
        if k < 1.0 {
            return Err(Error::Degenerate(format!("vertex {x} has total weight below 1")));
        }
        multiplicity.push(k as usize);
    }
    let size: usize = multiplicity.iter().sum();
    if size > SPLIT_LIMIT {
        return Err(Error::SizeLimit { what: "split instance", n: size, limit: SPLIT_LIMIT });
    }
    let pi: Vec<usize> = (0..n).flat_map(|x| std::iter::repeat_n(x, multiplicity[x])).collect();
    let mut weights = vec![0.0; size * size];
    for a in 0..size {
        let x = pi[a];
        for b in 0..size {
            let y = pi[b];
            if x != y {
                weights[a * size + b] = inst.w(x, y) / (multiplicity[x] * multiplicity[y]) as f64;
            }
        }
    }
    let split = Instance::new(size, weights)?;
    Ok(SplitMap { original: inst.clone(), split, pi, multiplicity })
}

/// `(S, S̄) ↦ (π⁻¹(S), π⁻¹(S̄))`.
pub fn lift_cut(map: &SplitMap, cut: &Cut) -> Result<Cut> {
    if cut.len() != map.original.n() {
        return Err(Error::InvalidCut(format!(
            "cut has {} entries, original has {} vertices",
            cut.len(),
            map.original.n()
        )));
    }
    Cut::new(map.pi.iter().map(|&x| cut.in_s(x)).collect())
}

/// Inverse of [`lift_cut`] on fiber-constant cuts.
pub fn project_cut(map: &SplitMap, cut: &Cut) -> Result<Cut> {
    if cut.len() != map.split.n() {
        return Err(Error::InvalidCut(format!(
            "cut has {} entries, split instance has {} vertices",
            cut.len(),
            map.split.n()
        )));
    }
    let mut side = vec![false; map.original.n()];
    for x in 0..map.original.n() {
        let fiber = map.fiber(x);
        let first = cut.in_s(fiber.start);
        if fiber.clone().any(|a| cut.in_s(a) != first) {
            return Err(Error::NotFiberConstant { vertex: x });
        }
        side[x] = first;
    }
    Cut::new(side)
}

/// Majority side of each fiber; ties go to `S̄`.
fn repair(map: &SplitMap, sides: &[bool]) -> Vec<bool> {
    (0..map.original.n())
        .map(|x| {
            let fiber = map.fiber(x);
            let in_s = fiber.clone().filter(|&a| sides[a]).count();
            2 * in_s > fiber.len()
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct MetricDenseSolution {
    /// Cut of the original instance.
    pub cut: Cut,
    pub weight: f64,
    pub split_size: usize,
    pub dense: DenseSolution,
}

/// Normalize, split, run the sampling solver on the split instance and map
/// the best proposal back. A seeded cut is given on the original instance.
pub fn metric_dense_solve(inst: &Instance, cfg: &DenseSolverConfig) -> Result<MetricDenseSolution> {
    inst.require_metric()?;
    let (normalized, _) = normalize_total_weight(inst)?;
    let map = split_instance(&normalized)?;
    let mut split_cfg = cfg.clone();
    if let SampleMode::Seeded(cut) = &cfg.mode {
        split_cfg.mode = SampleMode::Seeded(lift_cut(&map, cut)?);
    }
    let sol = dense::run(&map.split, &split_cfg, |sides| dense::score(inst, &repair(&map, sides)))?;
    Ok(MetricDenseSolution { cut: sol.cut.clone(), weight: sol.weight, split_size: map.split.n(), dense: sol })
}

/// `B(c, r) = {y : w(c, y) ≤ r}`.
pub fn ball(inst: &Instance, center: usize, radius: f64) -> Vec<usize> {
    (0..inst.n()).filter(|&y| y == center || inst.w(center, y) <= radius).collect()
}

/// Whether `set` equals some closed ball.
pub fn is_ball(inst: &Instance, set: &[usize]) -> bool {
    let mut sorted = set.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    sorted.iter().any(|&c| {
        let r = sorted.iter().map(|&y| inst.w(c, y)).fold(0.0, f64::max);
        ball(inst, c, r) == sorted
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BallCut {
    pub cut: Cut,
    pub center: usize,
    pub radius: f64,
    pub weight: f64,
}

/// Heaviest cut `(B(c, r), V ∖ B(c, r))` over all centers and all radii in
/// `{0} ∪ {w(c, y)}`.
pub fn ball_enumeration_solve(inst: &Instance) -> Result<BallCut> {
    let n = inst.n();
    let best = (0..n)
        .into_par_iter()
        .filter_map(|c| {
            let mut order: Vec<usize> = (0..n).filter(|&y| y != c).collect();
            order.sort_by(|&a, &b| inst.w(c, a).total_cmp(&inst.w(c, b)).then(a.cmp(&b)));
            let mut inside = vec![false; n];
            inside[c] = true;
            let mut weight = inst.degree(c);
            let mut best: Option<(f64, f64, usize)> = Some((weight, 0.0, 1));
            let mut k = 0;
            while k < order.len() {
                let r = inst.w(c, order[k]);
                while k < order.len() && inst.w(c, order[k]) <= r {
                    let y = order[k];
                    let to_ball: f64 = (0..n).filter(|&z| inside[z]).map(|z| inst.w(y, z)).sum();
                    weight += inst.degree(y) - 2.0 * to_ball;
                    inside[y] = true;
                    k += 1;
                }
                if k < order.len() && best.is_none_or(|b| weight > b.0) {
                    best = Some((weight, r, k + 1));
                }
            }
            best.map(|(w, r, size)| (w, c, r, size))
        })
        .reduce_with(|a, b| if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) { b } else { a })
        .ok_or_else(|| Error::Degenerate("no proper ball".into()))?;
    let (_, center, radius, _) = best;
    let members = ball(inst, center, radius);
    let cut = Cut::from_set(n, &members)?;
    let weight = inst.cut_weight(&cut);
    Ok(BallCut { cut, center, radius, weight })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EdgeBoundCheck {
    pub passed: bool,
    /// Pair `(x, z)` with the smallest `w(x, z) − bound`, `x` on the side
    /// playing `L`.
    pub worst_pair: (usize, usize),
    pub worst_slack: f64,
}

/// Checks `w(x, z) ≥ (γ² − 1)/γ · w(x, R) / (γ|R| + |L|)` for every `x ∈ L`,
/// `z ∈ R`, with both sides of the cut taking the role of `L` in turn.
pub fn cut_edge_lower_bound_check(inst: &Instance, cut: &Cut, gamma: f64) -> EdgeBoundCheck {
    let n = inst.n();
    let mut worst = ((0, 0), f64::INFINITY);
    let scale = inst.max_weight();
    let factor = if gamma.is_infinite() { f64::INFINITY } else { (gamma * gamma - 1.0) / gamma };
    for x in 0..n {
        let l_size = (0..n).filter(|&y| !cut.separates(x, y)).count() as f64;
        let r_size = n as f64 - l_size;
        let w_xr: f64 = (0..n).filter(|&z| cut.separates(x, z)).map(|z| inst.w(x, z)).sum();
        let bound = if gamma.is_infinite() {
            w_xr / r_size
        } else {
            factor * w_xr / (gamma * r_size + l_size)
        };
        for z in (0..n).filter(|&z| cut.separates(x, z)) {
            let slack = inst.w(x, z) - bound;
            if slack < worst.1 {
                worst = ((x, z), slack);
            }
        }
    }
    EdgeBoundCheck { passed: worst.1 >= -tol::REL * scale.max(1.0), worst_pair: worst.0, worst_slack: worst.1 }
}
