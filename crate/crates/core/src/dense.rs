//! Sampling solver for locally stable dense instances.
//!
//! A multiset of `m` vertices is drawn uniformly with replacement. Every
//! bipartition `(L, R)` of the sample proposes the cut
//! `S = {x : w(x, R) > w(x, L)}`; the heaviest proposal wins. If `L` is the
//! part of the sample lying in the optimal `S`, each vertex of a locally
//! stable instance lands on its optimal side with high probability.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::instance::{Cut, Instance};

/// Relative slack below which `w(x, R)` and `w(x, L)` count as tied.
const TIE_REL: f64 = 1e-12;

/// `ceil(2·(C·(2+ε)/ε)²·ln(2n))`.
pub fn sample_size(density: f64, eps: f64, n: usize) -> Result<usize> {
    if !(density >= 1.0) || !density.is_finite() {
        return Err(Error::Parameter(format!("density must be at least 1, got {density}")));
    }
    if !(eps > 0.0) || !eps.is_finite() {
        return Err(Error::Parameter(format!("eps must be positive, got {eps}")));
    }
    if n < 2 {
        return Err(Error::Parameter(format!("need n >= 2, got {n}")));
    }
    let d = 2.0 * (density * (2.0 + eps) / eps).powi(2);
    Ok((d * (2.0 * n as f64).ln()).ceil() as usize)
}

/// `n·exp(−½·((γ−1)/(C(γ+1)))²·m)` clamped to `[0, 1]`; vacuous (1) for `γ ≤ 1`.
pub fn failure_bound(density: f64, gamma: f64, m: usize, n: usize) -> f64 {
    if !(gamma > 1.0) {
        return 1.0;
    }
    let ratio = if gamma.is_infinite() { 1.0 } else { (gamma - 1.0) / (gamma + 1.0) };
    let t = ratio / density;
    (n as f64 * (-0.5 * t * t * m as f64).exp()).clamp(0.0, 1.0)
}

#[derive(Debug, Clone, PartialEq)]
pub enum SampleMode {
    /// All `2^m` bipartitions of the sample.
    Enumerate,
    /// The single bipartition induced by a known cut: `L = sample ∩ S`.
    Seeded(Cut),
    /// `k` uniformly random bipartitions.
    Random(usize),
}

#[derive(Debug, Clone, PartialEq)]
pub struct DenseSolverConfig {
    pub eps: f64,
    pub density: f64,
    pub m: usize,
    pub mode: SampleMode,
    pub seed: u64,
    pub enumerate_cap: usize,
}

impl DenseSolverConfig {
    pub fn new(m: usize, mode: SampleMode, seed: u64) -> Self {
        DenseSolverConfig { eps: 1.0, density: 1.0, m, mode, seed, enumerate_cap: 22 }
    }

    fn validate(&self, n: usize) -> Result<()> {
        if self.m == 0 {
            return Err(Error::Parameter("sample size m must be at least 1".into()));
        }
        if !(self.eps > 0.0) {
            return Err(Error::Parameter(format!("eps must be positive, got {}", self.eps)));
        }
        if !(self.density >= 1.0) {
            return Err(Error::Parameter(format!("density must be at least 1, got {}", self.density)));
        }
        match &self.mode {
            SampleMode::Enumerate if self.m > self.enumerate_cap.min(40) => Err(Error::SizeLimit {
                what: "partition enumeration (sample size)",
                n: self.m,
                limit: self.enumerate_cap.min(40),
            }),
            SampleMode::Seeded(cut) if cut.len() != n => {
                Err(Error::InvalidCut(format!("seed cut has {} entries, instance has {n}", cut.len())))
            }
            SampleMode::Random(0) => Err(Error::Parameter("random mode needs at least one partition".into())),
            _ => Ok(()),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DenseSolution {
    pub cut: Cut,
    pub weight: f64,
    pub sample: Vec<usize>,
    /// Index of the winning bipartition in the order they were generated.
    pub partition: usize,
    pub partitions: usize,
}

/// `m` vertices drawn uniformly with replacement.
pub fn draw_sample(n: usize, m: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    (0..m).map(|_| rng.random_range(0..n)).collect()
}

/// Sample bipartitions: entry `i` is `true` when sample `i` goes to `R`.
pub(crate) enum Partitions {
    Enumerate(usize),
    Listed(Vec<Vec<bool>>),
}

impl Partitions {
    fn build(mode: &SampleMode, sample: &[usize], rng: &mut ChaCha8Rng) -> Partitions {
        match mode {
            SampleMode::Enumerate => Partitions::Enumerate(sample.len()),
            SampleMode::Seeded(cut) => Partitions::Listed(vec![sample.iter().map(|&s| !cut.in_s(s)).collect()]),
            SampleMode::Random(k) => Partitions::Listed(
                (0..*k).map(|_| sample.iter().map(|_| rng.random_bool(0.5)).collect()).collect(),
            ),
        }
    }

    fn len(&self) -> usize {
        match self {
            Partitions::Enumerate(m) => 1usize << m,
            Partitions::Listed(v) => v.len(),
        }
    }

    fn get(&self, idx: usize) -> Vec<bool> {
        match self {
            Partitions::Enumerate(m) => (0..*m).map(|i| idx >> i & 1 == 1).collect(),
            Partitions::Listed(v) => v[idx].clone(),
        }
    }
}

/// The cut proposed by one bipartition of the sample, as a side vector
/// (`true` for `S`). Ties go to `S̄`.
pub fn induced_sides(inst: &Instance, sample: &[usize], in_r: &[bool]) -> Vec<bool> {
    (0..inst.n())
        .map(|x| {
            let row = inst.row(x);
            let (mut wl, mut wr) = (0.0, 0.0);
            for (&s, &r) in sample.iter().zip(in_r) {
                if r {
                    wr += row[s];
                } else {
                    wl += row[s];
                }
            }
            wr - wl > TIE_REL * (wr + wl)
        })
        .collect()
}

/// Evaluates every proposed cut with `eval` and keeps the heaviest; equal
/// weights go to the lowest partition index.
pub(crate) fn best_candidate<T: Send>(
    inst: &Instance,
    sample: &[usize],
    partitions: &Partitions,
    eval: impl Fn(&[bool]) -> Option<(f64, T)> + Sync,
) -> Option<(usize, f64, T)> {
    (0..partitions.len())
        .into_par_iter()
        .filter_map(|idx| {
            let sides = induced_sides(inst, sample, &partitions.get(idx));
            eval(&sides).map(|(w, t)| (idx, w, t))
        })
        .reduce_with(|a, b| if b.1 > a.1 || (b.1 == a.1 && b.0 < a.0) { b } else { a })
}

fn proper(sides: &[bool]) -> bool {
    sides.iter().any(|&s| s) && sides.iter().any(|&s| !s)
}

/// Scores a side vector on `inst`, rejecting one-sided assignments.
pub(crate) fn score(inst: &Instance, sides: &[bool]) -> Option<(f64, Cut)> {
    if !proper(sides) {
        return None;
    }
    let cut = Cut::new(sides.to_vec()).ok()?;
    Some((inst.cut_weight(&cut), cut))
}

/// Runs the sampling solver. Fails with [`Error::SolverFailed`] when every
/// proposal is one-sided.
pub fn dense_solve(inst: &Instance, cfg: &DenseSolverConfig) -> Result<DenseSolution> {
    run(inst, cfg, |sides| score(inst, sides))
}

pub(crate) fn run(
    inst: &Instance,
    cfg: &DenseSolverConfig,
    eval: impl Fn(&[bool]) -> Option<(f64, Cut)> + Sync,
) -> Result<DenseSolution> {
    cfg.validate(inst.n())?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let sample = draw_sample(inst.n(), cfg.m, &mut rng);
    let partitions = Partitions::build(&cfg.mode, &sample, &mut rng);
    let count = partitions.len();
    match best_candidate(inst, &sample, &partitions, eval) {
        Some((partition, weight, cut)) => {
            Ok(DenseSolution { cut: cut.canonical(), weight, sample, partition, partitions: count })
        }
        None => Err(Error::SolverFailed(format!(
            "all {count} sample bipartitions induced a one-sided assignment"
        ))),
    }
}

/// The per-vertex failure event for a sample seeded with the true sides:
/// some vertex has at least as much sample weight on its own side as across.
pub fn seeded_failure(inst: &Instance, cut: &Cut, sample: &[usize]) -> bool {
    (0..inst.n()).any(|x| {
        let row = inst.row(x);
        let (mut same, mut across) = (0.0, 0.0);
        for &s in sample {
            if cut.separates(x, s) {
                across += row[s];
            } else {
                same += row[s];
            }
        }
        same >= across
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{c4, cut_of};
    use crate::generators::{gen_planted_partition, gen_stable_bipartite_noise};
    use crate::oracle::Oracle;

    #[test]
    fn sample_size_examples() {
        assert_eq!(sample_size(2.0, 1.0, 100).unwrap(), 382);
        assert_eq!(sample_size(1.0, 2.0, 2).unwrap(), 12);
        assert!(matches!(sample_size(1.0, 0.0, 10), Err(Error::Parameter(_))));
        assert!(sample_size(0.5, 1.0, 10).is_err());
    }

    #[test]
    fn failure_bound_examples() {
        assert!((failure_bound(2.0, 3.0, 100, 10) - 0.4394).abs() < 1e-4);
        assert_eq!(failure_bound(1.0, 3.0, 0, 5), 1.0);
        assert_eq!(failure_bound(1.0, 1.0, 1000, 5), 1.0);
        // Inverting the bound for a target δ.
        let (c, g, n, delta): (f64, f64, usize, f64) = (1.5, 5.0, 20, 0.01);
        let m = 2.0 * c * c * (2.0 * n as f64 / delta).ln() * ((g + 1.0) / (g - 1.0)).powi(2);
        let b = n as f64 * (-0.5 * ((g - 1.0) / (c * (g + 1.0))).powi(2) * m).exp();
        assert!((b - delta / 2.0).abs() < 1e-12);
    }

    #[test]
    fn c4_enumerate_finds_max_cut() {
        let sol = dense_solve(&c4(), &DenseSolverConfig::new(4, SampleMode::Enumerate, 1)).unwrap();
        assert_eq!(sol.weight, 4.0);
        assert_eq!(sol.cut, cut_of(4, &[0, 2]));
        assert_eq!(sol.partitions, 16);
    }

    #[test]
    fn seeded_k44_recovers_bipartition() {
        let g = gen_planted_partition(8, 1.0, 0.0, 3).unwrap();
        let cfg = DenseSolverConfig::new(6, SampleMode::Seeded(g.planted_cut.clone()), 9);
        let sol = dense_solve(&g.instance, &cfg).unwrap();
        assert_eq!(sol.weight, 16.0);
        assert!(sol.cut.same_partition(&g.planted_cut));
    }

    #[test]
    fn enumerate_on_noise_instances() {
        let o = Oracle::default();
        let g = gen_stable_bipartite_noise(14, 4.0, 2).unwrap();
        let c = g.instance.density_coefficient().unwrap();
        let bound = failure_bound(c, 4.0, 10, 14);
        let best = o.brute_force_maxcut(&g.instance).unwrap();
        let hits = (0..50)
            .filter(|&seed| {
                let mode = if bound < 0.5 { SampleMode::Enumerate } else { SampleMode::Seeded(best.cut.clone()) };
                dense_solve(&g.instance, &DenseSolverConfig::new(10, mode, seed))
                    .map(|s| s.cut.same_partition(&best.cut))
                    .unwrap_or(false)
            })
            .count();
        assert!(hits > 25, "{hits}");
    }

    #[test]
    fn sample_order_does_not_matter() {
        let g = gen_stable_bipartite_noise(10, 2.0, 4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let sample = draw_sample(10, 8, &mut rng);
        let mut reversed = sample.clone();
        reversed.reverse();
        let eval = |s: &[bool]| score(&g.instance, s);
        let a = best_candidate(&g.instance, &sample, &Partitions::Enumerate(8), eval).unwrap();
        let b = best_candidate(&g.instance, &reversed, &Partitions::Enumerate(8), eval).unwrap();
        assert_eq!(a.1, b.1);
    }

    #[test]
    fn ties_go_to_complement() {
        // Vertex 1 sees equal weight on both sides of the sample.
        let sides = induced_sides(&c4(), &[0, 2], &[false, true]);
        assert!(!sides[1] && !sides[3]);
    }

    #[test]
    fn invalid_configs() {
        let big = DenseSolverConfig::new(23, SampleMode::Enumerate, 0);
        assert!(matches!(dense_solve(&c4(), &big), Err(Error::SizeLimit { .. })));
        let zero = DenseSolverConfig::new(0, SampleMode::Enumerate, 0);
        assert!(matches!(dense_solve(&c4(), &zero), Err(Error::Parameter(_))));
        let none = DenseSolverConfig::new(3, SampleMode::Random(0), 0);
        assert!(matches!(dense_solve(&c4(), &none), Err(Error::Parameter(_))));
    }

    #[test]
    fn one_sided_proposals_are_rejected() {
        // L = {0} sends every vertex to S̄.
        let parts = Partitions::Listed(vec![vec![false]]);
        assert!(best_candidate(&c4(), &[0], &parts, |s| score(&c4(), s)).is_none());
        let parts = Partitions::Listed(vec![vec![false], vec![true]]);
        let (idx, w, _) = best_candidate(&c4(), &[0], &parts, |s| score(&c4(), s)).unwrap();
        assert_eq!((idx, w), (1, 4.0));
    }

    #[test]
    fn seeded_failure_event() {
        let cut = cut_of(4, &[0, 2]);
        assert!(!seeded_failure(&c4(), &cut, &[0, 1, 2, 3]));
        // Only vertex 0 sampled: vertex 2 has no weight either way.
        assert!(seeded_failure(&c4(), &cut, &[0]));
    }
}
