//! Seeded instance families with planted cuts.
//!
//! Every generator is a pure function of its parameters and seed. Randomness
//! comes from `ChaCha8Rng::seed_from_u64(seed)`, whose stream is fixed across
//! platforms; the algorithm name is recorded in [`Metadata::rng`].

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::instance::{Cut, Instance};
use crate::io::inf_f64;
use crate::oracle::Oracle;
use crate::tol;

pub const RNG_NAME: &str = "ChaCha8";

/// Largest instance for which generators check the planted cut by brute force.
pub const VERIFY_LIMIT: usize = 20;

const MAX_REJECTIONS: usize = 10_000;
const NOISE_ATTEMPTS: usize = 200;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PlantedInstance {
    #[serde(skip)]
    pub instance: Instance,
    pub planted_cut: Cut,
    pub claims: Claims,
    pub metadata: Metadata,
}

/// What the generator promises about the planted cut, and what it checked.
#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct Claims {
    #[serde(with = "inf_f64::option", skip_serializing_if = "Option::is_none")]
    pub gamma_target: Option<f64>,
    /// Stability of the planted cut as measured by the subset oracle.
    #[serde(with = "inf_f64::option", skip_serializing_if = "Option::is_none")]
    pub oracle_gamma: Option<f64>,
    /// `Some` when the planted cut was compared with a brute-force optimum.
    pub planted_is_optimal: Option<bool>,
    pub guarantee: Guarantee,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Guarantee {
    #[default]
    None,
    /// Holds for every instance of the family.
    Construction,
    /// Checked on this instance by exhaustive scan.
    Oracle,
    /// Only the per-vertex condition is guaranteed.
    LocalOnly,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Metadata {
    pub family: String,
    pub params: Value,
    pub seed: Option<u64>,
    pub rng: String,
}

impl Metadata {
    fn new(family: &str, params: Value, seed: Option<u64>) -> Self {
        Metadata { family: family.to_string(), params, seed, rng: RNG_NAME.to_string() }
    }
}

impl PlantedInstance {
    /// Sidecar JSON: planted cut, claims and metadata.
    pub fn sidecar_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("sidecar serializes")
    }
}

/// `Some(true)` iff the planted cut is the unique optimum, checked for
/// `n ≤ VERIFY_LIMIT`.
pub fn planted_is_unique_optimum(inst: &Instance, cut: &Cut) -> Option<bool> {
    if inst.n() > VERIFY_LIMIT {
        return None;
    }
    let best = Oracle::default().brute_force_maxcut(inst).ok()?;
    Some(best.is_unique() && best.cut.same_partition(cut))
}

fn balanced_split(n: usize, rng: &mut ChaCha8Rng) -> Vec<bool> {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut side = vec![false; n];
    for &v in &order[..n / 2] {
        side[v] = true;
    }
    side
}

fn from_matrix(n: usize, fill: impl Fn(usize, usize) -> f64) -> Result<Instance> {
    let mut weights = vec![0.0; n * n];
    for i in 0..n {
        for j in i + 1..n {
            let w = fill(i, j);
            weights[i * n + j] = w;
            weights[j * n + i] = w;
        }
    }
    Instance::new(n, weights)
}

/// Random balanced split; cross pairs are edges with probability `p`, same
/// side pairs with probability `q`, all of weight 1.
pub fn gen_planted_partition(n: usize, p: f64, q: f64, seed: u64) -> Result<PlantedInstance> {
    if !(0.0..=1.0).contains(&p) || !(0.0..=1.0).contains(&q) || q >= p {
        return Err(Error::Parameter(format!("need 0 <= q < p <= 1, got p={p}, q={q}")));
    }
    if n < 4 {
        return Err(Error::Parameter(format!("need n >= 4, got {n}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let side = balanced_split(n, &mut rng);
    for _ in 0..MAX_REJECTIONS {
        let mut weights = vec![0.0; n * n];
        for i in 0..n {
            for j in i + 1..n {
                let prob = if side[i] != side[j] { p } else { q };
                if rng.random_bool(prob) {
                    weights[i * n + j] = 1.0;
                    weights[j * n + i] = 1.0;
                }
            }
        }
        let instance = match Instance::new(n, weights) {
            Ok(inst) => inst,
            Err(Error::Disconnected { .. }) => continue,
            Err(e) => return Err(e),
        };
        let planted_cut = Cut::new(side.clone())?.canonical();
        let bipartite = q == 0.0;
        let claims = Claims {
            gamma_target: bipartite.then_some(f64::INFINITY),
            planted_is_optimal: planted_is_unique_optimum(&instance, &planted_cut),
            guarantee: if bipartite { Guarantee::Construction } else { Guarantee::None },
            ..Claims::default()
        };
        return Ok(PlantedInstance {
            instance,
            planted_cut,
            claims,
            metadata: Metadata::new("planted-partition", json!({ "n": n, "p": p, "q": q }), Some(seed)),
        });
    }
    Err(Error::Degenerate(format!("no connected sample in {MAX_REJECTIONS} draws")))
}

/// Complete weighted graph on a balanced split with cross weights in `[1, 2]`
/// and same-side noise small enough for the planted cut to be
/// `gamma_target`-stable.
///
/// The noise bound makes every vertex locally stable. For `n ≤ VERIFY_LIMIT`
/// the subset oracle then confirms the full condition; failed draws shrink the
/// bound and resample.
pub fn gen_stable_bipartite_noise(n: usize, gamma_target: f64, seed: u64) -> Result<PlantedInstance> {
    if !(gamma_target >= 1.0) {
        return Err(Error::Parameter(format!("gamma_target must be at least 1, got {gamma_target}")));
    }
    if n < 2 {
        return Err(Error::Parameter(format!("need n >= 2, got {n}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let side = balanced_split(n, &mut rng);
    let planted_cut = Cut::new(side.clone())?.canonical();
    let sizes = [side.iter().filter(|&&s| s).count(), side.iter().filter(|&&s| !s).count()];
    // Vertex x sees at least t cross weight (each ≥ 1) and at most (s − 1)·b noise.
    let mut bound = f64::INFINITY;
    for (own, other) in [(sizes[0], sizes[1]), (sizes[1], sizes[0])] {
        if own > 1 {
            bound = bound.min(other as f64 / (gamma_target * (own - 1) as f64));
        }
    }
    if gamma_target.is_infinite() {
        bound = 0.0;
    }
    let oracle = Oracle::default();
    let params = json!({ "n": n, "gamma_target": inf_f64::to_value(gamma_target) });

    for _ in 0..NOISE_ATTEMPTS {
        let draws: Vec<f64> = (0..n * (n - 1) / 2).map(|_| rng.random::<f64>()).collect();
        let mut k = 0;
        let mut weights = vec![0.0; n * n];
        for i in 0..n {
            for j in i + 1..n {
                let u = draws[k];
                k += 1;
                let w = if side[i] != side[j] { 1.0 + u } else { u * bound };
                weights[i * n + j] = w;
                weights[j * n + i] = w;
            }
        }
        let instance = Instance::new(n, weights)?;
        let (guarantee, oracle_gamma) = if n <= VERIFY_LIMIT {
            let g = oracle.cut_stability_gamma(&instance, &planted_cut)?;
            if !(g == f64::INFINITY || tol::ge(g, gamma_target, gamma_target)) {
                bound *= 0.8;
                continue;
            }
            (Guarantee::Oracle, Some(g))
        } else {
            (Guarantee::LocalOnly, None)
        };
        let planted_is_optimal = if n <= VERIFY_LIMIT && gamma_target > 1.0 { Some(true) } else { None };
        return Ok(PlantedInstance {
            instance,
            planted_cut,
            claims: Claims { gamma_target: Some(gamma_target), oracle_gamma, planted_is_optimal, guarantee },
            metadata: Metadata::new("stable-bipartite-noise", params, Some(seed)),
        });
    }
    Err(Error::SolverFailed(format!(
        "no draw reached stability {gamma_target} in {NOISE_ATTEMPTS} attempts"
    )))
}

/// Two clusters of `n/2` points, uniform in unit cubes whose centers are `s`
/// apart along the first axis; weights are Euclidean distances. Vertices
/// `0..n/2` form the first cluster.
pub fn gen_euclidean_metric(n: usize, dim: usize, s: f64, seed: u64) -> Result<PlantedInstance> {
    if n < 2 || !n.is_multiple_of(2) {
        return Err(Error::Parameter(format!("n must be even and at least 2, got {n}")));
    }
    if dim == 0 {
        return Err(Error::Parameter("dim must be at least 1".into()));
    }
    if !(s > 0.0) || !s.is_finite() {
        return Err(Error::Parameter(format!("separation must be positive, got {s}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points: Vec<Vec<f64>> = (0..n)
        .map(|v| {
            let center = if v < n / 2 { -s / 2.0 } else { s / 2.0 };
            (0..dim)
                .map(|d| rng.random_range(-0.5..0.5) + if d == 0 { center } else { 0.0 })
                .collect()
        })
        .collect();
    let instance = from_matrix(n, |i, j| {
        points[i].iter().zip(&points[j]).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt()
    })?;
    let planted_cut = Cut::from_set(n, &(0..n / 2).collect::<Vec<_>>())?;
    let claims = Claims {
        planted_is_optimal: planted_is_unique_optimum(&instance, &planted_cut),
        ..Claims::default()
    };
    Ok(PlantedInstance {
        instance,
        planted_cut,
        claims,
        metadata: Metadata::new("euclidean-metric", json!({ "n": n, "dim": dim, "s": s }), Some(seed)),
    })
}

/// Metric on `L = {0..2k}` and `R = {2k..4k}`: distance 1 inside a side and 3
/// across, except `w(2i, 2i+1) = 2` inside each side and `w(l_i, r_i) = 2`.
pub fn gen_tightness_example(n_pairs: usize) -> Result<PlantedInstance> {
    if n_pairs < 2 {
        return Err(Error::Parameter(format!("need n_pairs >= 2, got {n_pairs}")));
    }
    let half = 2 * n_pairs;
    let n = 2 * half;
    let instance = from_matrix(n, |i, j| {
        let (si, sj) = (i / half, j / half);
        let (ii, jj) = (i % half, j % half);
        if si == sj {
            if ii / 2 == jj / 2 {
                2.0
            } else {
                1.0
            }
        } else if ii == jj {
            2.0
        } else {
            3.0
        }
    })?;
    let planted_cut = Cut::from_set(n, &(0..half).collect::<Vec<_>>())?;
    let claims = Claims {
        planted_is_optimal: planted_is_unique_optimum(&instance, &planted_cut),
        ..Claims::default()
    };
    Ok(PlantedInstance {
        instance,
        planted_cut,
        claims,
        metadata: Metadata::new("tightness", json!({ "n_pairs": n_pairs }), None),
    })
}

fn check_eps(eps: f64) -> Result<()> {
    if eps > 0.0 && eps < 1.0 {
        Ok(())
    } else {
        Err(Error::Parameter(format!("eps must lie in (0, 1), got {eps}")))
    }
}

/// Perfect matching `a_i – b_i` of weight 1 with every other pair at `eps`;
/// `a_i = i` and `b_i = n_pairs + i`.
pub fn gen_matching_epsilon(n_pairs: usize, eps: f64) -> Result<Instance> {
    check_eps(eps)?;
    if n_pairs < 1 {
        return Err(Error::Parameter("need at least one pair".into()));
    }
    from_matrix(2 * n_pairs, |i, j| if j == i + n_pairs { 1.0 } else { eps })
}

/// Bipartite `{a_i} × {b_j}` with `w(a_i, b_j) = 1` for `i = j` and `eps`
/// otherwise; `a_i = i` and `b_i = n_pairs + i`.
pub fn gen_infinite_stable_not_distinguished(n_pairs: usize, eps: f64) -> Result<PlantedInstance> {
    check_eps(eps)?;
    if n_pairs < 1 {
        return Err(Error::Parameter("need at least one pair".into()));
    }
    let instance = from_matrix(2 * n_pairs, |i, j| match (i < n_pairs, j < n_pairs) {
        (true, false) => {
            if j == i + n_pairs {
                1.0
            } else {
                eps
            }
        }
        _ => 0.0,
    })?;
    let planted_cut = Cut::from_set(2 * n_pairs, &(0..n_pairs).collect::<Vec<_>>())?;
    Ok(PlantedInstance {
        instance,
        planted_cut,
        claims: Claims {
            gamma_target: Some(f64::INFINITY),
            guarantee: Guarantee::Construction,
            ..Claims::default()
        },
        metadata: Metadata::new("stable-not-distinguished", json!({ "n_pairs": n_pairs, "eps": eps }), None),
    })
}
