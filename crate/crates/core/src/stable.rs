//! Solvers for highly stable instances.
//!
//! Both deterministic solvers repeatedly find two vertices that lie on the
//! same side of the optimal cut and merge them. Merging two same-side
//! vertices of a γ-stable instance leaves a γ-stable instance whose optimum
//! is induced by the original one, so after `n − 2` merges the two remaining
//! vertices determine the cut.

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::instance::{Cut, Instance};

/// Why a pair was declared same-side.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Evidence {
    /// `vu` is the heaviest edge at `v`, `second` the heaviest edge at `{u, v}`.
    WarmupHeavyEdges { first: (usize, usize), second: (usize, usize) },
    /// Two heavy edges `{shared, a}` and `{shared, b}`.
    T1IncidentPair { shared: usize, edges: [(usize, usize); 2] },
    /// `w(u, v) > τ({u, z})/(γ+1)` for the heavy edge `uz`.
    T2Pair { edge: (usize, usize), heavy: (usize, usize), weight: f64, threshold: f64 },
    /// `n(u, v) > 2/(γ+1)²·ŵ(u)·ŵ(v)`.
    CommonNeighborPair { common: f64, w_hat: (f64, f64), threshold: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MergeWitness {
    pub pair: (usize, usize),
    pub evidence: Evidence,
}

impl MergeWitness {
    pub fn kind(&self) -> &'static str {
        match self.evidence {
            Evidence::WarmupHeavyEdges { .. } => "warmup_heavy_edges",
            Evidence::T1IncidentPair { .. } => "t1_incident_pair",
            Evidence::T2Pair { .. } => "t2_pair",
            Evidence::CommonNeighborPair { .. } => "common_neighbor_pair",
        }
    }
}

fn edge(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

fn require_three(inst: &Instance) -> Result<()> {
    if inst.n() < 3 {
        return Err(Error::Precondition(format!("pair finding needs n >= 3, got {}", inst.n())));
    }
    Ok(())
}

/// `τ({u, v})`.
fn pair_boundary(inst: &Instance, u: usize, v: usize) -> f64 {
    inst.degree(u) + inst.degree(v) - 2.0 * inst.w(u, v)
}

/// Same-side pair for `2n`-stable instances: `v = 0`, `u` its heaviest
/// neighbour, then the heaviest other edge at `{u, v}`. Two cut edges sharing
/// an endpoint put their far ends on one side.
pub fn find_same_side_pair_2n(inst: &Instance) -> Result<MergeWitness> {
    require_three(inst)?;
    let n = inst.n();
    let v = 0;
    let u = (1..n).fold(1, |best, y| if inst.w(v, y) > inst.w(v, best) { y } else { best });
    let mut second: Option<((usize, usize), f64)> = None;
    for a in [v, u] {
        for z in (0..n).filter(|&z| z != u && z != v) {
            let e = edge(a, z);
            let w = inst.w(a, z);
            let better = match second {
                None => true,
                Some((be, bw)) => w > bw || (w == bw && e < be),
            };
            if better {
                second = Some((e, w));
            }
        }
    }
    let (e, _) = second.expect("n >= 3 leaves a third vertex");
    let (a, z) = if e.0 == v || e.0 == u { (e.0, e.1) } else { (e.1, e.0) };
    let other = if a == v { u } else { v };
    Ok(MergeWitness {
        pair: edge(other, z),
        evidence: Evidence::WarmupHeavyEdges { first: edge(v, u), second: e },
    })
}

/// `√(8n + 4) + 1`.
pub fn sqrt_threshold(n: usize) -> f64 {
    (8.0 * n as f64 + 4.0).sqrt() + 1.0
}

/// Same-side pair for `γ`-stable instances with `γ > √(8n+4) + 1`.
pub fn find_same_side_pair_sqrt(inst: &Instance, gamma: f64) -> Result<MergeWitness> {
    require_three(inst)?;
    let n = inst.n();
    let threshold = sqrt_threshold(n);
    if !(gamma > threshold) {
        return Err(Error::Precondition(format!(
            "gamma = {gamma} does not exceed sqrt(8n+4)+1 = {threshold} at n = {n}"
        )));
    }
    let g1 = gamma + 1.0;

    // T¹ as ordered pairs; neighbours are collected per undirected edge.
    let mut heavy: Vec<Vec<usize>> = vec![vec![]; n];
    for v in 0..n {
        let bound = inst.degree(v) / g1;
        for u in (0..n).filter(|&u| u != v && inst.w(v, u) > bound) {
            for (a, b) in [(v, u), (u, v)] {
                if !heavy[a].contains(&b) {
                    heavy[a].push(b);
                }
            }
        }
    }
    for list in heavy.iter_mut() {
        list.sort_unstable();
    }
    if let Some(x) = (0..n).find(|&x| heavy[x].len() >= 2) {
        let (a, b) = (heavy[x][0], heavy[x][1]);
        return Ok(MergeWitness {
            pair: edge(a, b),
            evidence: Evidence::T1IncidentPair { shared: x, edges: [edge(x, a), edge(x, b)] },
        });
    }
    let mate: Vec<Option<usize>> = heavy.iter().map(|l| l.first().copied()).collect();

    // T²: a light edge uv heavy relative to the boundary of u's matched pair.
    for u in 0..n {
        let Some(z) = mate[u] else { continue };
        let bound = pair_boundary(inst, u, z) / g1;
        for v in (0..n).filter(|&v| v != u && v != z) {
            let w = inst.w(u, v);
            if w > bound {
                return Ok(MergeWitness {
                    pair: edge(v, z),
                    evidence: Evidence::T2Pair { edge: edge(u, v), heavy: edge(u, z), weight: w, threshold: bound },
                });
            }
        }
    }

    // Common neighbourhoods in w̃ (heavy edges removed).
    let w_tilde = |a: usize, b: usize| if mate[a] == Some(b) { 0.0 } else { inst.w(a, b) };
    let w_hat: Vec<f64> = (0..n)
        .map(|v| match mate[v] {
            Some(u) => pair_boundary(inst, u, v),
            None => inst.degree(v),
        })
        .collect();
    let factor = 2.0 / (g1 * g1);
    let mut best: Option<((usize, usize), f64, f64, f64)> = None;
    for u in 0..n {
        for v in u + 1..n {
            let common: f64 = (0..n).map(|z| w_tilde(v, z) * w_tilde(z, u)).sum();
            let threshold = factor * w_hat[u] * w_hat[v];
            if common > threshold {
                let ratio = common / (w_hat[u] * w_hat[v]);
                if best.is_none_or(|b| ratio > b.1) {
                    best = Some(((u, v), ratio, common, threshold));
                }
            }
        }
    }
    match best {
        Some((pair, _, common, threshold)) => Ok(MergeWitness {
            pair,
            evidence: Evidence::CommonNeighborPair { common, w_hat: (w_hat[pair.0], w_hat[pair.1]), threshold },
        }),
        None => Err(Error::InvariantViolation(format!(
            "no same-side pair found at n = {n}, gamma = {gamma}; the instance is not gamma-stable"
        ))),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GammaMode {
    Fixed(f64),
    /// Just above `√(8n′+4) + 1` for the current vertex count `n′`.
    Auto,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MergeStep {
    /// Vertex count before the merge.
    pub n: usize,
    pub gamma: f64,
    pub witness: MergeWitness,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MergeSolution {
    pub cut: Cut,
    pub weight: f64,
    pub steps: Vec<MergeStep>,
}

fn merge_solve(
    inst: &Instance,
    mut find: impl FnMut(&Instance) -> Result<(f64, MergeWitness)>,
) -> Result<MergeSolution> {
    let n = inst.n();
    // assign[x]: the current vertex containing original vertex x.
    let mut assign: Vec<usize> = (0..n).collect();
    let mut current = inst.clone();
    let mut steps = vec![];
    while current.n() > 2 {
        let (gamma, witness) = find(&current)?;
        let (u, v) = witness.pair;
        let (merged, mapping) = current.merge_vertices(u, v)?;
        for a in assign.iter_mut() {
            *a = mapping[*a];
        }
        steps.push(MergeStep { n: current.n(), gamma, witness });
        current = merged;
    }
    let cut = Cut::new(assign.iter().map(|&a| a == 0).collect())?;
    let weight = inst.cut_weight(&cut);
    Ok(MergeSolution { cut, weight, steps })
}

/// Merge-based solver for instances that are γ-stable with
/// `γ > √(8n+4) + 1`.
pub fn sqrt_stable_solve(inst: &Instance, mode: GammaMode) -> Result<MergeSolution> {
    merge_solve(inst, |cur| {
        let gamma = match mode {
            GammaMode::Fixed(g) => g,
            GammaMode::Auto => sqrt_threshold(cur.n()) + 1e-6,
        };
        Ok((gamma, find_same_side_pair_sqrt(cur, gamma)?))
    })
}

/// Merge-based solver for `2n`-stable instances.
pub fn warmup_2n_solve(inst: &Instance) -> Result<MergeSolution> {
    merge_solve(inst, |cur| Ok((2.0 * cur.n() as f64, find_same_side_pair_2n(cur)?)))
}

/// `(γ/(γ+1))^(n−1)`.
pub fn spanning_tree_success_bound(gamma: f64, n: usize) -> f64 {
    if gamma.is_infinite() {
        return 1.0;
    }
    (gamma / (gamma + 1.0)).powi(n as i32 - 1)
}

/// `⌈3 / bound⌉` repetitions.
pub fn default_repetitions(gamma: f64, n: usize) -> usize {
    (3.0 / spanning_tree_success_bound(gamma, n)).ceil() as usize
}

/// The stream used by repetition `rep` of a seeded run.
pub fn repetition_rng(seed: u64, rep: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(rep);
    rng
}

/// Grows a random spanning tree from vertex 0, each step adding a boundary
/// edge with probability proportional to its weight, and returns the tree's
/// two-colouring.
pub fn spanning_tree_sample(inst: &Instance, rng: &mut ChaCha8Rng) -> Cut {
    let n = inst.n();
    let mut in_tree = vec![false; n];
    let mut side = vec![true; n];
    // boundary[y]: weight from y into the tree.
    let mut boundary = inst.row(0).to_vec();
    in_tree[0] = true;
    boundary[0] = 0.0;
    for _ in 1..n {
        let y = WeightedIndex::new(&boundary).expect("connected support").sample(rng);
        let parents: Vec<f64> = (0..n).map(|x| if in_tree[x] { inst.w(x, y) } else { 0.0 }).collect();
        let x = WeightedIndex::new(&parents).expect("y touches the tree").sample(rng);
        side[y] = !side[x];
        in_tree[y] = true;
        boundary[y] = 0.0;
        for z in (0..n).filter(|&z| !in_tree[z]) {
            boundary[z] += inst.w(y, z);
        }
    }
    Cut::new(side).expect("vertex 0 is in S")
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpanningTreeSolution {
    pub cut: Cut,
    pub weight: f64,
    pub best_repetition: usize,
    pub repetitions: usize,
}

/// Heaviest two-colouring over `repetitions` independent trees; ties go to
/// the earliest repetition.
pub fn spanning_tree_solve(inst: &Instance, seed: u64, repetitions: usize) -> Result<SpanningTreeSolution> {
    if repetitions == 0 {
        return Err(Error::Parameter("repetitions must be at least 1".into()));
    }
    let (best_repetition, weight, cut) = (0..repetitions)
        .into_par_iter()
        .map(|rep| {
            let cut = spanning_tree_sample(inst, &mut repetition_rng(seed, rep as u64));
            (rep, inst.cut_weight(&cut), cut)
        })
        .reduce_with(|a, b| if b.1 > a.1 || (b.1 == a.1 && b.0 < a.0) { b } else { a })
        .expect("at least one repetition");
    Ok(SpanningTreeSolution { cut, weight, best_repetition, repetitions })
}
