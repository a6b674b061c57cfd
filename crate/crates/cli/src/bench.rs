use rayon::prelude::*;
use serde_json::{json, Value};

use stablecut_core::dense::{dense_solve, DenseSolverConfig, SampleMode};
use stablecut_core::generators::{
    gen_euclidean_metric, gen_infinite_stable_not_distinguished, gen_matching_epsilon, gen_planted_partition,
    gen_stable_bipartite_noise, gen_tightness_example,
};
use stablecut_core::oracle::Oracle;
use stablecut_core::spectral_gw::{gw_primal_solve, gw_round, GwConfig};
use stablecut_core::stable::{default_repetitions, spanning_tree_solve, sqrt_stable_solve, warmup_2n_solve, GammaMode};
use stablecut_core::{Cut, Instance, Result};

use crate::{acceptance, inf, CliResult, Failure, Suite};

pub(crate) fn run(suite: Suite, seed: u64, criterion: Option<usize>, timing: bool) -> CliResult<(i32, Value)> {
    match suite {
        Suite::Acceptance => {
            let results = match criterion {
                Some(id) if !(1..=10).contains(&id) => {
                    return Err(Failure::Usage(format!("criterion must be in 1..=10, got {id}")))
                }
                Some(id) => vec![acceptance::run(id, seed)?],
                None => acceptance::run_all(seed)?,
            };
            let all = results.iter().all(|r| r.passed);
            let rows: Vec<Value> = results
                .iter()
                .map(|r| {
                    let mut v = serde_json::to_value(r).expect("criterion serializes");
                    if timing {
                        v["seconds"] = json!(r.seconds);
                    }
                    v
                })
                .collect();
            Ok((if all { 0 } else { 1 }, json!({ "suite": "acceptance", "seed": seed, "passed": all, "criteria": rows })))
        }
        Suite::StabilitySweep => Ok((0, stability_sweep(seed)?)),
        Suite::GwGap => {
            let v = gw_gap(seed)?;
            let code = if v["all_below"] == true { 0 } else { 1 };
            Ok((code, v))
        }
    }
}

const SOLVERS: [&str; 5] = ["dense", "sqrt-stable", "warmup-2n", "spanning-tree", "gw"];

fn attempt(solver: &str, inst: &Instance, seed: u64) -> Option<Cut> {
    match solver {
        "dense" => dense_solve(inst, &DenseSolverConfig::new(8, SampleMode::Enumerate, seed)).ok().map(|s| s.cut),
        "sqrt-stable" => sqrt_stable_solve(inst, GammaMode::Auto).ok().map(|s| s.cut),
        "warmup-2n" => warmup_2n_solve(inst).ok().map(|s| s.cut),
        "spanning-tree" => spanning_tree_solve(inst, seed, default_repetitions(4.0, inst.n()).min(500))
            .ok()
            .map(|s| s.cut),
        _ => {
            let sol = gw_primal_solve(inst, &GwConfig::with_seed(seed)).ok()?;
            gw_round(inst, &sol.vectors, seed, 50).ok().map(|r| r.cut)
        }
    }
}

fn stability_sweep(seed: u64) -> Result<Value> {
    let o = Oracle::default();
    let n = 10;
    let runs = 20u64;
    let mut rows = vec![];
    for gamma in [1.5, 2.0, 4.0, 8.0, 16.0, f64::INFINITY] {
        let cases: Vec<(Instance, Cut)> = (0..runs)
            .map(|i| {
                let g = gen_stable_bipartite_noise(n, gamma, seed ^ (i << 16))?;
                let best = o.brute_force_maxcut(&g.instance)?;
                Ok((g.instance, best.cut))
            })
            .collect::<Result<_>>()?;
        for solver in SOLVERS {
            let hits = cases
                .par_iter()
                .enumerate()
                .filter(|(i, (inst, best))| attempt(solver, inst, seed ^ *i as u64).is_some_and(|c| c.same_partition(best)))
                .count();
            rows.push(json!({
                "gamma_target": inf(gamma), "solver": solver, "success_rate": hits as f64 / runs as f64,
            }));
        }
    }
    Ok(json!({ "suite": "stability-sweep", "seed": seed, "n": n, "runs": runs, "rows": rows }))
}

fn gw_gap(seed: u64) -> Result<Value> {
    let mut cases: Vec<(&str, Instance)> = vec![];
    for i in 0..4u64 {
        let s = seed ^ (i << 20);
        cases.push(("planted-partition", gen_planted_partition(12, 0.7, 0.2, s)?.instance));
        cases.push(("stable-bipartite-noise", gen_stable_bipartite_noise(12, 3.0, s)?.instance));
        cases.push(("euclidean-metric", gen_euclidean_metric(12, 2, 1.0 + i as f64, s)?.instance));
        cases.push(("matching-epsilon", gen_matching_epsilon(3 + i as usize, 0.1)?));
    }
    cases.push(("tightness", gen_tightness_example(2)?.instance));
    cases.push(("infinite-stable", gen_infinite_stable_not_distinguished(4, 1e-3)?.instance));
    let rows: Vec<Result<Value>> = cases
        .par_iter()
        .enumerate()
        .map(|(i, (family, inst))| {
            let sol = gw_primal_solve(inst, &GwConfig::with_seed(seed ^ i as u64))?;
            let scale: f64 = inst.weights().iter().sum();
            Ok(json!({
                "family": family, "n": inst.n(), "converged": sol.converged, "sweeps": sol.sweeps,
                "primal": sol.primal_value, "dual_lower_bound": sol.dual.feasible_dual_value,
                "gap_over_scale": sol.dual.gap / scale,
            }))
        })
        .collect();
    let rows = rows.into_iter().collect::<Result<Vec<_>>>()?;
    let all_below = rows
        .iter()
        .filter(|r| r["converged"] == true)
        .all(|r| r["gap_over_scale"].as_f64().is_some_and(|g| g < 1e-6));
    Ok(json!({ "suite": "gw-gap", "seed": seed, "rows": rows, "all_below": all_below }))
}
