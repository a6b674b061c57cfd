//! The `stablecut` command line: generators, solvers, verifiers and the
//! benchmark harness behind one entry point.

pub mod acceptance;
mod bench;

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use stablecut_core::dense::{dense_solve, DenseSolverConfig, SampleMode};
use stablecut_core::generators::{
    gen_euclidean_metric, gen_infinite_stable_not_distinguished, gen_matching_epsilon, gen_planted_partition,
    gen_stable_bipartite_noise, gen_tightness_example, PlantedInstance,
};
use stablecut_core::io::{check_cut_for, cut_from_json, cut_to_json, inf_f64, instance_from_json, instance_to_json};
use stablecut_core::metric::{ball_enumeration_solve, metric_dense_solve, normalize_total_weight, split_instance};
use stablecut_core::oracle::Oracle;
use stablecut_core::spectral_gw::{
    bipolarity_check, build_spectral_bundle, distinguished_condition, gw_primal_solve, gw_round, psd_rank_certificate,
    GwConfig,
};
use stablecut_core::stable::{default_repetitions, spanning_tree_solve, sqrt_stable_solve, warmup_2n_solve, GammaMode};
use stablecut_core::{Cut, Error, Instance};

/// Exit code, standard output and standard error of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Solver(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_solver_failure() {
            Failure::Solver(e.to_string())
        } else {
            Failure::Usage(e.to_string())
        }
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

#[derive(Parser, Debug)]
#[command(name = "stablecut", version, about = "Exact MAXCUT on stable instances")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate an instance and its sidecar.
    Gen(GenArgs),
    /// Run a solver on an instance file.
    Solve(SolveArgs),
    /// Stability report of an instance or of a given cut.
    Verify(VerifyArgs),
    /// Spectral and relaxation certificates for a cut.
    Certify(CertifyArgs),
    /// Export the split instance of the metric reduction.
    Split(SplitArgs),
    /// Run a benchmark suite.
    Bench(BenchArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Family {
    PlantedPartition,
    StableBipartiteNoise,
    EuclideanMetric,
    Tightness,
    MatchingEpsilon,
    InfiniteStable,
}

#[derive(Args, Debug)]
struct GenArgs {
    family: Family,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    p: Option<f64>,
    #[arg(long)]
    q: Option<f64>,
    #[arg(long, value_parser = parse_gamma)]
    gamma: Option<f64>,
    #[arg(long, default_value_t = 2)]
    dim: usize,
    #[arg(long)]
    s: Option<f64>,
    #[arg(long)]
    pairs: Option<usize>,
    #[arg(long)]
    eps: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Defaults to `<output stem>.sidecar.json`.
    #[arg(long)]
    sidecar: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Algo {
    Brute,
    Dense,
    MetricDense,
    Ball,
    SqrtStable,
    #[value(name = "warmup-2n")]
    Warmup2n,
    SpanningTree,
    Gw,
}

#[derive(Args, Debug)]
struct SolveArgs {
    instance: PathBuf,
    #[arg(long)]
    algo: Algo,
    #[arg(long)]
    m: Option<usize>,
    /// `enumerate`, `random:K` or `seeded` (with `--cut`).
    #[arg(long, default_value = "enumerate")]
    mode: String,
    /// Known cut for seeded mode.
    #[arg(long)]
    cut: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, conflicts_with = "auto")]
    gamma: Option<f64>,
    #[arg(long)]
    auto: bool,
    #[arg(long)]
    reps: Option<usize>,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    /// Also compute the brute-force optimum.
    #[arg(long)]
    oracle: bool,
    /// Write the returned cut here.
    #[arg(short, long)]
    output: Option<PathBuf>,
    #[arg(long)]
    timing: bool,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    instance: PathBuf,
    #[arg(long)]
    cut: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct CertifyArgs {
    instance: PathBuf,
    cut: PathBuf,
    /// PSD/rank certificate of `W + D′` (the default).
    #[arg(long)]
    spectral: bool,
    /// The four bipolarity conditions.
    #[arg(long)]
    bipolar: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args, Debug)]
struct SplitArgs {
    instance: PathBuf,
    #[arg(short, long)]
    output: PathBuf,
    #[arg(long)]
    map: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Suite {
    Acceptance,
    StabilitySweep,
    GwGap,
}

#[derive(Args, Debug)]
struct BenchArgs {
    #[arg(long)]
    suite: Suite,
    #[arg(long)]
    seed: u64,
    /// Run a single acceptance criterion.
    #[arg(long)]
    criterion: Option<usize>,
    #[arg(long)]
    timing: bool,
}

fn parse_gamma(s: &str) -> std::result::Result<f64, String> {
    match s {
        "inf" | "infinity" => Ok(f64::INFINITY),
        _ => s.parse::<f64>().map_err(|e| e.to_string()),
    }
}

/// Runs one invocation; `argv[0]` is the program name.
pub fn run_command<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: 2, stdout: String::new(), stderr: text }
            } else {
                Outcome { code: 0, stdout: text, stderr: String::new() }
            };
        }
    };
    let result = match cli.command {
        Command::Gen(a) => gen(a),
        Command::Solve(a) => solve(a),
        Command::Verify(a) => verify(a),
        Command::Certify(a) => certify(a),
        Command::Split(a) => split(a),
        Command::Bench(a) => bench::run(a.suite, a.seed, a.criterion, a.timing),
    };
    match result {
        Ok((code, value)) => Outcome { code, stdout: pretty(&value), stderr: String::new() },
        Err(Failure::Usage(msg)) => Outcome { code: 2, stdout: String::new(), stderr: format!("error: {msg}\n") },
        Err(Failure::Solver(msg)) => Outcome {
            code: 1,
            stdout: pretty(&json!({ "status": "solver_failed", "message": msg })),
            stderr: format!("error: {msg}\n"),
        },
    }
}

fn pretty(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("JSON value serializes");
    s.push('\n');
    s
}

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, text).map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))
}

fn load_instance(path: &Path) -> CliResult<Instance> {
    instance_from_json(&read(path)?).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn load_cut(path: &Path, inst: &Instance) -> CliResult<Cut> {
    let cut = cut_from_json(&read(path)?).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    check_cut_for(inst, &cut)?;
    Ok(cut)
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report serializes")
}

fn need<T>(value: Option<T>, flag: &str, why: &str) -> CliResult<T> {
    value.ok_or_else(|| Failure::Usage(format!("--{flag} is required {why}")))
}

fn gen(a: GenArgs) -> CliResult<(i32, Value)> {
    let seed = || need(a.seed, "seed", "for randomized generators");
    let n = || need(a.n, "n", "for this family");
    let planted: Option<PlantedInstance> = match a.family {
        Family::PlantedPartition => {
            Some(gen_planted_partition(n()?, a.p.unwrap_or(0.8), a.q.unwrap_or(0.2), seed()?)?)
        }
        Family::StableBipartiteNoise => {
            Some(gen_stable_bipartite_noise(n()?, need(a.gamma, "gamma", "for this family")?, seed()?)?)
        }
        Family::EuclideanMetric => Some(gen_euclidean_metric(n()?, a.dim, a.s.unwrap_or(5.0), seed()?)?),
        Family::Tightness => Some(gen_tightness_example(a.pairs.unwrap_or(2))?),
        Family::InfiniteStable => {
            Some(gen_infinite_stable_not_distinguished(a.pairs.unwrap_or(4), a.eps.unwrap_or(1e-3))?)
        }
        Family::MatchingEpsilon => None,
    };
    let (instance, sidecar) = match planted {
        Some(p) => (p.instance.clone(), to_value(&p)),
        None => {
            let pairs = a.pairs.unwrap_or(3);
            let eps = a.eps.unwrap_or(1e-3);
            let inst = gen_matching_epsilon(pairs, eps)?;
            let meta = json!({ "metadata": { "family": "matching-epsilon", "params": { "n_pairs": pairs, "eps": eps } } });
            (inst, meta)
        }
    };
    let instance_json = instance_to_json(&instance);
    match &a.output {
        Some(out) => {
            write(out, &instance_json)?;
            let sidecar_path = a.sidecar.clone().unwrap_or_else(|| out.with_extension("sidecar.json"));
            write(&sidecar_path, &pretty(&sidecar))?;
            Ok((0, json!({ "instance": out, "sidecar": sidecar_path, "n": instance.n(), "details": sidecar })))
        }
        None => {
            let inst: Value = serde_json::from_str(&instance_json).expect("instance JSON parses");
            Ok((0, json!({ "instance": inst, "sidecar": sidecar })))
        }
    }
}

/// Solver output in a common shape.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub algorithm: String,
    pub instance: InstanceDescriptor,
    pub cut: Cut,
    /// Recomputed from the instance and the cut.
    pub weight: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_weight: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matched_oracle: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_seconds: Option<f64>,
    pub details: Value,
}

#[derive(Debug, Clone, Serialize)]
pub struct InstanceDescriptor {
    pub path: String,
    pub n: usize,
    pub total_weight: f64,
}

fn parse_mode(mode: &str, cut: Option<Cut>) -> CliResult<SampleMode> {
    match (mode, cut) {
        ("enumerate", None) => Ok(SampleMode::Enumerate),
        ("seeded", Some(cut)) => Ok(SampleMode::Seeded(cut)),
        ("seeded", None) => Err(Failure::Usage("seeded mode needs --cut".into())),
        (m, None) if m.starts_with("random:") => m["random:".len()..]
            .parse()
            .map(SampleMode::Random)
            .map_err(|_| Failure::Usage(format!("bad partition count in {m}"))),
        (m, None) => Err(Failure::Usage(format!("unknown mode {m}; use enumerate, random:K or seeded"))),
        (_, Some(_)) => Err(Failure::Usage("--cut is only used in seeded mode".into())),
    }
}

fn solve(a: SolveArgs) -> CliResult<(i32, Value)> {
    let inst = load_instance(&a.instance)?;
    let seed = || need(a.seed, "seed", "for randomized solvers");
    let start = Instant::now();
    let (cut, seed_used, details): (Cut, Option<u64>, Value) = match a.algo {
        Algo::Brute => {
            let best = Oracle::default().brute_force_maxcut(&inst)?;
            (best.cut, None, json!({ "optimal_count": best.optimal_count }))
        }
        Algo::Dense | Algo::MetricDense => {
            let m = need(a.m, "m", "for the sampling solvers")?;
            let known = a.cut.as_deref().map(|p| load_cut(p, &inst)).transpose()?;
            let s = seed()?;
            let cfg = DenseSolverConfig::new(m, parse_mode(&a.mode, known)?, s);
            if a.algo == Algo::Dense {
                let sol = dense_solve(&inst, &cfg)?;
                let d = json!({ "m": m, "sample": sol.sample, "partition": sol.partition, "partitions": sol.partitions });
                (sol.cut, Some(s), d)
            } else {
                let sol = metric_dense_solve(&inst, &cfg)?;
                let d = json!({
                    "m": m, "split_size": sol.split_size, "sample": sol.dense.sample,
                    "partition": sol.dense.partition, "partitions": sol.dense.partitions,
                });
                (sol.cut, Some(s), d)
            }
        }
        Algo::Ball => {
            let b = ball_enumeration_solve(&inst)?;
            (b.cut, None, json!({ "center": b.center, "radius": b.radius }))
        }
        Algo::SqrtStable => {
            let mode = match (a.gamma, a.auto) {
                (Some(g), false) => GammaMode::Fixed(g),
                (None, true) => GammaMode::Auto,
                _ => return Err(Failure::Usage("sqrt-stable needs --gamma G or --auto".into())),
            };
            let sol = sqrt_stable_solve(&inst, mode)?;
            (sol.cut, None, json!({ "steps": sol.steps }))
        }
        Algo::Warmup2n => {
            let sol = warmup_2n_solve(&inst)?;
            (sol.cut, None, json!({ "steps": sol.steps }))
        }
        Algo::SpanningTree => {
            let s = seed()?;
            let reps = match (a.reps, a.gamma) {
                (Some(r), _) => r,
                (None, Some(g)) => default_repetitions(g, inst.n()),
                (None, None) => return Err(Failure::Usage("spanning-tree needs --reps R or --gamma G".into())),
            };
            let sol = spanning_tree_solve(&inst, s, reps)?;
            (sol.cut, Some(s), json!({ "repetitions": sol.repetitions, "best_repetition": sol.best_repetition }))
        }
        Algo::Gw => {
            let s = seed()?;
            let sol = gw_primal_solve(&inst, &GwConfig::with_seed(s))?;
            let r = gw_round(&inst, &sol.vectors, s, a.trials)?;
            let d = json!({
                "sdp_value": sol.primal_value, "converged": sol.converged, "sweeps": sol.sweeps,
                "dual_lower_bound": sol.dual.feasible_dual_value, "gap": sol.dual.gap, "trial": r.trial,
            });
            (r.cut, Some(s), d)
        }
    };
    let elapsed = start.elapsed().as_secs_f64();
    let weight = inst.cut_weight(&cut);
    let (oracle_weight, matched_oracle) = if a.oracle {
        let best = Oracle::default().brute_force_maxcut(&inst)?;
        (Some(best.weight), Some(stablecut_core::tol::rel_eq(weight, best.weight)))
    } else {
        (None, None)
    };
    if let Some(out) = &a.output {
        write(out, &cut_to_json(&cut))?;
    }
    let report = RunReport {
        algorithm: a.algo.to_possible_value().expect("named").get_name().to_string(),
        instance: InstanceDescriptor {
            path: a.instance.display().to_string(),
            n: inst.n(),
            total_weight: inst.total_weight(),
        },
        cut: cut.canonical(),
        weight,
        oracle_weight,
        matched_oracle,
        seed: seed_used,
        wall_time_seconds: a.timing.then_some(elapsed),
        details,
    };
    Ok((0, to_value(&report)))
}

fn verify(a: VerifyArgs) -> CliResult<(i32, Value)> {
    let inst = load_instance(&a.instance)?;
    let oracle = Oracle::default();
    let report = match &a.cut {
        Some(path) => oracle.cut_report(&inst, &load_cut(path, &inst)?)?,
        None => oracle.instance_stability(&inst)?,
    };
    Ok((0, to_value(&report)))
}

fn certify(a: CertifyArgs) -> CliResult<(i32, Value)> {
    let inst = load_instance(&a.instance)?;
    let cut = load_cut(&a.cut, &inst)?;
    let mut out = serde_json::Map::new();
    if a.spectral || !a.bipolar {
        let bundle = build_spectral_bundle(&inst, &cut)?;
        let cert = psd_rank_certificate(&bundle, &cut);
        let m = bundle.w_plus_d_prime();
        let n = inst.n();
        let delta = cut.delta();
        let residual = (0..n)
            .map(|i| (0..n).map(|j| m[i * n + j] * delta[j]).sum::<f64>().abs())
            .fold(0.0, f64::max);
        out.insert(
            "spectral".into(),
            json!({
                "certificate": cert, "d_prime": bundle.d_prime, "least_vector": bundle.least_vector,
                "kernel_residual": residual,
            }),
        );
        if n <= Oracle::default().subset_limit {
            out.insert("distinguished".into(), to_value(&distinguished_condition(&inst, &cut)?));
        }
    }
    if a.bipolar {
        out.insert("bipolarity".into(), to_value(&bipolarity_check(&inst, &cut, &GwConfig::with_seed(a.seed))?));
    }
    Ok((0, Value::Object(out)))
}

fn split(a: SplitArgs) -> CliResult<(i32, Value)> {
    let inst = load_instance(&a.instance)?;
    inst.require_metric()?;
    let (normalized, scale) = normalize_total_weight(&inst)?;
    let map = split_instance(&normalized)?;
    write(&a.output, &instance_to_json(&map.split))?;
    if let Some(path) = &a.map {
        write(path, &pretty(&json!({ "scale": scale, "map": to_value(&map) })))?;
    }
    Ok((
        0,
        json!({
            "n": inst.n(), "split_size": map.split.n(), "scale": scale, "multiplicity": map.multiplicity,
            "output": a.output, "map": a.map,
        }),
    ))
}

pub(crate) fn inf(x: f64) -> Value {
    inf_f64::to_value(x)
}
