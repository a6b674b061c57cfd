//! Exhaustive ground truth at desk scale.
//!
//! Every quantity here is a minimum or maximum over all cuts or all vertex
//! subsets. Both scans walk the subset lattice in Gray-code order so that
//! moving to the next subset costs `O(n)`. The lattice is split into chunks
//! of `2^CHUNK_BITS` consecutive Gray codes; each chunk recomputes its state
//! from scratch, which bounds floating-point drift of the incremental sums and
//! lets chunks run in parallel.
//!
//! Subset scans only visit `A ⊆ {0, …, n−2}`: every quantity used here is
//! symmetric under `A ↔ Ā`, so fixing vertex `n−1` outside of `A` visits each
//! unordered pair `{A, Ā}` exactly once. `A = ∅` and `A = V` are excluded.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::instance::{Cut, Instance};
use crate::io::inf_f64;
use crate::tol;

const CHUNK_BITS: usize = 12;

/// Size limits for the exponential scans.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Oracle {
    /// Largest `n` accepted by [`Oracle::brute_force_maxcut`].
    pub max_cut_limit: usize,
    /// Largest `n` accepted by the subset scans.
    pub subset_limit: usize,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle { max_cut_limit: 28, subset_limit: 24 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MaxCut {
    /// Lexicographically smallest optimal side vector with vertex 0 in `S`.
    pub cut: Cut,
    pub weight: f64,
    /// Number of optimal cuts, counting a cut and its complement once.
    pub optimal_count: u64,
}

impl MaxCut {
    pub fn is_unique(&self) -> bool {
        self.optimal_count == 1
    }
}

/// Stability profile of a cut. For [`Oracle::instance_stability`] the cut is
/// the reported optimal cut.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StabilityReport {
    pub cut: Cut,
    pub cut_weight: f64,
    pub max_cut_weight: f64,
    pub optimal_count: u64,
    pub is_maximal: bool,
    pub is_unique_maxcut: bool,
    #[serde(with = "inf_f64")]
    pub gamma: f64,
    #[serde(with = "inf_f64")]
    pub gamma_local: f64,
    pub alpha: f64,
    pub cheeger: f64,
}

/// Minima over all nonempty proper subsets `A`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SubsetExtremes {
    /// `min ξ(A)/ι(A)`, `+∞` when every `ι(A)` vanishes.
    pub gamma: f64,
    /// `min (ξ(A) − ι(A)) / min{μ(A), μ(Ā)}`.
    pub alpha: f64,
    /// `min τ(A) / min{μ(A), μ(Ā)}`.
    pub cheeger: f64,
}

impl Oracle {
    fn check(&self, what: &'static str, n: usize, limit: usize) -> Result<()> {
        if n > limit || n > 63 {
            return Err(Error::SizeLimit { what, n, limit: limit.min(63) });
        }
        Ok(())
    }

    /// Exhaustive maximum cut over all `2^(n−1)` bipartitions.
    pub fn brute_force_maxcut(&self, inst: &Instance) -> Result<MaxCut> {
        self.check("brute-force maxcut", inst.n(), self.max_cut_limit)?;
        let scan = CutScan::new(inst);
        let best = scan
            .chunks()
            .map(|chunk| {
                let mut best = f64::NEG_INFINITY;
                scan.run_chunk(chunk, |state| best = best.max(state.weight()));
                best
            })
            .reduce(|| f64::NEG_INFINITY, f64::max);

        let slack = tol::REL * inst.total_weight();
        let (count, mask) = scan
            .chunks()
            .map(|chunk| {
                let mut count = 0u64;
                let mut mask: Option<u64> = None;
                scan.run_chunk(chunk, |state| {
                    if state.weight() >= best - slack {
                        count += 1;
                        if mask.is_none_or(|m| lex_less(state.mask, m)) {
                            mask = Some(state.mask);
                        }
                    }
                });
                (count, mask)
            })
            .reduce(
                || (0, None),
                |(ca, ma), (cb, mb)| {
                    let mask = match (ma, mb) {
                        (Some(a), Some(b)) => Some(if lex_less(b, a) { b } else { a }),
                        (a, b) => a.or(b),
                    };
                    (ca + cb, mask)
                },
            );
        let cut = Cut::from_mask(inst.n(), mask.expect("some cut attains the maximum"));
        let weight = inst.cut_weight(&cut);
        Ok(MaxCut { cut, weight, optimal_count: count })
    }

    /// `min_A ξ(A)/ι(A)`: the cut is γ-stable exactly for γ up to this value.
    pub fn cut_stability_gamma(&self, inst: &Instance, cut: &Cut) -> Result<f64> {
        Ok(self.subset_extremes(inst, cut)?.gamma)
    }

    /// `min_A (ξ(A) − ι(A)) / min{μ(A), μ(Ā)}`.
    pub fn distinction_alpha(&self, inst: &Instance, cut: &Cut) -> Result<f64> {
        Ok(self.subset_extremes(inst, cut)?.alpha)
    }

    /// The Cheeger constant `h(w) = min_A τ(A) / min{μ(A), μ(Ā)}`.
    pub fn cheeger_constant(&self, inst: &Instance) -> Result<f64> {
        self.check("subset scan", inst.n(), self.subset_limit)?;
        let all_in_s = vec![true; inst.n()];
        Ok(subset_scan(inst.n(), inst.weights(), &all_in_s).cheeger)
    }

    /// Cheeger constant of an arbitrary symmetric nonnegative matrix, which
    /// may be disconnected (then the constant is 0).
    pub fn cheeger_of_matrix(&self, n: usize, weights: &[f64]) -> Result<f64> {
        self.check("subset scan", n, self.subset_limit)?;
        assert_eq!(weights.len(), n * n);
        Ok(subset_scan(n, weights, &vec![true; n]).cheeger)
    }

    /// All three subset minima in a single scan.
    pub fn subset_extremes(&self, inst: &Instance, cut: &Cut) -> Result<SubsetExtremes> {
        self.check("subset scan", inst.n(), self.subset_limit)?;
        assert_eq!(cut.len(), inst.n(), "cut size does not match instance");
        Ok(subset_scan(inst.n(), inst.weights(), cut.sides()))
    }

    /// Every cut (up to complement, vertex 0 in `S`) with `ξ(x) ≥ γ·ι(x)` at
    /// every vertex, in lexicographic order of side vectors.
    pub fn enumerate_locally_stable_cuts(&self, inst: &Instance, gamma: f64) -> Result<Vec<Cut>> {
        self.check("locally stable cut enumeration", inst.n(), self.max_cut_limit.min(self.subset_limit))?;
        if !(gamma >= 1.0) {
            return Err(Error::Parameter(format!("gamma must be at least 1, got {gamma}")));
        }
        let scan = CutScan::new(inst);
        let degrees = inst.degrees();
        let mut masks: Vec<u64> = scan
            .chunks()
            .flat_map_iter(|chunk| {
                let mut found = vec![];
                scan.run_chunk(chunk, |state| {
                    let stable = (0..inst.n()).all(|x| {
                        let xi = state.xi[x];
                        let iota = degrees[x] - xi;
                        locally_ok(xi, iota, gamma, degrees[x])
                    });
                    if stable {
                        found.push(state.mask);
                    }
                });
                found
            })
            .collect();
        masks.sort_by(|&a, &b| {
            if a == b {
                std::cmp::Ordering::Equal
            } else if lex_less(a, b) {
                std::cmp::Ordering::Less
            } else {
                std::cmp::Ordering::Greater
            }
        });
        Ok(masks.into_iter().map(|m| Cut::from_mask(inst.n(), m)).collect())
    }

    /// Stability profile of the optimal cut.
    ///
    /// With several optimal cuts the instance is only 1-stable, so `gamma` is
    /// reported as exactly 1 while the remaining fields describe the reported
    /// optimal cut.
    pub fn instance_stability(&self, inst: &Instance) -> Result<StabilityReport> {
        self.check("subset scan", inst.n(), self.subset_limit)?;
        let opt = self.brute_force_maxcut(inst)?;
        let ext = self.subset_extremes(inst, &opt.cut)?;
        let unique = opt.is_unique();
        Ok(StabilityReport {
            cut: opt.cut.clone(),
            cut_weight: opt.weight,
            max_cut_weight: opt.weight,
            optimal_count: opt.optimal_count,
            is_maximal: true,
            is_unique_maxcut: unique,
            gamma: if unique { ext.gamma } else { 1.0 },
            gamma_local: local_stability_gamma(inst, &opt.cut),
            alpha: if unique { ext.alpha } else { ext.alpha.max(0.0) },
            cheeger: self.cheeger_constant(inst)?,
        })
    }

    /// Stability profile of an arbitrary cut; `gamma` is not clamped.
    pub fn cut_report(&self, inst: &Instance, cut: &Cut) -> Result<StabilityReport> {
        self.check("subset scan", inst.n(), self.subset_limit)?;
        let opt = self.brute_force_maxcut(inst)?;
        let ext = self.subset_extremes(inst, cut)?;
        let cut_weight = inst.cut_weight(cut);
        let is_maximal = cut_weight >= opt.weight - tol::REL * inst.total_weight();
        Ok(StabilityReport {
            cut: cut.clone(),
            cut_weight,
            max_cut_weight: opt.weight,
            optimal_count: opt.optimal_count,
            is_maximal,
            is_unique_maxcut: is_maximal && opt.is_unique(),
            gamma: ext.gamma,
            gamma_local: local_stability_gamma(inst, cut),
            alpha: ext.alpha,
            cheeger: self.cheeger_constant(inst)?,
        })
    }
}

/// `min_x ξ(x)/ι(x)`, `+∞` when no vertex has a non-cut edge.
pub fn local_stability_gamma(inst: &Instance, cut: &Cut) -> f64 {
    (0..inst.n())
        .map(|x| {
            let s = inst.vertex_stats(cut, x);
            tol::stability_ratio(s.xi, s.iota)
        })
        .fold(f64::INFINITY, f64::min)
}

/// `ξ(x) ≥ γ·ι(x)` up to the relative tolerance.
fn locally_ok(xi: f64, iota: f64, gamma: f64, degree: f64) -> bool {
    tol::ge(xi, gamma * iota, gamma * degree)
}

/// Lexicographic order on side vectors (`false < true`, vertex 0 first) for
/// masks whose set bits mark vertices of `S̄`.
fn lex_less(a: u64, b: u64) -> bool {
    let d = a ^ b;
    d != 0 && a & (d & d.wrapping_neg()) != 0
}

/// Enumeration of all cuts with vertex 0 fixed in `S`, tracking `ξ(x)` for
/// every vertex.
struct CutScan<'a> {
    inst: &'a Instance,
    free: usize,
    chunk_bits: usize,
}

struct CutState {
    /// Set bit `i` means vertex `i` is in `S̄`.
    mask: u64,
    xi: Vec<f64>,
}

impl CutState {
    fn weight(&self) -> f64 {
        self.xi.iter().sum::<f64>() / 2.0
    }
}

impl<'a> CutScan<'a> {
    fn new(inst: &'a Instance) -> Self {
        let free = inst.n() - 1;
        CutScan { inst, free, chunk_bits: free.min(CHUNK_BITS) }
    }

    fn chunks(&self) -> rayon::range::Iter<u64> {
        (0..1u64 << (self.free - self.chunk_bits)).into_par_iter()
    }

    fn run_chunk(&self, chunk: u64, mut visit: impl FnMut(&CutState)) {
        let n = self.inst.n();
        // Free position p is vertex p + 1.
        let mut mask = (chunk << self.chunk_bits) << 1;
        let xi = (0..n)
            .map(|x| {
                (0..n)
                    .filter(|&y| (mask >> x & 1) != (mask >> y & 1))
                    .map(|y| self.inst.w(x, y))
                    .sum()
            })
            .collect();
        let mut state = CutState { mask, xi };
        visit(&state);
        for g in 1..1u64 << self.chunk_bits {
            let v = g.trailing_zeros() as usize + 1;
            mask ^= 1 << v;
            state.mask = mask;
            let side_v = mask >> v & 1;
            let row = self.inst.row(v);
            let mut xi_v = 0.0;
            for u in 0..n {
                if u == v {
                    continue;
                }
                let w = row[u];
                if w == 0.0 {
                    continue;
                }
                if (mask >> u & 1) != side_v {
                    state.xi[u] += w;
                    xi_v += w;
                } else {
                    state.xi[u] -= w;
                }
            }
            state.xi[v] = xi_v;
            visit(&state);
        }
    }
}

/// Minima of the three subset ratios relative to the cut given by `side`.
fn subset_scan(n: usize, weights: &[f64], side: &[bool]) -> SubsetExtremes {
    let free = n - 1;
    let chunk_bits = free.min(CHUNK_BITS);
    let total: f64 = weights.iter().sum();
    let snap = 1e-12 * total;
    let degrees: Vec<f64> = (0..n).map(|x| weights[x * n..(x + 1) * n].iter().sum()).collect();
    let w = |i: usize, j: usize| weights[i * n + j];

    let fold = |acc: SubsetExtremes, s: &SubsetExtremes| SubsetExtremes {
        gamma: acc.gamma.min(s.gamma),
        alpha: acc.alpha.min(s.alpha),
        cheeger: acc.cheeger.min(s.cheeger),
    };
    let init = SubsetExtremes { gamma: f64::INFINITY, alpha: f64::INFINITY, cheeger: f64::INFINITY };

    (0..1u64 << (free - chunk_bits))
        .into_par_iter()
        .map(|chunk| {
            // Bit x of `member` set means x ∈ A; vertex n − 1 never is.
            let mut member = chunk << chunk_bits;
            let in_a = |m: u64, x: usize| m >> x & 1 == 1;
            // cut_to[v] / uncut_to[v]: weight from v into A along cut / non-cut edges.
            let mut cut_to = vec![0.0; n];
            let mut uncut_to = vec![0.0; n];
            for v in 0..n {
                for a in (0..n).filter(|&a| in_a(member, a)) {
                    if side[v] != side[a] {
                        cut_to[v] += w(v, a);
                    } else {
                        uncut_to[v] += w(v, a);
                    }
                }
            }
            let mut acc = init;
            let mut evaluate = |member: u64, cut_to: &[f64], uncut_to: &[f64]| {
                if member == 0 {
                    return;
                }
                let (mut xi, mut iota, mut mu_a, mut mu_abar) = (0.0, 0.0, 0.0, 0.0);
                for v in 0..n {
                    if in_a(member, v) {
                        mu_a += degrees[v];
                    } else {
                        xi += cut_to[v];
                        iota += uncut_to[v];
                        mu_abar += degrees[v];
                    }
                }
                if xi.abs() <= snap {
                    xi = 0.0;
                }
                if iota.abs() <= snap {
                    iota = 0.0;
                }
                let tau = xi + iota;
                let mu_min = f64::min(mu_a, mu_abar);
                let s = SubsetExtremes {
                    gamma: tol::stability_ratio(xi, iota),
                    alpha: if mu_min > 0.0 { (xi - iota) / mu_min } else { 0.0 },
                    cheeger: if mu_min > 0.0 { tau / mu_min } else { 0.0 },
                };
                acc = fold(acc, &s);
            };
            evaluate(member, &cut_to, &uncut_to);
            for g in 1..1u64 << chunk_bits {
                let x = g.trailing_zeros() as usize;
                member ^= 1 << x;
                let sign = if in_a(member, x) { 1.0 } else { -1.0 };
                for v in 0..n {
                    let wv = w(v, x);
                    if wv == 0.0 {
                        continue;
                    }
                    if side[v] != side[x] {
                        cut_to[v] += sign * wv;
                    } else {
                        uncut_to[v] += sign * wv;
                    }
                }
                evaluate(member, &cut_to, &uncut_to);
            }
            acc
        })
        .reduce(|| init, |a, b| fold(a, &b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{c4, complete, cut_of, k22_weighted, k3, two_pairs_metric};
    use proptest::prelude::*;

    /// Straight-line reference: every subset, every quantity from scratch.
    fn naive_extremes(inst: &Instance, cut: &Cut) -> SubsetExtremes {
        let n = inst.n();
        let mut out = SubsetExtremes { gamma: f64::INFINITY, alpha: f64::INFINITY, cheeger: f64::INFINITY };
        for mask in 1..(1u64 << n) - 1 {
            let member: Vec<bool> = (0..n).map(|x| mask >> x & 1 == 1).collect();
            let complement: Vec<bool> = member.iter().map(|m| !m).collect();
            let s = inst.stats_of_mask(cut, &member);
            let mu_bar = inst.stats_of_mask(cut, &complement).mu;
            let m = s.mu.min(mu_bar);
            out.gamma = out.gamma.min(tol::stability_ratio(s.xi, s.iota));
            out.alpha = out.alpha.min((s.xi - s.iota) / m);
            out.cheeger = out.cheeger.min(s.tau / m);
        }
        out
    }

    fn close(a: f64, b: f64) -> bool {
        (a.is_infinite() && a == b) || (a - b).abs() <= 1e-9 * a.abs().max(b.abs()).max(1.0)
    }

    #[test]
    fn maxcut_examples() {
        let o = Oracle::default();
        let r = o.brute_force_maxcut(&c4()).unwrap();
        assert_eq!((r.weight, r.optimal_count), (4.0, 1));
        assert_eq!(r.cut, cut_of(4, &[0, 2]));

        let r = o.brute_force_maxcut(&k3()).unwrap();
        assert_eq!((r.weight, r.optimal_count), (2.0, 3));
        assert_eq!(r.cut, cut_of(3, &[0]));

        // K4: 4 singleton cuts of weight 3, 3 pairings of weight 4.
        let r = o.brute_force_maxcut(&complete(4)).unwrap();
        assert_eq!((r.weight, r.optimal_count), (4.0, 3));
        assert_eq!(r.cut, cut_of(4, &[0, 3]));
    }

    #[test]
    fn size_limits() {
        let o = Oracle { max_cut_limit: 3, subset_limit: 3 };
        assert!(matches!(o.brute_force_maxcut(&c4()), Err(Error::SizeLimit { .. })));
        assert!(matches!(o.cheeger_constant(&c4()), Err(Error::SizeLimit { .. })));
        assert!(o.brute_force_maxcut(&k3()).is_ok());
    }

    #[test]
    fn stability_examples() {
        let o = Oracle::default();
        assert_eq!(o.cut_stability_gamma(&c4(), &cut_of(4, &[0, 2])).unwrap(), f64::INFINITY);
        assert_eq!(o.cut_stability_gamma(&k3(), &cut_of(3, &[0])).unwrap(), 1.0);
        let k22 = k22_weighted(10.0, 1.0);
        assert!(close(o.cut_stability_gamma(&k22, &cut_of(4, &[0, 2])).unwrap(), 10.0));
    }

    #[test]
    fn local_stability_examples() {
        assert_eq!(local_stability_gamma(&c4(), &cut_of(4, &[0, 2])), f64::INFINITY);
        assert_eq!(local_stability_gamma(&k3(), &cut_of(3, &[0])), 1.0);
        assert_eq!(local_stability_gamma(&two_pairs_metric(), &cut_of(4, &[0, 1])), 4.0);
    }

    #[test]
    fn distinction_and_cheeger_examples() {
        let o = Oracle::default();
        assert!(close(o.distinction_alpha(&k3(), &cut_of(3, &[0])).unwrap(), 0.0));
        assert!(close(o.distinction_alpha(&c4(), &cut_of(4, &[0, 2])).unwrap(), 0.5));
        assert!(close(o.cheeger_constant(&k3()).unwrap(), 1.0));
        assert!(close(o.cheeger_constant(&c4()).unwrap(), 0.5));
    }

    #[test]
    fn cheeger_of_disconnected_matrix_is_zero() {
        let o = Oracle::default();
        let w = vec![0.0, 1.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 1.0, 0.0];
        assert_eq!(o.cheeger_of_matrix(4, &w).unwrap(), 0.0);
    }

    #[test]
    fn locally_stable_enumeration_examples() {
        let o = Oracle::default();
        assert_eq!(o.enumerate_locally_stable_cuts(&c4(), 2.0).unwrap(), vec![cut_of(4, &[0, 2])]);
        assert_eq!(o.enumerate_locally_stable_cuts(&k3(), 1.0).unwrap().len(), 3);
        // Matching 0–2, 1–3 of weight 1, every other pair 1e-3.
        let eps = 1e-3;
        let m = Instance::from_edges(
            4,
            &[(0, 2, 1.0), (1, 3, 1.0), (0, 1, eps), (0, 3, eps), (1, 2, eps), (2, 3, eps)],
        )
        .unwrap();
        let cuts = o.enumerate_locally_stable_cuts(&m, 2.0).unwrap();
        assert_eq!(cuts.len(), 2);
        assert!(cuts.iter().all(|c| c.separates(0, 2) && c.separates(1, 3)));
        assert!(matches!(o.enumerate_locally_stable_cuts(&c4(), 0.5), Err(Error::Parameter(_))));
    }

    #[test]
    fn instance_stability_examples() {
        let o = Oracle::default();
        let r = o.instance_stability(&c4()).unwrap();
        assert_eq!(r.gamma, f64::INFINITY);
        assert!(close(r.alpha, 0.5) && close(r.cheeger, 0.5) && r.is_unique_maxcut);

        let r = o.instance_stability(&k3()).unwrap();
        assert_eq!(r.gamma, 1.0);
        assert!(!r.is_unique_maxcut);

        let r = o.instance_stability(&k22_weighted(10.0, 1.0)).unwrap();
        assert!(close(r.gamma, 10.0) && r.is_unique_maxcut);
    }

    #[test]
    fn report_serializes_infinity_as_string() {
        let r = Oracle::default().instance_stability(&c4()).unwrap();
        let v: serde_json::Value = serde_json::to_value(&r).unwrap();
        assert_eq!(v["gamma"], "inf");
        assert_eq!(v["gamma_local"], "inf");
    }

    #[test]
    fn lex_order_on_masks() {
        // Masks mark S̄; side vectors compare with false < true.
        assert!(lex_less(0b0010, 0b0100));
        assert!(!lex_less(0b0100, 0b0010));
        assert!(!lex_less(0b0110, 0b0110));
    }

    fn arb_instance(max_n: usize) -> impl Strategy<Value = Instance> {
        (3..=max_n).prop_flat_map(|n| {
            prop::collection::vec(0.05f64..3.0, n * (n - 1) / 2).prop_map(move |ws| {
                let mut edges = vec![];
                let mut k = 0;
                for i in 0..n {
                    for j in i + 1..n {
                        edges.push((i, j, ws[k]));
                        k += 1;
                    }
                }
                Instance::from_edges(n, &edges).unwrap()
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn gray_scan_matches_naive(inst in arb_instance(9), bits in any::<u64>()) {
            let n = inst.n();
            let cut = Cut::from_mask(n, (bits << 1) & ((1 << n) - 1));
            let fast = Oracle::default().subset_extremes(&inst, &cut).unwrap();
            let slow = naive_extremes(&inst, &cut);
            prop_assert!(close(fast.gamma, slow.gamma), "{} vs {}", fast.gamma, slow.gamma);
            prop_assert!(close(fast.alpha, slow.alpha));
            prop_assert!(close(fast.cheeger, slow.cheeger));
        }

        #[test]
        fn maxcut_matches_naive(inst in arb_instance(9)) {
            let n = inst.n();
            let best = (0..1u64 << (n - 1))
                .map(|m| inst.cut_weight(&Cut::from_mask(n, m << 1)))
                .fold(f64::NEG_INFINITY, f64::max);
            let r = Oracle::default().brute_force_maxcut(&inst).unwrap();
            prop_assert!(close(r.weight, best));
        }

        #[test]
        fn report_invariants(inst in arb_instance(8)) {
            let o = Oracle::default();
            let r = o.instance_stability(&inst).unwrap();
            prop_assert!(r.gamma <= r.gamma_local * (1.0 + 1e-9));
            prop_assert!(r.gamma >= 1.0 - 1e-9);
            prop_assert!(r.alpha >= -1e-9);
            prop_assert!(r.alpha <= r.cheeger + 1e-9);
            let raw = o.cut_stability_gamma(&inst, &r.cut).unwrap();
            if raw > 1.0 + 1e-9 {
                prop_assert!(r.is_unique_maxcut);
            }
            if r.is_unique_maxcut && r.alpha < 1.0 {
                prop_assert!(raw >= (1.0 + r.alpha) / (1.0 - r.alpha) * (1.0 - 1e-9));
            }
            if r.is_unique_maxcut {
                let cuts = o.enumerate_locally_stable_cuts(&inst, 1.0 + 1e-6).unwrap();
                if r.gamma_local > 1.0 + 1e-6 {
                    prop_assert!(cuts.contains(&r.cut));
                }
            }
        }

        #[test]
        fn local_distinction_equivalence(inst in arb_instance(10), bits in any::<u64>()) {
            let n = inst.n();
            let cut = Cut::from_mask(n, (bits << 1) & ((1 << n) - 1));
            let g = local_stability_gamma(&inst, &cut);
            if g.is_finite() && g > 0.0 {
                let alpha = (g - 1.0) / (g + 1.0);
                let worst = (0..n)
                    .map(|x| {
                        let s = inst.vertex_stats(&cut, x);
                        s.xi - s.iota - alpha * s.mu
                    })
                    .fold(f64::INFINITY, f64::min);
                prop_assert!(worst.abs() <= 1e-9 * inst.max_weight() * n as f64);
            }
        }
    }
}
