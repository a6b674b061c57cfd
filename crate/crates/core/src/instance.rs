//! Weighted MAXCUT instances and cuts.
//!
//! An [`Instance`] is a dense symmetric nonnegative weight matrix with zero
//! diagonal whose support graph is connected. A [`Cut`] is a bipartition
//! `(S, S̄)` stored as one boolean per vertex (`true` means the vertex is in
//! `S`). All of the bookkeeping quantities used by the stability notions are
//! computed here:
//!
//! * `ξ(A)`: weight of cut edges leaving `A`,
//! * `ι(A)`: weight of non-cut edges leaving `A`,
//! * `τ(A) = ξ(A) + ι(A) = w(A, Ā)`,
//! * `μ(A) = w(A, V)`, which counts edges inside `A` twice.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::tol;

#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    n: usize,
    weights: Vec<f64>,
    labels: Option<Vec<String>>,
}

impl Instance {
    /// Builds an instance from a row-major `n × n` matrix.
    pub fn new(n: usize, weights: Vec<f64>) -> Result<Self> {
        validate_matrix(n, &weights)?;
        let components = support_components(n, &weights);
        if components != 1 {
            return Err(Error::Disconnected { components });
        }
        Ok(Instance { n, weights, labels: None })
    }

    /// Builds an instance from a list of unordered weighted pairs; omitted
    /// pairs have weight 0. Listing the same pair twice is an error.
    pub fn from_edges(n: usize, edges: &[(usize, usize, f64)]) -> Result<Self> {
        let mut weights = vec![0.0; n * n];
        let mut seen = vec![false; n * n];
        for &(i, j, w) in edges {
            if i >= n || j >= n {
                return Err(Error::InvalidWeights(format!("pair ({i}, {j}) out of range for n = {n}")));
            }
            if i == j {
                if w != 0.0 {
                    return Err(Error::InvalidWeights(format!("nonzero diagonal entry at vertex {i}")));
                }
                continue;
            }
            if seen[i * n + j] {
                return Err(Error::InvalidWeights(format!("pair ({i}, {j}) listed twice")));
            }
            seen[i * n + j] = true;
            seen[j * n + i] = true;
            weights[i * n + j] = w;
            weights[j * n + i] = w;
        }
        Instance::new(n, weights)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.n {
            return Err(Error::InvalidWeights(format!(
                "{} labels for {} vertices",
                labels.len(),
                self.n
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn w(&self, i: usize, j: usize) -> f64 {
        self.weights[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.weights[i * self.n..(i + 1) * self.n]
    }

    /// Row-major weight matrix.
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// `μ(x) = τ(x)`, the weighted degree.
    pub fn degree(&self, x: usize) -> f64 {
        self.row(x).iter().sum()
    }

    pub fn degrees(&self) -> Vec<f64> {
        (0..self.n).map(|x| self.degree(x)).collect()
    }

    /// Sum over unordered pairs, i.e. `w(V, V) / 2`.
    pub fn total_weight(&self) -> f64 {
        let mut total = 0.0;
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                total += self.w(i, j);
            }
        }
        total
    }

    pub fn max_weight(&self) -> f64 {
        self.weights.iter().copied().fold(0.0, f64::max)
    }

    /// Unordered pairs `(i, j, w)` with `i < j` and `w > 0`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        (0..self.n).flat_map(move |i| {
            ((i + 1)..self.n).filter_map(move |j| {
                let w = self.w(i, j);
                (w > 0.0).then_some((i, j, w))
            })
        })
    }

    /// The 2-coloring of the support graph, when it is bipartite.
    pub fn bipartition(&self) -> Option<Cut> {
        let mut color: Vec<Option<bool>> = vec![None; self.n];
        color[0] = Some(true);
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            let cx = color[x].unwrap();
            for y in 0..self.n {
                if self.w(x, y) > 0.0 {
                    match color[y] {
                        None => {
                            color[y] = Some(!cx);
                            queue.push_back(y);
                        }
                        Some(cy) if cy == cx => return None,
                        _ => {}
                    }
                }
            }
        }
        Cut::new(color.into_iter().map(|c| c.unwrap()).collect()).ok()
    }

    pub fn cut_weight(&self, cut: &Cut) -> f64 {
        assert_eq!(cut.len(), self.n, "cut size does not match instance");
        let mut total = 0.0;
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                if cut.separates(i, j) {
                    total += self.w(i, j);
                }
            }
        }
        total
    }

    /// `ξ, ι, τ, μ` of the vertex subset `subset` relative to `cut`.
    pub fn subset_stats(&self, cut: &Cut, subset: &[usize]) -> Result<SubsetStats> {
        assert_eq!(cut.len(), self.n, "cut size does not match instance");
        let mut member = vec![false; self.n];
        for &x in subset {
            if x >= self.n {
                return Err(Error::InvalidSubset(format!("vertex {x} out of range")));
            }
            member[x] = true;
        }
        let size = member.iter().filter(|&&m| m).count();
        if size == 0 {
            return Err(Error::InvalidSubset("subset is empty".into()));
        }
        if size == self.n {
            return Err(Error::InvalidSubset("subset is the whole vertex set".into()));
        }
        Ok(self.stats_of_mask(cut, &member))
    }

    /// Singleton shorthand: `ξ(x), ι(x), τ(x), μ(x)`.
    pub fn vertex_stats(&self, cut: &Cut, x: usize) -> SubsetStats {
        let (mut xi, mut iota) = (0.0, 0.0);
        for y in 0..self.n {
            if cut.separates(x, y) {
                xi += self.w(x, y);
            } else {
                iota += self.w(x, y);
            }
        }
        let tau = xi + iota;
        SubsetStats { xi, iota, tau, mu: tau }
    }

    /// Pair shorthand: statistics of `{u, v}`.
    pub fn pair_stats(&self, cut: &Cut, u: usize, v: usize) -> Result<SubsetStats> {
        if u == v {
            return Err(Error::InvalidSubset(format!("pair ({u}, {v}) is not two distinct vertices")));
        }
        self.subset_stats(cut, &[u, v])
    }

    pub(crate) fn stats_of_mask(&self, cut: &Cut, member: &[bool]) -> SubsetStats {
        let (mut xi, mut iota, mut inner) = (0.0, 0.0, 0.0);
        for a in (0..self.n).filter(|&a| member[a]) {
            for b in 0..self.n {
                let w = self.w(a, b);
                if member[b] {
                    inner += w;
                } else if cut.separates(a, b) {
                    xi += w;
                } else {
                    iota += w;
                }
            }
        }
        let tau = xi + iota;
        SubsetStats { xi, iota, tau, mu: tau + inner }
    }

    /// Contracts `u` and `v` into a single vertex: `w'(uv, x) = w(u, x) + w(v, x)`.
    ///
    /// The merged vertex takes the index `min(u, v)`, the vertex `max(u, v)`
    /// is removed and later indices shift down by one. Returns the new
    /// instance and the map from old to new vertex indices.
    pub fn merge_vertices(&self, u: usize, v: usize) -> Result<(Instance, Vec<usize>)> {
        if u == v {
            return Err(Error::InvalidMerge(u));
        }
        if u >= self.n || v >= self.n {
            return Err(Error::InvalidSubset(format!("merge of ({u}, {v}) out of range")));
        }
        let (keep, drop) = (u.min(v), u.max(v));
        let mapping: Vec<usize> = (0..self.n)
            .map(|x| match x {
                x if x == drop => keep,
                x if x > drop => x - 1,
                x => x,
            })
            .collect();
        let m = self.n - 1;
        let mut weights = vec![0.0; m * m];
        for i in 0..self.n {
            for j in 0..self.n {
                let (a, b) = (mapping[i], mapping[j]);
                if a != b {
                    weights[a * m + b] += self.w(i, j);
                }
            }
        }
        let labels = self.labels.as_ref().map(|labels| {
            let mut merged: Vec<String> = Vec::with_capacity(m);
            for (x, label) in labels.iter().enumerate() {
                if x == drop {
                    continue;
                }
                if x == keep {
                    merged.push(format!("{}+{}", labels[keep], labels[drop]));
                } else {
                    merged.push(label.clone());
                }
            }
            merged
        });
        let merged = Instance::new(m, weights)?;
        Ok((Instance { labels, ..merged }, mapping))
    }

    /// Multiplies every weight by the matching entry of `factors` (row-major
    /// `n × n`, symmetric, every entry at least 1). Returns the perturbed
    /// instance and the largest factor applied to a positive weight.
    pub fn apply_perturbation(&self, factors: &[f64]) -> Result<(Instance, f64)> {
        let n = self.n;
        if factors.len() != n * n {
            return Err(Error::InvalidPerturbation(format!(
                "expected {} factors, got {}",
                n * n,
                factors.len()
            )));
        }
        for i in 0..n {
            for j in 0..n {
                let f = factors[i * n + j];
                if !(f >= 1.0) || !f.is_finite() {
                    return Err(Error::InvalidPerturbation(format!("factor {f} at ({i}, {j}) is below 1")));
                }
                if f != factors[j * n + i] {
                    return Err(Error::InvalidPerturbation(format!("factors not symmetric at ({i}, {j})")));
                }
            }
        }
        let mut gamma: f64 = 1.0;
        let weights: Vec<f64> = self
            .weights
            .iter()
            .zip(factors)
            .map(|(&w, &f)| {
                if w > 0.0 {
                    gamma = gamma.max(f);
                }
                w * f
            })
            .collect();
        let perturbed = Instance::new(n, weights)?;
        Ok((Instance { labels: self.labels.clone(), ..perturbed }, gamma))
    }

    /// Uniform scaling by a positive factor.
    pub fn scaled(&self, factor: f64) -> Result<Instance> {
        if !(factor > 0.0) || !factor.is_finite() {
            return Err(Error::Parameter(format!("scale factor {factor} must be positive")));
        }
        Ok(Instance {
            n: self.n,
            weights: self.weights.iter().map(|w| w * factor).collect(),
            labels: self.labels.clone(),
        })
    }

    /// Relabels vertices: vertex `x` of `self` becomes vertex `perm[x]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Instance> {
        let n = self.n;
        let mut seen = vec![false; n];
        if perm.len() != n || perm.iter().any(|&p| p >= n || std::mem::replace(&mut seen[p], true)) {
            return Err(Error::Parameter("not a permutation".into()));
        }
        let mut weights = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                weights[perm[i] * n + perm[j]] = self.w(i, j);
            }
        }
        Instance::new(n, weights)
    }

    /// Smallest `C` such that `w(x, y) ≤ C·τ(x)/n` for every ordered pair.
    pub fn density_coefficient(&self) -> Result<f64> {
        let n = self.n as f64;
        let mut c: f64 = 0.0;
        for x in 0..self.n {
            let tau = self.degree(x);
            if tau <= 0.0 {
                return Err(Error::Degenerate(format!("vertex {x} has zero degree")));
            }
            let heaviest = self.row(x).iter().copied().fold(0.0, f64::max);
            c = c.max(n * heaviest / tau);
        }
        Ok(c)
    }

    /// Checks positivity off the diagonal and every triangle inequality
    /// `w(x, z) ≤ w(x, y) + w(y, z)`, up to the global relative tolerance.
    pub fn is_metric(&self) -> MetricCheck {
        let n = self.n;
        for i in 0..n {
            for j in (i + 1)..n {
                if !(self.w(i, j) > 0.0) {
                    return MetricCheck { violation: Some(MetricViolation::ZeroDistance(i, j)) };
                }
            }
        }
        let slack = tol::REL * self.max_weight();
        for x in 0..n {
            for y in 0..n {
                if y == x {
                    continue;
                }
                for z in 0..n {
                    if z == x || z == y {
                        continue;
                    }
                    if self.w(x, z) > self.w(x, y) + self.w(y, z) + slack {
                        return MetricCheck { violation: Some(MetricViolation::Triangle(x, y, z)) };
                    }
                }
            }
        }
        MetricCheck { violation: None }
    }

    pub fn require_metric(&self) -> Result<()> {
        match self.is_metric().violation {
            None => Ok(()),
            Some(v) => Err(Error::NotMetric(v.to_string())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricCheck {
    pub violation: Option<MetricViolation>,
}

impl MetricCheck {
    pub fn is_metric(&self) -> bool {
        self.violation.is_none()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MetricViolation {
    /// Two distinct points at distance 0.
    ZeroDistance(usize, usize),
    /// `w(x, z) > w(x, y) + w(y, z)` for the triple `(x, y, z)`.
    Triangle(usize, usize, usize),
}

impl std::fmt::Display for MetricViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MetricViolation::ZeroDistance(i, j) => write!(f, "zero distance between {i} and {j}"),
            MetricViolation::Triangle(x, y, z) => {
                write!(f, "triangle inequality fails for ({x}, {y}, {z})")
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SubsetStats {
    pub xi: f64,
    pub iota: f64,
    pub tau: f64,
    pub mu: f64,
}

/// A bipartition `(S, S̄)`; `side[i]` is true iff `i ∈ S`. Both sides are
/// nonempty.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cut {
    side: Vec<bool>,
}

impl Cut {
    pub fn new(side: Vec<bool>) -> Result<Self> {
        let in_s = side.iter().filter(|&&s| s).count();
        if in_s == 0 || in_s == side.len() {
            return Err(Error::InvalidCut("one side of the cut is empty".into()));
        }
        Ok(Cut { side })
    }

    /// The cut with `S = set`.
    pub fn from_set(n: usize, set: &[usize]) -> Result<Self> {
        let mut side = vec![false; n];
        for &x in set {
            if x >= n {
                return Err(Error::InvalidCut(format!("vertex {x} out of range")));
            }
            side[x] = true;
        }
        Cut::new(side)
    }

    /// The cut induced by a vector: `S = {i : v_i > 0}`.
    pub fn from_signs(v: &[f64]) -> Result<Self> {
        Cut::new(v.iter().map(|&x| x > 0.0).collect())
    }

    /// Bit `i` of `mask` set means vertex `i` is in `S̄`; vertex 0 always in `S`.
    pub(crate) fn from_mask(n: usize, mask: u64) -> Self {
        Cut { side: (0..n).map(|i| mask >> i & 1 == 0).collect() }
    }

    pub fn len(&self) -> usize {
        self.side.len()
    }

    pub fn is_empty(&self) -> bool {
        self.side.is_empty()
    }

    #[inline]
    pub fn in_s(&self, x: usize) -> bool {
        self.side[x]
    }

    pub fn sides(&self) -> &[bool] {
        &self.side
    }

    #[inline]
    pub fn separates(&self, x: usize, y: usize) -> bool {
        self.side[x] != self.side[y]
    }

    /// `δ_S = χ_S − χ_S̄`.
    pub fn delta(&self) -> Vec<f64> {
        self.side.iter().map(|&s| if s { 1.0 } else { -1.0 }).collect()
    }

    pub fn s_vertices(&self) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.side[x]).collect()
    }

    pub fn complement_vertices(&self) -> Vec<usize> {
        (0..self.len()).filter(|&x| !self.side[x]).collect()
    }

    pub fn complement(&self) -> Cut {
        Cut { side: self.side.iter().map(|s| !s).collect() }
    }

    /// The representative with vertex 0 in `S`.
    pub fn canonical(&self) -> Cut {
        if self.side[0] {
            self.clone()
        } else {
            self.complement()
        }
    }

    /// Same bipartition, ignoring which side is called `S`.
    pub fn same_partition(&self, other: &Cut) -> bool {
        self.len() == other.len() && self.canonical() == other.canonical()
    }
}

fn validate_matrix(n: usize, weights: &[f64]) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidWeights(format!("need at least 2 vertices, got {n}")));
    }
    if weights.len() != n * n {
        return Err(Error::InvalidWeights(format!(
            "expected {} entries for n = {n}, got {}",
            n * n,
            weights.len()
        )));
    }
    for i in 0..n {
        if weights[i * n + i] != 0.0 {
            return Err(Error::InvalidWeights(format!("nonzero diagonal entry at vertex {i}")));
        }
        for j in 0..n {
            let w = weights[i * n + j];
            if !w.is_finite() || w < 0.0 {
                return Err(Error::InvalidWeights(format!("weight {w} at ({i}, {j})")));
            }
            if w != weights[j * n + i] {
                return Err(Error::InvalidWeights(format!("asymmetric weight at ({i}, {j})")));
            }
        }
    }
    Ok(())
}

fn support_components(n: usize, weights: &[f64]) -> usize {
    let mut seen = vec![false; n];
    let mut components = 0;
    for start in 0..n {
        if seen[start] {
            continue;
        }
        components += 1;
        seen[start] = true;
        let mut stack = vec![start];
        while let Some(x) = stack.pop() {
            for y in 0..n {
                if !seen[y] && weights[x * n + y] > 0.0 {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
    }
    components
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{c4, k3};

    #[test]
    fn rejects_bad_matrices() {
        assert!(matches!(Instance::new(2, vec![0.0, 1.0, 2.0, 0.0]), Err(Error::InvalidWeights(_))));
        assert!(matches!(Instance::new(2, vec![1.0, 1.0, 1.0, 0.0]), Err(Error::InvalidWeights(_))));
        assert!(matches!(Instance::new(2, vec![0.0, -1.0, -1.0, 0.0]), Err(Error::InvalidWeights(_))));
        assert!(matches!(Instance::new(1, vec![0.0]), Err(Error::InvalidWeights(_))));
        assert_eq!(
            Instance::from_edges(4, &[(0, 1, 1.0), (2, 3, 1.0)]),
            Err(Error::Disconnected { components: 2 })
        );
        assert!(Instance::from_edges(3, &[(0, 1, 1.0), (1, 0, 2.0), (1, 2, 1.0)]).is_err());
    }

    #[test]
    fn cut_rejects_empty_side() {
        assert!(Cut::new(vec![true, true]).is_err());
        assert!(Cut::new(vec![false, false, false]).is_err());
        let cut = Cut::from_set(3, &[0]).unwrap();
        assert_eq!(cut.delta(), vec![1.0, -1.0, -1.0]);
    }

    #[test]
    fn subset_stats_examples() {
        let k3 = k3();
        let cut = Cut::from_set(3, &[0]).unwrap();
        let s = k3.subset_stats(&cut, &[1]).unwrap();
        assert_eq!((s.xi, s.iota, s.tau, s.mu), (1.0, 1.0, 2.0, 2.0));

        let c4 = c4();
        let cut = Cut::from_set(4, &[0, 2]).unwrap();
        let s = c4.subset_stats(&cut, &[0]).unwrap();
        assert_eq!((s.xi, s.iota, s.tau, s.mu), (2.0, 0.0, 2.0, 2.0));
        let s = c4.subset_stats(&cut, &[0, 1]).unwrap();
        assert_eq!((s.xi, s.iota, s.tau, s.mu), (2.0, 0.0, 2.0, 4.0));
        assert_eq!(c4.pair_stats(&cut, 0, 1).unwrap(), s);
        assert_eq!(c4.vertex_stats(&cut, 0), c4.subset_stats(&cut, &[0]).unwrap());

        assert!(matches!(c4.subset_stats(&cut, &[]), Err(Error::InvalidSubset(_))));
        assert!(matches!(c4.subset_stats(&cut, &[0, 1, 2, 3]), Err(Error::InvalidSubset(_))));
    }

    #[test]
    fn cut_weight_examples() {
        assert_eq!(c4().cut_weight(&Cut::from_set(4, &[0, 2]).unwrap()), 4.0);
        assert_eq!(k3().cut_weight(&Cut::from_set(3, &[0]).unwrap()), 2.0);
        assert_eq!(k3().cut_weight(&Cut::from_set(3, &[0, 1]).unwrap()), 2.0);
    }

    #[test]
    fn merge_examples() {
        let (merged, map) = k3().merge_vertices(1, 2).unwrap();
        assert_eq!(merged.n(), 2);
        assert_eq!(merged.w(0, 1), 2.0);
        assert_eq!(map, vec![0, 1, 1]);

        // C4 with vertices 1..4 stored as 0..3; merge 1 and 3.
        let (merged, map) = c4().merge_vertices(0, 2).unwrap();
        assert_eq!(map, vec![0, 1, 0, 2]);
        assert_eq!(merged.w(0, 1), 2.0);
        assert_eq!(merged.w(0, 2), 2.0);
        assert_eq!(merged.w(1, 2), 0.0);

        assert_eq!(k3().merge_vertices(0, 0), Err(Error::InvalidMerge(0)));
    }

    #[test]
    fn merge_keeps_labels() {
        let inst = k3().with_labels(vec!["a".into(), "b".into(), "c".into()]).unwrap();
        let (merged, _) = inst.merge_vertices(2, 1).unwrap();
        assert_eq!(merged.labels().unwrap(), &["a".to_string(), "b+c".to_string()]);
    }

    #[test]
    fn perturbation_examples() {
        let c4 = c4();
        let (same, gamma) = c4.apply_perturbation(&[1.0; 16]).unwrap();
        assert_eq!(same, c4);
        assert_eq!(gamma, 1.0);

        let mut factors = vec![1.0; 16];
        factors[1] = 2.0;
        factors[4] = 2.0;
        let (p, gamma) = c4.apply_perturbation(&factors).unwrap();
        assert_eq!(p.w(0, 1), 2.0);
        assert_eq!(p.w(1, 2), 1.0);
        assert_eq!(gamma, 2.0);

        // A large factor on a zero-weight pair does not count towards γ.
        let mut factors = vec![1.0; 16];
        factors[2] = 5.0;
        factors[8] = 5.0;
        assert_eq!(c4.apply_perturbation(&factors).unwrap().1, 1.0);

        let mut factors = vec![1.0; 16];
        factors[5] = 0.5;
        assert!(matches!(c4.apply_perturbation(&factors), Err(Error::InvalidPerturbation(_))));
    }

    #[test]
    fn density_examples() {
        assert_eq!(c4().density_coefficient().unwrap(), 2.0);
        for n in 2..8 {
            let edges: Vec<_> =
                (0..n).flat_map(|i| ((i + 1)..n).map(move |j| (i, j, 1.0))).collect();
            let kn = Instance::from_edges(n, &edges).unwrap();
            let expected = n as f64 / (n as f64 - 1.0);
            assert!((kn.density_coefficient().unwrap() - expected).abs() < 1e-15);
        }
        let star = Instance::from_edges(4, &[(0, 1, 1.0), (0, 2, 1.0), (0, 3, 1.0)]).unwrap();
        assert_eq!(star.density_coefficient().unwrap(), 4.0);
    }

    #[test]
    fn metric_examples() {
        let pts = [0.0_f64, 1.5, 4.0, 4.2];
        let mut edges = vec![];
        for i in 0..4 {
            for j in (i + 1)..4 {
                edges.push((i, j, (pts[i] - pts[j]).abs()));
            }
        }
        assert!(Instance::from_edges(4, &edges).unwrap().is_metric().is_metric());
        assert_eq!(c4().is_metric().violation, Some(MetricViolation::ZeroDistance(0, 2)));
        let tri = Instance::from_edges(3, &[(0, 1, 1.0), (1, 2, 1.0), (0, 2, 3.0)]).unwrap();
        assert_eq!(tri.is_metric().violation, Some(MetricViolation::Triangle(0, 1, 2)));
        assert!(tri.require_metric().is_err());
    }

    #[test]
    fn bipartition_detection() {
        let c4 = c4();
        assert!(c4.bipartition().unwrap().same_partition(&Cut::from_set(4, &[0, 2]).unwrap()));
        assert!(k3().bipartition().is_none());
    }

    #[test]
    fn canonical_and_partition_equality() {
        let a = Cut::from_set(4, &[1, 3]).unwrap();
        let b = Cut::from_set(4, &[0, 2]).unwrap();
        assert!(a.same_partition(&b));
        assert_eq!(a.canonical(), b);
        assert!(!a.same_partition(&Cut::from_set(4, &[0, 1]).unwrap()));
    }
}
