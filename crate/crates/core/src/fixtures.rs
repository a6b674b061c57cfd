//! Small named instances used throughout the docs, tests and CLI examples.
//!
//! Vertices are 0-indexed; the cycle `C4` has edges `01, 12, 23, 30`.

use crate::instance::{Cut, Instance};

fn build(n: usize, edges: &[(usize, usize, f64)]) -> Instance {
    Instance::from_edges(n, edges).expect("fixture is a valid instance")
}

/// The 4-cycle with unit weights.
pub fn c4() -> Instance {
    build(4, &[(0, 1, 1.0), (1, 2, 1.0), (2, 3, 1.0), (3, 0, 1.0)])
}

/// The triangle with unit weights.
pub fn k3() -> Instance {
    build(3, &[(0, 1, 1.0), (0, 2, 1.0), (1, 2, 1.0)])
}

/// The complete graph `K_n` with unit weights.
pub fn complete(n: usize) -> Instance {
    let edges: Vec<_> = (0..n).flat_map(|i| ((i + 1)..n).map(move |j| (i, j, 1.0))).collect();
    build(n, &edges)
}

/// `K4` whose edges across the cut `({0, 2}, {1, 3})` weigh `cut_w` and whose
/// two remaining edges weigh `uncut_w`.
pub fn k22_weighted(cut_w: f64, uncut_w: f64) -> Instance {
    build(
        4,
        &[(0, 1, cut_w), (0, 3, cut_w), (2, 1, cut_w), (2, 3, cut_w), (0, 2, uncut_w), (1, 3, uncut_w)],
    )
}

/// Four points, two pairs `{0, 1}` and `{2, 3}` at distance 1, every cross
/// distance 2.
pub fn two_pairs_metric() -> Instance {
    build(4, &[(0, 1, 1.0), (2, 3, 1.0), (0, 2, 2.0), (0, 3, 2.0), (1, 2, 2.0), (1, 3, 2.0)])
}

/// Two vertices joined by an edge of weight `w`.
pub fn single_edge(w: f64) -> Instance {
    build(2, &[(0, 1, w)])
}

/// Convenience constructor for cuts in tests: `S = set`.
pub fn cut_of(n: usize, set: &[usize]) -> Cut {
    Cut::from_set(n, set).expect("fixture is a valid cut")
}
