//! Solvers, exact oracles and optimality certificates for weighted MAXCUT on
//! stable, distinguished, dense and metric instances.
//!
//! Module map:
//!
//! * [`instance`]: instances, cuts and the `ξ/ι/τ/μ` bookkeeping.
//! * [`oracle`]: exhaustive ground truth (optimal cuts, stability, distinction,
//!   Cheeger constants, locally stable cut enumeration).
//! * [`generators`]: seeded instance families with planted cuts.
//! * [`dense`]: the sampling solver for locally stable dense instances.
//! * [`metric`]: vertex splitting, the metric-to-dense reduction and the ball
//!   enumeration solver.
//! * [`stable`]: merge-based solvers for highly stable instances and the
//!   random spanning tree solver.
//! * [`spectral_gw`]: spectral PSD certificates, generalized least
//!   eigenvectors and the Goemans–Williamson relaxation.

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod dense;
pub mod error;
pub mod fixtures;
pub mod generators;
pub mod instance;
pub mod io;
pub mod metric;
pub mod oracle;
pub mod spectral_gw;
pub mod stable;
pub mod tol;

pub use error::{Error, Result};
pub use instance::{Cut, Instance, SubsetStats};
