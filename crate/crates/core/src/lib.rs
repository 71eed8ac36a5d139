//! Exact potential theory on metrized graphs.
//!
//! The crate is organized bottom-up:
//!
//! - [`graph`]: metrized graphs with rational edge lengths, points, vertex divisors,
//!   and subdivision.
//! - [`calculus`]: piecewise-quadratic functions, measures, the distributional
//!   Laplacian, the vertex maps `p`/`q`, the weighted Laplacian matrix, and an exact
//!   Poisson solver.
//! - [`admissible`]: effective resistance, the canonical and admissible measures,
//!   Green functions, the admissible constant, and a six-property verifier.
//! - [`wedge`]: closed forms for a bouquet of circles, used as an oracle.
//! - [`fiber`]: dual graphs of semistable fibers, the canonical fiber divisor, and
//!   the graph-side terms of the admissible pairing.
//! - [`bounds`]: calculators for the lower bounds on self-intersections and the
//!   Bogomolov constant.
//!
//! Everything except the final square root or logarithm in [`bounds`] is computed
//! in arbitrary-precision rationals, so all identities are checked with `==`.

// Errors carry the offending exact values; they are rare and never on a hot path.
#![allow(clippy::result_large_err)]

pub mod admissible;
pub mod bounds;
pub mod calculus;
pub mod error;
pub mod fiber;
pub mod graph;
pub mod linalg;
pub mod rational;
pub mod wedge;

pub use admissible::{
    admissible_measure, canonical_measure, effective_resistance, green_eval, green_system,
    verify_admissibility, AdmissibilityReport, GreenSystem, PropertyCheck,
};
pub use calculus::{Measure, PiecewiseQuadratic, Quadratic, VertexVector};
pub use error::{Error, Result};
pub use graph::{EdgeId, EdgeSpec, MetrizedGraph, PointLocation, Refinement, VertexDivisor, VertexId};
pub use rational::Rational;
