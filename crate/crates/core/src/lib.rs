//! Homology cobordism invariants of Seifert fibered homology spheres and
//! the positive-scalar-curvature obstructions they feed.
//!
//! The pipeline runs
//! [`seifert`] (parse, normalize) → [`plumbing`] (graph, signature, Wu
//! class, mu-bar) → [`lattice`] (d and delta) → [`stoffregen`] (alpha,
//! beta, gamma) → [`obstruction`] (verdicts). Everything is exact integer
//! or rational arithmetic.

pub mod cli;
pub mod fixtures;
pub mod json;
pub mod lattice;
pub mod linalg;
pub mod obstruction;
pub mod oracle;
pub mod plumbing;
pub mod record;
pub mod seifert;
pub mod stoffregen;
