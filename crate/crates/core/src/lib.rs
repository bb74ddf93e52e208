//! Exact verification of curvature identities on pp-wave space-times.
//!
//! Metrics are polynomial in the chart `(u, x1, …, xd, v)`. At each sample
//! point the metric is expanded into truncated Taylor jets, over exact
//! rationals or `f64`, and the curvature tensors and their covariant
//! derivatives are carried as jets. Checks compare both sides of an identity
//! and report a relative residual, which is exactly zero in exact mode when
//! the identity holds.
//!
//! The pieces, bottom up: [`jet`] and [`tensor`] arithmetic, [`geometry`]
//! (Christoffel symbols through second covariant derivatives of Weyl),
//! [`metrics`] (families and JSON configs), [`checks`] and [`suite`] (point
//! sampling, parallel runs, reports). The `examples/` directory has one
//! runnable program per capability.

pub mod checks;
pub mod error;
pub mod geometry;
pub mod jet;
pub mod metrics;
pub mod poly;
pub mod scalar;
pub mod suite;
pub mod tensor;

pub use error::{Error, Result};
