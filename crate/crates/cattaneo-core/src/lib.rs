//! Numerical library for a tempered space-fractional Cattaneo model:
//! transform-domain analytic solutions on one side, Monte Carlo simulation of
//! the matching time-changed process on the other, with each side instrumented
//! to validate the other.

pub mod analytic;
pub mod error;
pub mod params;
pub mod process;
pub mod quad;
pub mod rng;
pub mod special;
pub mod stable;
pub mod stats;
pub mod transforms;
pub mod validate;

pub use error::{CoreError, Result};
pub use params::{CattaneoParams, StableParams, TemperedParams};
pub use rng::RngStream;
pub use stats::{ValidationReport, Verdict};
