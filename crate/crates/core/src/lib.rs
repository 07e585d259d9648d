//! Convex-feasibility solvers built around projections and reflections:
//! alternating projections (MAP), the circumcentered-reflection method
//! (CRM), sequential and simultaneous projections over set families, and
//! CRM applied to the product-space lift. A diagnostics layer measures
//! empirical Q/R convergence rates and computes the closed-form asymptotic
//! constants the measurements are checked against.
//!
//! The crate is `no_std` (with `alloc`); everything that touches files,
//! clocks or a terminal lives in the companion CLI crate.
//!
//! ```
//! use circumfeas_core::experiments::{run_comparison, Family, InstanceSpec};
//!
//! // Ball tangent to a hyperplane: MAP crawls sublinearly, CRM converges
//! // linearly with asymptotic constant 1/2.
//! let report = run_comparison(&InstanceSpec::new(Family::BallTangent)).unwrap();
//! assert!(report.verdicts.all_pass());
//! ```

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod diagnostics;
mod epigraph;
pub mod error;
pub mod experiments;
pub mod geometry;
mod math;
pub mod rng;
pub mod sets;
pub mod solvers;

pub use error::Error;
pub use geometry::{circumcenter3, collinear, AffineManifold, Point};
pub use sets::{product_lift, RadialFunction, SetOracle};
pub use solvers::{
    crm_step, map_step, product_crm_run, reflect, run, sepm_step, sipm_step, Method, Problem,
    RunTarget, StopReason, StopRule, Trace,
};

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;
