//! Capacity limits of spatial-continuum Gaussian cells.
//!
//! One base station serves (downlink) or is served by (uplink) a spatial
//! *density* of users rather than a discrete set. Ordering users by their
//! equivalent noise ν = σ²/h collapses the geometry into a one-dimensional
//! noise distribution, and the cell's limits become one-dimensional
//! integrals and recursions over it:
//!
//! - the minimal transmit power that serves a per-user rate everywhere,
//! - the uniform capacity (its inverse at a fixed power budget),
//! - the access-capacity-region boundary for an arbitrary traffic shape,
//! - finite-layer superposition-coding bounds that sandwich the continuum
//!   limit from both sides and converge as the layer count grows,
//! - the uplink dual under transferable power (successive interference
//!   cancellation), whose total power matches the downlink exactly,
//! - a pure time-sharing baseline the layered schemes are measured against.
//!
//! The mdbook under `book/` walks through the theory with runnable
//! examples; its code blocks are compiled as doctests via [`guide`].

// Validation guards use `!(x > 0.0)` so NaN falls out of domain too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod config;
pub mod error;
pub mod guide;
pub mod numerics;
pub mod partition;
pub mod scbc;
pub mod scenario;
pub mod scmac;
pub mod svg;
pub mod sweep;

pub use config::{CellConfig, RateConvention};
pub use error::{Error, Result};
pub use scbc::{CapacityResult, SpectralEfficiency};
pub use scenario::{
    NoiseDistribution, NoiseDistributionKind, PathlossModel, RadialDensity, Scenario,
    TrafficProfile,
};
