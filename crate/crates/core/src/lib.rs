#![allow(clippy::needless_range_loop)]
//! Exact and numerical machinery around the rank-one frame variety and its
//! role as a representative of the first Pontryagin class.
//!
//! * [`intlattice`]: exact integer matrices, Smith normal form, kernels.
//! * [`schubert`]: signed Schubert cells of the oriented Grassmannian of
//!   3-planes and their boundary operator.
//! * [`homology`]: integer cellular homology and generator certificates.
//! * [`frames`]: 3×N frames, canonical cell form, the rank-one variety and
//!   its intersection signs.
//! * [`gauge`]: connections on a ball in `R^4`, curvature at a point,
//!   anti-self-dual projection and the reducibility test.
//! * [`commands`]: JSON report builders shared by the command-line tool.

pub mod commands;
pub mod error;
pub mod frames;
pub mod gauge;
pub mod homology;
pub mod intlattice;
pub mod schubert;
pub mod tolerance;

pub use error::{Error, Result};

/// Version string embedded in every report.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
