//! Exact hyperbolic lattice geometry of K3 ample cones.
//!
//! Starting from an integral Gram matrix of signature (1, n), the crate
//! computes the walls of the chamber containing a chosen interior class,
//! the sphere configuration those walls trace on the boundary at infinity,
//! Mordell-Weil ranks of the elliptic fibrations attached to isotropic
//! classes, and blow-up data at cusps, culminating in a virtual
//! cohomological dimension report for the automorphism group.
//!
//! Everything decision-critical runs in exact integer or rational
//! arithmetic; floating point is confined to the hyperbolic model
//! conversions and rendering.
//!
//! See the `examples/` directory for runnable walkthroughs of each
//! capability, and the `amplecone` binary for the command-line interface.

pub mod blowup;
pub mod chamber;
pub mod cli;
pub mod error;
pub mod fibration;
pub mod lattice;
pub mod models;
pub mod packing;

pub use error::{Error, Result};
