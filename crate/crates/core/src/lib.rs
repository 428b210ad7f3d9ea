//! Quantum cohomology of projective spaces and Grassmannians, Gamma classes,
//! asymptotic solutions of the quantum differential equation, mutation systems
//! of Stokes data, and the Satake identities linking `G(r, N)` to `P^{N-1}`.
//!
//! Classes are stored as complex coefficient vectors over an integral basis:
//! powers of the hyperplane class on `P^{N-1}` and Schubert classes on
//! `G(r, N)`. Every numeric routine is generic over a [`Real`] scalar so the
//! same code runs in `f64` and in double-double precision.

pub mod asymptotics;
pub mod char_classes;
pub mod cohomology_ring;
pub mod dd;
pub mod error;
pub mod json;
pub mod linalg;
pub mod mrs;
pub mod quantum_connection;
pub mod satake;
pub mod scalar;
pub mod series;
pub mod special;
pub mod verify;

pub use cohomology_ring::{CohClass, Kind, Partition, Ring};
pub use error::{Error, Result};
pub use scalar::{Cx, Real, C64, DD};
