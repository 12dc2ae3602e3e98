//! Exact-arithmetic cap calculus: plumbing caps and their classification,
//! integer lattice invariants, surface-class bookkeeping, filling bounds and
//! the unit-cotangent-bundle derivation. All computations are over
//! arbitrary-precision integers and rationals; no floating point anywhere.

pub mod caps_bounds;
pub mod cli;
pub mod cotangent;
pub mod error;
pub mod lattice;
pub mod lefschetz;
pub mod matrix;
pub mod plumbing;
pub mod surfaces;

pub use error::{Error, Result};
