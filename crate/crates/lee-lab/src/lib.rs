//! lee-lab: a laboratory for perfect Lee codes and translational tilings of
//! the integer lattice.
//!
//! The crate constructs Lee spheres, semi-crosses, and double-spheres,
//! searches for and verifies perfect / quasi-perfect / diameter-perfect
//! codes on torus quotients `Z_q^n`, and produces machine-checkable
//! nonexistence certificates: splitting-homomorphism exhaustion, exact
//! character sums at roots of unity, sector counting, and the discrete
//! linear-programming criterion. All certificate arithmetic is exact
//! (integers, rationals, cyclotomic integers); floats appear only as
//! diagnostic shadows.

pub mod algebra;
pub mod error;
pub mod functional;
pub mod geometry;
pub mod periods;
pub mod search;
pub mod torus;
pub mod verify;

pub use error::{Error, Result};
